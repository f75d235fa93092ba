#include "mobgraph/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "mobgraph/error.hpp"

namespace mobgraph {

namespace {

constexpr const char* kModule = "io";

using ojson = nlohmann::ordered_json;

std::ifstream open_input(const std::string& path, const char* op) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(kModule, op, "cannot open \"" + path + "\"");
    return in;
}

std::ofstream open_output(const std::string& path, const char* op) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(kModule, op, "cannot write \"" + path + "\"");
    return out;
}

void finish_output(std::ofstream& out, const std::string& path, const char* op) {
    out.flush();
    if (!out) throw Error(kModule, op, "write to \"" + path + "\" failed");
}

// Labels and column names are emitted verbatim (no quoting), so anything that
// would collide with the line format is refused up front.
void require_plain(const std::string& s, const char* what, const char* op) {
    if (s.empty() || s.front() == '#' || s.find_first_of(",\r\n") != std::string::npos)
        throw Error(kModule, op, std::string(what) + " \"" + s +
                                     "\" cannot be written: empty, leading '#', comma or "
                                     "line break");
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

// Line-oriented reader that hides blank lines, `#` comments and CR-LF endings.
class LineReader {
public:
    LineReader(const std::string& path, const char* op)
        : in_(open_input(path, op)), path_(path) {}

    bool next(std::string& line) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_no_;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            if (raw.empty() || raw.front() == '#') continue;
            line = std::move(raw);
            return true;
        }
        return false;
    }

    std::string where() const { return path_ + ":" + std::to_string(line_no_); }
    const std::string& path() const { return path_; }

private:
    std::ifstream in_;
    std::string path_;
    std::size_t line_no_ = 0;
};

double parse_double(const std::string& tok, const std::string& where, const char* what,
                    const char* op) {
    double v = 0.0;
    const char* end = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || p != end)
        throw Error(kModule, op, where + ": bad " + what + " \"" + tok + "\"");
    return v;
}

std::vector<std::string> expect_fields(const std::string& line, std::size_t n,
                                       const std::string& where, const char* op) {
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() != n)
        throw Error(kModule, op, where + ": expected " + std::to_string(n) + " fields, got " +
                                     std::to_string(fields.size()));
    return fields;
}

void expect_header(LineReader& reader, const char* header, const char* op) {
    std::string line;
    if (!reader.next(line) || line != header)
        throw Error(kModule, op,
                    reader.path() + ": missing header \"" + std::string(header) + "\"");
}

// JSON serializer that routes every floating-point number through
// format_double; nlohmann's own dump handles string escaping.
void dump_json(const ojson& j, std::string& out) {
    switch (j.type()) {
    case ojson::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            out += ojson(it.key()).dump();
            out += ':';
            dump_json(it.value(), out);
        }
        out += '}';
        return;
    }
    case ojson::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& item : j) {
            if (!first) out += ',';
            first = false;
            dump_json(item, out);
        }
        out += ']';
        return;
    }
    case ojson::value_t::string:
        out += j.dump();
        return;
    case ojson::value_t::boolean:
        out += j.get<bool>() ? "true" : "false";
        return;
    case ojson::value_t::null:
        out += "null";
        return;
    case ojson::value_t::number_integer:
        out += std::to_string(j.get<std::int64_t>());
        return;
    case ojson::value_t::number_unsigned:
        out += std::to_string(j.get<std::uint64_t>());
        return;
    case ojson::value_t::number_float:
        out += format_double(j.get<double>());
        return;
    default:
        throw Error(kModule, "dump_json", "unsupported JSON value type");
    }
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec; // 64 chars always suffice for a double
    return std::string(buf, p);
}

Graph read_edge_list(const std::string& path, std::optional<bool> directed) {
    const char* op = "read_edge_list";
    std::ifstream in = open_input(path, op);

    std::optional<bool> hint;
    std::vector<std::string> nodes;
    std::vector<WeightedEdge> edges;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty()) continue;
        if (raw.front() == '#') {
            if (raw == "# directed") hint = true;
            else if (raw == "# undirected") hint = false;
            else if (raw.rfind("# node: ", 0) == 0) nodes.push_back(raw.substr(8));
            continue; // any other comment is just a comment
        }
        std::string where = path + ":" + std::to_string(line_no);
        std::vector<std::string> fields = expect_fields(raw, 3, where, op);
        double w = parse_double(fields[2], where, "weight", op);
        edges.push_back({std::move(fields[0]), std::move(fields[1]), w});
    }

    std::optional<bool> dir = directed ? directed : hint;
    if (!dir)
        throw Error(kModule, op, path + ": no \"# directed\" / \"# undirected\" hint; say "
                                 "which one the file is");
    return Graph::from_edges(edges, *dir, nodes);
}

void write_edge_list(const Graph& g, const std::string& path) {
    const char* op = "write_edge_list";
    for (const std::string& label : g.labels()) require_plain(label, "label", op);

    std::ofstream out = open_output(path, op);
    out << (g.directed() ? "# directed\n" : "# undirected\n");
    for (const std::string& label : g.labels()) out << "# node: " << label << '\n';

    const SparseMatrix& a = g.adjacency();
    for (Eigen::Index row = 0; row < a.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(a, row); it; ++it) {
            if (!g.directed() && it.col() < it.row()) continue; // one line per edge
            out << g.label(static_cast<std::size_t>(it.row())) << ','
                << g.label(static_cast<std::size_t>(it.col())) << ','
                << format_double(it.value()) << '\n';
        }
    finish_output(out, path, op);
}

void write_matrix_market(const SparseMatrix& m, const std::string& path) {
    const char* op = "write_matrix_market";
    std::ofstream out = open_output(path, op);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    for (Eigen::Index row = 0; row < m.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(m, row); it; ++it)
            out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << format_double(it.value())
                << '\n';
    finish_output(out, path, op);
}

void write_matrix_market(const Eigen::MatrixXd& m, const std::string& path) {
    const char* op = "write_matrix_market";
    std::ofstream out = open_output(path, op);
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index col = 0; col < m.cols(); ++col) // array format is column-major
        for (Eigen::Index row = 0; row < m.rows(); ++row)
            out << format_double(m(row, col)) << '\n';
    finish_output(out, path, op);
}

namespace {

Ring parse_ring(const ojson& arr, const std::string& ctx, const char* op) {
    if (!arr.is_array())
        throw Error(kModule, op, ctx + ": ring must be an array of positions");
    Ring ring;
    ring.reserve(arr.size());
    for (const auto& pos : arr) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number())
            throw Error(kModule, op, ctx + ": position must be an array of at least two numbers");
        ring.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
    return ring;
}

Polygon parse_polygon(const ojson& rings, const std::string& ctx, const char* op) {
    if (!rings.is_array() || rings.empty())
        throw Error(kModule, op, ctx + ": polygon needs at least an outer ring");
    Polygon poly;
    poly.reserve(rings.size());
    for (const auto& ring : rings) poly.push_back(parse_ring(ring, ctx, op));
    return poly;
}

} // namespace

Partition read_partition_geojson(const std::string& path) {
    const char* op = "read_partition_geojson";
    std::ifstream in = open_input(path, op);
    ojson j;
    try {
        j = ojson::parse(in);
    } catch (const std::exception& e) {
        throw Error(kModule, op, path + ": " + e.what());
    }
    if (!j.is_object() || j.value("type", std::string()) != "FeatureCollection" ||
        !j.contains("features") || !j["features"].is_array())
        throw Error(kModule, op, path + ": expected a GeoJSON FeatureCollection");

    Partition p;
    std::size_t index = 0;
    for (const auto& feature : j["features"]) {
        std::string ctx = path + ": feature " + std::to_string(index++);
        if (!feature.is_object() || feature.value("type", std::string()) != "Feature")
            throw Error(kModule, op, ctx + ": expected a Feature object");
        if (!feature.contains("properties") || !feature["properties"].is_object() ||
            !feature["properties"].contains("id") || !feature["properties"]["id"].is_string())
            throw Error(kModule, op, ctx + ": needs a string property \"id\"");

        Region region;
        region.id = feature["properties"]["id"].get<std::string>();
        ctx += " (\"" + region.id + "\")";
        const auto& props = feature["properties"];
        if (props.contains("population") && !props["population"].is_null()) {
            if (!props["population"].is_number())
                throw Error(kModule, op, ctx + ": property \"population\" must be a number");
            region.population = props["population"].get<double>();
        }

        if (!feature.contains("geometry") || !feature["geometry"].is_object())
            throw Error(kModule, op, ctx + ": needs a geometry object");
        const auto& geometry = feature["geometry"];
        std::string type = geometry.value("type", std::string());
        if (!geometry.contains("coordinates"))
            throw Error(kModule, op, ctx + ": geometry has no coordinates");
        const auto& coords = geometry["coordinates"];
        if (type == "Polygon") {
            region.multi = false;
            region.polygons.push_back(parse_polygon(coords, ctx, op));
        } else if (type == "MultiPolygon") {
            region.multi = true;
            if (!coords.is_array() || coords.empty())
                throw Error(kModule, op, ctx + ": MultiPolygon needs at least one polygon");
            for (const auto& poly : coords)
                region.polygons.push_back(parse_polygon(poly, ctx, op));
        } else {
            throw Error(kModule, op,
                        ctx + ": geometry type \"" + type + "\" is not Polygon or MultiPolygon");
        }
        p.regions.push_back(std::move(region));
    }
    return p;
}

ODMatrix read_od_csv(const std::string& path, const std::string& ids_path) {
    const char* op = "read_od_csv";
    std::vector<std::string> ids;
    std::unordered_map<std::string, std::size_t> index;
    auto intern = [&](const std::string& id) {
        auto [it, fresh] = index.try_emplace(id, ids.size());
        if (fresh) ids.push_back(id);
        return it->second;
    };

    if (!ids_path.empty()) {
        LineReader id_reader(ids_path, op);
        std::string line;
        while (id_reader.next(line)) {
            if (index.count(line))
                throw Error(kModule, op, id_reader.where() + ": duplicate id \"" + line + "\"");
            intern(line);
        }
    }

    LineReader reader(path, op);
    expect_header(reader, "origin,destination,flow", op);
    std::vector<Triplet> entries;
    std::string line;
    while (reader.next(line)) {
        std::vector<std::string> fields = expect_fields(line, 3, reader.where(), op);
        double flow = parse_double(fields[2], reader.where(), "flow", op);
        std::size_t i = intern(fields[0]);
        std::size_t j = intern(fields[1]);
        entries.emplace_back(static_cast<int>(i), static_cast<int>(j), flow);
    }
    return make_od_matrix(std::move(ids), entries);
}

void write_od_csv(const ODMatrix& m, const std::string& path) {
    const char* op = "write_od_csv";
    for (const std::string& id : m.ids) require_plain(id, "zone id", op);
    std::ofstream out = open_output(path, op);
    out << "origin,destination,flow\n";
    for (Eigen::Index row = 0; row < m.flows.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(m.flows, row); it; ++it)
            out << m.ids[static_cast<std::size_t>(it.row())] << ','
                << m.ids[static_cast<std::size_t>(it.col())] << ',' << format_double(it.value())
                << '\n';
    finish_output(out, path, op);
}

void write_id_list(const std::vector<std::string>& ids, const std::string& path) {
    const char* op = "write_id_list";
    for (const std::string& id : ids) require_plain(id, "zone id", op);
    std::ofstream out = open_output(path, op);
    for (const std::string& id : ids) out << id << '\n';
    finish_output(out, path, op);
}

void write_metric_csv(const MetricTable& t, const std::string& path) {
    const char* op = "write_metric_csv";
    for (const std::string& label : t.labels()) require_plain(label, "label", op);
    for (const MetricColumn& col : t.columns()) require_plain(col.name, "column name", op);

    std::ofstream out = open_output(path, op);
    out << "node";
    for (const MetricColumn& col : t.columns()) {
        out << ',' << col.name;
        if (col.normalized) out << ',' << col.name << "_norm";
        if (col.bins) out << ',' << col.name << "_q";
    }
    out << '\n';
    for (std::size_t i = 0; i < t.labels().size(); ++i) {
        out << t.labels()[i];
        for (const MetricColumn& col : t.columns()) {
            out << ',' << format_double(col.values[static_cast<Eigen::Index>(i)]);
            if (col.normalized)
                out << ',' << format_double((*col.normalized)[static_cast<Eigen::Index>(i)]);
            if (col.bins) out << ',' << std::to_string((*col.bins)[i]);
        }
        out << '\n';
    }
    finish_output(out, path, op);
}

NodeTable read_node_table_csv(const std::string& path) {
    const char* op = "read_node_table_csv";
    LineReader reader(path, op);
    std::string line;
    if (!reader.next(line))
        throw Error(kModule, op, path + ": missing header");
    std::vector<std::string> header = split_csv(line);
    if (header.empty() || header[0] != "node")
        throw Error(kModule, op, path + ": header must start with \"node\"");

    NodeTable table;
    std::unordered_set<std::string> names;
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (header[c].empty() || !names.insert(header[c]).second)
            throw Error(kModule, op,
                        path + ": empty or duplicate column \"" + header[c] + "\"");
        NodeColumn col;
        col.name = header[c];
        col.integral = header[c].size() > 2 && header[c].rfind("_q") == header[c].size() - 2;
        table.columns.push_back(std::move(col));
    }

    std::unordered_set<std::string> seen;
    while (reader.next(line)) {
        std::vector<std::string> fields = expect_fields(line, header.size(), reader.where(), op);
        if (fields[0].empty() || !seen.insert(fields[0]).second)
            throw Error(kModule, op,
                        reader.where() + ": empty or duplicate node \"" + fields[0] + "\"");
        table.labels.push_back(fields[0]);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            if (fields[c].empty())
                table.columns[c - 1].values.push_back(std::nullopt);
            else
                table.columns[c - 1].values.push_back(
                    parse_double(fields[c], reader.where(), "value", op));
        }
    }
    return table;
}

NodeTable to_node_table(const MetricTable& t) {
    NodeTable table;
    table.labels = t.labels();
    const std::size_t n = table.labels.size();
    for (const MetricColumn& col : t.columns()) {
        NodeColumn plain{col.name, {}, false};
        for (std::size_t i = 0; i < n; ++i)
            plain.values.emplace_back(col.values[static_cast<Eigen::Index>(i)]);
        table.columns.push_back(std::move(plain));
        if (col.normalized) {
            NodeColumn norm{col.name + "_norm", {}, false};
            for (std::size_t i = 0; i < n; ++i)
                norm.values.emplace_back((*col.normalized)[static_cast<Eigen::Index>(i)]);
            table.columns.push_back(std::move(norm));
        }
        if (col.bins) {
            NodeColumn bins{col.name + "_q", {}, true};
            for (std::size_t i = 0; i < n; ++i)
                bins.values.emplace_back(static_cast<double>((*col.bins)[i]));
            table.columns.push_back(std::move(bins));
        }
    }
    return table;
}

namespace {

ojson ring_coordinates(const Ring& ring) {
    ojson arr = ojson::array();
    for (const Point& p : ring) arr.push_back(ojson::array({p[0], p[1]}));
    return arr;
}

ojson polygon_coordinates(const Polygon& poly) {
    ojson arr = ojson::array();
    for (const Ring& ring : poly) arr.push_back(ring_coordinates(ring));
    return arr;
}

} // namespace

std::vector<std::string> export_metric_geojson(const Partition& p, const NodeTable& t,
                                               const std::string& path) {
    const char* op = "export_metric_geojson";
    validate_partition(p);
    if (!t.labels.empty())
        for (const NodeColumn& col : t.columns)
            if (col.values.size() != t.labels.size())
                throw Error(kModule, op, "column \"" + col.name + "\" holds " +
                                             std::to_string(col.values.size()) + " values for " +
                                             std::to_string(t.labels.size()) + " labels");

    std::unordered_map<std::string, std::size_t> region_of;
    for (std::size_t i = 0; i < p.regions.size(); ++i) region_of.emplace(p.regions[i].id, i);

    std::unordered_map<std::string, std::size_t> row_of;
    std::string unknown;
    for (std::size_t i = 0; i < t.labels.size(); ++i) {
        if (!region_of.count(t.labels[i]))
            unknown += (unknown.empty() ? "" : ", ") + ("\"" + t.labels[i] + "\"");
        if (!row_of.emplace(t.labels[i], i).second)
            throw Error(kModule, op, "duplicate table label \"" + t.labels[i] + "\"");
    }
    if (!unknown.empty())
        throw Error(kModule, op, "table labels outside the partition: " + unknown);

    std::vector<std::string> warnings;
    ojson root;
    root["type"] = "FeatureCollection";
    root["features"] = ojson::array();
    for (const Region& region : p.regions) {
        ojson feature;
        feature["type"] = "Feature";
        ojson props;
        props["id"] = region.id;
        if (region.population) props["population"] = *region.population;

        auto row = row_of.find(region.id);
        if (row == row_of.end() && !t.columns.empty())
            warnings.push_back("no metric values for region \"" + region.id + "\"");
        for (const NodeColumn& col : t.columns) {
            if (row == row_of.end() || !col.values[row->second]) {
                props[col.name] = nullptr;
            } else if (col.integral) {
                props[col.name] = static_cast<std::int64_t>(std::llround(*col.values[row->second]));
            } else {
                props[col.name] = *col.values[row->second];
            }
        }
        feature["properties"] = std::move(props);

        ojson geometry;
        if (region.multi || region.polygons.size() != 1) {
            geometry["type"] = "MultiPolygon";
            ojson coords = ojson::array();
            for (const Polygon& poly : region.polygons)
                coords.push_back(polygon_coordinates(poly));
            geometry["coordinates"] = std::move(coords);
        } else {
            geometry["type"] = "Polygon";
            geometry["coordinates"] = polygon_coordinates(region.polygons[0]);
        }
        feature["geometry"] = std::move(geometry);
        root["features"].push_back(std::move(feature));
    }

    std::string text;
    dump_json(root, text);
    text += '\n';
    std::ofstream out = open_output(path, op);
    out << text;
    finish_output(out, path, op);
    return warnings;
}

std::vector<std::string> export_metric_geojson(const Partition& p, const MetricTable& t,
                                               const std::string& path) {
    return export_metric_geojson(p, to_node_table(t), path);
}

void write_circulation_csv(const Graph& g, const CirculationField& f, const std::string& path) {
    const char* op = "write_circulation_csv";
    for (const std::string& label : g.labels()) require_plain(label, "label", op);
    std::ofstream out = open_output(path, op);
    out << "source,target,flow\n";
    for (Eigen::Index row = 0; row < f.values.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(f.values, row); it; ++it)
            out << g.label(static_cast<std::size_t>(it.row())) << ','
                << g.label(static_cast<std::size_t>(it.col())) << ','
                << format_double(it.value()) << '\n';
    finish_output(out, path, op);
}

void write_spectrum_csv(const SpectrumReport& r, const std::string& path) {
    const char* op = "write_spectrum_csv";
    std::ofstream out = open_output(path, op);
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        const std::complex<double>& ev = r.eigenvalues[i];
        out << i << ',' << format_double(ev.real());
        if (ev.imag() != 0.0)
            out << (ev.imag() < 0.0 ? '-' : '+') << format_double(std::abs(ev.imag())) << 'i';
        out << '\n';
    }
    finish_output(out, path, op);
}

GravitySpec read_gravity_nodes_csv(const std::string& path) {
    const char* op = "read_gravity_nodes_csv";
    LineReader reader(path, op);
    expect_header(reader, "id,x,y,mass,outflow", op);

    GravitySpec spec;
    std::vector<Point> coords;
    std::unordered_set<std::string> seen;
    std::string line;
    while (reader.next(line)) {
        std::vector<std::string> fields = expect_fields(line, 5, reader.where(), op);
        if (fields[0].empty() || !seen.insert(fields[0]).second)
            throw Error(kModule, op,
                        reader.where() + ": empty or duplicate id \"" + fields[0] + "\"");
        spec.ids.push_back(fields[0]);
        coords.push_back({parse_double(fields[1], reader.where(), "x", op),
                          parse_double(fields[2], reader.where(), "y", op)});
        spec.masses.push_back(parse_double(fields[3], reader.where(), "mass", op));
        spec.outflows.push_back(parse_double(fields[4], reader.where(), "outflow", op));
    }

    const Eigen::Index n = static_cast<Eigen::Index>(spec.ids.size());
    spec.distances = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double r = std::hypot(coords[static_cast<std::size_t>(i)][0] -
                                      coords[static_cast<std::size_t>(j)][0],
                                  coords[static_cast<std::size_t>(i)][1] -
                                      coords[static_cast<std::size_t>(j)][1]);
            spec.distances(i, j) = r;
            spec.distances(j, i) = r;
        }
    return spec;
}

void apply_distance_csv(GravitySpec& spec, const std::string& path) {
    const char* op = "apply_distance_csv";
    std::unordered_map<std::string, Eigen::Index> index;
    for (std::size_t i = 0; i < spec.ids.size(); ++i)
        index.emplace(spec.ids[i], static_cast<Eigen::Index>(i));

    LineReader reader(path, op);
    expect_header(reader, "origin,destination,distance", op);
    Eigen::MatrixXd distances = Eigen::MatrixXd::Zero(spec.distances.rows(),
                                                      spec.distances.cols());
    std::unordered_set<std::uint64_t> seen;
    std::string line;
    while (reader.next(line)) {
        std::vector<std::string> fields = expect_fields(line, 3, reader.where(), op);
        auto from = index.find(fields[0]);
        auto to = index.find(fields[1]);
        if (from == index.end() || to == index.end())
            throw Error(kModule, op, reader.where() + ": unknown id \"" +
                                         (from == index.end() ? fields[0] : fields[1]) + "\"");
        std::uint64_t key = static_cast<std::uint64_t>(from->second) * spec.ids.size() +
                            static_cast<std::uint64_t>(to->second);
        if (!seen.insert(key).second)
            throw Error(kModule, op, reader.where() + ": duplicate pair " + fields[0] + " -> " +
                                         fields[1]);
        distances(from->second, to->second) =
            parse_double(fields[2], reader.where(), "distance", op);
    }
    spec.distances = std::move(distances);
}

Eigen::VectorXd read_flux_csv(const std::string& path, const std::vector<std::string>& labels) {
    const char* op = "read_flux_csv";
    std::unordered_map<std::string, Eigen::Index> index;
    for (std::size_t i = 0; i < labels.size(); ++i)
        index.emplace(labels[i], static_cast<Eigen::Index>(i));

    LineReader reader(path, op);
    expect_header(reader, "id,flux", op);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(labels.size()));
    std::vector<bool> filled(labels.size(), false);
    std::string line;
    while (reader.next(line)) {
        std::vector<std::string> fields = expect_fields(line, 2, reader.where(), op);
        auto it = index.find(fields[0]);
        if (it == index.end())
            throw Error(kModule, op, reader.where() + ": unknown node \"" + fields[0] + "\"");
        if (filled[static_cast<std::size_t>(it->second)])
            throw Error(kModule, op, reader.where() + ": duplicate node \"" + fields[0] + "\"");
        filled[static_cast<std::size_t>(it->second)] = true;
        q[it->second] = parse_double(fields[1], reader.where(), "flux", op);
    }
    for (std::size_t i = 0; i < filled.size(); ++i)
        if (!filled[i])
            throw Error(kModule, op, path + ": no flux for node \"" + labels[i] + "\"");
    return q;
}

} // namespace mobgraph
