#include "mobgraph/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>

#include "mobgraph/error.hpp"
#include "mobgraph/graph.hpp"
#include "mobgraph/io.hpp"
#include "mobgraph/spectral.hpp"

namespace mobgraph {

namespace {

constexpr const char* kModule = "cli";

enum class InputKind { GeoJson, Od, Edges };

LaplacianKind parse_kind(const std::string& name) {
    for (LaplacianKind k :
         {LaplacianKind::Combinatorial, LaplacianKind::Normalized,
          LaplacianKind::CombinatorialDirected, LaplacianKind::Symmetrized,
          LaplacianKind::CombinatorialSymmetrized, LaplacianKind::Diplacian})
        if (name == kind_name(k)) return k;
    throw Error(kModule, "parse", "unknown laplacian kind \"" + name + "\"");
}

// `auto` resolution: .geojson/.json by extension, OD by its mandatory header,
// edge list otherwise.
InputKind detect_format(const RunConfig& c) {
    if (c.input_format == "geojson") return InputKind::GeoJson;
    if (c.input_format == "od") return InputKind::Od;
    if (c.input_format == "edges") return InputKind::Edges;

    std::size_t dot = c.input.rfind('.');
    std::string ext = dot == std::string::npos ? "" : c.input.substr(dot);
    if (ext == ".geojson" || ext == ".json") return InputKind::GeoJson;

    std::ifstream in(c.input, std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (line == "origin,destination,flow") return InputKind::Od;
        break;
    }
    return InputKind::Edges;
}

Graph load_raw_graph(const RunConfig& c, InputKind kind) {
    switch (kind) {
    case InputKind::GeoJson:
        return region_adjacency_graph(read_partition_geojson(c.input), c.contiguity);
    case InputKind::Od:
        return od_graph(read_od_csv(c.input, c.ids_path), c.include_self_loops);
    case InputKind::Edges:
        return read_edge_list(c.input, c.directed);
    }
    throw Error(kModule, "load", "unreachable input kind");
}

Graph load_graph(const RunConfig& c, std::optional<InputKind> forced = std::nullopt) {
    Graph g = load_raw_graph(c, forced ? *forced : detect_format(c));
    if (c.prune_degree >= 0)
        g = prune_low_degree(g, static_cast<std::size_t>(c.prune_degree), c.prune_iterate).graph;
    if (c.largest_scc) g = largest_component_subgraph(g, ComponentMode::Strong).graph;
    return g;
}

std::string artifact_path(const RunConfig& c, const std::string& name) {
    std::filesystem::create_directories(c.out_dir);
    return (std::filesystem::path(c.out_dir) / name).string();
}

void cmd_build(const RunConfig& c, std::ostream& out, InputKind kind) {
    Graph g = load_graph(c, kind);
    std::string edges = artifact_path(c, "edges.csv");
    write_edge_list(g, edges);
    out << "wrote " << edges << " (" << g.node_count() << " nodes)\n";
    if (c.export_matrix) {
        std::string mtx = artifact_path(c, "adjacency.mtx");
        write_matrix_market(g.adjacency(), mtx);
        out << "wrote " << mtx << '\n';
    }
}

void cmd_metrics(const RunConfig& c, std::ostream& out) {
    Graph g = load_graph(c);
    // The reciprocal transform turns flow volumes into traversal costs; it
    // only makes sense for the shortest-path metrics, so pagerank keeps the
    // raw weights either way.
    Graph dist = c.invert_weights ? reciprocal_weights(g) : g;

    MetricTable t(g.labels());
    for (const std::string& name : c.metrics) {
        if (name == "closeness") {
            t.add(name, closeness(dist));
        } else if (name == "harmonic") {
            t.add(name, harmonic(dist));
        } else if (name == "betweenness") {
            t.add(name, betweenness(dist));
        } else if (name == "pagerank") {
            PageRankOptions opts;
            opts.damping = c.damping;
            opts.tol = c.tol;
            t.add(name, pagerank(g, opts));
        } else {
            throw Error(kModule, "metrics", "unknown metric \"" + name + "\"");
        }
    }
    if (c.normalize)
        for (const std::string& name : c.metrics) t.attach_normalized(name, *c.normalize);
    if (c.quartiles)
        for (const std::string& name : c.metrics) t.attach_quartiles(name);

    std::string path = artifact_path(c, "metrics.csv");
    write_metric_csv(t, path);
    out << "wrote " << path << " (" << g.node_count() << " nodes)\n";
}

void cmd_spectral(const RunConfig& c, std::ostream& out) {
    Graph g = load_graph(c);
    PerronVector pv = perron_vector(g, c.tol);
    CirculationField f = circulation(g, pv);

    std::string circ = artifact_path(c, "circulation.csv");
    write_circulation_csv(g, f, circ);
    MetricTable t(g.labels());
    t.add("perron", pv.phi);
    t.add("avg_circulation", average_node_circulation(g, f));
    t.add("imbalance", circulation_imbalance(f));
    std::string nodes = artifact_path(c, "spectral_nodes.csv");
    write_metric_csv(t, nodes);

    out << "wrote " << circ << '\n';
    out << "wrote " << nodes << '\n';
    out << "stationarity residual " << format_double(pv.residual) << '\n';
}

void cmd_laplacian(const RunConfig& c, std::ostream& out) {
    Graph g = load_graph(c);
    for (LaplacianKind kind : c.kinds) {
        SpectrumReport r = spectrum_report(g, kind);
        std::string base = kind_name(kind);
        std::string path = artifact_path(c, "spectrum-" + base + ".csv");
        write_spectrum_csv(r, path);
        out << "wrote " << path << '\n';
        if (c.export_matrix) {
            std::string mtx = artifact_path(c, "laplacian-" + base + ".mtx");
            write_matrix_market(laplacian(g, kind), mtx);
            out << "wrote " << mtx << '\n';
        }
        out << base << ": symmetric=" << (r.is_symmetric ? "yes" : "no")
            << " defect=" << format_double(r.symmetry_defect)
            << " psd=" << (r.is_psd ? (*r.is_psd ? "yes" : "no") : "n/a")
            << " min_real=" << format_double(r.min_real)
            << " spectral_radius=" << format_double(r.spectral_radius) << '\n';
    }
}

void cmd_gravity(const RunConfig& c, std::ostream& out) {
    GravitySpec spec = read_gravity_nodes_csv(c.input);
    if (!c.distances_path.empty()) apply_distance_csv(spec, c.distances_path);
    spec.beta1 = c.beta1;
    spec.beta2 = c.beta2;
    spec.deterrence = c.deterrence;

    ODMatrix m = gravity_flows(spec);
    std::string flows = artifact_path(c, "flows.csv");
    write_od_csv(m, flows);
    std::string zones = artifact_path(c, "zones.txt");
    write_id_list(m.ids, zones);
    out << "wrote " << flows << " (" << m.ids.size() << " zones)\n";
    out << "wrote " << zones << '\n';
}

void cmd_cpc(const RunConfig& c, std::ostream& out) {
    ODMatrix predicted = read_od_csv(c.input, c.ids_path);
    ODMatrix observed = read_od_csv(c.second, c.second_ids_path);
    out << format_double(cpc(predicted, observed)) << '\n';
}

void cmd_fick(const RunConfig& c, std::ostream& out) {
    Graph g = load_graph(c);
    FluxVector flux{read_flux_csv(c.flux_path, g.labels()), c.diffusivity};
    Eigen::VectorXd estimate = estimate_population(g, flux);

    MetricTable t(g.labels());
    t.add("population", estimate);
    std::string path = artifact_path(c, "population.csv");
    write_metric_csv(t, path);
    out << "wrote " << path << '\n';
}

void cmd_export(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Partition p = read_partition_geojson(c.partition_path);
    NodeTable t = read_node_table_csv(c.table_path);
    std::string path = artifact_path(c, "choropleth.geojson");
    std::vector<std::string> warnings = export_metric_geojson(p, t, path);
    for (const std::string& w : warnings) err << "warning: " << w << '\n';
    out << "wrote " << path << " (" << p.regions.size() << " features)\n";
}

} // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.command == "build-ra") cmd_build(c, out, InputKind::GeoJson);
        else if (c.command == "build-od") cmd_build(c, out, InputKind::Od);
        else if (c.command == "metrics") cmd_metrics(c, out);
        else if (c.command == "spectral") cmd_spectral(c, out);
        else if (c.command == "laplacian") cmd_laplacian(c, out);
        else if (c.command == "gravity") cmd_gravity(c, out);
        else if (c.command == "cpc") cmd_cpc(c, out);
        else if (c.command == "fick") cmd_fick(c, out);
        else if (c.command == "export") cmd_export(c, out, err);
        else throw Error(kModule, "run", "unknown command \"" + c.command + "\"");
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string contiguity = "queen";
    std::string normalize;
    std::string deterrence = "power";
    std::vector<std::string> kinds = {"combinatorial"};

    CLI::App app{"mobility-network analysis: adjacency & flow graphs, centralities, "
                 "spectra, gravity flows and diffusion estimates"};
    app.set_help_all_flag("--help-all", "expand all subcommand help");
    app.require_subcommand(0, 1);

    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_dir, "output directory (created if absent)")
            ->capture_default_str();
    };
    auto add_graph_input = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", cfg.input, what)->required();
        sub->add_option("--format", cfg.input_format,
                        "input interpretation: auto, geojson, od or edges")
            ->check(CLI::IsMember({"auto", "geojson", "od", "edges"}))
            ->capture_default_str();
        sub->add_option("--contiguity", contiguity, "region adjacency rule for partitions")
            ->check(CLI::IsMember({"queen", "rook"}))
            ->capture_default_str();
        sub->add_option("--ids", cfg.ids_path, "id-list sidecar retaining flowless zones (OD)");
        sub->add_flag("--include-self-loops", cfg.include_self_loops,
                      "keep diagonal OD entries as self-loops");
        auto* dir = sub->add_flag_callback(
            "--directed", [&] { cfg.directed = true; }, "read the edge list as directed");
        sub->add_flag_callback(
               "--undirected", [&] { cfg.directed = false; },
               "read the edge list as undirected")
            ->excludes(dir);
    };
    auto add_preprocess = [&](CLI::App* sub) {
        sub->add_option("--prune-degree", cfg.prune_degree,
                        "drop nodes whose structural degree is <= this")
            ->check(CLI::NonNegativeNumber);
        sub->add_flag("--iterate", cfg.prune_iterate, "repeat the pruning until stable");
        sub->add_flag("--largest-scc", cfg.largest_scc,
                      "keep only the largest strongly connected component");
    };
    auto arm = [&](CLI::App* sub, const char* name) {
        sub->callback([&cfg, name] { cfg.command = name; });
    };

    CLI::App* build_ra = app.add_subcommand(
        "build-ra", "region adjacency graph from a GeoJSON partition -> edges.csv");
    build_ra->add_option("input", cfg.input, "partition GeoJSON")->required();
    build_ra->add_option("--contiguity", contiguity, "queen or rook adjacency")
        ->check(CLI::IsMember({"queen", "rook"}))
        ->capture_default_str();
    add_preprocess(build_ra);
    build_ra->add_flag("--export-matrix", cfg.export_matrix,
                       "also write the adjacency as MatrixMarket");
    add_out(build_ra);
    arm(build_ra, "build-ra");

    CLI::App* build_od = app.add_subcommand(
        "build-od", "origin-destination digraph from a flow CSV -> edges.csv");
    build_od->add_option("input", cfg.input, "CSV with header origin,destination,flow")
        ->required();
    build_od->add_option("--ids", cfg.ids_path, "id-list sidecar retaining flowless zones");
    build_od->add_flag("--include-self-loops", cfg.include_self_loops,
                       "keep diagonal OD entries as self-loops");
    add_preprocess(build_od);
    build_od->add_flag("--export-matrix", cfg.export_matrix,
                       "also write the adjacency as MatrixMarket");
    add_out(build_od);
    arm(build_od, "build-od");

    CLI::App* metrics = app.add_subcommand("metrics", "per-node centrality table -> metrics.csv");
    add_graph_input(metrics, "graph input: GeoJSON partition, OD CSV or edge list");
    add_preprocess(metrics);
    metrics->add_option("--metrics", cfg.metrics,
                        "closeness, harmonic, betweenness, pagerank (comma-separated; default "
                        "closeness,betweenness,pagerank)")
        ->delimiter(',');
    metrics->add_flag("--invert-weights", cfg.invert_weights,
                      "use 1/weight as traversal cost for the distance metrics (OD flows)");
    metrics->add_option("--normalize", normalize, "attach normalized columns")
        ->check(CLI::IsMember({"max", "minmax"}));
    metrics->add_flag("--quartiles", cfg.quartiles, "attach quartile bin columns");
    metrics->add_option("--damping", cfg.damping, "pagerank damping factor")
        ->capture_default_str();
    metrics->add_option("--tol", cfg.tol, "pagerank convergence tolerance")
        ->capture_default_str();
    add_out(metrics);
    arm(metrics, "metrics");

    CLI::App* spectral = app.add_subcommand(
        "spectral", "stationary distribution & circulation -> circulation.csv, spectral_nodes.csv");
    add_graph_input(spectral, "graph input: GeoJSON partition, OD CSV or edge list");
    add_preprocess(spectral);
    spectral->add_option("--tol", cfg.tol, "stationarity residual target")
        ->capture_default_str();
    add_out(spectral);
    arm(spectral, "spectral");

    CLI::App* lap = app.add_subcommand(
        "laplacian", "laplacian spectra -> spectrum-<kind>.csv (+ optional MatrixMarket)");
    add_graph_input(lap, "graph input: GeoJSON partition, OD CSV or edge list");
    add_preprocess(lap);
    lap->add_option("--kind", kinds,
                    "combinatorial, normalized, combinatorial-directed, symmetrized, "
                    "combinatorial-symmetrized, diplacian (comma-separated)")
        ->delimiter(',')
        ->check(CLI::IsMember({"combinatorial", "normalized", "combinatorial-directed",
                               "symmetrized", "combinatorial-symmetrized", "diplacian"}));
    lap->add_flag("--export-matrix", cfg.export_matrix,
                  "also write each matrix as MatrixMarket");
    add_out(lap);
    arm(lap, "laplacian");

    CLI::App* gravity = app.add_subcommand(
        "gravity", "singly-constrained gravity flows -> flows.csv, zones.txt");
    gravity->add_option("input", cfg.input, "node CSV with header id,x,y,mass,outflow")
        ->required();
    gravity->add_option("--distances", cfg.distances_path,
                        "CSV origin,destination,distance replacing the Euclidean distances");
    gravity->add_option("--deterrence", deterrence, "power or exp")
        ->check(CLI::IsMember({"power", "exp"}))
        ->capture_default_str();
    gravity->add_option("--beta1", cfg.beta1, "mass exponent")->capture_default_str();
    gravity->add_option("--beta2", cfg.beta2, "deterrence exponent")->capture_default_str();
    add_out(gravity);
    arm(gravity, "gravity");

    CLI::App* cpc_cmd = app.add_subcommand("cpc", "common part of commuters of two OD CSVs");
    cpc_cmd->add_option("predicted", cfg.input, "first OD CSV")->required();
    cpc_cmd->add_option("observed", cfg.second, "second OD CSV")->required();
    cpc_cmd->add_option("--ids-a", cfg.ids_path, "id-list sidecar of the first matrix");
    cpc_cmd->add_option("--ids-b", cfg.second_ids_path, "id-list sidecar of the second matrix");
    arm(cpc_cmd, "cpc");

    CLI::App* fick = app.add_subcommand(
        "fick", "population estimate from net fluxes by diffusion -> population.csv");
    add_graph_input(fick, "undirected graph input");
    add_preprocess(fick);
    fick->add_option("--flux", cfg.flux_path, "CSV with header id,flux")->required();
    fick->add_option("--diffusivity", cfg.diffusivity, "diffusion coefficient k > 0")
        ->capture_default_str();
    add_out(fick);
    arm(fick, "fick");

    CLI::App* exp_cmd = app.add_subcommand(
        "export", "join a metric table onto partition geometry -> choropleth.geojson");
    exp_cmd->add_option("--partition", cfg.partition_path, "partition GeoJSON")->required();
    exp_cmd->add_option("--table", cfg.table_path, "metrics CSV to join")->required();
    add_out(exp_cmd);
    arm(exp_cmd, "export");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    if (cfg.command.empty()) {
        out << app.help();
        return 0;
    }

    cfg.contiguity = contiguity == "rook" ? Contiguity::Rook : Contiguity::Queen;
    if (!normalize.empty())
        cfg.normalize = normalize == "minmax" ? NormalizeMethod::MinMax : NormalizeMethod::Max;
    cfg.deterrence = deterrence == "exp" ? Deterrence::Exponential : Deterrence::Power;
    cfg.kinds.clear();
    for (const std::string& name : kinds) cfg.kinds.push_back(parse_kind(name));

    return run(cfg, out, err);
}

} // namespace mobgraph
