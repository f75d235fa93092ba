#include "mobgraph/construct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace mobgraph {

namespace {

constexpr const char* kModule = "construct";

struct Segment {
    Point a;
    Point b;
};

double dot(const Point& u, const Point& v) { return u[0] * v[0] + u[1] * v[1]; }
double cross(const Point& u, const Point& v) { return u[0] * v[1] - u[1] * v[0]; }
Point sub(const Point& u, const Point& v) { return {u[0] - v[0], u[1] - v[1]}; }
double norm2(const Point& u) { return dot(u, u); }

double point_segment_dist2(const Point& p, const Point& a, const Point& b) {
    Point ab = sub(b, a);
    double len2 = norm2(ab);
    if (len2 == 0.0) return norm2(sub(p, a));
    double t = std::clamp(dot(sub(p, a), ab) / len2, 0.0, 1.0);
    Point closest{a[0] + t * ab[0], a[1] + t * ab[1]};
    return norm2(sub(p, closest));
}

bool proper_intersection(const Segment& s, const Segment& t) {
    Point d1 = sub(s.b, s.a), d2 = sub(t.b, t.a);
    double c1 = cross(d1, sub(t.a, s.a));
    double c2 = cross(d1, sub(t.b, s.a));
    double c3 = cross(d2, sub(s.a, t.a));
    double c4 = cross(d2, sub(s.b, t.a));
    return ((c1 > 0.0 && c2 < 0.0) || (c1 < 0.0 && c2 > 0.0)) &&
           ((c3 > 0.0 && c4 < 0.0) || (c3 < 0.0 && c4 > 0.0));
}

double segment_dist2(const Segment& s, const Segment& t) {
    if (proper_intersection(s, t)) return 0.0;
    double d = point_segment_dist2(s.a, t.a, t.b);
    d = std::min(d, point_segment_dist2(s.b, t.a, t.b));
    d = std::min(d, point_segment_dist2(t.a, s.a, s.b));
    d = std::min(d, point_segment_dist2(t.b, s.a, s.b));
    return d;
}

// Rook contiguity: the two segments lie on a common line within tol and their
// projections overlap by more than tol.
bool collinear_overlap(const Segment& s, const Segment& t, double tol) {
    Point ds = sub(s.b, s.a);
    Point dt = sub(t.b, t.a);
    double ls = std::sqrt(norm2(ds));
    double lt = std::sqrt(norm2(dt));
    if (ls == 0.0 || lt == 0.0) return false;
    if (std::abs(cross(ds, sub(t.a, s.a))) / ls > tol) return false;
    if (std::abs(cross(ds, sub(t.b, s.a))) / ls > tol) return false;
    if (std::abs(cross(dt, sub(s.a, t.a))) / lt > tol) return false;
    if (std::abs(cross(dt, sub(s.b, t.a))) / lt > tol) return false;
    // project t's endpoints onto s's axis
    double t0 = dot(sub(t.a, s.a), ds) / ls;
    double t1 = dot(sub(t.b, s.a), ds) / ls;
    double lo = std::max(0.0, std::min(t0, t1));
    double hi = std::min(ls, std::max(t0, t1));
    return hi - lo > tol;
}

double ring_signed_area(const Ring& ring) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i)
        acc += cross(ring[i], ring[i + 1]);
    return 0.5 * acc;
}

void validate_ring(const Ring& ring, const std::string& region_id) {
    if (ring.size() < 4)
        throw Error(kModule, "validate_partition",
                    "region \"" + region_id + "\" has a ring with fewer than 3 vertices");
    if (ring.front() != ring.back())
        throw Error(kModule, "validate_partition",
                    "region \"" + region_id + "\" has an unclosed ring");
    std::vector<Point> distinct(ring.begin(), ring.end() - 1);
    for (const Point& pt : distinct)
        if (!std::isfinite(pt[0]) || !std::isfinite(pt[1]))
            throw Error(kModule, "validate_partition",
                        "region \"" + region_id + "\" has a non-finite coordinate");
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw Error(kModule, "validate_partition",
                    "region \"" + region_id + "\" has a ring with fewer than 3 distinct vertices");
}

std::vector<Segment> boundary_segments(const Region& region) {
    std::vector<Segment> out;
    for (const Polygon& poly : region.polygons)
        for (const Ring& ring : poly)
            for (std::size_t i = 0; i + 1 < ring.size(); ++i)
                out.push_back({ring[i], ring[i + 1]});
    return out;
}

struct BBox {
    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    bool overlaps(const BBox& o) const {
        return minx <= o.maxx && o.minx <= maxx && miny <= o.maxy && o.miny <= maxy;
    }
};

BBox region_bbox(const Region& region, double pad) {
    BBox box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Polygon& poly : region.polygons)
        for (const Ring& ring : poly)
            for (const Point& p : ring) {
                box.minx = std::min(box.minx, p[0]);
                box.miny = std::min(box.miny, p[1]);
                box.maxx = std::max(box.maxx, p[0]);
                box.maxy = std::max(box.maxy, p[1]);
            }
    box.minx -= pad;
    box.miny -= pad;
    box.maxx += pad;
    box.maxy += pad;
    return box;
}

} // namespace

void validate_partition(const Partition& p) {
    std::unordered_set<std::string> ids;
    for (const Region& region : p.regions) {
        if (region.id.empty())
            throw Error(kModule, "validate_partition", "region with empty id");
        if (!ids.insert(region.id).second)
            throw Error(kModule, "validate_partition", "duplicate region id \"" + region.id + "\"");
        if (region.polygons.empty())
            throw Error(kModule, "validate_partition",
                        "region \"" + region.id + "\" has no polygons");
        for (const Polygon& poly : region.polygons) {
            if (poly.empty())
                throw Error(kModule, "validate_partition",
                            "region \"" + region.id + "\" has a polygon with no rings");
            for (const Ring& ring : poly) validate_ring(ring, region.id);
        }
        if (region.population && (!std::isfinite(*region.population) || *region.population < 0.0))
            throw Error(kModule, "validate_partition",
                        "region \"" + region.id + "\" has a negative or non-finite population");
    }
}

Point centroid(const std::vector<Ring>& rings) {
    double area2 = 0.0; // twice the signed area
    double cx = 0.0, cy = 0.0;
    double scale = 1.0;
    for (const Ring& ring : rings) {
        if (ring.size() < 4 || ring.front() != ring.back())
            throw Error(kModule, "centroid", "ring is not closed or has fewer than 3 vertices");
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            double c = cross(ring[i], ring[i + 1]);
            area2 += c;
            cx += (ring[i][0] + ring[i + 1][0]) * c;
            cy += (ring[i][1] + ring[i + 1][1]) * c;
            scale = std::max({scale, std::abs(ring[i][0]), std::abs(ring[i][1])});
        }
    }
    if (std::abs(area2) <= 1e-12 * scale * scale)
        throw Error(kModule, "centroid", "degenerate geometry: signed area is (near) zero");
    return {cx / (3.0 * area2), cy / (3.0 * area2)};
}

Point region_centroid(const Region& region) {
    std::vector<Ring> rings;
    for (const Polygon& poly : region.polygons)
        for (std::size_t r = 0; r < poly.size(); ++r) {
            Ring ring = poly[r];
            double a = ring_signed_area(ring);
            bool want_positive = (r == 0); // outer ring first, holes after
            if ((want_positive && a < 0.0) || (!want_positive && a > 0.0))
                std::reverse(ring.begin(), ring.end());
            rings.push_back(std::move(ring));
        }
    try {
        return centroid(rings);
    } catch (const Error& e) {
        throw Error(kModule, "centroid", "region \"" + region.id + "\": " + e.cause());
    }
}

Graph region_adjacency_graph(const Partition& p, Contiguity contiguity, double tol) {
    validate_partition(p);
    if (p.regions.empty())
        throw Error(kModule, "region_adjacency_graph", "partition has no regions");
    if (!(tol >= 0.0))
        throw Error(kModule, "region_adjacency_graph", "tolerance must be non-negative");

    const std::size_t n = p.regions.size();
    std::vector<std::string> labels;
    std::vector<Point> coords;
    labels.reserve(n);
    coords.reserve(n);
    for (const Region& region : p.regions) {
        labels.push_back(region.id);
        coords.push_back(region_centroid(region));
    }

    std::vector<BBox> boxes(n);
    std::vector<std::vector<Segment>> segments(n);
    double cell = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        boxes[i] = region_bbox(p.regions[i], tol);
        segments[i] = boundary_segments(p.regions[i]);
        cell = std::max({cell, boxes[i].maxx - boxes[i].minx, boxes[i].maxy - boxes[i].miny});
    }
    if (cell <= 0.0) cell = 1.0;

    // Hash every region into the grid cells its box covers; since the cell
    // size is the largest box extent, each region touches at most 4 cells.
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
    auto cell_key = [](std::int64_t gx, std::int64_t gy) {
        return (static_cast<std::uint64_t>(gx) << 32) ^ (static_cast<std::uint64_t>(gy) & 0xffffffffu);
    };
    for (std::size_t i = 0; i < n; ++i) {
        auto x0 = static_cast<std::int64_t>(std::floor(boxes[i].minx / cell));
        auto x1 = static_cast<std::int64_t>(std::floor(boxes[i].maxx / cell));
        auto y0 = static_cast<std::int64_t>(std::floor(boxes[i].miny / cell));
        auto y1 = static_cast<std::int64_t>(std::floor(boxes[i].maxy / cell));
        for (std::int64_t gx = x0; gx <= x1; ++gx)
            for (std::int64_t gy = y0; gy <= y1; ++gy) grid[cell_key(gx, gy)].push_back(i);
    }

    std::unordered_set<std::uint64_t> candidates;
    for (const auto& [key, members] : grid)
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                std::size_t i = std::min(members[a], members[b]);
                std::size_t j = std::max(members[a], members[b]);
                if (!boxes[i].overlaps(boxes[j])) continue;
                candidates.insert(static_cast<std::uint64_t>(i) * n + j);
            }

    std::vector<std::uint64_t> ordered(candidates.begin(), candidates.end());
    std::sort(ordered.begin(), ordered.end());

    double tol2 = tol * tol;
    std::vector<Triplet> entries;
    for (std::uint64_t key : ordered) {
        auto i = static_cast<std::size_t>(key / n);
        auto j = static_cast<std::size_t>(key % n);
        bool adjacent = false;
        for (const Segment& s : segments[i]) {
            for (const Segment& t : segments[j]) {
                if (contiguity == Contiguity::Queen ? segment_dist2(s, t) <= tol2
                                                    : collinear_overlap(s, t, tol)) {
                    adjacent = true;
                    break;
                }
            }
            if (adjacent) break;
        }
        if (adjacent) {
            entries.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), 1.0);
            entries.emplace_back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i), 1.0);
        }
    }

    return Graph(false, std::move(labels), entries, std::move(coords));
}

ODMatrix make_od_matrix(std::vector<std::string> ids, const std::vector<Triplet>& flows) {
    const std::size_t n = ids.size();
    std::unordered_set<std::string> unique;
    for (const auto& id : ids) {
        if (id.empty()) throw Error(kModule, "make_od_matrix", "empty zone id");
        if (!unique.insert(id).second)
            throw Error(kModule, "make_od_matrix", "duplicate zone id \"" + id + "\"");
    }

    std::vector<Triplet> kept;
    kept.reserve(flows.size());
    std::unordered_set<std::uint64_t> seen;
    for (const auto& t : flows) {
        if (t.row() < 0 || t.col() < 0 || static_cast<std::size_t>(t.row()) >= n ||
            static_cast<std::size_t>(t.col()) >= n)
            throw Error(kModule, "make_od_matrix", "flow entry out of range");
        if (!std::isfinite(t.value()) || t.value() < 0.0)
            throw Error(kModule, "make_od_matrix",
                        "negative or non-finite flow on (" + ids[t.row()] + ", " + ids[t.col()] + ")");
        if (!seen.insert(static_cast<std::uint64_t>(t.row()) * n + t.col()).second)
            throw Error(kModule, "make_od_matrix",
                        "duplicate flow entry (" + ids[t.row()] + ", " + ids[t.col()] + ")");
        if (t.value() > 0.0) kept.push_back(t);
    }

    ODMatrix m;
    m.ids = std::move(ids);
    m.flows.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    m.flows.setFromTriplets(kept.begin(), kept.end());
    m.flows.makeCompressed();
    return m;
}

Graph od_graph(const ODMatrix& m, bool include_self_loops) {
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(m.flows.nonZeros()));
    for (Eigen::Index row = 0; row < m.flows.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(m.flows, row); it; ++it) {
            if (!include_self_loops && it.col() == row) continue;
            entries.emplace_back(row, it.col(), it.value());
        }
    return Graph(true, m.ids, entries);
}

} // namespace mobgraph
