#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobgraph/graph.hpp"

namespace mobgraph {

// Closed ring of planar points: first vertex repeated at the end, at least 3
// distinct vertices. A polygon is an outer ring followed by hole rings
// (GeoJSON layout); a region may span several polygons.
using Ring = std::vector<Point>;
using Polygon = std::vector<Ring>;

struct Region {
    std::string id;
    std::vector<Polygon> polygons;
    std::optional<double> population;
    bool multi = false; // came in as (or should serialize as) a MultiPolygon
};

struct Partition {
    std::vector<Region> regions;
};

// Checks region ids (unique, non-empty), ring closure, vertex counts and
// coordinate finiteness. Ops taking a Partition run this first.
void validate_partition(const Partition& p);

// Area-weighted centroid over rings via the shoelace formula. Orientation
// carries sign, so clockwise rings subtract (holes). Rejects rings whose
// total signed area vanishes.
Point centroid(const std::vector<Ring>& rings);

// Centroid of a region: outer rings are forced counter-clockwise and holes
// clockwise (the GeoJSON layout tells us which is which), then the signed
// shoelace centroid is taken over all rings of all polygons.
Point region_centroid(const Region& region);

enum class Contiguity { Queen, Rook };

// Region adjacency graph: undirected, unit weights, one node per region in
// partition order, node coordinates at region centroids.
//   queen: boundaries come within `tol` of each other anywhere;
//   rook:  boundaries share a near-collinear segment overlap longer than `tol`.
// Rook adjacency implies queen adjacency.
Graph region_adjacency_graph(const Partition& p, Contiguity contiguity = Contiguity::Queen,
                             double tol = 1e-9);

// Origin-destination flows between labelled zones. Entries are finite,
// non-negative; exact zeros are not stored. The diagonal (intra-zonal flow)
// may be present.
struct ODMatrix {
    std::vector<std::string> ids;
    SparseMatrix flows;
};

ODMatrix make_od_matrix(std::vector<std::string> ids, const std::vector<Triplet>& flows);

// Directed flow graph: one node per zone (isolated zones retained), one arc
// per positive flow. Diagonal entries are dropped unless include_self_loops.
Graph od_graph(const ODMatrix& m, bool include_self_loops = false);

} // namespace mobgraph
