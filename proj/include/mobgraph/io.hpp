#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobgraph/centrality.hpp"
#include "mobgraph/construct.hpp"
#include "mobgraph/flows.hpp"
#include "mobgraph/graph.hpp"
#include "mobgraph/laplacian.hpp"
#include "mobgraph/spectral.hpp"

namespace mobgraph {

// Shortest decimal string that parses back to exactly the same double. Every
// writer below goes through this, so identical data yields byte-identical
// files run after run.
std::string format_double(double v);

// --- edge lists -------------------------------------------------------------
// One `source,target,weight` line per edge, `#` starts a comment. The writer
// leads with `# directed` / `# undirected` followed by one `# node: <label>`
// line per node in label order, so node order, isolated nodes and
// directedness all survive a round trip. The reader honours those hints;
// `directed` overrides them and is required when a plain file has none.
// Labels must not contain commas or line breaks (no quoting on either side).
Graph read_edge_list(const std::string& path, std::optional<bool> directed = std::nullopt);
void write_edge_list(const Graph& g, const std::string& path);

// MatrixMarket `coordinate real general`, 1-based indices, row-major order.
void write_matrix_market(const SparseMatrix& m, const std::string& path);
// MatrixMarket `array real general` (dense, column-major values).
void write_matrix_market(const Eigen::MatrixXd& m, const std::string& path);

// --- partitions ---------------------------------------------------------------
// GeoJSON FeatureCollection of Polygon / MultiPolygon features. Each feature
// needs a string property `id`; a numeric `population` is kept when present.
// Coordinates are taken as already-projected planar units.
Partition read_partition_geojson(const std::string& path);

// --- origin-destination matrices ----------------------------------------------
// CSV with header `origin,destination,flow`. Zone order is first appearance
// (origin before destination, line by line); an optional id-list file (one id
// per line, `#` comments) is prepended to retain zones that appear in no
// flow, and to pin a zone order.
ODMatrix read_od_csv(const std::string& path, const std::string& ids_path = "");
void write_od_csv(const ODMatrix& m, const std::string& path);
void write_id_list(const std::vector<std::string>& ids, const std::string& path);

// --- per-node tables ------------------------------------------------------------
// `node,<metric>[,<metric>_norm][,<metric>_q]` in column insertion order.
void write_metric_csv(const MetricTable& t, const std::string& path);

// Generic per-node column, e.g. a metric CSV read back from disk. A column
// named `*_q` holds quartile bins and is written as integers.
struct NodeColumn {
    std::string name;
    std::vector<std::optional<double>> values; // nullopt -> empty cell / null
    bool integral = false;
};

struct NodeTable {
    std::vector<std::string> labels;
    std::vector<NodeColumn> columns;
};

NodeTable read_node_table_csv(const std::string& path);
NodeTable to_node_table(const MetricTable& t);

// --- choropleth GeoJSON -----------------------------------------------------------
// FeatureCollection in partition order: original geometry, `id` (and
// `population` when known) plus one property per table column. Regions absent
// from the table get null metric properties and one warning line in the
// result; table labels unknown to the partition are an error listing them.
std::vector<std::string> export_metric_geojson(const Partition& p, const NodeTable& t,
                                               const std::string& path);
std::vector<std::string> export_metric_geojson(const Partition& p, const MetricTable& t,
                                               const std::string& path);

// --- spectral artifacts --------------------------------------------------------
// Stationary edge flows as `source,target,flow`, row-major.
void write_circulation_csv(const Graph& g, const CirculationField& f, const std::string& path);

// `index,eigenvalue` with 0-based index, eigenvalues in the report's order;
// complex values render as `re+imi` / `re-imi`.
void write_spectrum_csv(const SpectrumReport& r, const std::string& path);

// --- gravity & diffusion inputs ---------------------------------------------------
// Node CSV with header `id,x,y,mass,outflow`; distances filled in as the
// Euclidean ones between the (x, y) coordinates.
GravitySpec read_gravity_nodes_csv(const std::string& path);

// Replaces the whole distance matrix of `spec` with entries from a CSV with
// header `origin,destination,distance` (pairs the file omits become unset, so
// the gravity evaluation will reject them if an origin needs them).
void apply_distance_csv(GravitySpec& spec, const std::string& path);

// CSV with header `id,flux`; every label must appear exactly once.
Eigen::VectorXd read_flux_csv(const std::string& path, const std::vector<std::string>& labels);

} // namespace mobgraph
