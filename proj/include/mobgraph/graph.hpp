#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mobgraph/error.hpp"

namespace mobgraph {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;
using Point = std::array<double, 2>;

struct WeightedEdge {
    std::string source;
    std::string target;
    double weight = 1.0;
};

enum class Orientation { Out, In };
enum class ComponentMode { Weak, Strong };

// Weighted graph over labelled nodes. Adjacency is kept as row-major CSR;
// stored weights are strictly positive (absent entry == weight 0), and
// undirected graphs keep the matrix exactly symmetric. Instances are
// immutable after construction: every transformation returns a new graph.
class Graph {
public:
    // Entries are the full matrix content: for an undirected graph both
    // (i,j) and (j,i) must be present with identical weights. Rejects
    // duplicate entries, non-positive weights, non-unique or empty labels,
    // and (if given) coordinate vectors whose length differs from labels.
    Graph(bool directed, std::vector<std::string> labels,
          const std::vector<Triplet>& entries,
          std::optional<std::vector<Point>> coords = std::nullopt);

    // Builds from an edge list. Each undirected edge is listed once and
    // stored symmetrically; listing both (a,b) and (b,a) counts as a
    // duplicate. Labels not in `extra_labels` are taken in first-appearance
    // order; `extra_labels` (optional) is placed first and may add isolated
    // nodes.
    static Graph from_edges(const std::vector<WeightedEdge>& edges, bool directed,
                            const std::vector<std::string>& extra_labels = {});

    bool directed() const noexcept { return directed_; }
    std::size_t node_count() const noexcept { return labels_.size(); }
    // Stored nonzeros; an undirected edge between distinct nodes counts twice.
    std::size_t nonzero_count() const noexcept { return static_cast<std::size_t>(adj_.nonZeros()); }
    const SparseMatrix& adjacency() const noexcept { return adj_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::optional<std::vector<Point>>& coords() const noexcept { return coords_; }

    std::size_t index_of(const std::string& label) const;          // throws on unknown label
    std::optional<std::size_t> try_index_of(const std::string& label) const noexcept;

private:
    bool directed_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> label_index_;
    SparseMatrix adj_;
    std::optional<std::vector<Point>> coords_;
};

struct DegreeVector {
    Orientation orientation;
    Eigen::VectorXd values; // weighted degree; Out = row sums, In = column sums
};

DegreeVector degrees(const Graph& g, Orientation orientation);

// Single-source shortest path costs (Dijkstra over positive weights).
// Unreachable nodes get +infinity; the source gets 0.
Eigen::VectorXd shortest_path_distances(const Graph& g, std::size_t source);

struct ComponentDecomposition {
    ComponentMode mode;
    std::vector<std::size_t> assignment; // node index -> component id
    std::vector<std::size_t> sizes;      // component id -> node count
    std::size_t count() const noexcept { return sizes.size(); }
};

// Component ids are assigned by first occurrence when scanning nodes in
// index order, so id 0 always contains node 0. On undirected graphs the
// strong decomposition coincides with the weak one.
ComponentDecomposition components(const Graph& g, ComponentMode mode);

struct SubgraphExtraction {
    Graph graph;
    std::vector<std::size_t> kept;         // original indices, ascending
    std::vector<std::int64_t> old_to_new;  // -1 for dropped nodes
};

// Restriction to the largest component; ties go to the component holding the
// smallest original node index. Labels and coordinates carry over.
SubgraphExtraction largest_component_subgraph(const Graph& g, ComponentMode mode);

// Drops nodes whose structural degree (distinct neighbours in the underlying
// undirected graph; a self-loop counts once) is <= threshold. With
// iterate=true repeats until stable. May return an empty graph.
SubgraphExtraction prune_low_degree(const Graph& g, std::size_t threshold,
                                    bool iterate = false);

// Row-stochastic P = D^-1 A. Rejects graphs with dead-end nodes (zero
// weighted out-degree), naming them.
SparseMatrix transition_matrix(const Graph& g);

// Stored (row, col) positions in row-major order.
std::vector<std::pair<std::size_t, std::size_t>> sparsity_pattern(const Graph& g);

// Same structure, each weight w replaced by 1/w (flow read as distance).
Graph reciprocal_weights(const Graph& g);

// Transposed adjacency; labels and coordinates carry over. Undirected graphs
// come back unchanged.
Graph reversed(const Graph& g);

// Restriction to `kept` (original node indices, strictly ascending).
SubgraphExtraction induced_subgraph(const Graph& g, const std::vector<std::size_t>& kept);

// Exact structural + value symmetry of the stored adjacency.
bool is_symmetric(const SparseMatrix& m);

} // namespace mobgraph
