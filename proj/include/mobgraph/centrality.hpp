#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobgraph/graph.hpp"

namespace mobgraph {

// Closeness: C(v) = (N-1) / sum of shortest-path costs from v (orientation
// Out) or to v (In). A single unreachable node zeroes the value.
Eigen::VectorXd closeness(const Graph& g, Orientation orientation = Orientation::Out);

// Harmonic: H(v) = (1/(N-1)) * sum of 1/d; unreachable nodes contribute 0,
// so H stays positive whenever anything is reachable. H(v) >= C(v) always
// (harmonic vs arithmetic mean).
Eigen::VectorXd harmonic(const Graph& g, Orientation orientation = Orientation::Out);

// Betweenness over ordered pairs: B(v) = sum over (a, b), a != b != v, of the
// fraction of minimum-cost paths a -> b passing through v. No halving on
// undirected graphs and no normalization. Pairs without any path are skipped.
// Path costs equal within a relative 1e-12 count as ties.
Eigen::VectorXd betweenness(const Graph& g);

struct PageRankOptions {
    double damping = 0.85;
    std::optional<Eigen::VectorXd> teleport; // uniform when unset
    double tol = 1e-12;
    long max_iter = 10000;
    // The recursive convention "(1-c) + c * sum(...)" is the eigenvector
    // solution scaled by N (for uniform teleport, no dead ends); this flag
    // reproduces it.
    bool scale_by_node_count = false;
};

// Power iteration on the damped transition matrix; rows with zero out-degree
// teleport according to b. Converges when the L1 step difference is <= tol;
// throws ConvergenceError (with the last iterate) otherwise.
Eigen::VectorXd pagerank(const Graph& g, const PageRankOptions& opts = {});

enum class NormalizeMethod { Max, MinMax };

// Max: divide by the maximum (values must be non-negative, not all zero).
// MinMax: (v - min) / (max - min); constant input maps to all zeros.
Eigen::VectorXd normalize(const Eigen::VectorXd& values,
                          NormalizeMethod method = NormalizeMethod::Max);

// Quartile bins 1-4 with inclusive-rank (type 2) quantiles: bin k holds
// values in (q_{k-1}, q_k], q_0 = -inf. Ties share a bin. Needs n >= 4.
std::vector<int> quartile_bins(const Eigen::VectorXd& values);

struct MetricColumn {
    std::string name;
    Eigen::VectorXd values;
    std::optional<Eigen::VectorXd> normalized;
    std::optional<std::vector<int>> bins;
};

// Named per-node metric columns sharing one label vector; the CSV layout is
// `node,<metric>[,<metric>_norm][,<metric>_q]` per column in insertion order.
class MetricTable {
public:
    explicit MetricTable(std::vector<std::string> labels);

    void add(const std::string& name, const Eigen::VectorXd& values);
    void attach_normalized(const std::string& name, NormalizeMethod method);
    void attach_quartiles(const std::string& name);

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<MetricColumn>& columns() const noexcept { return columns_; }
    const MetricColumn& column(const std::string& name) const;

private:
    MetricColumn& find(const std::string& name, const char* op);
    std::vector<std::string> labels_;
    std::vector<MetricColumn> columns_;
};

} // namespace mobgraph
