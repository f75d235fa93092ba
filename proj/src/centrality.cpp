#include "mobgraph/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "mobgraph/parallel.hpp"

namespace mobgraph {

namespace {

constexpr const char* kModule = "centrality";
constexpr double kInf = std::numeric_limits<double>::infinity();

// Betweenness partial sums are accumulated per fixed source block and merged
// in block order, so results are bit-identical for any worker count.
constexpr std::size_t kSourceBlocks = 64;

void require_at_least_two(const Graph& g, const char* op) {
    if (g.node_count() < 2)
        throw Error(kModule, op, "graph needs at least 2 nodes");
}

template <typename PerSource>
Eigen::VectorXd distance_metric(const Graph& g, Orientation orientation, PerSource fold) {
    const std::size_t n = g.node_count();
    // in-variant: distances to v are distances from v in the reversed graph
    const Graph work = orientation == Orientation::Out ? g : reversed(g);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    parallel_for(n, [&](std::size_t v) {
        Eigen::VectorXd dist = shortest_path_distances(work, v);
        out[static_cast<Eigen::Index>(v)] = fold(dist, v);
    });
    return out;
}

} // namespace

Eigen::VectorXd closeness(const Graph& g, Orientation orientation) {
    require_at_least_two(g, "closeness");
    const double n_minus_1 = static_cast<double>(g.node_count()) - 1.0;
    return distance_metric(g, orientation, [&](const Eigen::VectorXd& dist, std::size_t v) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < dist.size(); ++i) {
            if (static_cast<std::size_t>(i) == v) continue;
            if (dist[i] == kInf) return 0.0; // one unreachable node zeroes closeness
            total += dist[i];
        }
        return total > 0.0 ? n_minus_1 / total : 0.0;
    });
}

Eigen::VectorXd harmonic(const Graph& g, Orientation orientation) {
    require_at_least_two(g, "harmonic");
    const double n_minus_1 = static_cast<double>(g.node_count()) - 1.0;
    return distance_metric(g, orientation, [&](const Eigen::VectorXd& dist, std::size_t v) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < dist.size(); ++i) {
            if (static_cast<std::size_t>(i) == v || dist[i] == kInf) continue;
            total += 1.0 / dist[i];
        }
        return total / n_minus_1;
    });
}

namespace {

// One Brandes pass: Dijkstra from s building the shortest-path DAG, then
// dependency accumulation in reverse settle order.
void betweenness_from_source(const SparseMatrix& adj, std::size_t s,
                             std::vector<double>& score) {
    const auto n = static_cast<std::size_t>(adj.rows());
    std::vector<double> dist(n, kInf), sigma(n, 0.0), delta(n, 0.0);
    std::vector<std::vector<std::uint32_t>> preds(n);
    std::vector<std::size_t> order;
    order.reserve(n);
    std::vector<char> settled(n, 0);

    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    sigma[s] = 1.0;
    heap.emplace(0.0, s);

    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (settled[v]) continue;
        settled[v] = 1;
        order.push_back(v);
        for (SparseMatrix::InnerIterator it(adj, static_cast<Eigen::Index>(v)); it; ++it) {
            const auto w = static_cast<std::size_t>(it.col());
            if (w == v) continue;
            const double cand = dist[v] + it.value();
            if (dist[w] == kInf) {
                dist[w] = cand;
                sigma[w] = sigma[v];
                preds[w].assign(1, static_cast<std::uint32_t>(v));
                heap.emplace(cand, w);
                continue;
            }
            const double eps = 1e-12 * std::max(cand, dist[w]);
            if (cand < dist[w] - eps) {
                dist[w] = cand;
                sigma[w] = sigma[v];
                preds[w].assign(1, static_cast<std::uint32_t>(v));
                heap.emplace(cand, w);
            } else if (cand <= dist[w] + eps) {
                sigma[w] += sigma[v];
                preds[w].push_back(static_cast<std::uint32_t>(v));
            }
        }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t w = *it;
        for (std::uint32_t v : preds[w])
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        if (w != s) score[w] += delta[w];
    }
}

} // namespace

Eigen::VectorXd betweenness(const Graph& g) {
    const std::size_t n = g.node_count();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    if (n < 3) return out; // no interior nodes possible

    const SparseMatrix& adj = g.adjacency();
    const std::size_t blocks = std::min(kSourceBlocks, n);
    std::vector<std::vector<double>> partial(blocks, std::vector<double>(n, 0.0));
    parallel_for(blocks, [&](std::size_t b) {
        const std::size_t lo = n * b / blocks;
        const std::size_t hi = n * (b + 1) / blocks;
        for (std::size_t s = lo; s < hi; ++s) betweenness_from_source(adj, s, partial[b]);
    });
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t v = 0; v < n; ++v) out[static_cast<Eigen::Index>(v)] += partial[b][v];
    return out;
}

Eigen::VectorXd pagerank(const Graph& g, const PageRankOptions& opts) {
    const std::size_t n = g.node_count();
    if (n == 0) throw Error(kModule, "pagerank", "graph has no nodes");
    if (!(opts.damping > 0.0 && opts.damping < 1.0))
        throw Error(kModule, "pagerank",
                    "damping must lie in (0,1), got " + std::to_string(opts.damping));

    const auto ni = static_cast<Eigen::Index>(n);
    Eigen::VectorXd b;
    if (opts.teleport) {
        b = *opts.teleport;
        if (b.size() != ni)
            throw Error(kModule, "pagerank", "teleport vector size does not match node count");
        if ((b.array() < 0.0).any() || std::abs(b.sum() - 1.0) > 1e-12)
            throw Error(kModule, "pagerank",
                        "teleport vector must be non-negative and sum to 1");
    } else {
        b = Eigen::VectorXd::Constant(ni, 1.0 / static_cast<double>(n));
    }

    // Row-normalize live rows; dead rows (zero out-degree) teleport via b.
    Eigen::VectorXd out_degree = degrees(g, Orientation::Out).values;
    SparseMatrix p = g.adjacency();
    for (Eigen::Index row = 0; row < p.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(p, row); it; ++it)
            it.valueRef() = it.value() / out_degree[row];

    const double c = opts.damping;
    Eigen::VectorXd x = Eigen::VectorXd::Constant(ni, 1.0 / static_cast<double>(n));
    double residual = kInf;
    for (long iter = 0; iter < opts.max_iter; ++iter) {
        double dead_mass = 0.0;
        for (Eigen::Index i = 0; i < ni; ++i)
            if (out_degree[i] == 0.0) dead_mass += x[i];
        Eigen::VectorXd next = c * (p.transpose() * x) + (c * dead_mass + 1.0 - c) * b;
        next /= next.sum();
        residual = (next - x).lpNorm<1>();
        x = std::move(next);
        if (residual <= opts.tol)
            return opts.scale_by_node_count ? Eigen::VectorXd(x * static_cast<double>(n)) : x;
    }
    throw ConvergenceError(kModule, "pagerank",
                           "no convergence after " + std::to_string(opts.max_iter) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           std::vector<double>(x.data(), x.data() + x.size()), residual,
                           opts.max_iter);
}

Eigen::VectorXd normalize(const Eigen::VectorXd& values, NormalizeMethod method) {
    if (values.size() == 0) throw Error(kModule, "normalize", "empty input");
    if (method == NormalizeMethod::Max) {
        if ((values.array() < 0.0).any())
            throw Error(kModule, "normalize", "divide-by-max needs non-negative values");
        double mx = values.maxCoeff();
        if (mx <= 0.0) throw Error(kModule, "normalize", "all values are zero");
        return values / mx;
    }
    double mn = values.minCoeff(), mx = values.maxCoeff();
    if (mx == mn) return Eigen::VectorXd::Zero(values.size());
    return (values.array() - mn) / (mx - mn);
}

std::vector<int> quartile_bins(const Eigen::VectorXd& values) {
    const auto n = static_cast<std::size_t>(values.size());
    if (n < 4) throw Error(kModule, "quartile_bins", "need at least 4 values");
    std::vector<double> sorted(values.data(), values.data() + values.size());
    std::sort(sorted.begin(), sorted.end());

    // Inclusive-rank (type 2) quantile: mean of the two adjacent order
    // statistics when n*k/4 is integral, next one up otherwise.
    auto quantile = [&](std::size_t k) {
        std::size_t num = n * k;
        if (num % 4 == 0) {
            std::size_t m = num / 4; // 1-based rank
            return 0.5 * (sorted[m - 1] + sorted[std::min(m, n - 1)]);
        }
        std::size_t m = num / 4 + 1;
        return sorted[m - 1];
    };
    const double q1 = quantile(1), q2 = quantile(2), q3 = quantile(3);

    std::vector<int> bins(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = values[static_cast<Eigen::Index>(i)];
        bins[i] = 1 + (v > q1) + (v > q2) + (v > q3);
    }
    return bins;
}

MetricTable::MetricTable(std::vector<std::string> labels) : labels_(std::move(labels)) {}

void MetricTable::add(const std::string& name, const Eigen::VectorXd& values) {
    if (name.empty()) throw Error(kModule, "metric_table", "empty column name");
    if (static_cast<std::size_t>(values.size()) != labels_.size())
        throw Error(kModule, "metric_table",
                    "column \"" + name + "\" has " + std::to_string(values.size()) +
                        " values for " + std::to_string(labels_.size()) + " nodes");
    for (const auto& c : columns_)
        if (c.name == name)
            throw Error(kModule, "metric_table", "duplicate column \"" + name + "\"");
    columns_.push_back(MetricColumn{name, values, std::nullopt, std::nullopt});
}

MetricColumn& MetricTable::find(const std::string& name, const char* op) {
    for (auto& c : columns_)
        if (c.name == name) return c;
    throw Error(kModule, op, "no column named \"" + name + "\"");
}

const MetricColumn& MetricTable::column(const std::string& name) const {
    return const_cast<MetricTable*>(this)->find(name, "metric_table");
}

void MetricTable::attach_normalized(const std::string& name, NormalizeMethod method) {
    MetricColumn& c = find(name, "metric_table");
    c.normalized = normalize(c.values, method);
}

void MetricTable::attach_quartiles(const std::string& name) {
    MetricColumn& c = find(name, "metric_table");
    c.bins = quartile_bins(c.values);
}

} // namespace mobgraph
