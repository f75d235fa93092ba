#pragma once

// Brute-force reference implementations and corpus generators used by the
// tests. Everything here is deliberately independent of the library
// algorithms: plain adjacency lists, exhaustive path enumeration, boolean
// reachability closure. Slow on purpose; only run on tiny graphs.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mobgraph/graph.hpp"

namespace oracles {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Arc {
    std::size_t to;
    double weight;
};

inline std::vector<std::vector<Arc>> adjacency_lists(const mobgraph::Graph& g) {
    std::vector<std::vector<Arc>> out(g.node_count());
    const auto& a = g.adjacency();
    for (Eigen::Index row = 0; row < a.outerSize(); ++row)
        for (mobgraph::SparseMatrix::InnerIterator it(a, row); it; ++it)
            out[static_cast<std::size_t>(row)].push_back(
                {static_cast<std::size_t>(it.col()), it.value()});
    return out;
}

// All simple paths s -> t, returned as (cost, interior node list).
inline void enumerate_paths(const std::vector<std::vector<Arc>>& adj, std::size_t s,
                            std::size_t t, std::vector<std::pair<double, std::vector<std::size_t>>>& out) {
    std::vector<char> visited(adj.size(), 0);
    std::vector<std::size_t> path;
    double cost = 0.0;

    struct Walker {
        const std::vector<std::vector<Arc>>& adj;
        std::size_t t;
        std::vector<char>& visited;
        std::vector<std::size_t>& path;
        double& cost;
        std::vector<std::pair<double, std::vector<std::size_t>>>& out;

        void step(std::size_t v) {
            if (v == t) {
                out.emplace_back(cost, path);
                return;
            }
            visited[v] = 1;
            for (const Arc& arc : adj[v]) {
                if (visited[arc.to] || arc.to == v) continue;
                cost += arc.weight;
                if (arc.to != t) path.push_back(arc.to);
                step(arc.to);
                if (arc.to != t) path.pop_back();
                cost -= arc.weight;
            }
            visited[v] = 0;
        }
    };

    Walker{adj, t, visited, path, cost, out}.step(s);
}

// Min simple-path cost; +inf when t is unreachable from s.
inline double distance_by_enumeration(const mobgraph::Graph& g, std::size_t s, std::size_t t) {
    if (s == t) return 0.0;
    auto adj = adjacency_lists(g);
    std::vector<std::pair<double, std::vector<std::size_t>>> paths;
    enumerate_paths(adj, s, t, paths);
    double best = kInf;
    for (const auto& [cost, interior] : paths) best = std::min(best, cost);
    return best;
}

// Betweenness over ordered pairs by exhaustive enumeration: for every (s, t)
// with s != t, count minimum-cost simple paths and the fraction passing
// through each interior node. Exact arithmetic as long as weights are small
// integers.
inline std::vector<double> betweenness_by_enumeration(const mobgraph::Graph& g) {
    const std::size_t n = g.node_count();
    auto adj = adjacency_lists(g);
    std::vector<double> score(n, 0.0);
    std::vector<std::pair<double, std::vector<std::size_t>>> paths;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            if (s == t) continue;
            paths.clear();
            enumerate_paths(adj, s, t, paths);
            if (paths.empty()) continue;
            double best = kInf;
            for (const auto& [cost, interior] : paths) best = std::min(best, cost);
            double sigma = 0.0;
            std::vector<double> through(n, 0.0);
            for (const auto& [cost, interior] : paths) {
                if (cost > best + 1e-9 * std::max(1.0, best)) continue;
                sigma += 1.0;
                for (std::size_t v : interior) through[v] += 1.0;
            }
            for (std::size_t v = 0; v < n; ++v)
                if (through[v] > 0.0) score[v] += through[v] / sigma;
        }
    return score;
}

// Reachability closure by repeated boolean matrix "multiplication".
inline bool strongly_connected_by_closure(const mobgraph::Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    const auto& a = g.adjacency();
    for (Eigen::Index row = 0; row < a.outerSize(); ++row) {
        reach[static_cast<std::size_t>(row)][static_cast<std::size_t>(row)] = 1;
        for (mobgraph::SparseMatrix::InnerIterator it(a, row); it; ++it)
            reach[static_cast<std::size_t>(row)][static_cast<std::size_t>(it.col())] = 1;
    }
    for (std::size_t round = 0; round + 1 < n; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (!reach[i][k]) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j] && !reach[i][j]) {
                        reach[i][j] = 1;
                        changed = true;
                    }
            }
        if (!changed) break;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!reach[i][j]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Seeded corpus generators.

inline std::vector<std::string> node_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("n" + std::to_string(i));
    return labels;
}

inline double pick_weight(std::mt19937_64& rng, bool integer_weights) {
    if (integer_weights) {
        std::uniform_int_distribution<int> d(1, 3);
        return static_cast<double>(d(rng));
    }
    std::uniform_real_distribution<double> d(0.5, 2.5);
    return d(rng);
}

// Erdos-Renyi style graph; may be disconnected and may contain dead ends.
inline mobgraph::Graph random_graph(std::mt19937_64& rng, std::size_t n, double p,
                                    bool directed, bool integer_weights) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<mobgraph::WeightedEdge> edges;
    auto labels = node_labels(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = directed ? 0 : i + 1; j < n; ++j) {
            if (i == j) continue;
            if (coin(rng) < p)
                edges.push_back({labels[i], labels[j], pick_weight(rng, integer_weights)});
        }
    return mobgraph::Graph::from_edges(edges, directed, labels);
}

// Random spanning tree plus extra edges: always connected.
inline mobgraph::Graph random_connected_undirected(std::mt19937_64& rng, std::size_t n,
                                                   double extra_p, bool integer_weights) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    auto labels = node_labels(n);
    std::vector<mobgraph::WeightedEdge> edges;
    std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
    for (std::size_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> d(0, v - 1);
        std::size_t u = d(rng);
        edges.push_back({labels[u], labels[v], pick_weight(rng, integer_weights)});
        present[u][v] = present[v][u] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!present[i][j] && coin(rng) < extra_p) {
                edges.push_back({labels[i], labels[j], pick_weight(rng, integer_weights)});
                present[i][j] = present[j][i] = 1;
            }
    return mobgraph::Graph::from_edges(edges, false, labels);
}

// Random permutation cycle plus extra arcs: always strongly connected.
inline mobgraph::Graph random_strongly_connected(std::mt19937_64& rng, std::size_t n,
                                                 double extra_p, bool integer_weights) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    auto labels = node_labels(n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
    std::vector<mobgraph::WeightedEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t a = perm[i], b = perm[(i + 1) % n];
        if (a == b) continue;
        edges.push_back({labels[a], labels[b], pick_weight(rng, integer_weights)});
        present[a][b] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !present[i][j] && coin(rng) < extra_p) {
                edges.push_back({labels[i], labels[j], pick_weight(rng, integer_weights)});
                present[i][j] = 1;
            }
    return mobgraph::Graph::from_edges(edges, true, labels);
}

} // namespace oracles
