#include "mobgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace mobgraph {

namespace {

constexpr const char* kModule = "graph-core";

std::string join_labels(const std::vector<std::string>& labels, std::size_t limit = 8) {
    std::ostringstream out;
    for (std::size_t i = 0; i < labels.size() && i < limit; ++i) {
        if (i) out << ", ";
        out << labels[i];
    }
    if (labels.size() > limit) out << ", ... (" << labels.size() << " total)";
    return out.str();
}

} // namespace

Graph::Graph(bool directed, std::vector<std::string> labels,
             const std::vector<Triplet>& entries,
             std::optional<std::vector<Point>> coords)
    : directed_(directed), labels_(std::move(labels)), coords_(std::move(coords)) {
    const std::size_t n = labels_.size();

    label_index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (labels_[i].empty())
            throw Error(kModule, "build_graph", "empty node label at index " + std::to_string(i));
        if (!label_index_.emplace(labels_[i], i).second)
            throw Error(kModule, "build_graph", "duplicate node label \"" + labels_[i] + "\"");
    }
    if (coords_ && coords_->size() != n)
        throw Error(kModule, "build_graph",
                    "coordinate count (" + std::to_string(coords_->size()) +
                        ") does not match node count (" + std::to_string(n) + ")");

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(entries.size());
    for (const auto& t : entries) {
        if (t.row() < 0 || t.col() < 0 || static_cast<std::size_t>(t.row()) >= n ||
            static_cast<std::size_t>(t.col()) >= n)
            throw Error(kModule, "build_graph", "adjacency entry out of range");
        if (!(t.value() > 0.0) || !std::isfinite(t.value()))
            throw Error(kModule, "build_graph",
                        "non-positive weight " + std::to_string(t.value()) + " on edge (" +
                            labels_[t.row()] + ", " + labels_[t.col()] + ")");
        std::uint64_t key = static_cast<std::uint64_t>(t.row()) * n + t.col();
        if (!seen.insert(key).second)
            throw Error(kModule, "build_graph",
                        "duplicate edge (" + labels_[t.row()] + ", " + labels_[t.col()] + ")");
    }

    adj_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    adj_.setFromTriplets(entries.begin(), entries.end());
    adj_.makeCompressed();

    if (!directed_ && !is_symmetric(adj_))
        throw Error(kModule, "build_graph", "undirected graph has asymmetric adjacency entries");
}

Graph Graph::from_edges(const std::vector<WeightedEdge>& edges, bool directed,
                        const std::vector<std::string>& extra_labels) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
    auto intern = [&](const std::string& label) {
        auto [it, fresh] = index.emplace(label, labels.size());
        if (fresh) labels.push_back(label);
        return it->second;
    };
    for (const auto& l : extra_labels) {
        if (index.count(l))
            throw Error(kModule, "build_graph", "duplicate node label \"" + l + "\"");
        intern(l);
    }
    for (const auto& e : edges) {
        intern(e.source);
        intern(e.target);
    }

    std::vector<Triplet> entries;
    entries.reserve(edges.size() * (directed ? 1 : 2));
    std::unordered_set<std::uint64_t> seen;
    const std::size_t n = labels.size();
    for (const auto& e : edges) {
        auto i = static_cast<Eigen::Index>(index.at(e.source));
        auto j = static_cast<Eigen::Index>(index.at(e.target));
        std::uint64_t key = static_cast<std::uint64_t>(i) * n + j;
        if (!seen.insert(key).second)
            throw Error(kModule, "build_graph",
                        "duplicate edge (" + e.source + ", " + e.target + ")" +
                            (directed ? "" : " (undirected edges are listed once)"));
        entries.emplace_back(i, j, e.weight);
        if (!directed && i != j) {
            seen.insert(static_cast<std::uint64_t>(j) * n + i);
            entries.emplace_back(j, i, e.weight);
        }
    }
    return Graph(directed, std::move(labels), entries);
}

std::size_t Graph::index_of(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end())
        throw Error(kModule, "index_of", "unknown node label \"" + label + "\"");
    return it->second;
}

std::optional<std::size_t> Graph::try_index_of(const std::string& label) const noexcept {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

bool is_symmetric(const SparseMatrix& m) {
    SparseMatrix t = SparseMatrix(m.transpose());
    t.makeCompressed();
    if (m.nonZeros() != t.nonZeros()) return false;
    for (Eigen::Index row = 0; row < m.outerSize(); ++row) {
        SparseMatrix::InnerIterator a(m, row), b(t, row);
        for (; a && b; ++a, ++b) {
            if (a.col() != b.col() || a.value() != b.value()) return false;
        }
        if (a || b) return false;
    }
    return true;
}

DegreeVector degrees(const Graph& g, Orientation orientation) {
    const auto& a = g.adjacency();
    Eigen::VectorXd values = Eigen::VectorXd::Zero(a.rows());
    for (Eigen::Index row = 0; row < a.outerSize(); ++row) {
        for (SparseMatrix::InnerIterator it(a, row); it; ++it) {
            if (orientation == Orientation::Out)
                values[row] += it.value();
            else
                values[it.col()] += it.value();
        }
    }
    return DegreeVector{orientation, std::move(values)};
}

Eigen::VectorXd shortest_path_distances(const Graph& g, std::size_t source) {
    const std::size_t n = g.node_count();
    if (source >= n)
        throw Error(kModule, "shortest_path_distances",
                    "source index " + std::to_string(source) + " out of range (node count " +
                        std::to_string(n) + ")");

    constexpr double inf = std::numeric_limits<double>::infinity();
    Eigen::VectorXd dist = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), inf);
    std::vector<char> settled(n, 0);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

    dist[static_cast<Eigen::Index>(source)] = 0.0;
    heap.emplace(0.0, source);
    const auto& a = g.adjacency();
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (settled[v]) continue;
        settled[v] = 1;
        for (SparseMatrix::InnerIterator it(a, static_cast<Eigen::Index>(v)); it; ++it) {
            const auto w = static_cast<std::size_t>(it.col());
            double cand = d + it.value();
            if (cand < dist[it.col()]) {
                dist[it.col()] = cand;
                heap.emplace(cand, w);
            }
        }
    }
    return dist;
}

namespace {

// Tarjan's strongly connected components, iterative to survive deep graphs.
std::vector<std::size_t> strong_assignment(const SparseMatrix& a) {
    const auto n = static_cast<std::size_t>(a.rows());
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, none), lowlink(n, none), raw(n, none);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::size_t next_index = 0, raw_count = 0;

    struct Frame {
        std::size_t v;
        SparseMatrix::InnerIterator it;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != none) continue;
        call.push_back({root, SparseMatrix::InnerIterator(a, static_cast<Eigen::Index>(root))});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            bool descended = false;
            while (f.it) {
                auto w = static_cast<std::size_t>(f.it.col());
                ++f.it;
                if (index[w] == none) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, SparseMatrix::InnerIterator(a, static_cast<Eigen::Index>(w))});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[f.v] = std::min(lowlink[f.v], index[w]);
            }
            if (descended) continue;
            std::size_t v = f.v;
            call.pop_back();
            if (!call.empty())
                lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
            if (lowlink[v] == index[v]) {
                for (;;) {
                    std::size_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    raw[w] = raw_count;
                    if (w == v) break;
                }
                ++raw_count;
            }
        }
    }
    return raw;
}

std::vector<std::size_t> weak_assignment(const SparseMatrix& a) {
    const auto n = static_cast<std::size_t>(a.rows());
    // Union-find over endpoints of every stored arc, direction ignored.
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (Eigen::Index row = 0; row < a.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(a, row); it; ++it) {
            std::size_t ra = find(static_cast<std::size_t>(row));
            std::size_t rb = find(static_cast<std::size_t>(it.col()));
            if (ra != rb) parent[rb] = ra;
        }
    std::vector<std::size_t> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = find(i);
    return raw;
}

} // namespace

ComponentDecomposition components(const Graph& g, ComponentMode mode) {
    const auto& a = g.adjacency();
    // Mutual reachability and plain connectivity coincide on symmetric adjacency.
    std::vector<std::size_t> raw = (mode == ComponentMode::Strong && g.directed())
                                       ? strong_assignment(a)
                                       : weak_assignment(a);

    const std::size_t n = raw.size();
    ComponentDecomposition out;
    out.mode = mode;
    out.assignment.assign(n, 0);
    std::unordered_map<std::size_t, std::size_t> relabel;
    for (std::size_t v = 0; v < n; ++v) {
        auto [it, fresh] = relabel.emplace(raw[v], out.sizes.size());
        if (fresh) out.sizes.push_back(0);
        out.assignment[v] = it->second;
        ++out.sizes[it->second];
    }
    return out;
}

SubgraphExtraction induced_subgraph(const Graph& g, const std::vector<std::size_t>& kept) {
    const std::size_t n = g.node_count();
    std::vector<std::int64_t> old_to_new(n, -1);
    std::vector<std::string> labels;
    labels.reserve(kept.size());
    std::optional<std::vector<Point>> coords;
    if (g.coords()) coords.emplace();

    std::size_t prev = 0;
    bool first = true;
    for (std::size_t v : kept) {
        if (v >= n)
            throw Error(kModule, "induced_subgraph", "kept index out of range");
        if (!first && v <= prev)
            throw Error(kModule, "induced_subgraph", "kept indices must be strictly ascending");
        prev = v;
        first = false;
        old_to_new[v] = static_cast<std::int64_t>(labels.size());
        labels.push_back(g.label(v));
        if (coords) coords->push_back((*g.coords())[v]);
    }

    std::vector<Triplet> entries;
    const auto& a = g.adjacency();
    for (std::size_t v : kept)
        for (SparseMatrix::InnerIterator it(a, static_cast<Eigen::Index>(v)); it; ++it) {
            std::int64_t j = old_to_new[static_cast<std::size_t>(it.col())];
            if (j < 0) continue;
            entries.emplace_back(old_to_new[v], j, it.value());
        }

    SubgraphExtraction out{Graph(g.directed(), std::move(labels), entries, std::move(coords)),
                           kept, std::move(old_to_new)};
    return out;
}

SubgraphExtraction largest_component_subgraph(const Graph& g, ComponentMode mode) {
    if (g.node_count() == 0)
        throw Error(kModule, "largest_component", "graph has no nodes");
    ComponentDecomposition comp = components(g, mode);
    // First-occurrence ids are ordered by their smallest member, so the first
    // maximal component is also the tie-break winner.
    std::size_t best = 0;
    for (std::size_t c = 1; c < comp.count(); ++c)
        if (comp.sizes[c] > comp.sizes[best]) best = c;
    std::vector<std::size_t> kept;
    kept.reserve(comp.sizes[best]);
    for (std::size_t v = 0; v < comp.assignment.size(); ++v)
        if (comp.assignment[v] == best) kept.push_back(v);
    return induced_subgraph(g, kept);
}

namespace {

std::vector<std::size_t> structural_degrees(const SparseMatrix& a) {
    const auto n = static_cast<std::size_t>(a.rows());
    std::vector<std::unordered_set<std::size_t>> nbr(n);
    for (Eigen::Index row = 0; row < a.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(a, row); it; ++it) {
            auto i = static_cast<std::size_t>(row);
            auto j = static_cast<std::size_t>(it.col());
            nbr[i].insert(j);
            if (i != j) nbr[j].insert(i);
        }
    std::vector<std::size_t> deg(n);
    for (std::size_t i = 0; i < n; ++i) deg[i] = nbr[i].size();
    return deg;
}

} // namespace

SubgraphExtraction prune_low_degree(const Graph& g, std::size_t threshold, bool iterate) {
    std::vector<std::size_t> survivors(g.node_count());
    for (std::size_t i = 0; i < survivors.size(); ++i) survivors[i] = i;

    Graph current = g;
    for (;;) {
        std::vector<std::size_t> deg = structural_degrees(current.adjacency());
        std::vector<std::size_t> kept;
        kept.reserve(deg.size());
        for (std::size_t v = 0; v < deg.size(); ++v)
            if (deg[v] > threshold) kept.push_back(v);
        if (kept.size() == deg.size()) break;
        SubgraphExtraction step = induced_subgraph(current, kept);
        std::vector<std::size_t> remap;
        remap.reserve(kept.size());
        for (std::size_t v : step.kept) remap.push_back(survivors[v]);
        survivors = std::move(remap);
        current = std::move(step.graph);
        if (!iterate) break;
    }

    std::vector<std::int64_t> old_to_new(g.node_count(), -1);
    for (std::size_t i = 0; i < survivors.size(); ++i)
        old_to_new[survivors[i]] = static_cast<std::int64_t>(i);
    return SubgraphExtraction{std::move(current), std::move(survivors), std::move(old_to_new)};
}

SparseMatrix transition_matrix(const Graph& g) {
    const auto& a = g.adjacency();
    Eigen::VectorXd out_degree = degrees(g, Orientation::Out).values;
    std::vector<std::string> dead;
    for (Eigen::Index i = 0; i < out_degree.size(); ++i)
        if (out_degree[i] <= 0.0) dead.push_back(g.label(static_cast<std::size_t>(i)));
    if (!dead.empty())
        throw Error(kModule, "transition_matrix",
                    "graph has " + std::to_string(dead.size()) +
                        " dead-end node(s) with zero out-degree: " + join_labels(dead));

    SparseMatrix p = a;
    for (Eigen::Index row = 0; row < p.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(p, row); it; ++it)
            it.valueRef() = it.value() / out_degree[row];
    return p;
}

std::vector<std::pair<std::size_t, std::size_t>> sparsity_pattern(const Graph& g) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(g.nonzero_count());
    const auto& a = g.adjacency();
    for (Eigen::Index row = 0; row < a.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(a, row); it; ++it)
            out.emplace_back(static_cast<std::size_t>(row), static_cast<std::size_t>(it.col()));
    return out;
}

Graph reciprocal_weights(const Graph& g) {
    std::vector<Triplet> entries;
    entries.reserve(g.nonzero_count());
    const auto& a = g.adjacency();
    for (Eigen::Index row = 0; row < a.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(a, row); it; ++it)
            entries.emplace_back(row, it.col(), 1.0 / it.value());
    return Graph(g.directed(), g.labels(), entries, g.coords());
}

Graph reversed(const Graph& g) {
    std::vector<Triplet> entries;
    entries.reserve(g.nonzero_count());
    const auto& a = g.adjacency();
    for (Eigen::Index row = 0; row < a.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(a, row); it; ++it)
            entries.emplace_back(it.col(), row, it.value());
    return Graph(g.directed(), g.labels(), entries, g.coords());
}

} // namespace mobgraph
