#include "mobgraph/flows.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mobgraph/error.hpp"
#include "mobgraph/laplacian.hpp"
#include "mobgraph/parallel.hpp"

namespace mobgraph {

namespace {

constexpr const char* kModule = "flows";

double deterrence_factor(Deterrence kind, double beta2, double r) {
    switch (kind) {
    case Deterrence::Power: return std::pow(r, -beta2);
    case Deterrence::Exponential: return std::exp(-beta2 * r);
    }
    return 0.0; // unreachable
}

} // namespace

ODMatrix gravity_flows(const GravitySpec& spec,
                       const std::vector<std::vector<std::size_t>>* candidates) {
    const std::size_t n = spec.ids.size();
    if (n == 0) throw Error(kModule, "gravity_flows", "spec has no locations");
    if (spec.outflows.size() != n || spec.masses.size() != n)
        throw Error(kModule, "gravity_flows",
                    "ids, outflows and masses must have matching lengths");
    if (spec.distances.rows() != static_cast<Eigen::Index>(n) ||
        spec.distances.cols() != static_cast<Eigen::Index>(n))
        throw Error(kModule, "gravity_flows",
                    "distance matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    if (!(spec.beta2 >= 0.0))
        throw Error(kModule, "gravity_flows", "beta2 must be non-negative");
    if (!std::isfinite(spec.beta1))
        throw Error(kModule, "gravity_flows", "beta1 must be finite");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(spec.outflows[i]) || spec.outflows[i] < 0.0)
            throw Error(kModule, "gravity_flows",
                        "outflow of \"" + spec.ids[i] + "\" must be finite and non-negative");
        if (!std::isfinite(spec.masses[i]) || !(spec.masses[i] > 0.0))
            throw Error(kModule, "gravity_flows",
                        "mass of \"" + spec.ids[i] + "\" must be finite and positive");
    }
    if (candidates && candidates->size() != n)
        throw Error(kModule, "gravity_flows", "need one candidate list per origin");

    // Resolve and validate every origin's destination list up front, so the
    // parallel fill below can only fail on a vanishing denominator.
    std::vector<std::vector<std::size_t>> dest(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (candidates) {
            dest[i] = (*candidates)[i];
            std::unordered_set<std::size_t> seen;
            for (std::size_t j : dest[i]) {
                if (j >= n)
                    throw Error(kModule, "gravity_flows",
                                "candidate " + std::to_string(j) + " of origin \"" + spec.ids[i] +
                                    "\" is out of range");
                if (!seen.insert(j).second)
                    throw Error(kModule, "gravity_flows",
                                "origin \"" + spec.ids[i] + "\" lists destination \"" +
                                    spec.ids[j] + "\" twice");
            }
        } else {
            dest[i].reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) dest[i].push_back(j);
        }
        if (dest[i].empty())
            throw Error(kModule, "gravity_flows",
                        "origin \"" + spec.ids[i] + "\" has no candidate destinations");
        for (std::size_t j : dest[i]) {
            const double r = spec.distances(static_cast<Eigen::Index>(i),
                                            static_cast<Eigen::Index>(j));
            if (!std::isfinite(r) || !(r > 0.0))
                throw Error(kModule, "gravity_flows",
                            "distance " + spec.ids[i] + " -> " + spec.ids[j] +
                                " must be finite and positive");
        }
    }

    // Rows are independent; per-row buffers merged in origin order keep the
    // result identical for any worker count.
    std::vector<std::vector<Triplet>> rows(n);
    parallel_for(n, [&](std::size_t i) {
        std::vector<double> attraction(dest[i].size());
        double denom = 0.0;
        for (std::size_t c = 0; c < dest[i].size(); ++c) {
            const std::size_t j = dest[i][c];
            attraction[c] =
                std::pow(spec.masses[j], spec.beta1) *
                deterrence_factor(spec.deterrence, spec.beta2,
                                  spec.distances(static_cast<Eigen::Index>(i),
                                                 static_cast<Eigen::Index>(j)));
            denom += attraction[c];
        }
        if (!std::isfinite(denom) || !(denom > 0.0))
            throw Error(kModule, "gravity_flows",
                        "origin \"" + spec.ids[i] + "\" has a vanishing attraction denominator");
        rows[i].reserve(dest[i].size());
        for (std::size_t c = 0; c < dest[i].size(); ++c) {
            const double y = spec.outflows[i] * (attraction[c] / denom);
            if (y > 0.0)
                rows[i].emplace_back(static_cast<int>(i), static_cast<int>(dest[i][c]), y);
        }
    });

    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < n; ++i)
        entries.insert(entries.end(), rows[i].begin(), rows[i].end());
    return make_od_matrix(spec.ids, entries);
}

double cpc(const ODMatrix& y, const ODMatrix& z) {
    if (y.ids != z.ids)
        throw Error(kModule, "cpc", "flow matrices cover different zone lists");

    auto total = [](const SparseMatrix& m) {
        double sum = 0.0;
        for (Eigen::Index row = 0; row < m.outerSize(); ++row)
            for (SparseMatrix::InnerIterator it(m, row); it; ++it) sum += it.value();
        return sum;
    };
    const double sum_y = total(y.flows);
    const double sum_z = total(z.flows);
    if (sum_y + sum_z <= 0.0)
        throw Error(kModule, "cpc", "both flow matrices are all-zero (0/0)");

    // Entries are non-negative, so every nonzero min lives on the support of
    // y; walking y row by row visits them in (row, col) order, the same order
    // a walk over z's support would, which makes cpc(y, z) == cpc(z, y) exact.
    double sum_min = 0.0;
    for (Eigen::Index row = 0; row < y.flows.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(y.flows, row); it; ++it)
            sum_min += std::min(it.value(), z.flows.coeff(it.row(), it.col()));

    return std::clamp(2.0 * sum_min / (sum_y + sum_z), 0.0, 1.0);
}

Eigen::VectorXd estimate_population(const Graph& g, const FluxVector& flux) {
    if (!std::isfinite(flux.k) || !(flux.k > 0.0))
        throw Error(kModule, "estimate_population", "diffusivity k must be finite and positive");
    if (g.directed() || !is_symmetric(g.adjacency()))
        throw Error(kModule, "estimate_population", "graph must be undirected");
    if (flux.q.size() != static_cast<Eigen::Index>(g.node_count()))
        throw Error(kModule, "estimate_population",
                    "flux length " + std::to_string(flux.q.size()) + " does not match " +
                        std::to_string(g.node_count()) + " nodes");
    const ComponentDecomposition comps = components(g, ComponentMode::Weak);
    if (comps.count() != 1)
        throw Error(kModule, "estimate_population",
                    "graph has " + std::to_string(comps.count()) +
                        " components; reduce to the largest component first");

    const Eigen::MatrixXd pinv =
        laplacian_pseudoinverse(laplacian(g, LaplacianKind::Combinatorial));
    return (-1.0 / flux.k) * (pinv * flux.q);
}

} // namespace mobgraph
