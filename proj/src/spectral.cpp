#include "mobgraph/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace mobgraph {

namespace {

constexpr const char* kModule = "spectral";

void require_strongly_connected(const Graph& g, const char* op) {
    if (g.node_count() == 0) throw Error(kModule, op, "graph has no nodes");
    ComponentDecomposition comp = components(g, ComponentMode::Strong);
    if (comp.count() != 1)
        throw Error(kModule, op,
                    "graph is not strongly connected (" + std::to_string(comp.count()) +
                        " strongly connected components)");
}

double stationarity_residual(const SparseMatrix& p, const Eigen::VectorXd& x) {
    return (p.transpose() * x - x).lpNorm<Eigen::Infinity>();
}

long default_max_iter(std::size_t n) {
    double suggested = 10.0 * static_cast<double>(n) * std::log(std::max<double>(n, 2.0));
    return std::clamp<long>(static_cast<long>(std::ceil(suggested)), 1000, 100000);
}

} // namespace

PerronVector perron_vector(const Graph& g, double tol, long max_iter) {
    require_strongly_connected(g, "perron_vector");
    if (!(tol > 0.0)) throw Error(kModule, "perron_vector", "tolerance must be positive");
    if (max_iter <= 0) max_iter = default_max_iter(g.node_count());

    const SparseMatrix p = transition_matrix(g);
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

    double residual = std::numeric_limits<double>::infinity();
    for (long iter = 0; iter < max_iter; ++iter) {
        Eigen::VectorXd y = p.transpose() * x;
        residual = (y - x).lpNorm<Eigen::Infinity>();
        if (residual <= tol) {
            if (x.minCoeff() <= 0.0)
                throw Error(kModule, "perron_vector", "non-positive entry in converged iterate");
            x /= x.sum();
            return PerronVector{std::move(x), residual};
        }
        x = 0.5 * (x + y); // lazy step: damps the period-2 mode, keeps the fixed point
        x /= x.sum();
    }
    throw ConvergenceError(kModule, "perron_vector",
                           "no convergence after " + std::to_string(max_iter) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           std::vector<double>(x.data(), x.data() + x.size()), residual,
                           max_iter);
}

PerronVector perron_vector_generalized(const Graph& g, double tol) {
    require_strongly_connected(g, "perron_vector_generalized");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const SparseMatrix p = transition_matrix(g);
    const Eigen::VectorXd d = degrees(g, Orientation::Out).values;

    // A' x = D x  <=>  (D^-1 A') x = x: hand the standard eigensolver the
    // row-scaled transpose and look for the eigenvalue closest to 1.
    Eigen::MatrixXd k = Eigen::MatrixXd(g.adjacency().transpose());
    for (Eigen::Index i = 0; i < n; ++i) k.row(i) /= d[i];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(k);
    if (solver.info() != Eigen::Success)
        throw Error(kModule, "perron_vector_generalized", "eigensolver failed");

    Eigen::Index best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        double gap = std::abs(solver.eigenvalues()[i] - std::complex<double>(1.0, 0.0));
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    if (best_gap > 1e-6)
        throw Error(kModule, "perron_vector_generalized",
                    "no eigenvalue near 1 (closest at distance " + std::to_string(best_gap) + ")");

    Eigen::VectorXd x = solver.eigenvectors().col(best).real();
    if (solver.eigenvectors().col(best).imag().lpNorm<Eigen::Infinity>() > 1e-10)
        throw Error(kModule, "perron_vector_generalized", "complex eigenvector at the Perron root");

    // The transform back to phi: phi = D x is what the stationarity algebra
    // gives; phi = D^-1 x is kept as a fallback and must prove itself by
    // residual, never by assumption.
    auto finish = [&](Eigen::VectorXd phi) -> std::pair<PerronVector, bool> {
        if (phi[0] < 0.0) phi = -phi;
        if (phi.minCoeff() <= 0.0) return {PerronVector{}, false};
        phi /= phi.sum();
        double res = stationarity_residual(p, phi);
        return {PerronVector{std::move(phi), res}, true};
    };

    auto [primary, ok1] = finish(d.asDiagonal() * x);
    if (ok1 && primary.residual <= tol) return primary;
    auto [fallback, ok2] = finish(d.cwiseInverse().asDiagonal() * x);
    if (ok2 && fallback.residual <= tol) return fallback;

    double best_res = std::min(ok1 ? primary.residual : std::numeric_limits<double>::infinity(),
                               ok2 ? fallback.residual : std::numeric_limits<double>::infinity());
    throw Error(kModule, "perron_vector_generalized",
                "neither transform reaches stationarity (best residual " +
                    std::to_string(best_res) + ")");
}

CirculationField circulation(const Graph& g, const PerronVector& perron) {
    if (static_cast<std::size_t>(perron.phi.size()) != g.node_count())
        throw Error(kModule, "circulation",
                    "perron vector size " + std::to_string(perron.phi.size()) +
                        " does not match node count " + std::to_string(g.node_count()));
    SparseMatrix f = transition_matrix(g);
    for (Eigen::Index row = 0; row < f.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(f, row); it; ++it)
            it.valueRef() = perron.phi[row] * it.value();
    return CirculationField{std::move(f)};
}

Eigen::VectorXd circulation_imbalance(const CirculationField& f) {
    Eigen::VectorXd net = Eigen::VectorXd::Zero(f.values.rows());
    for (Eigen::Index row = 0; row < f.values.outerSize(); ++row)
        for (SparseMatrix::InnerIterator it(f.values, row); it; ++it) {
            net[it.col()] += it.value(); // inflow at the head
            net[row] -= it.value();      // outflow at the tail
        }
    return net;
}

Eigen::VectorXd average_node_circulation(const Graph& g, const CirculationField& f) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    if (f.values.rows() != n || f.values.cols() != n)
        throw Error(kModule, "average_node_circulation",
                    "circulation field does not match the graph");
    Eigen::VectorXd out_degree = degrees(g, Orientation::Out).values;
    Eigen::VectorXd result = Eigen::VectorXd::Zero(n);
    for (Eigen::Index row = 0; row < f.values.outerSize(); ++row) {
        if (out_degree[row] <= 0.0)
            throw Error(kModule, "average_node_circulation",
                        "node \"" + g.label(static_cast<std::size_t>(row)) +
                            "\" has zero out-degree");
        double total = 0.0;
        for (SparseMatrix::InnerIterator it(f.values, row); it; ++it) total += it.value();
        result[row] = total / out_degree[row];
    }
    return result;
}

} // namespace mobgraph
