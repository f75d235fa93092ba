#include "mobgraph/laplacian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "mobgraph/spectral.hpp"

namespace mobgraph {

namespace {

constexpr const char* kModule = "laplacian";

Eigen::VectorXd stationary_with_kind(const Graph& g, LaplacianKind kind) {
    ComponentDecomposition comp = components(g, ComponentMode::Strong);
    if (comp.count() != 1)
        throw Error(kModule, "laplacian",
                    std::string(kind_name(kind)) + " requires a strongly connected graph (found " +
                        std::to_string(comp.count()) + " strongly connected components)");
    return stationary_distribution(g);
}

Eigen::VectorXd positive_degrees(const Graph& g, LaplacianKind kind) {
    Eigen::VectorXd d = degrees(g, Orientation::Out).values;
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (d[i] <= 0.0)
            throw Error(kModule, "laplacian",
                        std::string(kind_name(kind)) + " requires all degrees > 0; node \"" +
                            g.label(static_cast<std::size_t>(i)) + "\" has zero degree");
    return d;
}

} // namespace

Eigen::VectorXd stationary_distribution(const Graph& g) {
    ComponentDecomposition comp = components(g, ComponentMode::Strong);
    if (comp.count() != 1)
        throw Error(kModule, "stationary_distribution",
                    "requires a strongly connected graph (found " + std::to_string(comp.count()) +
                        " strongly connected components)");
    // Symmetric adjacency: reversible chain, phi = d / sum(d) exactly. This
    // keeps symmetric-A identities (e.g. Diplacian == Normalized) tight to
    // the last bit; the iterative solver would leave ~1e-11 noise in them.
    if (is_symmetric(g.adjacency())) {
        Eigen::VectorXd d = degrees(g, Orientation::Out).values;
        return d / d.sum();
    }
    return perron_vector(g, 1e-13).phi;
}

const char* kind_name(LaplacianKind kind) {
    switch (kind) {
        case LaplacianKind::Combinatorial: return "combinatorial";
        case LaplacianKind::Normalized: return "normalized";
        case LaplacianKind::CombinatorialDirected: return "combinatorial-directed";
        case LaplacianKind::Symmetrized: return "symmetrized";
        case LaplacianKind::CombinatorialSymmetrized: return "combinatorial-symmetrized";
        case LaplacianKind::Diplacian: return "diplacian";
    }
    return "?";
}

Eigen::MatrixXd laplacian(const Graph& g, LaplacianKind kind) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    if (n == 0) throw Error(kModule, "laplacian", "graph has no nodes");
    const SparseMatrix& a = g.adjacency();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);

    switch (kind) {
        case LaplacianKind::Combinatorial: {
            Eigen::VectorXd d = degrees(g, Orientation::Out).values;
            m = -Eigen::MatrixXd(a);
            m.diagonal() += d;
            return m;
        }
        case LaplacianKind::Normalized: {
            Eigen::VectorXd s = positive_degrees(g, kind).cwiseSqrt();
            for (Eigen::Index row = 0; row < a.outerSize(); ++row)
                for (SparseMatrix::InnerIterator it(a, row); it; ++it)
                    m(row, it.col()) = -it.value() / (s[row] * s[it.col()]);
            m.diagonal().array() += 1.0;
            return m;
        }
        case LaplacianKind::CombinatorialDirected: {
            Eigen::VectorXd dout = degrees(g, Orientation::Out).values;
            Eigen::VectorXd din = degrees(g, Orientation::In).values;
            // fill the strict upper triangle and mirror: defect exactly 0
            for (Eigen::Index row = 0; row < a.outerSize(); ++row)
                for (SparseMatrix::InnerIterator it(a, row); it; ++it) {
                    if (it.col() == row) continue;
                    double v = -0.5 * it.value();
                    m(row, it.col()) += v;
                    m(it.col(), row) += v;
                }
            for (Eigen::Index i = 0; i < n; ++i)
                m(i, i) = 0.5 * (dout[i] + din[i]) - a.coeff(i, i);
            return m;
        }
        default: break;
    }

    // Perron-weighted kinds from here on.
    Eigen::VectorXd phi = stationary_with_kind(g, kind);
    SparseMatrix p = transition_matrix(g);

    switch (kind) {
        case LaplacianKind::Symmetrized: {
            Eigen::VectorXd s = phi.cwiseSqrt();
            for (Eigen::Index row = 0; row < p.outerSize(); ++row)
                for (SparseMatrix::InnerIterator it(p, row); it; ++it) {
                    if (it.col() == row) continue;
                    double v = -0.5 * (s[row] * it.value() / s[it.col()]);
                    m(row, it.col()) += v;
                    m(it.col(), row) += v;
                }
            m.diagonal().array() += 1.0;
            for (Eigen::Index i = 0; i < n; ++i) m(i, i) -= p.coeff(i, i);
            return m;
        }
        case LaplacianKind::CombinatorialSymmetrized: {
            for (Eigen::Index row = 0; row < p.outerSize(); ++row)
                for (SparseMatrix::InnerIterator it(p, row); it; ++it) {
                    if (it.col() == row) continue;
                    double v = -0.5 * (phi[row] * it.value());
                    m(row, it.col()) += v;
                    m(it.col(), row) += v;
                }
            for (Eigen::Index i = 0; i < n; ++i) m(i, i) = phi[i] - phi[i] * p.coeff(i, i);
            return m;
        }
        case LaplacianKind::Diplacian: {
            Eigen::VectorXd s = phi.cwiseSqrt();
            for (Eigen::Index row = 0; row < p.outerSize(); ++row)
                for (SparseMatrix::InnerIterator it(p, row); it; ++it)
                    m(row, it.col()) = -s[row] * it.value() / s[it.col()];
            m.diagonal().array() += 1.0;
            return m;
        }
        default:
            throw Error(kModule, "laplacian", "unknown kind");
    }
}

double symmetry_defect(const Eigen::MatrixXd& m) {
    double defect = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            defect = std::max(defect, std::abs(m(i, j) - m(j, i)));
    return defect;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
    double defect = symmetry_defect(m);
    if (defect > 1e-10)
        throw Error(kModule, "symmetric_eigenvalues",
                    "matrix is not symmetric (defect " + std::to_string(defect) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw Error(kModule, "symmetric_eigenvalues", "eigensolver did not converge");

    // eigenpair residual guard: ||M v - lambda v|| per pair
    const Eigen::MatrixXd& v = solver.eigenvectors();
    Eigen::MatrixXd residual = m * v - v * solver.eigenvalues().asDiagonal();
    double worst = residual.colwise().norm().maxCoeff();
    if (worst > 1e-8)
        throw Error(kModule, "symmetric_eigenvalues",
                    "eigenpair residual " + std::to_string(worst) + " exceeds 1e-8");
    return solver.eigenvalues(); // ascending
}

SpectrumReport spectrum_report(const Graph& g, LaplacianKind kind) {
    Eigen::MatrixXd m = laplacian(g, kind);
    SpectrumReport report;
    report.kind = kind;
    report.symmetry_defect = symmetry_defect(m);
    report.is_symmetric = report.symmetry_defect <= 1e-10;

    if (kind == LaplacianKind::Diplacian) {
        // reported via the general solver, no PSD verdict
        Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
        if (solver.info() != Eigen::Success)
            throw Error(kModule, "spectrum_report", "eigensolver did not converge");
        report.eigenvalues.assign(solver.eigenvalues().data(),
                                  solver.eigenvalues().data() + solver.eigenvalues().size());
        std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
                  [](const std::complex<double>& a, const std::complex<double>& b) {
                      if (a.real() != b.real()) return a.real() < b.real();
                      return a.imag() < b.imag();
                  });
        report.is_psd = std::nullopt;
    } else {
        Eigen::VectorXd eigs = symmetric_eigenvalues(m);
        report.eigenvalues.reserve(static_cast<std::size_t>(eigs.size()));
        for (Eigen::Index i = 0; i < eigs.size(); ++i)
            report.eigenvalues.emplace_back(eigs[i], 0.0);
        report.is_psd = eigs.minCoeff() >= -1e-10;
    }

    report.min_real = report.eigenvalues.front().real();
    double radius = 0.0;
    for (const auto& ev : report.eigenvalues) {
        report.min_real = std::min(report.min_real, ev.real());
        radius = std::max(radius, std::abs(ev));
    }
    report.spectral_radius = radius;
    return report;
}

Eigen::MatrixXd laplacian_pseudoinverse(const Eigen::MatrixXd& m) {
    double defect = symmetry_defect(m);
    if (defect > 1e-10)
        throw Error(kModule, "laplacian_pseudoinverse",
                    "matrix is not symmetric (defect " + std::to_string(defect) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw Error(kModule, "laplacian_pseudoinverse", "eigensolver did not converge");
    const Eigen::VectorXd& eigs = solver.eigenvalues();
    if (eigs.minCoeff() < -1e-10)
        throw Error(kModule, "laplacian_pseudoinverse",
                    "matrix is not positive semidefinite (min eigenvalue " +
                        std::to_string(eigs.minCoeff()) + ")");

    double cutoff = 1e-10 * std::max(eigs.maxCoeff(), 0.0);
    Eigen::VectorXd inverted = Eigen::VectorXd::Zero(eigs.size());
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
        if (eigs[i] > cutoff) inverted[i] = 1.0 / eigs[i];
    return solver.eigenvectors() * inverted.asDiagonal() * solver.eigenvectors().transpose();
}

} // namespace mobgraph
