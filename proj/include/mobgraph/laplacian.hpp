#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "mobgraph/graph.hpp"

namespace mobgraph {

// The six Laplacian variants. Combinatorial/Normalized/CombinatorialDirected
// need only degrees; the last three are built on the stationary distribution
// of the transition matrix and therefore require strong connectivity.
enum class LaplacianKind {
    Combinatorial,            // L  = D - A
    Normalized,               // L^ = I - D^-1/2 A D^-1/2
    CombinatorialDirected,    // LG = (D_out + D_in - A - A')/2
    Symmetrized,              // I - (F^1/2 P F^-1/2 + F^-1/2 P' F^1/2)/2, F = diag(phi)
    CombinatorialSymmetrized, // F - (F P + P' F)/2
    Diplacian,                // F^1/2 (I - P) F^-1/2
};

const char* kind_name(LaplacianKind kind);

// The stationary vector the Perron-weighted kinds are built from: the exact
// closed form d / sum(d) when the adjacency is symmetric (reversible chain),
// the iterated Perron vector (residual 1e-13) otherwise. Exposed so callers
// can verify identities against the very same phi the matrices use.
Eigen::VectorXd stationary_distribution(const Graph& g);

// Dense n x n Laplacian. The symmetric kinds are assembled entry-pair-wise,
// so their symmetry defect is exactly zero. When the adjacency is symmetric
// the stationary distribution is taken in closed form (phi = d / sum d);
// otherwise it is iterated to a 1e-13 residual.
Eigen::MatrixXd laplacian(const Graph& g, LaplacianKind kind);

// max |M_ij - M_ji|
double symmetry_defect(const Eigen::MatrixXd& m);

// Full real spectrum, ascending, of a symmetric matrix (tridiagonalization +
// QL/QR underneath). Rejects inputs with symmetry defect > 1e-10 and
// cross-checks every eigenpair residual against 1e-8.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m);

struct SpectrumReport {
    LaplacianKind kind;
    bool is_symmetric = false;  // defect <= 1e-10
    double symmetry_defect = 0.0;
    // ascending by (real, imag); imaginary parts are exactly 0 for the
    // symmetric kinds, possibly nonzero for the Diplacian
    std::vector<std::complex<double>> eigenvalues;
    // PSD verdict (min eigenvalue >= -1e-10); not applicable for the
    // Diplacian, whose spectrum is reported without a PSD claim
    std::optional<bool> is_psd;
    double min_real = 0.0;
    double spectral_radius = 0.0;
};

SpectrumReport spectrum_report(const Graph& g, LaplacianKind kind);

// Moore-Penrose pseudoinverse of a symmetric PSD matrix via its
// eigendecomposition, dropping eigenvalues below 1e-10 * max eigenvalue.
Eigen::MatrixXd laplacian_pseudoinverse(const Eigen::MatrixXd& m);

} // namespace mobgraph
