#pragma once

#include "mobgraph/graph.hpp"

namespace mobgraph {

// Stationary row vector of the transition matrix: phi' P = phi', entries
// strictly positive, summing to 1. residual is the stationarity defect
// sup_i |(P' phi - phi)_i| actually achieved.
struct PerronVector {
    Eigen::VectorXd phi;
    double residual = 0.0;
};

// Power iteration for the Perron vector. Requires strong connectivity. The
// iteration runs on the lazy chain (I + P')/2 — same fixed point, but
// convergent on periodic chains (bipartite undirected graphs oscillate under
// plain iteration) — while the residual is always measured against P itself.
// max_iter <= 0 picks 10 n log n, clamped to [1000, 100000].
PerronVector perron_vector(const Graph& g, double tol = 1e-12, long max_iter = 0);

// Cross-check route: dense generalized eigenproblem A' x = D x solved via a
// standard eigensolver on D^-1 A', then phi = D x (or, if that fails the
// stationarity test, phi = D^-1 x; the transform achieving residual <= tol
// wins). Intended for validation on small graphs, not production sizes.
PerronVector perron_vector_generalized(const Graph& g, double tol = 1e-8);

// Per-edge stationary flow F_ij = phi_i P_ij, aligned with the adjacency
// pattern. Inflow equals outflow at every node (up to the solver residual).
struct CirculationField {
    SparseMatrix values;
};

CirculationField circulation(const Graph& g, const PerronVector& perron);

// Per-node inflow minus outflow; a valid circulation keeps this at ~0.
Eigen::VectorXd circulation_imbalance(const CirculationField& f);

// Average node circulation: outgoing stationary flow per unit of weighted
// out-degree, i.e. row_sum(F)_i / D+(i) = phi_i / D+(i).
Eigen::VectorXd average_node_circulation(const Graph& g, const CirculationField& f);

} // namespace mobgraph
