#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "mobgraph/construct.hpp"
#include "mobgraph/graph.hpp"

namespace mobgraph {

enum class Deterrence { Power, Exponential };

// Inputs of a singly-constrained gravity model: every location ships a known
// total outflow O_i, and that outflow splits across destinations in
// proportion to m_j^beta1 * f(r_ij), where m_j is the destination mass
// (population), r_ij the pairwise distance, and f the deterrence function
// (power: r^-beta2, exponential: exp(-beta2 * r)).
struct GravitySpec {
    std::vector<std::string> ids;
    std::vector<double> outflows;  // O_i >= 0 (trips leaving location i)
    std::vector<double> masses;    // m_i > 0
    Eigen::MatrixXd distances;     // r_ij > 0 for every pair actually used
    double beta1 = 1.0;
    Deterrence deterrence = Deterrence::Power;
    double beta2 = 2.0;            // >= 0
};

// y(i,j) = O_i * m_j^beta1 * f(r_ij) / sum_k m_k^beta1 * f(r_ik), with k
// ranging over the candidate destinations of origin i. Candidates default to
// every j != i; pass explicit per-origin index lists to restrict them (a list
// may contain i itself when distances(i,i) is positive). The normalization
// makes every row sum reproduce the origin's outflow.
ODMatrix gravity_flows(const GravitySpec& spec,
                       const std::vector<std::vector<std::size_t>>* candidates = nullptr);

// Common part of commuters between two flow matrices over the same zone list:
//   2 * sum_ij min(y_ij, z_ij) / (sum_ij y_ij + sum_ij z_ij)   in [0, 1],
// exactly 1 when the matrices agree entrywise, 0 when their supports are
// disjoint. Rejects the 0/0 case of two all-zero matrices.
double cpc(const ODMatrix& y, const ODMatrix& z);

// Net flux per node (positive = net outflow) and diffusivity of the medium.
struct FluxVector {
    Eigen::VectorXd q;
    double k = 1.0; // > 0
};

// Population estimate around each node, inverting the discrete diffusion
// relation q = -k L phi with the pseudoinverse: phi_hat = -(1/k) L+ q.
// Requires an undirected connected graph. The estimate always has zero mean
// (L+ annihilates the constant direction), so it recovers the true
// concentration up to an additive constant.
Eigen::VectorXd estimate_population(const Graph& g, const FluxVector& flux);

} // namespace mobgraph
