#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vacdks/graph.hpp"

namespace vacdks {

// y = M x for a symmetric n x n matrix M.
using SymmetricOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct PowerOptions {
  int max_iters = 100;
  double tol = 1e-7;  // relative change of the Rayleigh quotient
  std::uint64_t seed = 0;
};

struct EigenEstimate {
  // Signed eigenvalue of largest magnitude and its unit eigenvector.
  double value = 0.0;
  std::vector<double> vector;
  // Largest singular value, sqrt of the Rayleigh quotient of M^2.
  double magnitude = 0.0;
  // ||M v - value * v||.
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Power iteration on M^2 from a seeded positive random start. Iterating on
// M^2 converges even when +s and -s are both extreme eigenvalues (bipartite
// graphs); the limit vector is then split into its +s and -s components and
// the one with the larger |Rayleigh quotient| is returned (ties favor +s).
EigenEstimate dominant_eigenpair(const SymmetricOperator& op, VertexId n,
                                 const PowerOptions& options);

SymmetricOperator adjacency_operator(const WeightedGraph& g, double diag = 0.0);

// M - value * v v^T.
SymmetricOperator deflate(SymmetricOperator op, double value, std::vector<double> v);

}  // namespace vacdks
