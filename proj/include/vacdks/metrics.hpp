#pragma once

#include <span>
#include <vector>

#include "vacdks/baselines.hpp"
#include "vacdks/constraints.hpp"
#include "vacdks/graph.hpp"

namespace vacdks {

// Induced weight over w_max * C(|s|, 2). Equals the edge density for
// unweighted graphs; 0 for graphs without edges. Needs |s| >= 2.
double normalized_edge_weight(const WeightedGraph& g, std::span<const VertexId> s);

// |s ∩ C_i| / |s| per group. Needs a non-empty s.
std::vector<double> group_proportions(const AttributeAssignment& attr,
                                      std::span<const VertexId> s);

// Exact equality of the two sets (order-insensitive).
bool recovery_check(std::span<const VertexId> planted, std::span<const VertexId> s);

struct BoundReport {
  double term_trivial = 1.0;
  double term_rank1 = 0.0;   // bilinear / (w_max k (k-1)) + sigma2 / (w_max (k-1))
  double term_sigma1 = 0.0;  // sigma1 / (w_max (k-1))
  double bound = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double bilinear_value = 0.0;
  // Power-iteration residuals ||A v - value v|| of the two eigenpairs.
  double residual1 = 0.0;
  double residual2 = 0.0;
  bool converged = true;
  // sigma1 and sigma2 agree to within 1e-6 relative; sigma2 was widened.
  bool degenerate_spectrum = false;
};

struct BoundOptions {
  int power_iters = 5000;
  double power_tol = 1e-7;
  std::uint64_t seed = 0;
};

inline constexpr double kDegenerateGap = 1e-6;

// Instance upper bound on the optimal normalized edge weight:
// min{1, rank-1 bilinear term + sigma2 term, sigma1 term}. Computed on A
// alone; the diagonal loading plays no part. Needs k >= 2.
BoundReport upper_bound(const WeightedGraph& g, const ConstraintSpec& spec,
                        const BoundOptions& options = {});

}  // namespace vacdks
