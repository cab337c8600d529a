#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vacdks/constraints.hpp"
#include "vacdks/graph.hpp"

namespace vacdks {

struct FwConfig {
  // Diagonal loading; unset means w_max (1 for graphs without edges).
  std::optional<double> lambda;
  int max_iters = 500;
  // Stop once the FW gap is at most gap_tol * max(1, g(x)).
  double gap_tol = 1e-6;
  int power_iters = 100;
  double power_tol = 1e-7;
  std::uint64_t seed = 0;

  double resolve_lambda(const WeightedGraph& g) const;
  void validate() const;
};

struct FwIteration {
  double objective;  // g(x) before the step
  double gap;        // grad . (s - x)
  double step;       // gamma
};

struct FwTrace {
  std::vector<FwIteration> iterations;
  // g at the returned fractional iterate.
  double final_objective = 0.0;
  double lipschitz = 0.0;
  double lambda = 0.0;
  bool converged = false;  // stopped on the gap test rather than the cap
  double seconds = 0.0;
};

struct FwResult {
  std::vector<double> x;
  VertexSet selected;
  FwTrace trace;
};

// x^T (A + lambda I) x with a single sparse product.
double objective_g(const WeightedGraph& g, double lambda, std::span<const double> x);

// Spectral-norm estimate of A + lambda I by power iteration, inflated by 1.01
// so the step rule sees an upper bound.
double lipschitz_estimate(const WeightedGraph& g, double lambda, int power_iters = 100,
                          double power_tol = 1e-7, std::uint64_t seed = 0);

inline constexpr double kLipschitzInflation = 1.01;

// Frank-Wolfe ascent on x^T (A + lambda I) x over the relaxed feasible set,
// starting at x0, followed by round_to_integral on the last iterate.
// Step: gamma = min(1, gap / (L ||d||^2)).
FwResult solve_fw(const WeightedGraph& g, const ConstraintSpec& spec, const FwConfig& cfg,
                  std::span<const double> x0);

}  // namespace vacdks
