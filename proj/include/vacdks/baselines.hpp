#pragma once

#include <cstdint>
#include <vector>

#include "vacdks/constraints.hpp"
#include "vacdks/graph.hpp"
#include "vacdks/spectral.hpp"

namespace vacdks {

// Removes the minimum (weighted) degree vertex among those whose group stays
// at or above its minimum, until k vertices remain. Ties go to the lower id.
// Unweighted graphs use a bucket queue, weighted ones a lazy binary heap.
VertexSet greedy_peel(const WeightedGraph& g, const ConstraintSpec& spec);

namespace detail {
// Requires an unweighted graph.
VertexSet peel_bucket_queue(const WeightedGraph& g, const ConstraintSpec& spec);
VertexSet peel_heap(const WeightedGraph& g, const ConstraintSpec& spec);
}  // namespace detail

struct LrboResult {
  VertexSet selected;
  // Maximizing pair of x^T v1 u1^T y over feasible binary x, y.
  VertexSet x_star;
  VertexSet y_star;
  double bilinear_value = 0.0;
  // Dominant eigenpair of A (largest |eigenvalue|), u1 = eigenvalue * v1.
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;
  double residual = 0.0;
  bool converged = false;
};

struct LrboOptions {
  int power_iters = 1000;
  double power_tol = 1e-10;
  std::uint64_t seed = 0;
};

// Rank-1 low-rank bilinear optimization. x runs over the two sign
// candidates lmo(+v1) and lmo(-v1); each gets its best y = lmo(sign(eig *
// v1.x) v1). The reported set is the x candidate with the larger induced
// weight. When power iteration stalls it is retried once with ten times the
// iteration budget; `converged` records the outcome.
// Throws std::invalid_argument for graphs without edges.
LrboResult lrbo_rank1(const WeightedGraph& g, const ConstraintSpec& spec,
                      const LrboOptions& options = {});

struct BruteForceResult {
  VertexSet selected;
  double value = 0.0;
  std::uint64_t feasible_subsets = 0;
};

inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

// Exhaustive search over k-subsets meeting the group minimums. Ties resolve
// to the lexicographically smallest set. Throws std::invalid_argument when
// C(n, k) exceeds `limit`.
BruteForceResult brute_force(const WeightedGraph& g, const ConstraintSpec& spec,
                             std::uint64_t limit = kBruteForceLimit);

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace vacdks
