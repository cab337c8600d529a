#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vacdks/graph.hpp"

namespace vacdks {

// Size and per-group lower bounds of a VAC-DkS instance: choose exactly k
// vertices with at least mins[i] of them from group i.
struct ConstraintSpec {
  int k = 0;
  std::vector<int> mins;
  std::reference_wrapper<const AttributeAssignment> attributes;

  ConstraintSpec(int k_, std::vector<int> mins_, const AttributeAssignment& attr)
      : k(k_), mins(std::move(mins_)), attributes(attr) {}

  const AttributeAssignment& attr() const { return attributes.get(); }
  int num_groups() const { return attr().num_groups(); }
  int min_total() const;
};

inline constexpr double kBoxTolerance = 1e-9;
inline constexpr double kSumTolerance = 1e-6;
inline constexpr double kFractionalThreshold = 1e-9;

// Throws std::invalid_argument unless 1 <= k <= n, mins has one entry per
// group, 0 <= mins[i] <= |C_i|, and sum(mins) <= k.
void validate(const ConstraintSpec& spec, const WeightedGraph& g);

// Throws std::invalid_argument unless x lies in the relaxed feasible set
// (box, sum and group-mass tolerances above).
void check_fractional_feasible(const ConstraintSpec& spec, std::span<const double> x);
bool is_fractional_feasible(const ConstraintSpec& spec, std::span<const double> x);

bool is_feasible_binary(const ConstraintSpec& spec, std::span<const VertexId> s);

// Feasible starting point: each group gets mins[i]/|C_i| per member, then the
// remaining mass k - sum(mins) is spread evenly over entries below 1, capping
// at 1, until nothing is left.
std::vector<double> init_uniform(const ConstraintSpec& spec);

// Linear maximization over the feasible polytope. Returns the maximizing
// vertex of the polytope as a sorted vertex set: the top mins[i] scores of
// every group, then the best k - sum(mins) among the rest. Equal scores go to
// the lower vertex id.
VertexSet lmo(const ConstraintSpec& spec, std::span<const double> scores);

namespace detail {

// Top `count` of `candidates` by (score desc, id asc), appended to `out`.
// Heap (Floyd build + pops) and quickselect variants select the same set.
void select_top_heap(std::span<const double> scores, std::vector<VertexId> candidates,
                     std::size_t count, VertexSet& out);
void select_top_quickselect(std::span<const double> scores, std::vector<VertexId> candidates,
                            std::size_t count, VertexSet& out);

VertexSet lmo_quickselect(const ConstraintSpec& spec, std::span<const double> scores);

}  // namespace detail

struct RoundingResult {
  VertexSet selected;
  // Mass transfers performed; each one makes at least one entry integral.
  std::size_t transfers = 0;
};

// Converts a feasible fractional point into a feasible vertex set whose
// loaded objective x'(A + lambda I)x' is no smaller than the input's.
// Pairs inside one group are merged first, then the (at most one per group)
// leftovers across groups. Each transfer moves mass from the fractional entry
// with the smallest lambda*x_v + (Ax)_v to the one with the largest.
// Requires lambda >= w_max; throws std::invalid_argument otherwise or when x
// is infeasible.
RoundingResult round_to_integral(const WeightedGraph& g, const ConstraintSpec& spec,
                                 double lambda, std::span<const double> x);

// Indicator vector of a vertex set.
std::vector<double> indicator(VertexId n, std::span<const VertexId> s);

}  // namespace vacdks
