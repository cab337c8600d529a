#include "vacdks/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vacdks {

int ConstraintSpec::min_total() const { return std::accumulate(mins.begin(), mins.end(), 0); }

void validate(const ConstraintSpec& spec, const WeightedGraph& g) {
  const auto& attr = spec.attr();
  if (attr.num_vertices() != g.num_vertices()) {
    throw std::invalid_argument("attribute assignment covers " +
                                std::to_string(attr.num_vertices()) + " vertices, graph has " +
                                std::to_string(g.num_vertices()));
  }
  if (spec.k < 1 || spec.k > g.num_vertices()) {
    throw std::invalid_argument("k = " + std::to_string(spec.k) + " outside [1, " +
                                std::to_string(g.num_vertices()) + "]");
  }
  if (static_cast<int>(spec.mins.size()) != attr.num_groups()) {
    throw std::invalid_argument("got " + std::to_string(spec.mins.size()) +
                                " group minimums for " + std::to_string(attr.num_groups()) +
                                " groups");
  }
  long long total = 0;
  for (int i = 0; i < attr.num_groups(); ++i) {
    const int size = static_cast<int>(attr.group(i).size());
    if (spec.mins[i] < 0 || spec.mins[i] > size) {
      throw std::invalid_argument("minimum " + std::to_string(spec.mins[i]) + " for group " +
                                  std::to_string(i) + " outside [0, " + std::to_string(size) + "]");
    }
    total += spec.mins[i];
  }
  if (total > spec.k) {
    throw std::invalid_argument("group minimums sum to " + std::to_string(total) +
                                ", more than k = " + std::to_string(spec.k));
  }
}

namespace {

std::string fractional_violation(const ConstraintSpec& spec, std::span<const double> x) {
  const auto& attr = spec.attr();
  if (static_cast<VertexId>(x.size()) != attr.num_vertices()) return "dimension mismatch";
  double sum = 0.0;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (!(x[v] >= -kBoxTolerance && x[v] <= 1.0 + kBoxTolerance)) {
      return "entry " + std::to_string(v) + " = " + std::to_string(x[v]) + " outside [0, 1]";
    }
    sum += x[v];
  }
  if (std::abs(sum - spec.k) > kSumTolerance * spec.k) {
    return "entries sum to " + std::to_string(sum) + ", expected " + std::to_string(spec.k);
  }
  for (int i = 0; i < attr.num_groups(); ++i) {
    double mass = 0.0;
    for (VertexId v : attr.group(i)) mass += x[v];
    if (mass < spec.mins[i] - kBoxTolerance) {
      return "group " + std::to_string(i) + " mass " + std::to_string(mass) + " below " +
             std::to_string(spec.mins[i]);
    }
  }
  return {};
}

}  // namespace

void check_fractional_feasible(const ConstraintSpec& spec, std::span<const double> x) {
  if (auto why = fractional_violation(spec, x); !why.empty()) {
    throw std::invalid_argument("infeasible point: " + why);
  }
}

bool is_fractional_feasible(const ConstraintSpec& spec, std::span<const double> x) {
  return fractional_violation(spec, x).empty();
}

bool is_feasible_binary(const ConstraintSpec& spec, std::span<const VertexId> s) {
  const auto& attr = spec.attr();
  if (static_cast<int>(s.size()) != spec.k) return false;
  std::vector<char> seen(static_cast<std::size_t>(attr.num_vertices()), 0);
  std::vector<int> counts(static_cast<std::size_t>(attr.num_groups()), 0);
  for (VertexId v : s) {
    if (v < 0 || v >= attr.num_vertices() || seen[v]) return false;
    seen[v] = 1;
    ++counts[attr.label(v)];
  }
  for (int i = 0; i < attr.num_groups(); ++i) {
    if (counts[i] < spec.mins[i]) return false;
  }
  return true;
}

std::vector<double> init_uniform(const ConstraintSpec& spec) {
  const auto& attr = spec.attr();
  std::vector<double> x(static_cast<std::size_t>(attr.num_vertices()), 0.0);
  for (int i = 0; i < attr.num_groups(); ++i) {
    const auto& members = attr.group(i);
    if (members.empty()) continue;
    const double value = static_cast<double>(spec.mins[i]) / static_cast<double>(members.size());
    for (VertexId v : members) x[v] = value;
  }

  // Rounding can leave a residual of a few ulps that no pass removes.
  const double eps = 1e-13 * std::max(1, spec.k);
  double residual = static_cast<double>(spec.k - spec.min_total());
  std::vector<VertexId> open;
  while (residual > eps) {
    open.clear();
    for (VertexId v = 0; v < static_cast<VertexId>(x.size()); ++v)
      if (x[v] < 1.0) open.push_back(v);
    if (open.empty()) break;
    const double share = residual / static_cast<double>(open.size());
    for (VertexId v : open) {
      const double update = std::min(share, 1.0 - x[v]);
      x[v] += update;
      residual -= update;
    }
  }
  return x;
}

std::vector<double> indicator(VertexId n, std::span<const VertexId> s) {
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (VertexId v : s) x.at(static_cast<std::size_t>(v)) = 1.0;
  return x;
}

namespace detail {

namespace {

struct Ranking {
  std::span<const double> scores;
  // a ranks ahead of b.
  bool ahead(VertexId a, VertexId b) const {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  }
};

}  // namespace

void select_top_heap(std::span<const double> scores, std::vector<VertexId> candidates,
                     std::size_t count, VertexSet& out) {
  count = std::min(count, candidates.size());
  if (count == 0) return;
  const Ranking rank{scores};
  const auto behind = [&](VertexId a, VertexId b) { return rank.ahead(b, a); };
  std::make_heap(candidates.begin(), candidates.end(), behind);
  auto end = candidates.end();
  for (std::size_t i = 0; i < count; ++i) {
    std::pop_heap(candidates.begin(), end, behind);
    --end;
    out.push_back(*end);
  }
}

void select_top_quickselect(std::span<const double> scores, std::vector<VertexId> candidates,
                            std::size_t count, VertexSet& out) {
  count = std::min(count, candidates.size());
  if (count == 0) return;
  const Ranking rank{scores};
  const auto ahead = [&](VertexId a, VertexId b) { return rank.ahead(a, b); };
  std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(count - 1),
                   candidates.end(), ahead);
  out.insert(out.end(), candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(count));
}

namespace {

template <class Select>
VertexSet lmo_with(const ConstraintSpec& spec, std::span<const double> scores, Select select) {
  const auto& attr = spec.attr();
  const auto n = attr.num_vertices();
  if (static_cast<VertexId>(scores.size()) != n) {
    throw std::invalid_argument("score vector has wrong dimension");
  }
  VertexSet chosen;
  chosen.reserve(static_cast<std::size_t>(spec.k));
  for (int i = 0; i < attr.num_groups(); ++i) {
    if (spec.mins[i] > 0) select(scores, attr.group(i), static_cast<std::size_t>(spec.mins[i]), chosen);
  }
  const int rest = spec.k - static_cast<int>(chosen.size());
  if (rest > 0) {
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    for (VertexId v : chosen) taken[v] = 1;
    std::vector<VertexId> remaining;
    remaining.reserve(static_cast<std::size_t>(n) - chosen.size());
    for (VertexId v = 0; v < n; ++v)
      if (!taken[v]) remaining.push_back(v);
    select(scores, std::move(remaining), static_cast<std::size_t>(rest), chosen);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

VertexSet lmo_quickselect(const ConstraintSpec& spec, std::span<const double> scores) {
  return lmo_with(spec, scores, select_top_quickselect);
}

}  // namespace detail

VertexSet lmo(const ConstraintSpec& spec, std::span<const double> scores) {
  return detail::lmo_with(spec, scores, detail::select_top_heap);
}

// ---------------------------------------------------------------------------
// Rounding

namespace {

class Rounder {
 public:
  Rounder(const WeightedGraph& g, double lambda, std::vector<double> x)
      : g_(g), lambda_(lambda), x_(std::move(x)), s_(x_.size()) {
    for (auto& value : x_) {
      if (value <= kFractionalThreshold) value = 0.0;
      if (value >= 1.0 - kFractionalThreshold) value = 1.0;
    }
    g_.multiply(x_, s_);
  }

  bool fractional(VertexId v) const { return x_[v] > 0.0 && x_[v] < 1.0; }

  // Merges fractional entries of `pool` pairwise until at most one is left;
  // `pool` is updated in place.
  void merge(std::vector<VertexId>& pool) {
    while (pool.size() >= 2) {
      std::size_t hi = 0;
      for (std::size_t i = 1; i < pool.size(); ++i)
        if (key(pool[i]) > key(pool[hi]) || (key(pool[i]) == key(pool[hi]) && pool[i] < pool[hi]))
          hi = i;
      std::size_t lo = hi == 0 ? 1 : 0;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (i == hi) continue;
        if (key(pool[i]) < key(pool[lo]) || (key(pool[i]) == key(pool[lo]) && pool[i] < pool[lo]))
          lo = i;
      }
      transfer(pool[hi], pool[lo]);
      std::erase_if(pool, [&](VertexId v) { return !fractional(v); });
    }
  }

  std::size_t transfers() const { return transfers_; }
  const std::vector<double>& x() const { return x_; }

 private:
  double key(VertexId v) const { return lambda_ * x_[v] + s_[v]; }

  // Moves mass from `from` to `to` until one of them is integral.
  void transfer(VertexId to, VertexId from) {
    const double delta = std::min(x_[from], 1.0 - x_[to]);
    if (x_[from] <= 1.0 - x_[to]) {
      x_[to] += x_[from];
      x_[from] = 0.0;
    } else {
      x_[from] -= 1.0 - x_[to];
      x_[to] = 1.0;
    }
    if (x_[to] >= 1.0 - kFractionalThreshold) x_[to] = 1.0;
    if (x_[from] <= kFractionalThreshold) x_[from] = 0.0;
    g_.for_each_neighbor(to, [&](VertexId u, double w) { s_[u] += delta * w; });
    g_.for_each_neighbor(from, [&](VertexId u, double w) { s_[u] -= delta * w; });
    ++transfers_;
  }

  const WeightedGraph& g_;
  double lambda_;
  std::vector<double> x_;
  std::vector<double> s_;
  std::size_t transfers_ = 0;
};

}  // namespace

RoundingResult round_to_integral(const WeightedGraph& g, const ConstraintSpec& spec,
                                 double lambda, std::span<const double> x) {
  if (lambda < g.max_weight()) {
    throw std::invalid_argument("rounding needs lambda >= w_max (" +
                                std::to_string(g.max_weight()) + "), got " +
                                std::to_string(lambda));
  }
  check_fractional_feasible(spec, x);
  const auto& attr = spec.attr();

  Rounder rounder(g, lambda, std::vector<double>(x.begin(), x.end()));
  std::vector<VertexId> leftovers;
  for (int i = 0; i < attr.num_groups(); ++i) {
    std::vector<VertexId> pool;
    for (VertexId v : attr.group(i))
      if (rounder.fractional(v)) pool.push_back(v);
    // A group without a minimum has nothing to protect; its mass goes
    // straight to the cross-group phase.
    if (spec.mins[i] > 0) rounder.merge(pool);
    leftovers.insert(leftovers.end(), pool.begin(), pool.end());
  }
  std::sort(leftovers.begin(), leftovers.end());
  rounder.merge(leftovers);

  // A single survivor only carries accumulated floating-point drift.
  RoundingResult result;
  result.transfers = rounder.transfers();
  const auto& xr = rounder.x();
  for (VertexId v = 0; v < static_cast<VertexId>(xr.size()); ++v)
    if (xr[v] >= 0.5) result.selected.push_back(v);

  if (!is_feasible_binary(spec, result.selected)) {
    throw std::logic_error("rounding produced an infeasible set of size " +
                           std::to_string(result.selected.size()));
  }
  return result;
}

}  // namespace vacdks
