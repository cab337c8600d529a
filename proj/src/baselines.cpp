#include "vacdks/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace vacdks {

namespace {

// Alive vertices, group counts, and the groups already at their minimum.
// Counts only decrease, so a locked group stays locked.
class PeelState {
 public:
  PeelState(const WeightedGraph& g, const ConstraintSpec& spec)
      : spec_(spec),
        alive_(static_cast<std::size_t>(g.num_vertices()), 1),
        remaining_(g.num_vertices()),
        counts_(static_cast<std::size_t>(spec.num_groups()), 0),
        locked_(static_cast<std::size_t>(spec.num_groups()), 0) {
    for (int i = 0; i < spec.num_groups(); ++i) {
      counts_[i] = static_cast<int>(spec.attr().group(i).size());
      locked_[i] = counts_[i] <= spec.mins[i];
    }
  }

  bool done() const { return remaining_ <= spec_.k; }
  bool alive(VertexId v) const { return alive_[v] != 0; }
  bool removable(VertexId v) const { return alive_[v] && !locked_[spec_.attr().label(v)]; }

  void remove(VertexId v) {
    const int group = spec_.attr().label(v);
    alive_[v] = 0;
    --remaining_;
    if (--counts_[group] <= spec_.mins[group]) locked_[group] = 1;
  }

  VertexSet survivors() const {
    VertexSet out;
    for (VertexId v = 0; v < static_cast<VertexId>(alive_.size()); ++v)
      if (alive_[v]) out.push_back(v);
    return out;
  }

  [[noreturn]] void stuck() const {
    throw std::logic_error("peeling ran out of removable vertices with " +
                           std::to_string(remaining_) + " left, k = " + std::to_string(spec_.k));
  }

 private:
  const ConstraintSpec& spec_;
  std::vector<char> alive_;
  VertexId remaining_;
  std::vector<int> counts_;
  std::vector<char> locked_;
};

}  // namespace

namespace detail {

VertexSet peel_bucket_queue(const WeightedGraph& g, const ConstraintSpec& spec) {
  if (g.is_weighted()) throw std::invalid_argument("bucket-queue peeling needs an unweighted graph");
  validate(spec, g);
  const VertexId n = g.num_vertices();
  PeelState state(g, spec);

  std::vector<std::size_t> degree(static_cast<std::size_t>(n));
  std::size_t max_degree = 0;
  for (VertexId v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    max_degree = std::max(max_degree, degree[v]);
  }
  // Each bucket is a min-heap of ids. Entries go stale when the vertex dies
  // or its degree drops; they are skipped on pop.
  std::vector<std::vector<VertexId>> buckets(max_degree + 1);
  for (VertexId v = 0; v < n; ++v) buckets[degree[v]].push_back(v);  // ascending = valid heap
  const std::greater<VertexId> heap_order;

  std::size_t current = 0;
  while (!state.done()) {
    VertexId victim = -1;
    while (current <= max_degree) {
      auto& bucket = buckets[current];
      if (bucket.empty()) {
        ++current;
        continue;
      }
      std::pop_heap(bucket.begin(), bucket.end(), heap_order);
      const VertexId v = bucket.back();
      bucket.pop_back();
      if (state.removable(v) && degree[v] == current) {
        victim = v;
        break;
      }
    }
    if (victim < 0) state.stuck();

    state.remove(victim);
    for (VertexId u : g.neighbors(victim)) {
      if (!state.alive(u)) continue;
      auto& bucket = buckets[--degree[u]];
      bucket.push_back(u);
      std::push_heap(bucket.begin(), bucket.end(), heap_order);
      current = std::min(current, degree[u]);
    }
  }
  return state.survivors();
}

VertexSet peel_heap(const WeightedGraph& g, const ConstraintSpec& spec) {
  validate(spec, g);
  const VertexId n = g.num_vertices();
  PeelState state(g, spec);

  std::vector<double> degree(static_cast<std::size_t>(n));
  // Alive-neighbor counts let a vertex that lost every neighbor sit at an
  // exact 0 instead of the rounding residue of the subtractions.
  std::vector<std::size_t> links(static_cast<std::size_t>(n));
  using Entry = std::pair<double, VertexId>;
  std::vector<Entry> initial;
  initial.reserve(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    degree[v] = g.weighted_degree(v);
    links[v] = g.degree(v);
    initial.emplace_back(degree[v], v);
  }
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap(std::greater<Entry>{},
                                                                           std::move(initial));

  while (!state.done()) {
    VertexId victim = -1;
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (state.removable(v) && d == degree[v]) {
        victim = v;
        break;
      }
    }
    if (victim < 0) state.stuck();

    state.remove(victim);
    g.for_each_neighbor(victim, [&](VertexId u, double w) {
      if (!state.alive(u)) return;
      degree[u] = --links[u] == 0 ? 0.0 : degree[u] - w;
      heap.emplace(degree[u], u);
    });
  }
  return state.survivors();
}

}  // namespace detail

VertexSet greedy_peel(const WeightedGraph& g, const ConstraintSpec& spec) {
  return g.is_weighted() ? detail::peel_heap(g, spec) : detail::peel_bucket_queue(g, spec);
}

// ---------------------------------------------------------------------------

namespace {

double dot_on(std::span<const double> v, std::span<const VertexId> s) {
  double sum = 0.0;
  for (VertexId i : s) sum += v[i];
  return sum;
}

}  // namespace

LrboResult lrbo_rank1(const WeightedGraph& g, const ConstraintSpec& spec,
                      const LrboOptions& options) {
  validate(spec, g);
  if (g.num_edges() == 0) throw std::invalid_argument("LRBO needs a graph with at least one edge");

  const auto op = adjacency_operator(g);
  auto eig = dominant_eigenpair(op, g.num_vertices(),
                                {options.power_iters, options.power_tol, options.seed});
  if (!eig.converged) {
    eig = dominant_eigenpair(op, g.num_vertices(),
                             {options.power_iters * 10, options.power_tol, options.seed});
  }

  LrboResult out;
  out.eigenvalue = eig.value;
  out.residual = eig.residual;
  out.converged = eig.converged;
  out.eigenvector = std::move(eig.vector);
  const auto& v1 = out.eigenvector;
  const std::size_t n = v1.size();

  std::vector<double> scaled(n);
  auto lmo_scaled = [&](double c) {
    for (std::size_t i = 0; i < n; ++i) scaled[i] = c * v1[i];
    return lmo(spec, scaled);
  };

  const VertexSet candidates[2] = {lmo_scaled(1.0), lmo_scaled(-1.0)};
  bool have_pair = false;
  for (const auto& x : candidates) {
    const double a = dot_on(v1, x);
    // The pair value is eig * a * (v1 . y): y follows the sign of eig * a.
    const VertexSet y = lmo_scaled(out.eigenvalue * a < 0.0 ? -1.0 : 1.0);
    const double value = a * out.eigenvalue * dot_on(v1, y);
    if (!have_pair || value > out.bilinear_value) {
      out.bilinear_value = value;
      out.x_star = x;
      out.y_star = y;
      have_pair = true;
    }
  }

  const double w_plus = induced_weight(g, candidates[0]);
  const double w_minus = induced_weight(g, candidates[1]);
  out.selected = w_minus > w_plus ? candidates[1] : candidates[0];
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

BruteForceResult brute_force(const WeightedGraph& g, const ConstraintSpec& spec,
                             std::uint64_t limit) {
  validate(spec, g);
  const VertexId n = g.num_vertices();
  const int k = spec.k;
  const auto count = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
  if (count > limit) {
    throw std::invalid_argument("brute force over C(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") subsets exceeds the limit of " +
                                std::to_string(limit));
  }

  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> dense(nn * nn, 0.0);
  for (const auto& e : g.edge_list()) {
    dense[e.u * nn + e.v] = e.w;
    dense[e.v * nn + e.u] = e.w;
  }
  const auto& attr = spec.attr();

  BruteForceResult best;
  bool found = false;
  std::vector<VertexId> combo(static_cast<std::size_t>(k));
  std::iota(combo.begin(), combo.end(), 0);
  std::vector<int> counts(static_cast<std::size_t>(attr.num_groups()));
  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    for (VertexId v : combo) ++counts[attr.label(v)];
    bool feasible = true;
    for (int i = 0; i < attr.num_groups() && feasible; ++i) feasible = counts[i] >= spec.mins[i];
    if (feasible) {
      ++best.feasible_subsets;
      double value = 0.0;
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) value += dense[combo[a] * nn + combo[b]];
      if (!found || value > best.value) {
        best.value = value;
        best.selected = combo;
        found = true;
      }
    }
    // Next combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && combo[i] == n - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  if (!found) throw std::logic_error("no feasible subset found");
  return best;
}

}  // namespace vacdks
