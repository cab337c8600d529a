#pragma once

// Independent reference computations for the tests. Everything here works on
// dense matrices and plain enumeration and shares no code with the library
// beyond its input types.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "vacdks/constraints.hpp"
#include "vacdks/graph.hpp"

namespace oracle {

using vacdks::AttributeAssignment;
using vacdks::Edge;
using vacdks::VertexId;
using vacdks::VertexSet;
using vacdks::WeightedGraph;

using Dense = std::vector<std::vector<double>>;

inline Dense dense(const WeightedGraph& g) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  Dense a(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edge_list()) a[e.u][e.v] = a[e.v][e.u] = e.w;
  return a;
}

inline Eigen::MatrixXd to_eigen(const Dense& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[i][j];
  return m;
}

inline double max_weight(const Dense& a) {
  double w = 0.0;
  for (const auto& row : a)
    for (double x : row) w = std::max(w, x);
  return w;
}

// x^T (A + lambda I) x by the definition.
inline double g_value(const Dense& a, double lambda, const std::vector<double>& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) total += x[i] * a[i][j] * x[j];
    total += lambda * x[i] * x[i];
  }
  return total;
}

// Sum of weights of edges with both endpoints in s.
inline double induced(const Dense& a, const VertexSet& s) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) total += a[s[i]][s[j]];
  return total;
}

inline std::vector<double> indicator(std::size_t n, const VertexSet& s) {
  std::vector<double> x(n, 0.0);
  for (VertexId v : s) x[v] = 1.0;
  return x;
}

inline bool feasible(const std::vector<int>& labels, const std::vector<int>& mins, int k,
                     const VertexSet& s) {
  if (static_cast<int>(s.size()) != k) return false;
  std::vector<int> counts(mins.size(), 0);
  for (VertexId v : s) ++counts[labels[v]];
  for (std::size_t i = 0; i < mins.size(); ++i)
    if (counts[i] < mins[i]) return false;
  return true;
}

// Calls fn on every feasible k-subset, in lexicographic order.
inline void for_each_feasible(int n, const std::vector<int>& labels, const std::vector<int>& mins,
                              int k, const std::function<void(const VertexSet&)>& fn) {
  VertexSet s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  if (k > n) return;
  while (true) {
    if (feasible(labels, mins, k, s)) fn(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

struct Best {
  VertexSet set;
  double value = -std::numeric_limits<double>::infinity();
};

// Maximum of score(s) over feasible sets; the first (lexicographically
// smallest) maximizer is kept.
inline Best best_feasible(int n, const std::vector<int>& labels, const std::vector<int>& mins,
                          int k, const std::function<double(const VertexSet&)>& score) {
  Best best;
  for_each_feasible(n, labels, mins, k, [&](const VertexSet& s) {
    const double v = score(s);
    if (v > best.value) best = {s, v};
  });
  return best;
}

// A small random instance: weights in (0, 1] or unit, labels over r groups
// with every group non-empty, and a random valid (k, mins).
struct Instance {
  WeightedGraph graph;
  AttributeAssignment attrs;
  int k = 0;
  std::vector<int> mins;
};

inline Instance random_instance(std::mt19937_64& rng, int n_lo, int n_hi, int r_max,
                                bool weighted, double density = -1.0, bool zero_mins = false) {
  std::uniform_int_distribution<int> n_dist(n_lo, n_hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = n_dist(rng);
  const double p = density >= 0.0 ? density : 0.2 + 0.7 * unit(rng);

  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (unit(rng) < p) edges.push_back({u, v, weighted ? 1.0 - unit(rng) : 1.0});
  if (edges.empty() && n >= 2) edges.push_back({0, 1, weighted ? 1.0 - unit(rng) : 1.0});

  const int r = std::uniform_int_distribution<int>(1, std::min(r_max, n))(rng);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) labels[v] = v < r ? v : std::uniform_int_distribution<int>(0, r - 1)(rng);
  std::shuffle(labels.begin(), labels.end(), rng);

  Instance inst;
  inst.graph = WeightedGraph::from_edges(n, edges, weighted);
  inst.attrs = AttributeAssignment(labels, r);
  inst.k = std::uniform_int_distribution<int>(2, n)(rng);
  inst.mins.assign(static_cast<std::size_t>(r), 0);
  if (!zero_mins) {
    // Random minimums with sum <= k and k_i <= |C_i|.
    int budget = inst.k;
    for (int i = 0; i < r; ++i) {
      const int cap = std::min<int>(budget, static_cast<int>(inst.attrs.group(i).size()));
      inst.mins[i] = std::uniform_int_distribution<int>(0, cap)(rng);
      budget -= inst.mins[i];
    }
  }
  return inst;
}

// Spectral norm of a symmetric matrix.
inline double spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace oracle
