#pragma once

// Straight-line reimplementations of the unconstrained densest-k-subgraph
// methods on dense matrices: top-k Frank-Wolfe with its rounding, naive
// peeling, and rank-1 bilinear selection from a full eigendecomposition.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "support/oracles.hpp"

namespace reference {

using oracle::Dense;
using vacdks::VertexId;
using vacdks::VertexSet;

// Indices of the k largest scores, ties to the lower index; sorted.
inline VertexSet top_k(const std::vector<double>& scores, int k) {
  std::vector<VertexId> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return scores[a] > scores[b]; });
  VertexSet s(order.begin(), order.begin() + k);
  std::sort(s.begin(), s.end());
  return s;
}

inline std::vector<double> times(const Dense& a, const std::vector<double>& x, double diag) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0.0) sum += a[i][j] * x[j];
    y[i] = sum + diag * x[i];
  }
  return y;
}

// Pairwise mass transfers between fractional entries: the entry with the
// largest lambda x_v + (Ax)_v absorbs from the one with the smallest.
inline VertexSet round(const Dense& a, double lambda, std::vector<double> x) {
  constexpr double kSnap = 1e-9;
  for (auto& v : x) {
    if (v <= kSnap) v = 0.0;
    if (v >= 1.0 - kSnap) v = 1.0;
  }
  // s = Ax, kept current through each transfer.
  auto s = times(a, x, 0.0);
  while (true) {
    std::vector<VertexId> frac;
    for (std::size_t v = 0; v < x.size(); ++v)
      if (x[v] > 0.0 && x[v] < 1.0) frac.push_back(static_cast<VertexId>(v));
    if (frac.size() < 2) break;
    auto key = [&](VertexId v) { return lambda * x[v] + s[v]; };
    VertexId hi = frac[0];
    for (VertexId v : frac)
      if (key(v) > key(hi)) hi = v;
    VertexId lo = -1;
    for (VertexId v : frac) {
      if (v == hi) continue;
      if (lo < 0 || key(v) < key(lo)) lo = v;
    }
    const double delta = std::min(x[lo], 1.0 - x[hi]);
    if (x[lo] <= 1.0 - x[hi]) {
      x[hi] += x[lo];
      x[lo] = 0.0;
    } else {
      x[lo] -= 1.0 - x[hi];
      x[hi] = 1.0;
    }
    if (x[hi] >= 1.0 - kSnap) x[hi] = 1.0;
    if (x[lo] <= kSnap) x[lo] = 0.0;
    for (std::size_t u = 0; u < x.size(); ++u)
      if (a[hi][u] != 0.0) s[u] += delta * a[hi][u];
    for (std::size_t u = 0; u < x.size(); ++u)
      if (a[lo][u] != 0.0) s[u] -= delta * a[lo][u];
  }
  VertexSet out;
  for (std::size_t v = 0; v < x.size(); ++v)
    if (x[v] >= 0.5) out.push_back(static_cast<VertexId>(v));
  return out;
}

struct FwOutcome {
  VertexSet selected;
  std::size_t iterations = 0;
  double final_objective = 0.0;
};

// Frank-Wolfe over {x in [0,1]^n : sum x = k} from the uniform point k/n.
inline FwOutcome frank_wolfe(const Dense& a, int k, double lambda, double lipschitz,
                             int max_iters, double gap_tol) {
  const std::size_t n = a.size();
  std::vector<double> x(n, static_cast<double>(k) / static_cast<double>(n));
  FwOutcome out;
  bool stopped = false;
  for (int it = 0; it < max_iters; ++it) {
    const auto grad = times(a, x, lambda);
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) objective += x[i] * grad[i];
    const auto s = oracle::indicator(n, top_k(grad, k));
    double gap = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      gap += grad[i] * (s[i] - x[i]);
      norm2 += (s[i] - x[i]) * (s[i] - x[i]);
    }
    ++out.iterations;
    out.final_objective = objective;
    if (norm2 == 0.0 || gap <= gap_tol * std::max(1.0, objective)) {
      stopped = true;
      break;
    }
    const double step = std::min(1.0, gap / (lipschitz * norm2));
    for (std::size_t i = 0; i < n; ++i) x[i] += step * (s[i] - x[i]);
  }
  if (!stopped) out.final_objective = oracle::g_value(a, lambda, x);
  out.selected = round(a, lambda, x);
  return out;
}

// Removes a minimum-degree vertex (lowest index on ties) until k remain;
// degrees are recomputed from scratch each round.
inline VertexSet peel(const Dense& a, int k) {
  const std::size_t n = a.size();
  std::vector<bool> alive(n, true);
  for (std::size_t left = n; left > static_cast<std::size_t>(k); --left) {
    VertexId victim = -1;
    double best = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      double d = 0.0;
      for (std::size_t u = 0; u < n; ++u)
        if (alive[u]) d += a[v][u];
      if (victim < 0 || d < best) {
        victim = static_cast<VertexId>(v);
        best = d;
      }
    }
    alive[victim] = false;
  }
  VertexSet s;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v]) s.push_back(static_cast<VertexId>(v));
  return s;
}

struct Rank1 {
  VertexSet selected;
  double eigenvalue = 0.0;
};

// Top-k of +v1 and of -v1 for the largest-magnitude eigenpair (the positive
// one when +rho and -rho both occur); the set with more induced weight wins,
// ties to +v1 for a sign-definite v1 oriented to be non-negative. Empty when
// the eigenpair, a top-k boundary, or the winner is not well defined.
inline std::optional<Rank1> rank1(const Dense& a, int k) {
  const auto m = oracle::to_eigen(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const auto& vals = es.eigenvalues();
  const Eigen::Index n = vals.size();
  // Eigenvalues ascend: the largest magnitude is at one end.
  const double rho = std::max(std::abs(vals(0)), std::abs(vals(n - 1)));
  const double tol = 1e-6 * rho;
  const Eigen::Index top = vals(n - 1) >= rho - tol ? n - 1 : 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != top && std::abs(vals(i) - vals(top)) <= tol) return std::nullopt;

  std::vector<double> v(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) v[i] = es.eigenvectors()(i, top);
  if (std::accumulate(v.begin(), v.end(), 0.0) < 0.0)
    for (auto& e : v) e = -e;
  const bool definite = std::all_of(v.begin(), v.end(), [](double e) { return e >= -1e-9; });

  auto ambiguous = [&](const std::vector<double>& scores) {
    auto sorted = scores;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    return k < n && std::abs(sorted[k - 1] - sorted[k]) <= 1e-7;
  };
  std::vector<double> neg(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
  if (ambiguous(v) || ambiguous(neg)) return std::nullopt;

  const auto plus = top_k(v, k);
  const auto minus = top_k(neg, k);
  const double w_plus = oracle::induced(a, plus);
  const double w_minus = oracle::induced(a, minus);
  const bool tied = minus != plus && std::abs(w_plus - w_minus) <= 1e-12 * std::max(1.0, w_plus);
  if (tied && !definite) return std::nullopt;
  return Rank1{!tied && w_minus > w_plus ? minus : plus, vals(top)};
}

}  // namespace reference
