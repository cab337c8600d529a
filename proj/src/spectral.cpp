#include "vacdks/spectral.hpp"

#include <cmath>
#include <numeric>

#include "vacdks/rng.hpp"

namespace vacdks {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double normalize(std::span<double> v) {
  const double norm = std::sqrt(dot(v, v));
  if (norm > 0.0)
    for (auto& e : v) e /= norm;
  return norm;
}

}  // namespace

EigenEstimate dominant_eigenpair(const SymmetricOperator& op, VertexId n,
                                 const PowerOptions& options) {
  EigenEstimate out;
  const auto size = static_cast<std::size_t>(n);
  out.vector.assign(size, 0.0);
  if (n == 0) {
    out.converged = true;
    return out;
  }

  Rng rng(options.seed);
  std::vector<double> v(size), w(size), z(size);
  for (auto& e : v) e = rng.uniform(0.5, 1.5);
  normalize(v);

  double theta = 0.0;
  for (int it = 1; it <= options.max_iters; ++it) {
    op(v, w);
    op(w, z);
    const double next = dot(v, z);  // = ||M v||^2
    out.iterations = it;
    if (normalize(z) == 0.0) {
      // v lies in the null space; M is zero on the Krylov space we can reach.
      theta = 0.0;
      out.converged = true;
      break;
    }
    const bool settled = std::abs(next - theta) <= options.tol * std::abs(next);
    theta = next;
    v.swap(z);
    if (settled) {
      out.converged = true;
      break;
    }
  }
  out.magnitude = std::sqrt(std::max(theta, 0.0));
  if (out.magnitude == 0.0) {
    out.vector = v;
    return out;
  }

  // v ~ a e+ + b e-, M v / s ~ a e+ - b e-.
  op(v, w);
  std::vector<double> plus(size), minus(size);
  for (std::size_t i = 0; i < size; ++i) {
    plus[i] = v[i] + w[i] / out.magnitude;
    minus[i] = v[i] - w[i] / out.magnitude;
  }
  const double plus_norm = normalize(plus);
  const double minus_norm = normalize(minus);
  auto rayleigh = [&](std::span<const double> u) {
    op(u, z);
    return dot(u, z);
  };
  constexpr double kNegligible = 1e-8;
  const double rho_plus = plus_norm > kNegligible ? rayleigh(plus) : 0.0;
  const double rho_minus = minus_norm > kNegligible ? rayleigh(minus) : 0.0;
  // +s and -s both present (bipartite-like spectra): equal magnitudes up to
  // rounding go to the positive end.
  const bool plus_wins =
      std::abs(rho_plus) >= std::abs(rho_minus) * (1.0 - std::sqrt(options.tol));
  if (plus_norm > kNegligible && (minus_norm <= kNegligible || plus_wins)) {
    out.value = rho_plus;
    out.vector = std::move(plus);
  } else {
    out.value = rho_minus;
    out.vector = std::move(minus);
  }

  op(out.vector, z);
  double res = 0.0;
  for (std::size_t i = 0; i < size; ++i) res += std::pow(z[i] - out.value * out.vector[i], 2);
  out.residual = std::sqrt(res);
  out.magnitude = std::max(out.magnitude, std::abs(out.value));
  return out;
}

SymmetricOperator adjacency_operator(const WeightedGraph& g, double diag) {
  return [&g, diag](std::span<const double> x, std::span<double> y) { g.multiply(x, y, diag); };
}

SymmetricOperator deflate(SymmetricOperator op, double value, std::vector<double> v) {
  return [op = std::move(op), value, v = std::move(v)](std::span<const double> x,
                                                         std::span<double> y) {
    op(x, y);
    const double c = value * dot(v, x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= c * v[i];
  };
}

}  // namespace vacdks
