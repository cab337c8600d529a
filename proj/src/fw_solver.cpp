#include "vacdks/fw_solver.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vacdks/spectral.hpp"

namespace vacdks {

double FwConfig::resolve_lambda(const WeightedGraph& g) const {
  if (lambda) return *lambda;
  return g.max_weight() > 0.0 ? g.max_weight() : 1.0;
}

void FwConfig::validate() const {
  if (lambda && !(*lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(gap_tol > 0.0)) throw std::invalid_argument("gap_tol must be positive");
  if (power_iters < 1) throw std::invalid_argument("power_iters must be at least 1");
  if (!(power_tol > 0.0)) throw std::invalid_argument("power_tol must be positive");
}

double objective_g(const WeightedGraph& g, double lambda, std::span<const double> x) {
  std::vector<double> y(x.size());
  g.multiply(x, y, lambda);
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

double lipschitz_estimate(const WeightedGraph& g, double lambda, int power_iters,
                          double power_tol, std::uint64_t seed) {
  if (g.num_edges() == 0) return kLipschitzInflation * lambda;
  const auto est = dominant_eigenpair(adjacency_operator(g, lambda), g.num_vertices(),
                                      {power_iters, power_tol, seed});
  return kLipschitzInflation * est.magnitude;
}

FwResult solve_fw(const WeightedGraph& g, const ConstraintSpec& spec, const FwConfig& cfg,
                  std::span<const double> x0) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  cfg.validate();
  validate(spec, g);
  check_fractional_feasible(spec, x0);

  const auto n = static_cast<std::size_t>(g.num_vertices());
  FwResult out;
  out.trace.lambda = cfg.resolve_lambda(g);
  const double lambda = out.trace.lambda;
  const double lipschitz =
      lipschitz_estimate(g, lambda, cfg.power_iters, cfg.power_tol, cfg.seed);
  out.trace.lipschitz = lipschitz;

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> grad(n);
  std::vector<double> s_dense(n, 0.0);

  for (int it = 0; it < cfg.max_iters; ++it) {
    g.multiply(x, grad, lambda);
    const double objective = std::inner_product(x.begin(), x.end(), grad.begin(), 0.0);
    const VertexSet s = lmo(spec, grad);
    for (VertexId v : s) s_dense[v] = 1.0;

    // d = s - x; gap = grad . d; ||d||^2.
    double gap = 0.0;
    double d_norm2 = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double d = s_dense[v] - x[v];
      gap += grad[v] * d;
      d_norm2 += d * d;
    }

    if (d_norm2 == 0.0 || gap <= cfg.gap_tol * std::max(1.0, objective)) {
      out.trace.iterations.push_back({objective, std::max(gap, 0.0), 0.0});
      out.trace.converged = true;
      for (VertexId v : s) s_dense[v] = 0.0;
      break;
    }

    const double step = std::min(1.0, gap / (lipschitz * d_norm2));
    out.trace.iterations.push_back({objective, gap, step});
    for (std::size_t v = 0; v < n; ++v) x[v] += step * (s_dense[v] - x[v]);
    for (VertexId v : s) s_dense[v] = 0.0;
  }

  out.trace.final_objective = out.trace.converged ? out.trace.iterations.back().objective
                                                  : objective_g(g, lambda, x);
  out.selected = round_to_integral(g, spec, lambda, x).selected;
  out.x = std::move(x);
  out.trace.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace vacdks
