#include "vacdks/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vacdks/spectral.hpp"

namespace vacdks {

double normalized_edge_weight(const WeightedGraph& g, std::span<const VertexId> s) {
  if (s.size() < 2) throw std::invalid_argument("normalized edge weight needs at least 2 vertices");
  const double total = induced_weight(g, s);
  if (g.max_weight() <= 0.0) return 0.0;
  const double k = static_cast<double>(s.size());
  return total / (g.max_weight() * k * (k - 1.0) / 2.0);
}

std::vector<double> group_proportions(const AttributeAssignment& attr,
                                      std::span<const VertexId> s) {
  if (s.empty()) throw std::invalid_argument("group proportions of an empty set");
  const auto counts = attr.group_counts(s);
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(s.size());
  return out;
}

bool recovery_check(std::span<const VertexId> planted, std::span<const VertexId> s) {
  VertexSet a(planted.begin(), planted.end());
  VertexSet b(s.begin(), s.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

BoundReport upper_bound(const WeightedGraph& g, const ConstraintSpec& spec,
                        const BoundOptions& options) {
  validate(spec, g);
  if (spec.k < 2) throw std::invalid_argument("the upper bound needs k >= 2");

  BoundReport report;
  if (g.num_edges() == 0) {
    report.bound = 0.0;
    return report;
  }

  const auto lrbo = lrbo_rank1(g, spec, {options.power_iters, options.power_tol, options.seed});
  report.bilinear_value = lrbo.bilinear_value;
  report.sigma1 = std::abs(lrbo.eigenvalue);
  report.residual1 = lrbo.residual;

  auto rest = deflate(adjacency_operator(g), lrbo.eigenvalue, lrbo.eigenvector);
  auto second = dominant_eigenpair(rest, g.num_vertices(),
                                   {options.power_iters, options.power_tol, options.seed + 1});
  if (!second.converged) {
    second = dominant_eigenpair(rest, g.num_vertices(),
                                {options.power_iters * 10, options.power_tol, options.seed + 1});
  }
  report.sigma2 = second.magnitude;
  report.residual2 = second.residual;
  report.converged = lrbo.converged && second.converged;

  if (report.sigma1 - report.sigma2 < kDegenerateGap * report.sigma1) {
    report.degenerate_spectrum = true;
    report.sigma2 += options.power_tol * report.sigma1;
    report.sigma1 = std::max(report.sigma1, report.sigma2);
  }

  const double w_max = g.max_weight();
  const double k = spec.k;
  report.term_rank1 =
      report.bilinear_value / (w_max * k * (k - 1.0)) + report.sigma2 / (w_max * (k - 1.0));
  report.term_sigma1 = report.sigma1 / (w_max * (k - 1.0));
  report.bound = std::min({report.term_trivial, report.term_rank1, report.term_sigma1});
  return report;
}

}  // namespace vacdks
