#include "vacdks/runner.hpp"

#include <chrono>
#include <stdexcept>

#include "vacdks/baselines.hpp"
#include "vacdks/metrics.hpp"

namespace vacdks {

std::optional<Method> parse_method(std::string_view name) {
  if (name == "fw") return Method::kFw;
  if (name == "peel") return Method::kPeel;
  if (name == "lrbo") return Method::kLrbo;
  if (name == "fw+peel") return Method::kFwPeel;
  if (name == "oracle") return Method::kOracle;
  return std::nullopt;
}

std::string method_name(Method method) {
  switch (method) {
    case Method::kFw: return "fw";
    case Method::kPeel: return "peel";
    case Method::kLrbo: return "lrbo";
    case Method::kFwPeel: return "fw+peel";
    case Method::kOracle: return "oracle";
  }
  return "unknown";
}

namespace {

nlohmann::json trace_summary(const FwTrace& trace) {
  return {{"lambda", trace.lambda},
          {"lipschitz", trace.lipschitz},
          {"converged", trace.converged},
          {"final_gap", trace.iterations.empty() ? 0.0 : trace.iterations.back().gap},
          {"final_objective", trace.final_objective}};
}

}  // namespace

MethodOutcome run_method(Method method, const WeightedGraph& g, const ConstraintSpec& spec,
                         const FwConfig& fw) {
  using Clock = std::chrono::steady_clock;
  MethodOutcome out;
  const auto start = Clock::now();
  switch (method) {
    case Method::kFw: {
      const auto x0 = init_uniform(spec);
      auto result = solve_fw(g, spec, fw, x0);
      out.selected = std::move(result.selected);
      out.iterations = static_cast<int>(result.trace.iterations.size());
      out.details = trace_summary(result.trace);
      break;
    }
    case Method::kFwPeel: {
      const auto peeled = greedy_peel(g, spec);
      const auto x0 = indicator(g.num_vertices(), peeled);
      auto result = solve_fw(g, spec, fw, x0);
      out.selected = std::move(result.selected);
      out.iterations = static_cast<int>(result.trace.iterations.size());
      out.details = trace_summary(result.trace);
      break;
    }
    case Method::kPeel:
      out.selected = greedy_peel(g, spec);
      out.iterations = g.num_vertices() - spec.k;
      break;
    case Method::kLrbo: {
      auto result = lrbo_rank1(g, spec, {1000, 1e-10, fw.seed});
      out.selected = std::move(result.selected);
      out.details = {{"bilinear_value", result.bilinear_value},
                     {"eigenvalue", result.eigenvalue},
                     {"residual", result.residual},
                     {"converged", result.converged}};
      break;
    }
    case Method::kOracle: {
      auto result = brute_force(g, spec);
      out.selected = std::move(result.selected);
      out.details = {{"feasible_subsets", result.feasible_subsets}};
      break;
    }
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

RunRecord make_record(Method method, const WeightedGraph& g, const ConstraintSpec& spec,
                      const MethodOutcome& outcome, std::uint64_t seed, const VertexSet* planted) {
  if (!is_feasible_binary(spec, outcome.selected)) {
    throw std::logic_error(method_name(method) + " returned an infeasible vertex set");
  }
  RunRecord r;
  r.method = method_name(method);
  r.n = g.num_vertices();
  r.m = g.num_edges();
  r.k = spec.k;
  r.mins = spec.mins;
  r.seed = seed;
  r.objective = induced_weight(g, outcome.selected);
  r.normalized = spec.k >= 2 ? normalized_edge_weight(g, outcome.selected) : 0.0;
  r.group_counts = spec.attr().group_counts(outcome.selected);
  r.group_proportions = group_proportions(spec.attr(), outcome.selected);
  if (planted) r.recovered = recovery_check(*planted, outcome.selected);
  r.iterations = outcome.iterations;
  r.seconds = outcome.seconds;
  r.selected = outcome.selected;
  r.details = outcome.details;
  return r;
}

nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json j = {
      {"method", r.method},
      {"instance", r.instance},
      {"n", r.n},
      {"m", r.m},
      {"k", r.k},
      {"mins", r.mins},
      {"seed", r.seed},
      {"objective", r.objective},
      {"normalized", r.normalized},
      {"group_counts", r.group_counts},
      {"group_proportions", r.group_proportions},
      {"recovered", nullptr},
      {"iterations", r.iterations},
      {"seconds", r.seconds},
      {"selected", r.selected},
      {"status", r.status},
      {"details", r.details},
  };
  if (r.recovered) j["recovered"] = *r.recovered;
  return j;
}

RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.method = j.at("method").get<std::string>();
  r.instance = j.value("instance", nlohmann::json::object());
  r.n = j.value("n", VertexId{0});
  r.m = j.value("m", std::size_t{0});
  r.k = j.at("k").get<int>();
  r.mins = j.value("mins", std::vector<int>{});
  r.seed = j.value("seed", std::uint64_t{0});
  r.objective = j.at("objective").get<double>();
  r.normalized = j.at("normalized").get<double>();
  r.group_counts = j.value("group_counts", std::vector<int>{});
  r.group_proportions = j.value("group_proportions", std::vector<double>{});
  if (j.contains("recovered") && !j["recovered"].is_null()) r.recovered = j["recovered"].get<bool>();
  r.iterations = j.value("iterations", 0);
  r.seconds = j.value("seconds", 0.0);
  r.selected = j.value("selected", VertexSet{});
  r.status = j.value("status", std::string("ok"));
  r.details = j.value("details", nlohmann::json::object());
  return r;
}

}  // namespace vacdks
