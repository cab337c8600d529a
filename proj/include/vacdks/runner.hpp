#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vacdks/constraints.hpp"
#include "vacdks/fw_solver.hpp"
#include "vacdks/graph.hpp"

namespace vacdks {

enum class Method { kFw, kPeel, kLrbo, kFwPeel, kOracle };

std::optional<Method> parse_method(std::string_view name);
std::string method_name(Method method);

struct MethodOutcome {
  VertexSet selected;
  int iterations = 0;
  double seconds = 0.0;
  nlohmann::json details = nlohmann::json::object();
};

// Runs one method. `seconds` covers the solve call only. fw+peel runs greedy
// peeling, then Frank-Wolfe from the indicator of the peeled set.
MethodOutcome run_method(Method method, const WeightedGraph& g, const ConstraintSpec& spec,
                         const FwConfig& fw);

// One solver run, the unit of output for `solve` and `bench`.
struct RunRecord {
  std::string method;
  nlohmann::json instance = nlohmann::json::object();
  VertexId n = 0;
  std::size_t m = 0;
  int k = 0;
  std::vector<int> mins;
  std::uint64_t seed = 0;
  double objective = 0.0;
  double normalized = 0.0;
  std::vector<int> group_counts;
  std::vector<double> group_proportions;
  std::optional<bool> recovered;
  int iterations = 0;
  double seconds = 0.0;
  VertexSet selected;
  std::string status = "ok";
  nlohmann::json details = nlohmann::json::object();
};

// Fills the metric fields from the outcome. Throws std::logic_error when the
// selected set is infeasible.
RunRecord make_record(Method method, const WeightedGraph& g, const ConstraintSpec& spec,
                      const MethodOutcome& outcome, std::uint64_t seed,
                      const VertexSet* planted = nullptr);

nlohmann::json to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& j);

}  // namespace vacdks
