#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "vacdks/fw_solver.hpp"
#include "vacdks/graph.hpp"
#include "vacdks/runner.hpp"

namespace vacdks {

// How per-group minimums are requested on the command line: explicit values
// (one per group), one value for every group, or ceil(alpha * k) for a
// single group.
struct MinSpec {
  std::vector<int> explicit_mins;
  std::optional<int> all;
  std::optional<double> alpha;
  int alpha_group = 0;

  // Throws std::invalid_argument when the explicit list does not match the
  // group count.
  std::vector<int> resolve(int groups, int k) const;
};

struct InstancePaths {
  std::filesystem::path edges;
  std::filesystem::path attrs;
  std::filesystem::path planted;
  std::filesystem::path manifest;
};

// Writes edges.txt, attributes.txt, planted.txt and manifest.json (the full
// generator config plus RNG identity) into `dir`, creating it if needed.
InstancePaths write_planted_instance(const std::filesystem::path& dir,
                                     const PlantedCliqueConfig& cfg, const WeightedGraph& graph,
                                     const AttributeAssignment& attrs, const VertexSet& planted);

// Whitespace-separated vertex ids.
VertexSet load_vertex_set(const std::filesystem::path& path);

nlohmann::json describe(const PlantedCliqueConfig& cfg);

struct CampaignConfig {
  std::vector<Method> methods;
  // Planted-clique campaign: one instance per seed, seed field ignored.
  std::optional<PlantedCliqueConfig> generator;
  // File campaign: one instance, swept over `ks`.
  std::filesystem::path edges;
  std::filesystem::path attrs;
  std::vector<int> ks;

  int trials = 1;  // seeds 0 .. trials-1
  MinSpec mins;
  FwConfig fw;
  // Run every timed solve in a child process (`executable solve ...`).
  bool isolate = true;
  std::filesystem::path executable;
  std::filesystem::path work_dir;
};

struct SummaryRow {
  std::string method;
  int k = 0;
  int runs = 0;
  int failures = 0;
  std::optional<int> successes;  // runs with recovered == true, when truth exists
  double normalized_mean = 0.0;
  double normalized_std = 0.0;
  double seconds_mean = 0.0;
  double seconds_std = 0.0;
  // False for a single run: the sample deviation is then reported as 0.
  bool std_defined = false;
};

struct CampaignResult {
  std::vector<RunRecord> runs;
  std::vector<SummaryRow> summary;
};

// For each seed and method: a warm-up solve (untimed) and a timed solve.
// A failing run is recorded with its error in `status` and the campaign
// continues.
CampaignResult run_campaign(const CampaignConfig& cfg, std::ostream* progress = nullptr);

// Mean and sample standard deviation per (method, k) over successful runs,
// in order of first appearance.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs);

nlohmann::json to_json(const SummaryRow& row);

// Columns: method,seed,k,n,m,objective,normalized,recovered,iterations,
// seconds,group_counts,status. Doubles are written with 17 significant
// digits so summaries recompute exactly from the file.
void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs);
std::vector<RunRecord> read_runs_csv(std::istream& in);

}  // namespace vacdks
