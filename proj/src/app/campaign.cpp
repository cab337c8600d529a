#include "vacdks/campaign.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vacdks/rng.hpp"

namespace vacdks {

std::vector<int> MinSpec::resolve(int groups, int k) const {
  std::vector<int> out(static_cast<std::size_t>(groups), 0);
  if (all) std::fill(out.begin(), out.end(), *all);
  if (!explicit_mins.empty()) {
    if (static_cast<int>(explicit_mins.size()) != groups) {
      throw std::invalid_argument("got " + std::to_string(explicit_mins.size()) +
                                  " --min values for " + std::to_string(groups) + " groups");
    }
    out = explicit_mins;
  }
  if (alpha) {
    if (alpha_group < 0 || alpha_group >= groups) {
      throw std::invalid_argument("alpha group " + std::to_string(alpha_group) + " out of range");
    }
    out[alpha_group] = static_cast<int>(std::ceil(*alpha * k - 1e-12));
  }
  return out;
}

nlohmann::json describe(const PlantedCliqueConfig& cfg) {
  return {{"generator", "planted_clique"},
          {"n", cfg.n},
          {"p", cfg.p},
          {"k", cfg.k},
          {"r", cfg.r},
          {"weighted", cfg.weighted},
          {"seed", cfg.seed},
          {"rng", Rng::kAlgorithm}};
}

InstancePaths write_planted_instance(const std::filesystem::path& dir,
                                     const PlantedCliqueConfig& cfg, const WeightedGraph& graph,
                                     const AttributeAssignment& attrs, const VertexSet& planted) {
  std::filesystem::create_directories(dir);
  InstancePaths paths{dir / "edges.txt", dir / "attributes.txt", dir / "planted.txt",
                      dir / "manifest.json"};
  auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    return out;
  };
  {
    auto out = open(paths.edges);
    write_edge_list(out, graph);
  }
  {
    auto out = open(paths.attrs);
    write_attributes(out, attrs);
  }
  {
    auto out = open(paths.planted);
    for (VertexId v : planted) out << v << '\n';
  }
  {
    auto out = open(paths.manifest);
    nlohmann::json manifest = describe(cfg);
    manifest["m"] = graph.num_edges();
    manifest["files"] = {{"edges", paths.edges.filename().string()},
                         {"attributes", paths.attrs.filename().string()},
                         {"planted", paths.planted.filename().string()}};
    out << manifest.dump(2) << '\n';
  }
  return paths;
}

VertexSet load_vertex_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  VertexSet out;
  long long v = 0;
  while (in >> v) {
    if (v < 0 || v > std::numeric_limits<VertexId>::max()) {
      throw std::runtime_error("vertex id out of range in '" + path.string() + "'");
    }
    out.push_back(static_cast<VertexId>(v));
  }
  if (!in.eof()) throw std::runtime_error("malformed vertex list in '" + path.string() + "'");
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string exact(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

struct Instance {
  WeightedGraph graph;
  AttributeAssignment attrs;
  std::optional<VertexSet> planted;
  nlohmann::json descriptor;
  InstancePaths paths;
};

RunRecord run_isolated(const CampaignConfig& cfg, Method method, const Instance& inst,
                       const std::vector<int>& mins, int k, std::uint64_t seed) {
  std::ostringstream cmd;
  cmd << shell_quote(cfg.executable.string()) << " solve " << shell_quote(method_name(method))
      << " --edges " << shell_quote(inst.paths.edges.string()) << " --attrs "
      << shell_quote(inst.paths.attrs.string());
  if (inst.planted) cmd << " --planted " << shell_quote(inst.paths.planted.string());
  cmd << " --k " << k;
  for (int m : mins) cmd << " --min " << m;
  cmd << " --seed " << seed << " --max-iters " << cfg.fw.max_iters << " --gap-tol "
      << exact(cfg.fw.gap_tol);
  if (cfg.fw.lambda) cmd << " --lambda " << exact(*cfg.fw.lambda);
  cmd << " --warmup 2>&1";

  FILE* pipe = popen(cmd.str().c_str(), "r");
  if (!pipe) throw std::runtime_error("failed to start worker process");
  std::string output;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe)) output.append(buffer, got);
  const int status = pclose(pipe);
  if (status != 0) {
    throw std::runtime_error("worker exited with status " + std::to_string(status) + ": " +
                             output.substr(0, 300));
  }
  auto record = record_from_json(nlohmann::json::parse(output));
  record.instance = inst.descriptor;
  return record;
}

RunRecord run_in_process(const CampaignConfig& cfg, Method method, const Instance& inst,
                         const std::vector<int>& mins, int k, std::uint64_t seed) {
  const ConstraintSpec spec(k, mins, inst.attrs);
  validate(spec, inst.graph);
  FwConfig fw = cfg.fw;
  fw.seed = seed;
  run_method(method, inst.graph, spec, fw);  // warm-up
  const auto outcome = run_method(method, inst.graph, spec, fw);
  auto record = make_record(method, inst.graph, spec, outcome, seed,
                            inst.planted ? &*inst.planted : nullptr);
  record.instance = inst.descriptor;
  return record;
}

std::string sanitize(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& cfg, std::ostream* progress) {
  if (cfg.methods.empty()) throw std::invalid_argument("no methods given");
  if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
  if (!cfg.generator && cfg.edges.empty()) {
    throw std::invalid_argument("campaign needs a generator config or an edge list");
  }
  if (!cfg.generator && cfg.ks.empty()) throw std::invalid_argument("file campaigns need --k values");
  if (cfg.isolate && cfg.executable.empty()) {
    throw std::invalid_argument("isolated campaigns need the solver executable path");
  }

  CampaignResult result;
  std::optional<Instance> file_instance;
  if (!cfg.generator) {
    Instance inst;
    const VertexId hint = cfg.attrs.empty() ? 0 : count_attribute_vertices(cfg.attrs);
    inst.graph = load_edge_list(cfg.edges, true, hint);
    inst.attrs = cfg.attrs.empty() ? AttributeAssignment::single_group(inst.graph.num_vertices())
                                   : load_attributes(cfg.attrs, inst.graph.num_vertices());
    inst.descriptor = {{"edges", cfg.edges.string()}, {"attrs", cfg.attrs.string()}};
    inst.paths.edges = cfg.edges;
    inst.paths.attrs = cfg.attrs;
    if (cfg.isolate && cfg.attrs.empty()) {
      // The worker needs an attribute file to see the full vertex count.
      std::filesystem::create_directories(cfg.work_dir);
      inst.paths.attrs = cfg.work_dir / "single_group.txt";
      std::ofstream out(inst.paths.attrs);
      write_attributes(out, inst.attrs);
    }
    file_instance = std::move(inst);
  }

  for (int trial = 0; trial < cfg.trials; ++trial) {
    const auto seed = static_cast<std::uint64_t>(trial);
    Instance generated;
    const Instance* inst = nullptr;
    std::vector<int> ks = cfg.ks;
    if (cfg.generator) {
      auto gen_cfg = *cfg.generator;
      gen_cfg.seed = seed;
      try {
        auto planted = generate_planted_clique(gen_cfg);
        generated.graph = std::move(planted.graph);
        generated.attrs = std::move(planted.attributes);
        generated.planted = std::move(planted.planted);
        generated.descriptor = describe(gen_cfg);
        if (cfg.isolate) {
          generated.paths =
              write_planted_instance(cfg.work_dir / ("seed_" + std::to_string(seed)), gen_cfg,
                                     generated.graph, generated.attrs, *generated.planted);
        }
      } catch (const std::exception& e) {
        for (Method method : cfg.methods) {
          RunRecord failed;
          failed.method = method_name(method);
          failed.seed = seed;
          failed.k = gen_cfg.k;
          failed.status = sanitize(std::string("error: ") + e.what());
          result.runs.push_back(std::move(failed));
        }
        continue;
      }
      inst = &generated;
      if (ks.empty()) ks = {gen_cfg.k};
    } else {
      inst = &*file_instance;
    }

    for (int k : ks) {
      for (Method method : cfg.methods) {
        RunRecord record;
        try {
          const auto mins = cfg.mins.resolve(inst->attrs.num_groups(), k);
          record = cfg.isolate ? run_isolated(cfg, method, *inst, mins, k, seed)
                               : run_in_process(cfg, method, *inst, mins, k, seed);
        } catch (const std::exception& e) {
          record = RunRecord{};
          record.method = method_name(method);
          record.seed = seed;
          record.k = k;
          record.instance = inst->descriptor;
          record.status = sanitize(std::string("error: ") + e.what());
        }
        if (progress) {
          *progress << record.method << " seed=" << seed << " k=" << k
                    << " normalized=" << record.normalized << " seconds=" << record.seconds
                    << (record.recovered ? (*record.recovered ? " recovered" : " missed") : "")
                    << (record.status == "ok" ? "" : " " + record.status) << '\n';
        }
        result.runs.push_back(std::move(record));
      }
    }
  }
  result.summary = summarize(result.runs);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs) {
  std::vector<SummaryRow> rows;
  std::map<std::pair<std::string, int>, std::size_t> index;
  std::vector<std::vector<const RunRecord*>> members;
  for (const auto& r : runs) {
    const auto key = std::pair(r.method, r.k);
    auto [it, inserted] = index.emplace(key, rows.size());
    if (inserted) {
      rows.push_back({});
      rows.back().method = r.method;
      rows.back().k = r.k;
      members.emplace_back();
    }
    auto& row = rows[it->second];
    if (r.status != "ok") {
      ++row.failures;
      continue;
    }
    members[it->second].push_back(&r);
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    const auto& ok = members[i];
    row.runs = static_cast<int>(ok.size());
    if (ok.empty()) continue;
    double sum_norm = 0.0;
    double sum_sec = 0.0;
    for (const auto* r : ok) {
      sum_norm += r->normalized;
      sum_sec += r->seconds;
      if (r->recovered) row.successes = row.successes.value_or(0) + (*r->recovered ? 1 : 0);
    }
    const double count = static_cast<double>(ok.size());
    row.normalized_mean = sum_norm / count;
    row.seconds_mean = sum_sec / count;
    row.std_defined = ok.size() >= 2;
    if (row.std_defined) {
      double ss_norm = 0.0;
      double ss_sec = 0.0;
      for (const auto* r : ok) {
        ss_norm += (r->normalized - row.normalized_mean) * (r->normalized - row.normalized_mean);
        ss_sec += (r->seconds - row.seconds_mean) * (r->seconds - row.seconds_mean);
      }
      row.normalized_std = std::sqrt(ss_norm / (count - 1.0));
      row.seconds_std = std::sqrt(ss_sec / (count - 1.0));
    }
  }
  return rows;
}

nlohmann::json to_json(const SummaryRow& row) {
  nlohmann::json j = {{"method", row.method},
                      {"k", row.k},
                      {"runs", row.runs},
                      {"failures", row.failures},
                      {"successes", nullptr},
                      {"normalized_mean", row.normalized_mean},
                      {"normalized_std", row.normalized_std},
                      {"seconds_mean", row.seconds_mean},
                      {"seconds_std", row.seconds_std},
                      {"std_defined", row.std_defined}};
  if (row.successes) j["successes"] = *row.successes;
  return j;
}

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
  out << "method,seed,k,n,m,objective,normalized,recovered,iterations,seconds,group_counts,status\n";
  for (const auto& r : runs) {
    std::string counts;
    for (std::size_t i = 0; i < r.group_counts.size(); ++i) {
      if (i) counts += ';';
      counts += std::to_string(r.group_counts[i]);
    }
    out << r.method << ',' << r.seed << ',' << r.k << ',' << r.n << ',' << r.m << ','
        << exact(r.objective) << ',' << exact(r.normalized) << ','
        << (r.recovered ? (*r.recovered ? "1" : "0") : "") << ',' << r.iterations << ','
        << exact(r.seconds) << ',' << counts << ',' << sanitize(r.status) << '\n';
  }
}

std::vector<RunRecord> read_runs_csv(std::istream& in) {
  std::vector<RunRecord> runs;
  std::string line;
  if (!std::getline(in, line)) return runs;  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 12) throw std::runtime_error("malformed CSV row: " + line);
    RunRecord r;
    r.method = f[0];
    r.seed = std::stoull(f[1]);
    r.k = std::stoi(f[2]);
    r.n = std::stoi(f[3]);
    r.m = std::stoull(f[4]);
    r.objective = std::strtod(f[5].c_str(), nullptr);
    r.normalized = std::strtod(f[6].c_str(), nullptr);
    if (!f[7].empty()) r.recovered = f[7] == "1";
    r.iterations = std::stoi(f[8]);
    r.seconds = std::strtod(f[9].c_str(), nullptr);
    std::stringstream cs(f[10]);
    while (std::getline(cs, field, ';'))
      if (!field.empty()) r.group_counts.push_back(std::stoi(field));
    r.status = f[11];
    runs.push_back(std::move(r));
  }
  return runs;
}

}  // namespace vacdks
