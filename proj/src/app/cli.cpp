#include "vacdks/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "vacdks/campaign.hpp"
#include "vacdks/metrics.hpp"
#include "vacdks/runner.hpp"

namespace vacdks {

namespace {

struct SpecFlags {
  int k = 0;
  std::vector<int> mins;
  std::optional<int> min_all;
  std::optional<double> alpha;
  int alpha_group = 0;

  void add_to(CLI::App* cmd, bool k_required = true) {
    auto* k_opt = cmd->add_option("--k", k, "Subgraph size");
    if (k_required) k_opt->required();
    cmd->add_option("--min", mins, "Per-group minimum, repeated once per group in group order");
    cmd->add_option("--min-all", min_all, "Same minimum for every group");
    cmd->add_option("--alpha", alpha, "Require ceil(alpha * k) vertices from --alpha-group")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--alpha-group", alpha_group, "Group constrained by --alpha (default 0)");
  }

  MinSpec min_spec() const { return {mins, min_all, alpha, alpha_group}; }
};

struct FwFlags {
  std::optional<double> lambda;
  int max_iters = 500;
  double gap_tol = 1e-6;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--lambda", lambda, "Diagonal loading (default w_max)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-iters", max_iters, "Frank-Wolfe iteration cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gap-tol", gap_tol, "Relative Frank-Wolfe gap tolerance")
        ->check(CLI::PositiveNumber);
  }

  FwConfig config(std::uint64_t seed) const {
    FwConfig cfg;
    cfg.lambda = lambda;
    cfg.max_iters = max_iters;
    cfg.gap_tol = gap_tol;
    cfg.seed = seed;
    return cfg;
  }
};

struct LoadedInstance {
  WeightedGraph graph;
  AttributeAssignment attrs;
  std::optional<VertexSet> planted;
  nlohmann::json descriptor;
};

LoadedInstance load_instance(const std::string& edges, const std::string& attrs,
                             const std::string& planted, bool require_weights) {
  LoadedInstance inst;
  const VertexId hint = attrs.empty() ? 0 : count_attribute_vertices(attrs);
  inst.graph = load_edge_list(edges, !require_weights, hint);
  inst.attrs = attrs.empty() ? AttributeAssignment::single_group(inst.graph.num_vertices())
                             : load_attributes(attrs, inst.graph.num_vertices());
  inst.descriptor = {{"edges", edges}, {"attrs", attrs}};
  if (!planted.empty()) {
    inst.planted = load_vertex_set(planted);
    inst.descriptor["planted"] = planted;
  }
  return inst;
}

std::filesystem::path self_executable(const char* argv0) {
  std::error_code ec;
  auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) return p;
  return std::filesystem::absolute(argv0);
}

void print_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << std::left << std::setw(10) << "method" << std::setw(6) << "k" << std::setw(24)
      << "normalized" << std::setw(10) << "success" << "seconds\n";
  for (const auto& row : rows) {
    std::ostringstream norm, secs, succ;
    norm << std::fixed << std::setprecision(3) << row.normalized_mean << " +- "
         << row.normalized_std;
    secs << std::fixed << std::setprecision(3) << row.seconds_mean << " +- " << row.seconds_std;
    if (row.successes) succ << *row.successes << "/" << row.runs;
    else succ << "-";
    out << std::setw(10) << row.method << std::setw(6) << row.k << std::setw(24) << norm.str()
        << std::setw(10) << succ.str() << secs.str();
    if (row.failures) out << "  (" << row.failures << " failed)";
    if (!row.std_defined) out << "  (single run)";
    out << '\n';
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vertex-attribute-constrained densest k-subgraph toolkit", "vacdks"};
  app.require_subcommand(1);

  // generate
  PlantedCliqueConfig gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a planted-clique instance");
  generate->add_option("--n", gen.n, "Vertex count")->required()->check(CLI::PositiveNumber);
  generate->add_option("--p", gen.p, "Background edge probability")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--k", gen.k, "Clique size")->required()->check(CLI::NonNegativeNumber);
  generate->add_option("--r", gen.r, "Group count")->check(CLI::PositiveNumber);
  generate->add_flag("--weighted", gen.weighted, "Background weights uniform on [0.8, 1)");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--out", gen_out, "Output directory")->required();

  // solve
  std::string method_text, edges, attrs, planted;
  bool require_weights = false;
  bool warmup = false;
  bool csv = false;
  std::uint64_t seed = 0;
  SpecFlags spec_flags;
  FwFlags fw_flags;
  auto* solve = app.add_subcommand("solve", "Run one method and print a run record");
  solve->add_option("method", method_text, "fw | peel | lrbo | fw+peel | oracle")
      ->required()
      ->check(CLI::IsMember({"fw", "peel", "lrbo", "fw+peel", "oracle"}));
  solve->add_option("--edges", edges, "Edge-list file")->required()->check(CLI::ExistingFile);
  solve->add_option("--attrs", attrs, "Attribute file (default: one group)")
      ->check(CLI::ExistingFile);
  solve->add_option("--planted", planted, "Ground-truth vertex set for recovery checks")
      ->check(CLI::ExistingFile);
  solve->add_flag("--require-weights", require_weights, "Reject edge lines without a weight");
  solve->add_option("--seed", seed, "Seed for power-iteration start vectors");
  solve->add_flag("--warmup", warmup, "Run once untimed before the timed run");
  solve->add_flag("--csv", csv, "Print a CSV row instead of JSON");
  solve->add_flag("--json", "Print JSON (default)");
  spec_flags.add_to(solve);
  fw_flags.add_to(solve);

  // bound
  std::string bound_edges, bound_attrs;
  SpecFlags bound_spec;
  std::uint64_t bound_seed = 0;
  auto* bound = app.add_subcommand("bound", "Print the upper bound on the normalized edge weight");
  bound->add_option("--edges", bound_edges, "Edge-list file")->required()->check(CLI::ExistingFile);
  bound->add_option("--attrs", bound_attrs, "Attribute file")->check(CLI::ExistingFile);
  bound->add_option("--seed", bound_seed, "Seed for power-iteration start vectors");
  bound_spec.add_to(bound);

  // bench
  std::vector<std::string> bench_methods;
  PlantedCliqueConfig bench_gen;
  bench_gen.n = 0;
  std::vector<int> bench_ks;
  std::string bench_edges, bench_attrs, bench_out;
  int trials = 1;
  bool in_process = false;
  SpecFlags bench_spec;
  FwFlags bench_fw;
  auto* bench = app.add_subcommand("bench", "Seeded campaign over methods; writes CSV and JSON");
  bench->add_option("--methods", bench_methods, "Comma-separated methods")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember({"fw", "peel", "lrbo", "fw+peel", "oracle"}));
  bench->add_option("--n", bench_gen.n, "Generator vertex count")->check(CLI::PositiveNumber);
  bench->add_option("--p", bench_gen.p, "Generator edge probability")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--r", bench_gen.r, "Generator group count")->check(CLI::PositiveNumber);
  bench->add_flag("--weighted", bench_gen.weighted, "Weighted generator");
  bench->add_option("--k", bench_ks, "Clique size (generator) or subgraph sizes (files)");
  bench->add_option("--edges", bench_edges, "Edge-list file instead of the generator")
      ->check(CLI::ExistingFile);
  bench->add_option("--attrs", bench_attrs, "Attribute file")->check(CLI::ExistingFile);
  bench->add_option("--seeds,--trials", trials, "Number of seeds t; runs use seeds 0..t-1")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "Output directory for runs.csv and summary.json")
      ->required();
  bench->add_flag("--in-process", in_process, "Run solves in this process (no worker processes)");
  bench->add_option("--min", bench_spec.mins, "Per-group minimum, repeated");
  bench->add_option("--min-all", bench_spec.min_all, "Same minimum for every group");
  bench->add_option("--alpha", bench_spec.alpha, "Require ceil(alpha * k) from --alpha-group")
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--alpha-group", bench_spec.alpha_group, "Group constrained by --alpha");
  bench_fw.add_to(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) {
      const auto instance = generate_planted_clique(gen);
      const auto paths = write_planted_instance(gen_out, gen, instance.graph,
                                                instance.attributes, instance.planted);
      out << nlohmann::json{{"edges", paths.edges.string()},
                            {"attributes", paths.attrs.string()},
                            {"planted", paths.planted.string()},
                            {"manifest", paths.manifest.string()},
                            {"n", instance.graph.num_vertices()},
                            {"m", instance.graph.num_edges()}}
                 .dump(2)
          << '\n';
      return kExitOk;
    }

    if (*solve) {
      const Method method = *parse_method(method_text);
      const auto inst = load_instance(edges, attrs, planted, require_weights);
      const ConstraintSpec spec(
          spec_flags.k, spec_flags.min_spec().resolve(inst.attrs.num_groups(), spec_flags.k),
          inst.attrs);
      validate(spec, inst.graph);
      const auto fw = fw_flags.config(seed);
      if (warmup) run_method(method, inst.graph, spec, fw);
      const auto outcome = run_method(method, inst.graph, spec, fw);
      auto record = make_record(method, inst.graph, spec, outcome, seed,
                                inst.planted ? &*inst.planted : nullptr);
      record.instance = inst.descriptor;
      if (csv) write_runs_csv(out, {record});
      else out << to_json(record).dump(2) << '\n';
      return kExitOk;
    }

    if (*bound) {
      const auto inst = load_instance(bound_edges, bound_attrs, "", false);
      const ConstraintSpec spec(
          bound_spec.k, bound_spec.min_spec().resolve(inst.attrs.num_groups(), bound_spec.k),
          inst.attrs);
      const auto report = upper_bound(inst.graph, spec, {5000, 1e-7, bound_seed});
      out << nlohmann::json{{"bound", report.bound},
                            {"term_trivial", report.term_trivial},
                            {"term_rank1", report.term_rank1},
                            {"term_sigma1", report.term_sigma1},
                            {"sigma1", report.sigma1},
                            {"sigma2", report.sigma2},
                            {"bilinear_value", report.bilinear_value},
                            {"residual1", report.residual1},
                            {"residual2", report.residual2},
                            {"converged", report.converged},
                            {"degenerate_spectrum", report.degenerate_spectrum},
                            {"k", spec.k},
                            {"mins", spec.mins}}
                 .dump(2)
          << '\n';
      return kExitOk;
    }

    if (*bench) {
      CampaignConfig cfg;
      for (const auto& name : bench_methods) cfg.methods.push_back(*parse_method(name));
      if (bench_edges.empty()) {
        if (bench_gen.n <= 0 || bench_ks.size() != 1) {
          err << "error: generator campaigns need --n, --p and exactly one --k\n";
          return kExitUsage;
        }
        bench_gen.k = bench_ks.front();
        cfg.generator = bench_gen;
      } else {
        cfg.edges = bench_edges;
        cfg.attrs = bench_attrs;
        cfg.ks = bench_ks;
      }
      cfg.trials = trials;
      cfg.mins = bench_spec.min_spec();
      cfg.fw = bench_fw.config(0);
      cfg.isolate = !in_process;
      cfg.executable = self_executable(argv[0]);
      cfg.work_dir = std::filesystem::path(bench_out) / "instances";
      std::filesystem::create_directories(bench_out);

      const auto result = run_campaign(cfg, &err);
      {
        std::ofstream csv_out(std::filesystem::path(bench_out) / "runs.csv");
        write_runs_csv(csv_out, result.runs);
      }
      {
        nlohmann::json summary = nlohmann::json::array();
        for (const auto& row : result.summary) summary.push_back(to_json(row));
        std::ofstream json_out(std::filesystem::path(bench_out) / "summary.json");
        json_out << nlohmann::json{{"campaign",
                                    {{"methods", bench_methods},
                                     {"trials", trials},
                                     {"generator", cfg.generator ? describe(*cfg.generator)
                                                                 : nlohmann::json(nullptr)},
                                     {"edges", bench_edges},
                                     {"attrs", bench_attrs},
                                     {"isolated", cfg.isolate}}},
                                   {"summary", summary}}
                        .dump(2)
                 << '\n';
      }
      print_summary(out, result.summary);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace vacdks
