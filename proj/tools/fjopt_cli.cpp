// Command-line harness: method comparison, sampler benchmark and centrality
// export for FJ opinion minimization.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fjopt/dynamics.hpp"
#include "fjopt/error.hpp"
#include "fjopt/experiment.hpp"
#include "fjopt/fast_solver.hpp"
#include "fjopt/graph.hpp"

namespace {

struct GraphArgs {
  std::string path;
  bool relabel = false;
  bool reject_duplicates = false;
  bool reject_self_arcs = false;
};

void add_graph_options(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("--graph", args.path, "Edge list file (\"src dst\" per line)")->required();
  cmd->add_flag("--relabel", args.relabel, "Map sparse node ids onto 0..n-1");
  cmd->add_flag("--reject-duplicates", args.reject_duplicates,
                "Fail on duplicate arcs instead of merging them");
  cmd->add_flag("--reject-self-arcs", args.reject_self_arcs,
                "Fail on self-arcs instead of dropping them");
}

fjopt::LoadedGraph load(const GraphArgs& args) {
  fjopt::EdgeListOptions options;
  options.relabel = args.relabel;
  if (args.reject_duplicates) options.duplicates = fjopt::DuplicatePolicy::reject;
  if (args.reject_self_arcs) options.self_arcs = fjopt::SelfArcPolicy::reject;
  auto loaded = fjopt::load_edge_list_file(args.path, options);
  if (loaded.self_arcs_dropped > 0) {
    std::cerr << "warning: dropped " << loaded.self_arcs_dropped << " self-arc(s)\n";
  }
  if (loaded.duplicates_merged > 0) {
    std::cerr << "warning: merged " << loaded.duplicates_merged << " duplicate arc(s)\n";
  }
  return loaded;
}

struct PlanArgs {
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::string plan_file;
  unsigned threads = 1;
};

void add_plan_options(CLI::App* cmd, PlanArgs& args) {
  auto* l = cmd->add_option("--l", args.samples, "Number of sampled forests")
                ->capture_default_str();
  auto* eps = cmd->add_option("--epsilon", args.epsilon, "Per-node error bound");
  auto* delta = cmd->add_option("--delta", args.delta, "Failure probability");
  eps->needs(delta);
  delta->needs(eps);
  eps->excludes(l);
  cmd->add_option("--seed", args.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--plan", args.plan_file,
                  "JSON plan {l | (epsilon, delta), base_seed}; overrides the flags")
      ->check(CLI::ExistingFile);
  cmd->add_option("--threads", args.threads, "Sampling threads")->capture_default_str();
}

fjopt::SamplingPlan make_plan(const PlanArgs& args) {
  fjopt::SamplingPlan plan;
  if (!args.plan_file.empty()) {
    std::ifstream in(args.plan_file);
    plan = fjopt::SamplingPlan::from_json(nlohmann::json::parse(in));
  } else if (args.epsilon) {
    plan = fjopt::SamplingPlan::from_guarantee(*args.epsilon, *args.delta, args.seed);
    plan.threads = args.threads;
  } else {
    plan = fjopt::SamplingPlan::with_samples(args.samples, args.seed);
    plan.threads = args.threads;
  }
  plan.validate();
  return plan;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fjopt::Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FJ opinion minimization: exact and forest-sampling node selection"};
  app.require_subcommand(1);

  // compare
  GraphArgs compare_graph;
  PlanArgs compare_plan;
  std::string dist_name = "uniform";
  std::string k_list = "10,20,30,40,50";
  std::string method_list = "exact,fast,rand,id,io,eo";
  std::uint64_t opinion_seed = 1;
  std::size_t repeats = 1;
  std::string opinions_file;
  std::string report_out;
  std::string csv_out;
  std::size_t dense_cap = fjopt::kDefaultDenseCap;
  auto* compare = app.add_subcommand("compare", "Compare selection methods over a k sweep");
  add_graph_options(compare, compare_graph);
  add_plan_options(compare, compare_plan);
  compare->add_option("--dist", dist_name, "uniform|normal|powerlaw|exp")->capture_default_str();
  compare->add_option("--k", k_list, "Comma-separated k values")->capture_default_str();
  compare->add_option("--methods", method_list, "Any of exact,fast,rand,id,io,eo")
      ->capture_default_str();
  compare->add_option("--opinion-seed", opinion_seed, "Opinion generation seed")
      ->capture_default_str();
  compare->add_option("--repeats", repeats, "Opinion seeds to run (seed, seed+1, ...)")
      ->capture_default_str();
  compare->add_option("--opinions", opinions_file, "Opinion file (one value per line)")
      ->check(CLI::ExistingFile);
  compare->add_option("--out", report_out, "JSON report path (default stdout)");
  compare->add_option("--csv", csv_out, "CSV report path");
  compare->add_option("--dense-cap", dense_cap, "Largest n for dense solves")
      ->capture_default_str();

  // bench-sampler
  std::string sizes = "1e4,1e5,1e6";
  double avg_degree = 4.0;
  PlanArgs bench_plan;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench-sampler", "Time forest sampling on synthetic graphs");
  bench->add_option("--sizes", sizes, "Comma-separated node counts")->capture_default_str();
  bench->add_option("--avg-degree", avg_degree, "Average out-degree")->capture_default_str();
  bench->add_option("--l", bench_plan.samples, "Forests per size")->capture_default_str();
  bench->add_option("--seed", bench_plan.seed, "Graph and sampling seed")->capture_default_str();
  bench->add_option("--threads", bench_plan.threads, "Sampling threads")->capture_default_str();
  bench->add_option("--out", bench_out, "JSON output path (default stdout)");

  // centrality
  GraphArgs centrality_graph;
  PlanArgs centrality_plan;
  std::string mode = "exact";
  std::string centrality_out;
  auto* centrality = app.add_subcommand("centrality", "Write per-node structure centrality");
  add_graph_options(centrality, centrality_graph);
  add_plan_options(centrality, centrality_plan);
  centrality->add_option("--mode", mode, "exact|sample")
      ->check(CLI::IsMember({"exact", "sample"}))
      ->capture_default_str();
  centrality->add_option("--out", centrality_out, "CSV path (default stdout)");
  centrality->add_option("--dense-cap", dense_cap, "Largest n for the exact mode")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compare) {
      auto loaded = load(compare_graph);
      fjopt::CompareConfig config;
      config.graph_name = compare_graph.path;
      config.ks = fjopt::parse_count_list(k_list);
      config.methods = fjopt::parse_name_list(method_list);
      config.plan = make_plan(compare_plan);
      auto kind = fjopt::parse_distribution(dist_name);
      if (!kind) throw fjopt::DomainError("unknown opinion distribution '" + dist_name + "'");
      config.distribution.kind = *kind;
      config.distribution.seed = opinion_seed;
      config.opinion_repeats = repeats;
      config.dense_cap = dense_cap;
      std::optional<fjopt::OpinionVector> opinions;
      if (!opinions_file.empty()) opinions = fjopt::read_opinions_file(opinions_file);

      auto report = fjopt::compare_methods(loaded.graph, config, opinions);
      write_text(report_out, fjopt::report_to_json(report).dump(2) + "\n");
      if (!csv_out.empty()) {
        std::ofstream csv(csv_out);
        if (!csv) throw fjopt::Error("cannot write '" + csv_out + "'");
        fjopt::write_report_csv(report, csv);
      }
    } else if (*bench) {
      fjopt::BenchConfig config;
      config.sizes = fjopt::parse_count_list(sizes);
      config.avg_degree = avg_degree;
      config.samples = bench_plan.samples;
      config.seed = bench_plan.seed;
      config.threads = bench_plan.threads;
      auto rows = fjopt::bench_sampler(config);
      write_text(bench_out, fjopt::bench_to_json(rows).dump(2) + "\n");
    } else if (*centrality) {
      auto loaded = load(centrality_graph);
      fjopt::CentralityVector rho;
      if (mode == "exact") {
        rho = fjopt::structure_centrality_exact(loaded.graph, fjopt::CentralityMode::single_solve,
                                                dense_cap);
      } else {
        rho = fjopt::estimate_centrality(loaded.graph, make_plan(centrality_plan));
      }
      std::ostringstream csv;
      fjopt::write_centrality_csv(rho, csv);
      write_text(centrality_out, csv.str());
    }
  } catch (const fjopt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
