#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fjopt/dynamics.hpp"
#include "fjopt/fast_solver.hpp"
#include "fjopt/graph.hpp"
#include "fjopt/selection.hpp"

namespace fjopt {

// ---------------------------------------------------------------------------
// Internal opinion generation

enum class OpinionDistributionKind { uniform, normal, powerlaw, exponential };

/// Opinion generator. Every kind except uniform is drawn from its natural
/// range and then mapped affinely so that the smallest value becomes 0 and the
/// largest 1 (a constant draw maps to 0.5). powerlaw and exponential are
/// experimental.
struct OpinionDistribution {
  OpinionDistributionKind kind = OpinionDistributionKind::uniform;
  std::uint64_t seed = 0;
  /// Pareto tail exponent for powerlaw (density ~ x^-exponent, x >= 1).
  double powerlaw_exponent = 2.5;
  /// Rate for exponential.
  double exponential_rate = 1.0;
};

/// "uniform", "normal", "powerlaw", "exp".
std::string_view distribution_name(OpinionDistributionKind kind) noexcept;
std::optional<OpinionDistributionKind> parse_distribution(std::string_view name) noexcept;

OpinionVector generate_opinions(std::size_t n, const OpinionDistribution& dist);

// ---------------------------------------------------------------------------
// Synthetic graphs

/// round(n * avg_out_degree) distinct non-loop arcs drawn uniformly.
Digraph random_digraph(std::size_t n, double avg_out_degree, std::uint64_t seed);

/// Growth model: node i adds up to arcs_per_node arcs to earlier nodes
/// chosen proportionally to (in-degree + 1); each arc is reciprocated with
/// probability reciprocity. Produces skewed in-degrees.
Digraph preferential_digraph(std::size_t n, std::size_t arcs_per_node, double reciprocity,
                             std::uint64_t seed);

// ---------------------------------------------------------------------------
// Method comparison

struct CompareConfig {
  std::string graph_name;
  std::vector<std::size_t> ks{10, 20, 30, 40, 50};
  /// Any of "exact", "fast", "rand", "id", "io", "eo".
  std::vector<std::string> methods{"exact", "fast", "rand", "id", "io", "eo"};
  /// Sampling seed (base_seed) also seeds the rand baseline.
  SamplingPlan plan;
  OpinionDistribution distribution;
  /// Opinion seeds distribution.seed, +1, ... are run in turn.
  std::size_t opinion_repeats = 1;
  std::size_t dense_cap = kDefaultDenseCap;
};

struct CompareCell {
  std::string method;
  std::size_t k = 0;
  std::uint64_t opinion_seed = 0;
  std::optional<Selection> selection;
  /// |g_T - g_T_hat| / g_T for the fast row when exact also ran; unset when
  /// g_T == 0 or either side failed.
  std::optional<double> gamma;
  double wall_ms = 0.0;
  /// Set when this method could not run (e.g. exact beyond the dense cap).
  std::optional<std::string> error;
};

struct GammaSummary {
  std::size_t k = 0;
  /// Mean over opinion seeds with a defined gamma; unset if none.
  std::optional<double> mean;
  std::size_t defined = 0;
};

struct ComparisonReport {
  std::string graph_name;
  std::size_t n = 0;
  std::size_t m = 0;
  CompareConfig config;
  /// g(z) on the unmodified opinions, one entry per opinion seed.
  std::vector<double> baseline_objectives;
  std::vector<CompareCell> cells;
  std::vector<GammaSummary> gamma_mean;

  /// Cells in order; method x k x seed.
  const CompareCell* find(std::string_view method, std::size_t k,
                          std::uint64_t opinion_seed) const;
};

/// Runs every method at every k for each opinion seed. Objectives are fresh
/// equilibrium solves (dense LU up to dense_cap, FJ iteration beyond).
/// Per-method failures are recorded in the cell and do not stop the run.
/// `opinions`, when given, replaces generated opinions (one repeat).
ComparisonReport compare_methods(const Digraph& g, const CompareConfig& config,
                                 const std::optional<OpinionVector>& opinions = std::nullopt);

nlohmann::json report_to_json(const ComparisonReport& report);
/// CSV with columns method,k,objective,gamma,wall_ms.
void write_report_csv(const ComparisonReport& report, std::ostream& out);

// ---------------------------------------------------------------------------
// Sampler benchmark

struct BenchRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t samples = 0;
  double total_ms = 0.0;
  double per_sample_ms = 0.0;
  /// Mean walk steps per sample divided by n.
  double steps_per_node = 0.0;
};

/// Times sample_root_counts on g. Throws DomainError when samples == 0.
BenchRow bench_sampler_on(const Digraph& g, std::size_t samples, std::uint64_t seed,
                          unsigned threads = 1);

struct BenchConfig {
  std::vector<std::size_t> sizes{10'000, 100'000, 1'000'000};
  double avg_degree = 4.0;
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Generates random_digraph(n, avg_degree) for each size and times it.
std::vector<BenchRow> bench_sampler(const BenchConfig& config);

nlohmann::json bench_to_json(const std::vector<BenchRow>& rows);

// ---------------------------------------------------------------------------
// Centrality export

/// CSV "node,rho".
void write_centrality_csv(const CentralityVector& rho, std::ostream& out);

// ---------------------------------------------------------------------------
// CLI list parsing

/// "10,20,30" -> {10, 20, 30}; accepts scientific notation ("1e5").
std::vector<std::size_t> parse_count_list(std::string_view text);
/// "exact,fast" -> {"exact", "fast"}; empty entries are rejected.
std::vector<std::string> parse_name_list(std::string_view text);

}  // namespace fjopt
