#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fjopt/dynamics.hpp"
#include "fjopt/forest_sampler.hpp"
#include "fjopt/selection.hpp"

namespace fjopt {

/// Number of forests that makes rho_i s_i an (epsilon, delta)-estimate for
/// each node: ceil(ln(2/delta) / (2 epsilon^2)). Throws DomainError unless
/// epsilon > 0 and 0 < delta < 1.
std::size_t required_samples(double epsilon, double delta);

struct SamplingPlan {
  std::size_t samples = 500;
  std::uint64_t base_seed = 0;
  /// Set when samples was derived from a guarantee.
  std::optional<double> epsilon;
  std::optional<double> delta;
  /// Worker threads for forest generation. Results do not depend on it.
  unsigned threads = 1;

  static SamplingPlan with_samples(std::size_t samples, std::uint64_t seed = 0);
  static SamplingPlan from_guarantee(double epsilon, double delta, std::uint64_t seed = 0);

  /// Accepts {"l": L} or {"epsilon": e, "delta": d}, plus optional
  /// "base_seed" and "threads".
  static SamplingPlan from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  /// Throws DomainError when samples == 0 or threads == 0.
  void validate() const;
};

/// Raw output of a sampling run.
struct RootCounts {
  /// Sum over forests of |M(phi, i)|.
  std::vector<std::uint64_t> counts;
  std::size_t samples = 0;
  /// Walk steps over all forests.
  std::uint64_t total_steps = 0;
};

/// Draws plan.samples forests with streams (base_seed, 0..l-1) and counts,
/// for every node, how many nodes it roots. Per-thread counts are merged in
/// stream order; the result is identical for any thread count.
RootCounts sample_root_counts(const Digraph& g, const SamplingPlan& plan);

/// rho_hat_i = counts_i / (n l). Sums to one up to rounding.
CentralityVector estimate_centrality(const Digraph& g, const SamplingPlan& plan);
CentralityVector centrality_from_counts(const RootCounts& counts);

struct FastOptions {
  /// Up to this n the reported objective comes from an equilibrium solve;
  /// beyond it the decomposition sum over unselected nodes of rho_hat_i s_i
  /// is reported and flagged as estimated.
  std::size_t exact_objective_cap = kDefaultDenseCap;
};

/// Top-k selection from sampled structure centrality. Sampling happens once
/// in the constructor; selections for any s and k reuse the estimate.
class FastSolver {
 public:
  FastSolver(const Digraph& g, const SamplingPlan& plan);
  FastSolver(const Digraph& g, CentralityVector estimate);

  const CentralityVector& centrality() const noexcept { return rho_hat_; }

  /// Nodes chosen for OpinionMin; objective is the decomposition estimate.
  Selection opinion_min(const OpinionVector& s, std::size_t k) const;
  /// Nodes chosen for OpinionMax; objective is the decomposition estimate.
  Selection opinion_max(const OpinionVector& s, std::size_t k) const;

 private:
  const Digraph* g_;
  CentralityVector rho_hat_;
};

Selection solve_opinion_min_fast(const Digraph& g, const OpinionVector& s, std::size_t k,
                                 const SamplingPlan& plan, const FastOptions& options = {});
Selection solve_opinion_max_fast(const Digraph& g, const OpinionVector& s, std::size_t k,
                                 const SamplingPlan& plan, const FastOptions& options = {});

}  // namespace fjopt
