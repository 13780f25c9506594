#include "fjopt/fast_solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "fjopt/error.hpp"

namespace fjopt {

std::size_t required_samples(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be a positive finite number");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

SamplingPlan SamplingPlan::with_samples(std::size_t samples, std::uint64_t seed) {
  SamplingPlan plan;
  plan.samples = samples;
  plan.base_seed = seed;
  plan.validate();
  return plan;
}

SamplingPlan SamplingPlan::from_guarantee(double epsilon, double delta, std::uint64_t seed) {
  SamplingPlan plan;
  plan.samples = required_samples(epsilon, delta);
  plan.base_seed = seed;
  plan.epsilon = epsilon;
  plan.delta = delta;
  return plan;
}

SamplingPlan SamplingPlan::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("sampling plan must be a JSON object");
  const bool has_l = j.contains("l");
  const bool has_guarantee = j.contains("epsilon") || j.contains("delta");
  if (has_l == has_guarantee) {
    throw DomainError("sampling plan needs either \"l\" or both \"epsilon\" and \"delta\"");
  }
  std::uint64_t seed = j.value("base_seed", std::uint64_t{0});
  SamplingPlan plan;
  try {
    if (has_l) {
      auto l = j.at("l").get<std::int64_t>();
      if (l < 1) throw DomainError("sampling plan \"l\" must be at least 1");
      plan = with_samples(static_cast<std::size_t>(l), seed);
    } else {
      plan = from_guarantee(j.at("epsilon").get<double>(), j.at("delta").get<double>(), seed);
    }
    plan.threads = j.value("threads", 1u);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid sampling plan: ") + e.what());
  }
  plan.validate();
  return plan;
}

nlohmann::json SamplingPlan::to_json() const {
  nlohmann::json j = {{"l", samples}, {"base_seed", base_seed}, {"threads", threads}};
  j["epsilon"] = epsilon ? nlohmann::json(*epsilon) : nlohmann::json(nullptr);
  j["delta"] = delta ? nlohmann::json(*delta) : nlohmann::json(nullptr);
  return j;
}

void SamplingPlan::validate() const {
  if (samples == 0) throw DomainError("the number of sampled forests must be at least 1");
  if (threads == 0) throw DomainError("thread count must be at least 1");
}

namespace {

void sample_range(const Digraph& g, std::uint64_t seed, std::size_t first, std::size_t last,
                  RootCounts& out) {
  ForestSampler sampler(g);
  out.counts.assign(g.node_count(), 0);
  for (std::size_t t = first; t < last; ++t) {
    for (NodeId r : sampler.sample({seed, t})) ++out.counts[r];
    out.total_steps += sampler.last_steps();
  }
  out.samples = last - first;
}

}  // namespace

RootCounts sample_root_counts(const Digraph& g, const SamplingPlan& plan) {
  plan.validate();
  const std::size_t workers = std::min<std::size_t>(plan.threads, plan.samples);
  std::vector<RootCounts> parts(workers);
  auto bounds = [&](std::size_t w) { return plan.samples * w / workers; };

  if (workers == 1) {
    sample_range(g, plan.base_seed, 0, plan.samples, parts[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          sample_range(g, plan.base_seed, bounds(w), bounds(w + 1), parts[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  RootCounts total;
  total.counts.assign(g.node_count(), 0);
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < total.counts.size(); ++i) total.counts[i] += part.counts[i];
    total.samples += part.samples;
    total.total_steps += part.total_steps;
  }
  return total;
}

CentralityVector centrality_from_counts(const RootCounts& counts) {
  CentralityVector rho;
  rho.source = CentralitySource::sampled;
  rho.samples = counts.samples;
  rho.values.resize(counts.counts.size());
  const double denom =
      static_cast<double>(counts.counts.size()) * static_cast<double>(counts.samples);
  for (std::size_t i = 0; i < rho.values.size(); ++i) {
    rho.values[i] = static_cast<double>(counts.counts[i]) / denom;
  }
  return rho;
}

CentralityVector estimate_centrality(const Digraph& g, const SamplingPlan& plan) {
  return centrality_from_counts(sample_root_counts(g, plan));
}

FastSolver::FastSolver(const Digraph& g, const SamplingPlan& plan)
    : g_(&g), rho_hat_(estimate_centrality(g, plan)) {}

FastSolver::FastSolver(const Digraph& g, CentralityVector estimate)
    : g_(&g), rho_hat_(std::move(estimate)) {
  if (rho_hat_.size() != g.node_count()) {
    throw DomainError("centrality estimate length does not match the graph");
  }
}

Selection FastSolver::opinion_min(const OpinionVector& s, std::size_t k) const {
  if (s.size() != g_->node_count()) {
    throw DomainError("opinion vector length does not match the graph");
  }
  require_k_in_range(k, s.size());
  std::vector<double> score(s.size());
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    score[i] = rho_hat_[i] * s[i];
    total += score[i];
  }
  Selection out;
  out.method = "fast";
  out.nodes = top_k(score, k);
  out.baseline_objective = total;
  out.objective = total;
  for (NodeId u : out.nodes) out.objective -= score[u];
  out.objective_estimated = true;
  return out;
}

Selection FastSolver::opinion_max(const OpinionVector& s, std::size_t k) const {
  Selection out = opinion_min(s.complement(), k);
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) total += rho_hat_[i] * s[i];
  out.baseline_objective = total;
  out.objective = total;
  for (NodeId u : out.nodes) out.objective += rho_hat_[u] * (1.0 - s[u]);
  return out;
}

namespace {

Selection solve_fast(const Digraph& g, const OpinionVector& s, std::size_t k,
                     const SamplingPlan& plan, const FastOptions& options, bool maximize) {
  if (s.size() != g.node_count()) {
    throw DomainError("opinion vector length does not match the graph");
  }
  require_k_in_range(k, s.size());
  FastSolver solver(g, plan);
  Selection out = maximize ? solver.opinion_max(s, k) : solver.opinion_min(s, k);
  if (g.node_count() <= options.exact_objective_cap) {
    rescore(out, EquilibriumEvaluator(g, options.exact_objective_cap), s, maximize ? 1.0 : 0.0);
  }
  return out;
}

}  // namespace

Selection solve_opinion_min_fast(const Digraph& g, const OpinionVector& s, std::size_t k,
                                 const SamplingPlan& plan, const FastOptions& options) {
  return solve_fast(g, s, k, plan, options, false);
}

Selection solve_opinion_max_fast(const Digraph& g, const OpinionVector& s, std::size_t k,
                                 const SamplingPlan& plan, const FastOptions& options) {
  return solve_fast(g, s, k, plan, options, true);
}

}  // namespace fjopt
