#include <cmath>
#include <numeric>
#include <random>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "fjopt/error.hpp"
#include "fjopt/exact_solver.hpp"
#include "fjopt/fast_solver.hpp"
#include "support.hpp"

using namespace fjopt;
using fjopt::testing::make_graph;

TEST_CASE("required sample counts") {
  CHECK(required_samples(0.5, 2.0 / std::exp(2.0)) == 4);
  CHECK(required_samples(0.1, 0.05) == 185);
  CHECK(required_samples(0.02, 0.05) == 4612);
  CHECK_THROWS_AS(required_samples(0.0, 0.05), DomainError);
  CHECK_THROWS_AS(required_samples(-0.1, 0.05), DomainError);
  CHECK_THROWS_AS(required_samples(0.1, 0.0), DomainError);
  CHECK_THROWS_AS(required_samples(0.1, 1.0), DomainError);
}

TEST_CASE("sampling plans from JSON") {
  auto by_l = SamplingPlan::from_json({{"l", 10}, {"base_seed", 4}});
  CHECK(by_l.samples == 10);
  CHECK(by_l.base_seed == 4);
  CHECK_FALSE(by_l.epsilon);

  auto by_eps = SamplingPlan::from_json({{"epsilon", 0.1}, {"delta", 0.05}});
  CHECK(by_eps.samples == 185);
  CHECK(*by_eps.delta == 0.05);

  auto again = SamplingPlan::from_json({{"l", by_eps.samples}, {"threads", 3}});
  CHECK(again.threads == 3);
  CHECK(by_eps.to_json()["l"] == 185);

  CHECK_THROWS_AS(SamplingPlan::from_json({{"l", 0}}), DomainError);
  CHECK_THROWS_AS(SamplingPlan::from_json({{"l", 5}, {"epsilon", 0.1}}), DomainError);
  CHECK_THROWS_AS(SamplingPlan::from_json(nlohmann::json::object()), DomainError);
  CHECK_THROWS_AS(SamplingPlan::from_json({{"epsilon", 0.1}}), DomainError);
  CHECK_THROWS_AS(SamplingPlan::from_json({{"epsilon", 0.1}, {"delta", 1.5}}), DomainError);
  CHECK_THROWS_AS(SamplingPlan::from_json({{"l", "many"}}), DomainError);
  CHECK_THROWS_AS(SamplingPlan::with_samples(0), DomainError);
}

TEST_CASE("graphs without arcs give exactly 1/n") {
  auto g = Digraph::from_arcs(6, {});
  for (std::uint64_t seed : {0, 1, 2}) {
    auto rho = estimate_centrality(g, SamplingPlan::with_samples(7, seed));
    for (double v : rho.values) CHECK(v == 1.0 / 6.0);
    CHECK(rho.source == CentralitySource::sampled);
    CHECK(rho.samples == 7);
  }
}

TEST_CASE("single arc estimate converges to [1/4, 3/4]") {
  auto g = make_graph(2, {{0, 1}});
  auto rho = estimate_centrality(g, SamplingPlan::with_samples(100'000, 21));
  // Per-forest |M_0|/2 is 1/2 or 0 with equal odds: sd 1/4.
  const double four_sigma = 4.0 * 0.25 / std::sqrt(100'000.0);
  CHECK(std::abs(rho[0] - 0.25) < four_sigma);
  CHECK(std::abs(rho[1] - 0.75) < four_sigma);
}

TEST_CASE("same plan, same estimate; thread count does not matter") {
  auto g = testing::medium_catalog()[1].graph;
  auto plan = SamplingPlan::with_samples(37, 123);
  auto first = sample_root_counts(g, plan);
  CHECK(sample_root_counts(g, plan).counts == first.counts);
  for (unsigned threads : {2u, 3u, 8u, 64u}) {
    plan.threads = threads;
    auto counts = sample_root_counts(g, plan);
    CHECK(counts.counts == first.counts);
    CHECK(counts.total_steps == first.total_steps);
    CHECK(counts.samples == 37);
  }
  plan.threads = 0;
  CHECK_THROWS_AS(sample_root_counts(g, plan), DomainError);

  auto other = sample_root_counts(g, SamplingPlan::with_samples(37, 124));
  CHECK_FALSE(other.counts == first.counts);
}

TEST_CASE("property: estimates are normalized") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    auto g = testing::random_gnp(n, 3.0 / n, rng);
    auto counts = sample_root_counts(g, SamplingPlan::with_samples(1 + rng() % 40, trial));
    CHECK(std::accumulate(counts.counts.begin(), counts.counts.end(), std::uint64_t{0}) ==
          n * counts.samples);
    auto rho = centrality_from_counts(counts);
    CHECK(std::accumulate(rho.values.begin(), rho.values.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("property: the estimator is unbiased on tiny graphs") {
  constexpr std::size_t kRepeats = 200;
  constexpr std::size_t kSamples = 50;
  for (const auto& [name, g] : testing::tiny_catalog()) {
    CAPTURE(name);
    auto rho = structure_centrality_exact(g);
    const std::size_t n = g.node_count();
    std::vector<double> sum(n, 0.0);
    std::vector<double> sum_sq(n, 0.0);
    for (std::size_t r = 0; r < kRepeats; ++r) {
      auto est = estimate_centrality(g, SamplingPlan::with_samples(kSamples, 1000 + r));
      for (std::size_t i = 0; i < n; ++i) {
        sum[i] += est[i];
        sum_sq[i] += est[i] * est[i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double mean = sum[i] / kRepeats;
      const double var = std::max(sum_sq[i] / kRepeats - mean * mean, 0.0);
      const double se = std::sqrt(var / kRepeats);
      CHECK(std::abs(mean - rho[i]) <= 4.0 * se + 1e-12);
    }
  }
}

TEST_CASE("property: per-node error stays within epsilon at the guaranteed sample size") {
  const double epsilon = 0.1;
  const double delta = 0.05;
  for (const auto& [name, g] : testing::medium_catalog()) {
    CAPTURE(name);
    auto rho = structure_centrality_exact(g);
    auto s = generate_opinions(g.node_count(), {OpinionDistributionKind::uniform, 3});
    std::size_t failures = 0;
    std::size_t trials = 0;
    for (std::uint64_t r = 0; r < 30; ++r) {
      auto est = estimate_centrality(g, SamplingPlan::from_guarantee(epsilon, delta, r));
      for (std::size_t i = 0; i < g.node_count(); ++i) {
        ++trials;
        if (std::abs(est[i] * s[i] - rho[i] * s[i]) > epsilon) ++failures;
      }
    }
    CHECK(static_cast<double>(failures) <= delta * static_cast<double>(trials));
  }
}

TEST_CASE("fast selection on the single arc") {
  auto g = make_graph(2, {{0, 1}});
  OpinionVector s({1.0, 0.4});
  auto sel = solve_opinion_min_fast(g, s, 1, SamplingPlan::with_samples(20'000, 5));
  CHECK(sel.nodes == std::vector<NodeId>{1});
  CHECK(sel.method == "fast");
  CHECK_FALSE(sel.objective_estimated);
  CHECK(sel.objective == doctest::Approx(0.25));

  auto max = solve_opinion_max_fast(g, s, 1, SamplingPlan::with_samples(20'000, 5));
  CHECK(max.nodes == std::vector<NodeId>{1});
  CHECK(max.objective == doctest::Approx(1.0));

  FastOptions no_rescore;
  no_rescore.exact_objective_cap = 1;
  auto est = solve_opinion_min_fast(g, s, 1, SamplingPlan::with_samples(20'000, 5), no_rescore);
  CHECK(est.objective_estimated);
  CHECK(est.objective == doctest::Approx(0.25).epsilon(0.05));

  CHECK_THROWS_AS(solve_opinion_min_fast(g, s, 3, SamplingPlan::with_samples(10)), DomainError);
  CHECK_THROWS_AS(FastSolver(g, CentralityVector{{1.0}, CentralitySource::sampled, 1}),
                  DomainError);
}

TEST_CASE("fast solver from a given estimate reproduces the exact ranking") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    auto g = testing::random_gnp(n, 0.1, rng);
    auto s = testing::random_uniform_opinions(n, rng);
    const std::size_t k = 1 + rng() % n;
    ExactSolver exact(g);
    FastSolver fast(g, exact.centrality());
    auto a = exact.opinion_min(s, k);
    auto b = fast.opinion_min(s, k);
    CHECK(a.nodes == b.nodes);
    CHECK(b.objective == doctest::Approx(a.objective).epsilon(1e-9));
    CHECK(fast.opinion_max(s, k).objective ==
          doctest::Approx(exact.opinion_max(s, k).objective).epsilon(1e-9));
  }
}

TEST_CASE("fast objective is within 2k epsilon of the optimum") {
  const double epsilon = 0.02;
  const double delta = 0.05;
  for (const auto& [name, g] : testing::medium_catalog()) {
    CAPTURE(name);
    auto s = generate_opinions(g.node_count(), {OpinionDistributionKind::uniform, 8});
    ExactSolver exact(g);
    auto plan = SamplingPlan::from_guarantee(epsilon, delta, 17);
    plan.threads = 4;
    for (std::size_t k : {1, 5, 20}) {
      auto best = exact.opinion_min(s, k);
      auto fast = solve_opinion_min_fast(g, s, k, plan);
      CHECK(fast.objective >= best.objective - 1e-12);
      CHECK(fast.objective - best.objective <= 2.0 * static_cast<double>(k) * epsilon);
    }
  }
}
