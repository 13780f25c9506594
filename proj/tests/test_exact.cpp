#include <algorithm>
#include <random>

#include <doctest.h>

#include "fjopt/error.hpp"
#include "fjopt/exact_solver.hpp"
#include "support.hpp"

using namespace fjopt;
using fjopt::testing::make_graph;

namespace {

std::vector<NodeId> sorted(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("all-zero opinions tie everywhere and pick the lowest id") {
  std::mt19937_64 rng(1);
  auto g = testing::random_gnp(8, 0.3, rng);
  auto sel = solve_opinion_min_exact(g, OpinionVector::constant(8, 0.0), 1);
  CHECK(sel.nodes == std::vector<NodeId>{0});
  CHECK(sel.objective == doctest::Approx(0.0));
  CHECK(sel.method == "exact");
}

TEST_CASE("single arc: node 1 has the larger rho*s") {
  // rho = [1/4, 3/4] from the 2x2 inverse; products 0.25 vs 0.30.
  auto g = make_graph(2, {{0, 1}});
  OpinionVector s({1.0, 0.4});
  auto sel = solve_opinion_min_exact(g, s, 1);
  CHECK(sel.nodes == std::vector<NodeId>{1});
  CHECK(sel.baseline_objective == doctest::Approx(0.55));
  CHECK(sel.objective == doctest::Approx(0.25));

  // OpinionMax: rho*(1-s) = 0 vs 0.45.
  auto max = solve_opinion_max_exact(g, s, 1);
  CHECK(max.nodes == std::vector<NodeId>{1});
  CHECK(max.objective == doctest::Approx(0.25 + 0.75));
}

TEST_CASE("OpinionMax with all-ones opinions") {
  std::mt19937_64 rng(2);
  auto g = testing::random_gnp(7, 0.3, rng);
  auto sel = solve_opinion_max_exact(g, OpinionVector::constant(7, 1.0), 3);
  CHECK(sel.nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(sel.objective == doctest::Approx(1.0));
}

TEST_CASE("k out of range") {
  auto g = make_graph(2, {{0, 1}});
  OpinionVector s({0.5, 0.5});
  CHECK_THROWS_AS(solve_opinion_min_exact(g, s, 0), DomainError);
  CHECK_THROWS_AS(solve_opinion_min_exact(g, s, 3), DomainError);
  CHECK_THROWS_AS(brute_force_opinion_min(g, s, 0), DomainError);
}

TEST_CASE("brute force edge cases") {
  std::mt19937_64 rng(3);
  auto g = testing::random_gnp(5, 0.4, rng);
  auto s = testing::random_uniform_opinions(5, rng);
  CHECK(brute_force_opinion_min(g, s, 5).objective == doctest::Approx(0.0));
  CHECK(brute_force_opinion_min(Digraph::from_arcs(1, {}), OpinionVector({0.8}), 1).objective ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(brute_force_opinion_min(Digraph::from_arcs(30, {}),
                                          OpinionVector::constant(30, 0.5), 15),
                  CapacityError);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(30, 15) == 155117520);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("apply_selection") {
  OpinionVector s({0.2, 0.9});
  std::vector<NodeId> one{1};
  std::vector<NodeId> both{0, 1};
  CHECK(apply_selection(s, one, 0.0) == OpinionVector({0.2, 0.0}));
  CHECK(apply_selection(s, both, 1.0) == OpinionVector({1.0, 1.0}));
  CHECK(apply_selection(apply_selection(s, one, 0.0), one, 0.0) == apply_selection(s, one, 0.0));
  CHECK(s == OpinionVector({0.2, 0.9}));
  CHECK_THROWS_AS(apply_selection(s, one, 0.5), DomainError);
  std::vector<NodeId> bad{2};
  CHECK_THROWS_AS(apply_selection(s, bad, 0.0), DomainError);
}

TEST_CASE("property: exact solver is optimal against brute force") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    auto g = testing::random_gnp(n, 0.3, rng);
    auto s = testing::random_uniform_opinions(n, rng);
    const std::size_t k = 1 + rng() % std::min<std::size_t>(3, n);
    auto exact = solve_opinion_min_exact(g, s, k);
    auto brute = brute_force_opinion_min(g, s, k);
    CHECK(exact.objective == doctest::Approx(brute.objective).epsilon(1e-9));
    CHECK(sorted(exact.nodes) == brute.nodes);
  }
}

TEST_CASE("property: decomposition, monotonicity, scale invariance and min/max symmetry") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    auto g = testing::random_gnp(n, 0.15, rng);
    auto s = testing::random_uniform_opinions(n, rng);
    const std::size_t k = 1 + rng() % n;
    ExactSolver solver(g);
    auto sel = solver.opinion_min(s, k);
    const auto& rho = solver.centrality();

    // g_T = sum over unselected of rho_i s_i = g - sum over selected.
    double rest = 0.0;
    double chosen = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      bool in = std::find(sel.nodes.begin(), sel.nodes.end(), static_cast<NodeId>(i)) !=
                sel.nodes.end();
      (in ? chosen : rest) += rho[i] * s[i];
    }
    CHECK(std::abs(sel.objective - rest) < 1e-9);
    CHECK(std::abs(sel.objective - (sel.baseline_objective - chosen)) < 1e-9);

    // Adding any node to the selection never raises the objective.
    auto zeroed = apply_selection(s, sel.nodes, 0.0);
    for (std::size_t extra = 0; extra < n; ++extra) {
      std::vector<NodeId> more{static_cast<NodeId>(extra)};
      CHECK(solver.system().objective(apply_selection(zeroed, more, 0.0).values()) <=
            sel.objective + 1e-12);
    }

    // Uniform scaling of s by c in (0, 1] keeps the chosen set.
    const double c = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    std::vector<double> scaled(s.values().begin(), s.values().end());
    for (double& v : scaled) v *= c;
    CHECK(sorted(solver.opinion_min(OpinionVector(scaled), k).nodes) == sorted(sel.nodes));

    // T_max(s) = T_min(1 - s).
    CHECK(solver.opinion_max(s, k).nodes == solver.opinion_min(s.complement(), k).nodes);
  }
}
