#include "fjopt/exact_solver.hpp"

#include <limits>
#include <numeric>

#include "fjopt/error.hpp"

namespace fjopt {

ExactSolver::ExactSolver(const Digraph& g, std::size_t dense_cap)
    : system_(g, dense_cap), rho_(system_.centrality()) {}

Selection ExactSolver::opinion_min(const OpinionVector& s, std::size_t k) const {
  if (s.size() != system_.size()) throw DomainError("opinion vector length does not match the graph");
  require_k_in_range(k, s.size());

  std::vector<double> score(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) score[i] = rho_[i] * s[i];

  Selection out;
  out.method = "exact";
  out.nodes = top_k(score, k);
  out.baseline_objective = system_.objective(s.values());
  out.objective = system_.objective(apply_selection(s, out.nodes, 0.0).values());
  return out;
}

Selection ExactSolver::opinion_max(const OpinionVector& s, std::size_t k) const {
  Selection out = opinion_min(s.complement(), k);
  out.baseline_objective = system_.objective(s.values());
  out.objective = system_.objective(apply_selection(s, out.nodes, 1.0).values());
  return out;
}

Selection solve_opinion_min_exact(const Digraph& g, const OpinionVector& s, std::size_t k) {
  return ExactSolver(g).opinion_min(s, k);
}

Selection solve_opinion_max_exact(const Digraph& g, const OpinionVector& s, std::size_t k) {
  return ExactSolver(g).opinion_max(s, k);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    std::size_t num = n - k + i;
    std::size_t g = std::gcd(result, i);
    std::size_t r = result / g;
    std::size_t d = i / g;
    num /= d;
    if (r > std::numeric_limits<std::size_t>::max() / num) {
      return std::numeric_limits<std::size_t>::max();
    }
    result = r * num;
  }
  return result;
}

Selection brute_force_opinion_min(const Digraph& g, const OpinionVector& s, std::size_t k,
                                  double tie_tolerance, std::size_t budget) {
  const std::size_t n = g.node_count();
  if (s.size() != n) throw DomainError("opinion vector length does not match the graph");
  require_k_in_range(k, n);
  if (binomial(n, k) > budget) {
    throw CapacityError("C(" + std::to_string(n) + ", " + std::to_string(k) +
                        ") subsets exceed the brute-force budget of " + std::to_string(budget));
  }

  FjSystem system(g);
  std::vector<double> work(s.values().begin(), s.values().end());
  std::vector<NodeId> subset(k);
  std::iota(subset.begin(), subset.end(), NodeId{0});

  Selection best;
  best.method = "brute_force";
  best.baseline_objective = system.objective(s.values());
  best.objective = std::numeric_limits<double>::infinity();

  // Lexicographic enumeration, so the first subset seen within a tie is the
  // lexicographically smallest one.
  while (true) {
    for (NodeId u : subset) work[u] = 0.0;
    double value = system.objective(work);
    for (NodeId u : subset) work[u] = s[u];
    if (value < best.objective - tie_tolerance) {
      best.objective = value;
      best.nodes = subset;
    }

    std::size_t i = k;
    while (i > 0 && static_cast<std::size_t>(subset[i - 1]) == n - k + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return best;
}

}  // namespace fjopt
