#pragma once

#include <cstddef>

#include "fjopt/dynamics.hpp"
#include "fjopt/selection.hpp"

namespace fjopt {

/// Optimal OpinionMin / OpinionMax selection from exact structure centrality.
///
/// The optimal k-set for OpinionMin is the k nodes with the largest rho_i s_i;
/// OpinionMax is OpinionMin on 1 - s. The factorization of I + L is computed
/// once and reused for every objective evaluation on this graph.
class ExactSolver {
 public:
  explicit ExactSolver(const Digraph& g, std::size_t dense_cap = kDefaultDenseCap);

  const CentralityVector& centrality() const noexcept { return rho_; }
  const FjSystem& system() const noexcept { return system_; }

  Selection opinion_min(const OpinionVector& s, std::size_t k) const;
  Selection opinion_max(const OpinionVector& s, std::size_t k) const;

 private:
  FjSystem system_;
  CentralityVector rho_;
};

Selection solve_opinion_min_exact(const Digraph& g, const OpinionVector& s, std::size_t k);
Selection solve_opinion_max_exact(const Digraph& g, const OpinionVector& s, std::size_t k);

/// Largest number of subsets brute_force_opinion_min will evaluate.
inline constexpr std::size_t kBruteForceBudget = 1'000'000;

/// Exhaustive search over all k-subsets, each scored by a full equilibrium
/// solve. Objectives within tie_tolerance of each other count as equal and
/// the lexicographically smallest subset wins. Throws CapacityError when
/// C(n, k) exceeds the budget.
Selection brute_force_opinion_min(const Digraph& g, const OpinionVector& s, std::size_t k,
                                  double tie_tolerance = 1e-12,
                                  std::size_t budget = kBruteForceBudget);

/// C(n, k), saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace fjopt
