#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fjopt/dynamics.hpp"
#include "fjopt/graph.hpp"

namespace fjopt {

/// k chosen nodes and the average equilibrium opinion after changing them.
struct Selection {
  std::string method;
  /// In selection order: highest score first.
  std::vector<NodeId> nodes;
  /// g_T(z) after the change.
  double objective = 0.0;
  /// g(z) on the unmodified opinions.
  double baseline_objective = 0.0;
  /// True when objective is the centrality-decomposition estimate rather
  /// than a fresh equilibrium solve.
  bool objective_estimated = false;
};

/// Throws DomainError unless 1 <= k <= n.
void require_k_in_range(std::size_t k, std::size_t n);

/// Indices of the k largest scores, highest first. Equal scores are broken
/// in favour of the lower index.
std::vector<NodeId> top_k(std::span<const double> scores, std::size_t k);

/// Copy of s with every selected node's opinion set to value (0 or 1).
OpinionVector apply_selection(const OpinionVector& s, std::span<const NodeId> nodes,
                              double value);

/// Sets objective and baseline_objective from fresh equilibrium solves of
/// s and of s with the selected opinions set to value.
void rescore(Selection& selection, const EquilibriumEvaluator& evaluator,
             const OpinionVector& s, double value);

/// {method, k, nodes, objective, baseline_objective, objective_estimated}
nlohmann::json selection_to_json(const Selection& selection);

}  // namespace fjopt
