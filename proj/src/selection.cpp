#include "fjopt/selection.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "fjopt/error.hpp"

namespace fjopt {

void require_k_in_range(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) {
    throw DomainError("k=" + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
  }
}

std::vector<NodeId> top_k(std::span<const double> scores, std::size_t k) {
  require_k_in_range(k, scores.size());
  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  auto higher = [&](NodeId a, NodeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    higher);
  order.resize(k);
  return order;
}

OpinionVector apply_selection(const OpinionVector& s, std::span<const NodeId> nodes,
                              double value) {
  if (value != 0.0 && value != 1.0) {
    throw DomainError("selected opinions can only be set to 0 or 1");
  }
  std::vector<double> out(s.values().begin(), s.values().end());
  for (NodeId u : nodes) {
    if (u < 0 || static_cast<std::size_t>(u) >= out.size()) {
      throw DomainError("selected node " + std::to_string(u) + " is out of range");
    }
    out[u] = value;
  }
  return OpinionVector(std::move(out));
}

void rescore(Selection& selection, const EquilibriumEvaluator& evaluator,
             const OpinionVector& s, double value) {
  selection.baseline_objective = evaluator.objective(s);
  selection.objective = evaluator.objective(apply_selection(s, selection.nodes, value));
  selection.objective_estimated = false;
}

nlohmann::json selection_to_json(const Selection& selection) {
  return {
      {"method", selection.method},
      {"k", selection.nodes.size()},
      {"nodes", selection.nodes},
      {"objective", selection.objective},
      {"baseline_objective", selection.baseline_objective},
      {"objective_estimated", selection.objective_estimated},
  };
}

}  // namespace fjopt
