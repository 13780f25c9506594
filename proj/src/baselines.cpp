#include "fjopt/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "fjopt/error.hpp"

namespace fjopt {

namespace {

void require_matching(const Digraph& g, const OpinionVector& s, std::size_t k) {
  if (s.size() != g.node_count()) {
    throw DomainError("opinion vector length does not match the graph");
  }
  require_k_in_range(k, s.size());
}

Selection finish(std::string_view method, std::vector<NodeId> nodes, const OpinionVector& s,
                 const EquilibriumEvaluator& evaluator) {
  Selection out;
  out.method = std::string(method);
  out.nodes = std::move(nodes);
  rescore(out, evaluator, s, 0.0);
  return out;
}

}  // namespace

Selection select_random(const Digraph& g, const OpinionVector& s, std::size_t k,
                        std::uint64_t seed, const EquilibriumEvaluator& evaluator) {
  require_matching(g, s, k);
  // Partial Fisher-Yates with explicit 64-bit draws so a seed gives the same
  // subset on every standard library.
  std::mt19937_64 engine(seed);
  std::vector<NodeId> ids(s.size());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t span = ids.size() - i;
    const std::size_t j = i + static_cast<std::size_t>(engine() % span);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(k);
  return finish("rand", std::move(ids), s, evaluator);
}

Selection select_in_degree(const Digraph& g, const OpinionVector& s, std::size_t k,
                           const EquilibriumEvaluator& evaluator) {
  require_matching(g, s, k);
  auto in = g.in_degrees();
  std::vector<double> score(in.begin(), in.end());
  return finish("id", top_k(score, k), s, evaluator);
}

Selection select_internal_opinion(const Digraph& g, const OpinionVector& s, std::size_t k,
                                  const EquilibriumEvaluator& evaluator) {
  require_matching(g, s, k);
  return finish("io", top_k(s.values(), k), s, evaluator);
}

Selection select_expressed_opinion(const Digraph& g, const OpinionVector& s, std::size_t k,
                                   const EquilibriumEvaluator& evaluator) {
  require_matching(g, s, k);
  auto z = evaluator.solve(s.values());
  return finish("eo", top_k(z, k), s, evaluator);
}

Selection select_random(const Digraph& g, const OpinionVector& s, std::size_t k,
                        std::uint64_t seed) {
  return select_random(g, s, k, seed, EquilibriumEvaluator(g));
}

Selection select_in_degree(const Digraph& g, const OpinionVector& s, std::size_t k) {
  return select_in_degree(g, s, k, EquilibriumEvaluator(g));
}

Selection select_internal_opinion(const Digraph& g, const OpinionVector& s, std::size_t k) {
  return select_internal_opinion(g, s, k, EquilibriumEvaluator(g));
}

Selection select_expressed_opinion(const Digraph& g, const OpinionVector& s, std::size_t k) {
  return select_expressed_opinion(g, s, k, EquilibriumEvaluator(g));
}

std::string_view baseline_name(BaselineKind kind) noexcept {
  switch (kind) {
    case BaselineKind::random: return "rand";
    case BaselineKind::in_degree: return "id";
    case BaselineKind::internal_opinion: return "io";
    case BaselineKind::expressed_opinion: return "eo";
  }
  return "";
}

std::optional<BaselineKind> parse_baseline(std::string_view name) noexcept {
  for (auto kind : {BaselineKind::random, BaselineKind::in_degree,
                    BaselineKind::internal_opinion, BaselineKind::expressed_opinion}) {
    if (baseline_name(kind) == name) return kind;
  }
  return std::nullopt;
}

}  // namespace fjopt
