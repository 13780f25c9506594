#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "fjopt/dynamics.hpp"
#include "fjopt/selection.hpp"

namespace fjopt {

// Heuristic OpinionMin strategies used for comparison. Each sets the chosen
// opinions to 0 and reports the objective from a fresh equilibrium solve.
// Deterministic rankings break ties towards the lower node id.

/// Uniform k-subset without replacement.
Selection select_random(const Digraph& g, const OpinionVector& s, std::size_t k,
                        std::uint64_t seed, const EquilibriumEvaluator& evaluator);
/// Largest in-degree.
Selection select_in_degree(const Digraph& g, const OpinionVector& s, std::size_t k,
                           const EquilibriumEvaluator& evaluator);
/// Largest internal opinion.
Selection select_internal_opinion(const Digraph& g, const OpinionVector& s, std::size_t k,
                                  const EquilibriumEvaluator& evaluator);
/// Largest equilibrium expressed opinion under the original s.
Selection select_expressed_opinion(const Digraph& g, const OpinionVector& s, std::size_t k,
                                   const EquilibriumEvaluator& evaluator);

Selection select_random(const Digraph& g, const OpinionVector& s, std::size_t k,
                        std::uint64_t seed);
Selection select_in_degree(const Digraph& g, const OpinionVector& s, std::size_t k);
Selection select_internal_opinion(const Digraph& g, const OpinionVector& s, std::size_t k);
Selection select_expressed_opinion(const Digraph& g, const OpinionVector& s, std::size_t k);

enum class BaselineKind { random, in_degree, internal_opinion, expressed_opinion };

/// "rand", "id", "io", "eo".
std::string_view baseline_name(BaselineKind kind) noexcept;
std::optional<BaselineKind> parse_baseline(std::string_view name) noexcept;

}  // namespace fjopt
