#pragma once

// Shared fixtures for the test suites: small named graphs, random instance
// generators and oracles that do not go through the library's solvers.

#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "fjopt/experiment.hpp"
#include "fjopt/graph.hpp"

namespace fjopt::testing {

inline Digraph make_graph(std::size_t n, std::vector<Arc> arcs) {
  return Digraph::from_arcs(n, arcs);
}

struct NamedGraph {
  std::string name;
  Digraph graph;
};

/// Graphs with n <= 5, small enough for exhaustive forest enumeration.
inline std::vector<NamedGraph> tiny_catalog() {
  return {
      {"single-arc", make_graph(2, {{0, 1}})},
      {"two-cycle", make_graph(2, {{0, 1}, {1, 0}})},
      {"path", make_graph(4, {{0, 1}, {1, 2}, {2, 3}})},
      {"cycle", make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})},
      {"in-star", make_graph(5, {{1, 0}, {2, 0}, {3, 0}, {4, 0}})},
      {"dag", make_graph(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {1, 4}})},
      {"disconnected-pair", make_graph(4, {{0, 1}, {1, 0}, {2, 3}})},
      {"complete4", make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 2}, {1, 3},
                                   {2, 0}, {2, 1}, {2, 3}, {3, 0}, {3, 1}, {3, 2}})},
      {"mixed", make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 3}, {4, 1}})},
  };
}

/// Graphs with n <= 200 for statistical and solver-agreement checks.
inline std::vector<NamedGraph> medium_catalog() {
  return {
      {"random-150", random_digraph(150, 3.0, 11)},
      {"preferential-200", preferential_digraph(200, 3, 0.3, 12)},
      {"sparse-80", random_digraph(80, 1.2, 13)},
  };
}

/// Random simple digraph with each ordered pair present with probability p.
inline Digraph random_gnp(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Arc> arcs;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && coin(rng)) arcs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }
  return Digraph::from_arcs(n, arcs);
}

inline OpinionVector random_uniform_opinions(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return OpinionVector(std::move(v));
}

/// reach[j][i]: a directed path from j to i exists (j == i counts).
inline std::vector<std::vector<bool>> reachability(const Digraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<NodeId> q;
    q.push(static_cast<NodeId>(s));
    reach[s][s] = true;
    while (!q.empty()) {
      NodeId u = q.front();
      q.pop();
      for (NodeId v : g.successors(u)) {
        if (!reach[s][v]) {
          reach[s][v] = true;
          q.push(v);
        }
      }
    }
  }
  return reach;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace fjopt::testing
