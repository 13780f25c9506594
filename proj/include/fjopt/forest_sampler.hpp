#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fjopt/dynamics.hpp"
#include "fjopt/graph.hpp"

namespace fjopt {

/// Identifies one independent random stream: sample `stream_index` of a run
/// seeded with `base_seed`. Equal pairs reproduce equal forests.
struct RngStream {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_index = 0;
};

/// 64-bit key for a stream (splitmix64 mixing of both fields).
std::uint64_t stream_seed(RngStream stream) noexcept;

/// Counter-based randomness for the forest walk. The visit-th departure from
/// node u draws two uniforms: slot 0 for the absorption test and slot 1 for
/// the successor. Every node therefore owns a fixed sequence of choices and
/// the sampled forest is the same whatever order the walks run in.
class ForestRng {
 public:
  explicit ForestRng(RngStream stream) : seed_(stream_seed(stream)) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(NodeId u, std::uint64_t visit, unsigned slot) const noexcept;

  /// True when the walk stops at u: uniform(u, visit, 0) <= 1/(1+degree).
  bool absorbs(NodeId u, std::uint64_t visit, NodeId degree) const noexcept {
    return uniform(u, visit, 0) <= 1.0 / (1.0 + degree);
  }

  /// Uniform index in [0, count) from uniform(u, visit, 1).
  std::size_t index(NodeId u, std::uint64_t visit, std::size_t count) const noexcept {
    auto i = static_cast<std::size_t>(uniform(u, visit, 1) * static_cast<double>(count));
    return i < count ? i : count - 1;
  }

 private:
  std::uint64_t seed_;
};

/// Uniform draw from the successors of u for the given visit. Throws
/// DomainError if u has none.
NodeId random_successor(const Digraph& g, NodeId u, const ForestRng& rng,
                        std::uint64_t visit = 0);

/// Per-node root of one spanning converging forest: root[i] is the root of
/// the tree containing i, and root[root[i]] == root[i].
struct RootIndex {
  std::vector<NodeId> root;

  std::size_t size() const noexcept { return root.size(); }
  NodeId operator[](std::size_t i) const noexcept { return root[i]; }
  friend bool operator==(const RootIndex&, const RootIndex&) = default;
};

/// Default cap on walk steps for a single forest.
inline constexpr std::uint64_t kDefaultStepLimit = 10'000'000'000ULL;

/// Walks kept in flight by ForestSampler::sample.
inline constexpr std::size_t kDefaultWalkLanes = 16;

/// Samples uniform spanning converging forests of one graph.
///
/// Loop-erased random walks on the graph augmented with an implicit absorbing
/// node: at u the walk is absorbed (u becomes a root) with probability
/// 1/(1+d_u), otherwise it moves to a uniformly chosen successor. Loops are
/// erased by overwriting next[u] on revisits; once the walk hits the forest
/// the path from the start node is retraced and stamped with its root.
///
/// sample_sequential() runs one walk at a time from every node in ascending
/// id order. sample() keeps several walks in flight and prefetches the next
/// node of each, which hides memory latency on large graphs. A walk that
/// runs into a node held by an older walk waits for it; one that runs into a
/// younger walk cancels it and the younger walk restarts later with its
/// draws rewound. Both methods return identical forests for a stream.
///
/// Buffers are reused between calls, so one sampler per thread.
class ForestSampler {
 public:
  explicit ForestSampler(const Digraph& g, std::size_t lanes = kDefaultWalkLanes,
                         std::uint64_t step_limit = kDefaultStepLimit);

  /// Draws one forest and returns its root map (valid until the next call).
  std::span<const NodeId> sample(RngStream stream);
  std::span<const NodeId> sample_sequential(RngStream stream);

  /// Forest arcs of the last sample: next[i] is i's parent, -1 for roots.
  std::span<const NodeId> next() const noexcept { return next_; }
  std::span<const NodeId> roots() const noexcept { return root_; }
  /// Walk steps (absorption draws) in the last forest, not counting steps
  /// of cancelled walks.
  std::uint64_t last_steps() const noexcept { return last_steps_; }

 private:
  struct alignas(16) NodeState {
    NodeId root;
    NodeId next;
    std::int32_t owner;
    std::uint32_t visits;
  };
  struct Lane {
    NodeId start = -1;
    NodeId at = -1;
    enum class Stage { idle, check, move } stage = Stage::idle;
    std::size_t arc = 0;
    /// Nodes claimed by the current walk with their visit count at claim.
    std::vector<std::pair<NodeId, std::uint32_t>> claimed;
  };

  void reset(RngStream stream);
  void count_step();
  void walk_from(NodeId start);
  void check(std::size_t lane);
  void move(std::size_t lane);
  void finish(Lane& lane, NodeId root);
  void cancel(std::size_t lane);
  std::span<const NodeId> publish();

  const Digraph* g_;
  std::uint64_t step_limit_;
  ForestRng rng_{RngStream{}};
  std::vector<NodeState> state_;
  std::vector<Lane> lanes_;
  std::vector<NodeId> next_;
  std::vector<NodeId> root_;
  std::uint64_t steps_ = 0;
  std::uint64_t drawn_ = 0;
  std::uint64_t last_steps_ = 0;
};

RootIndex random_forest(const Digraph& g, RngStream stream);

/// |M(phi, i)|: the number of nodes whose root is i.
std::vector<std::uint32_t> root_multiplicities(std::span<const NodeId> root);

/// True when next describes a spanning converging forest of g (every arc in
/// E, no cycles) and root is consistent with it.
bool is_converging_forest(const Digraph& g, std::span<const NodeId> next,
                          std::span<const NodeId> root);

/// CSV "node,root,next" for one sampled forest.
void write_forest_csv(std::span<const NodeId> root, std::span<const NodeId> next,
                      std::ostream& out);

/// Every spanning converging forest of a small graph.
struct ForestEnumeration {
  std::size_t node_count = 0;
  /// next arrays, one per forest (-1 marks a root).
  std::vector<std::vector<NodeId>> forests;
  /// root maps, index-aligned with forests.
  std::vector<std::vector<NodeId>> roots;

  std::size_t size() const noexcept { return forests.size(); }
};

inline constexpr std::size_t kEnumerationMaxNodes = 12;
inline constexpr std::size_t kEnumerationBudget = 1'000'000;

/// Lists every arc subset with out-degree <= 1 per node and no directed
/// cycle. Throws CapacityError for n > max_nodes or more than budget forests.
ForestEnumeration enumerate_forests(const Digraph& g,
                                    std::size_t max_nodes = kEnumerationMaxNodes,
                                    std::size_t budget = kEnumerationBudget);

/// |F_ij| / |F|.
Eigen::MatrixXd forest_matrix(const ForestEnumeration& forests);

/// rho_i = sum over forests of |M(phi, i)| / (n |F|).
CentralityVector centrality_from_forests(const ForestEnumeration& forests);

}  // namespace fjopt
