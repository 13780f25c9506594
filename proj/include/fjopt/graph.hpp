#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fjopt {

using NodeId = std::int32_t;
using Arc = std::pair<NodeId, NodeId>;

/// Immutable unweighted simple digraph in compressed sparse row form.
///
/// Nodes are 0..n-1. Successor lists are sorted ascending, contain no
/// duplicates and never contain the node itself.
class Digraph {
 public:
  Digraph() = default;

  /// Builds a graph from an arc list. Throws ValidationError on a self-arc,
  /// a duplicate arc or an endpoint outside [0, n).
  static Digraph from_arcs(std::size_t n, std::span<const Arc> arcs);

  std::size_t node_count() const noexcept { return in_degree_.size(); }
  std::size_t arc_count() const noexcept { return targets_.size(); }

  std::span<const NodeId> successors(NodeId u) const noexcept {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }

  NodeId out_degree(NodeId u) const noexcept {
    return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
  }
  NodeId in_degree(NodeId u) const noexcept { return in_degree_[u]; }

  /// Raw CSR arrays: successors of u are targets()[offsets()[u] .. offsets()[u+1]).
  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> targets() const noexcept { return targets_; }

  std::vector<NodeId> out_degrees() const;
  std::span<const NodeId> in_degrees() const noexcept { return in_degree_; }

  /// All arcs in (source, target) order.
  std::vector<Arc> arcs() const;

  bool has_arc(NodeId u, NodeId v) const noexcept;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<NodeId> in_degree_;
};

/// (out_degree, in_degree) arrays.
std::pair<std::vector<NodeId>, std::vector<NodeId>> degrees(const Digraph& g);

enum class DuplicatePolicy { merge, reject };
enum class SelfArcPolicy { drop, reject };

struct EdgeListOptions {
  DuplicatePolicy duplicates = DuplicatePolicy::merge;
  SelfArcPolicy self_arcs = SelfArcPolicy::drop;
  /// Map the distinct ids in the file onto 0..n-1 in ascending order.
  bool relabel = false;
};

struct LoadedGraph {
  Digraph graph;
  std::size_t duplicates_merged = 0;
  std::size_t self_arcs_dropped = 0;
  /// When relabelling, original_ids[i] is the file id of node i.
  std::vector<std::uint64_t> original_ids;
};

/// Parses "src dst" lines. Lines starting with '#' or '%' are comments, and a
/// "# n=<N>" comment fixes the node count. Columns after the second are
/// ignored so that weighted or timestamped KONECT files load unchanged.
LoadedGraph load_edge_list(std::istream& in, const EdgeListOptions& options = {});
LoadedGraph load_edge_list_file(const std::string& path,
                                const EdgeListOptions& options = {});

/// Writes the "# n=<N>" header followed by one "src dst" line per arc.
void write_edge_list(const Digraph& g, std::ostream& out);

}  // namespace fjopt
