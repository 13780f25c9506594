#include "fjopt/forest_sampler.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "fjopt/error.hpp"

namespace fjopt {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr NodeId kNone = -1;

}  // namespace

std::uint64_t stream_seed(RngStream stream) noexcept {
  return splitmix64(splitmix64(stream.base_seed) ^ splitmix64(~stream.stream_index));
}

double ForestRng::uniform(NodeId u, std::uint64_t visit, unsigned slot) const noexcept {
  const std::uint64_t node_key = splitmix64(seed_ + static_cast<std::uint64_t>(u) * 0xD1B54A32D192ED03ULL);
  const std::uint64_t h = splitmix64(node_key ^ ((visit << 1) | (slot & 1U)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

NodeId random_successor(const Digraph& g, NodeId u, const ForestRng& rng, std::uint64_t visit) {
  auto succ = g.successors(u);
  if (succ.empty()) {
    throw DomainError("random_successor called on node " + std::to_string(u) +
                      " which has no successors");
  }
  return succ[rng.index(u, visit, succ.size())];
}

ForestSampler::ForestSampler(const Digraph& g, std::size_t lanes, std::uint64_t step_limit)
    : g_(&g),
      step_limit_(step_limit),
      state_(g.node_count()),
      lanes_(std::max<std::size_t>(lanes, 1)),
      next_(g.node_count(), kNone),
      root_(g.node_count(), kNone) {}

void ForestSampler::reset(RngStream stream) {
  rng_ = ForestRng(stream);
  std::fill(state_.begin(), state_.end(), NodeState{kNone, kNone, -1, 0});
  for (auto& lane : lanes_) {
    lane.stage = Lane::Stage::idle;
    lane.claimed.clear();
  }
  steps_ = 0;
  drawn_ = 0;
}

void ForestSampler::count_step() {
  ++steps_;
  if (++drawn_ > step_limit_) {
    last_steps_ = steps_;
    throw SamplerError("forest walk exceeded " + std::to_string(step_limit_) + " steps");
  }
}

void ForestSampler::walk_from(NodeId start) {
  const Digraph& g = *g_;
  NodeState* const st = state_.data();
  NodeId u = start;
  while (st[u].root == kNone) {
    count_step();
    const std::uint32_t visit = st[u].visits++;
    const NodeId degree = g.out_degree(u);
    if (rng_.absorbs(u, visit, degree)) {
      st[u].next = kNone;
      st[u].root = u;
    } else {
      st[u].next = g.successors(u)[rng_.index(u, visit, static_cast<std::size_t>(degree))];
      u = st[u].next;
    }
  }
  const NodeId root = st[u].root;
  for (u = start; st[u].root == kNone; u = st[u].next) st[u].root = root;
}

std::span<const NodeId> ForestSampler::publish() {
  for (std::size_t i = 0; i < state_.size(); ++i) {
    root_[i] = state_[i].root;
    next_[i] = state_[i].next;
  }
  last_steps_ = steps_;
  return root_;
}

std::span<const NodeId> ForestSampler::sample_sequential(RngStream stream) {
  reset(stream);
  const auto n = static_cast<NodeId>(state_.size());
  for (NodeId i = 0; i < n; ++i) walk_from(i);
  return publish();
}

void ForestSampler::finish(Lane& lane, NodeId root) {
  NodeState* const st = state_.data();
  for (NodeId u = lane.start; st[u].root == kNone; u = st[u].next) st[u].root = root;
  for (const auto& [u, visits] : lane.claimed) st[u].owner = -1;
  lane.claimed.clear();
  lane.stage = Lane::Stage::idle;
}

void ForestSampler::cancel(std::size_t index) {
  Lane& lane = lanes_[index];
  for (const auto& [u, visits] : lane.claimed) {
    steps_ -= state_[u].visits - visits;
    state_[u].owner = -1;
    state_[u].visits = visits;
  }
  lane.claimed.clear();
  lane.at = lane.start;
  lane.stage = Lane::Stage::check;
}

void ForestSampler::check(std::size_t index) {
  Lane& lane = lanes_[index];
  const NodeId u = lane.at;
  NodeState& s = state_[u];
  if (s.root != kNone) {
    finish(lane, s.root);
    return;
  }
  const auto self = static_cast<std::int32_t>(index);
  if (s.owner != self) {
    if (s.owner != -1) {
      // Older walks (lower start) have priority.
      if (lanes_[static_cast<std::size_t>(s.owner)].start < lane.start) return;
      cancel(static_cast<std::size_t>(s.owner));
    }
    s.owner = self;
    lane.claimed.emplace_back(u, s.visits);
  }
  count_step();
  const std::uint32_t visit = s.visits++;
  const std::span<const std::size_t> offsets = g_->offsets();
  const std::size_t degree = offsets[u + 1] - offsets[u];
  if (rng_.absorbs(u, visit, static_cast<NodeId>(degree))) {
    s.next = kNone;
    s.root = u;
    finish(lane, u);
    return;
  }
  lane.arc = offsets[u] + rng_.index(u, visit, degree);
  __builtin_prefetch(g_->targets().data() + lane.arc);
  lane.stage = Lane::Stage::move;
}

void ForestSampler::move(std::size_t index) {
  Lane& lane = lanes_[index];
  const NodeId v = g_->targets()[lane.arc];
  state_[lane.at].next = v;
  lane.at = v;
  __builtin_prefetch(state_.data() + v);
  __builtin_prefetch(g_->offsets().data() + v);
  lane.stage = Lane::Stage::check;
}

std::span<const NodeId> ForestSampler::sample(RngStream stream) {
  reset(stream);
  const auto n = static_cast<NodeId>(state_.size());
  NodeId cursor = 0;
  for (bool active = true; active;) {
    active = false;
    for (std::size_t i = 0; i < lanes_.size(); ++i) {
      Lane& lane = lanes_[i];
      if (lane.stage == Lane::Stage::idle) {
        while (cursor < n && (state_[cursor].root != kNone || state_[cursor].owner != -1)) {
          ++cursor;
        }
        if (cursor == n) continue;
        lane.start = lane.at = cursor++;
        lane.stage = Lane::Stage::check;
      }
      active = true;
      if (lane.stage == Lane::Stage::check) {
        check(i);
      } else {
        move(i);
      }
    }
  }
  // Start nodes skipped while another walk held them may have been released.
  for (NodeId i = 0; i < n; ++i) walk_from(i);
  return publish();
}

RootIndex random_forest(const Digraph& g, RngStream stream) {
  ForestSampler sampler(g);
  auto roots = sampler.sample(stream);
  return {std::vector<NodeId>(roots.begin(), roots.end())};
}

std::vector<std::uint32_t> root_multiplicities(std::span<const NodeId> root) {
  std::vector<std::uint32_t> counts(root.size(), 0);
  for (NodeId r : root) ++counts[r];
  return counts;
}

bool is_converging_forest(const Digraph& g, std::span<const NodeId> next,
                          std::span<const NodeId> root) {
  const std::size_t n = g.node_count();
  if (next.size() != n || root.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    NodeId v = next[i];
    if (v == kNone) {
      if (root[i] != static_cast<NodeId>(i)) return false;
    } else if (v < 0 || static_cast<std::size_t>(v) >= n ||
               !g.has_arc(static_cast<NodeId>(i), v)) {
      return false;
    }
  }
  // Following next from any node must reach root[i] within n hops.
  for (std::size_t i = 0; i < n; ++i) {
    auto u = static_cast<NodeId>(i);
    std::size_t hops = 0;
    while (next[u] != kNone && hops <= n) {
      u = next[u];
      ++hops;
    }
    if (hops > n || u != root[i]) return false;
  }
  return true;
}

void write_forest_csv(std::span<const NodeId> root, std::span<const NodeId> next,
                      std::ostream& out) {
  out << "node,root,next\n";
  for (std::size_t i = 0; i < root.size(); ++i) {
    out << i << ',' << root[i] << ',' << next[i] << '\n';
  }
}

namespace {

struct Enumerator {
  const Digraph& g;
  std::size_t budget;
  std::vector<NodeId> next;
  ForestEnumeration out;

  // Would i -> v close a cycle through nodes already given an arc?
  bool closes_cycle(NodeId i, NodeId v) const {
    for (NodeId u = v; u != kNone; u = next[u]) {
      if (u == i) return true;
    }
    return false;
  }

  void emit() {
    if (out.forests.size() >= budget) {
      throw CapacityError("graph has more than " + std::to_string(budget) +
                          " spanning converging forests");
    }
    const std::size_t n = next.size();
    std::vector<NodeId> root(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto u = static_cast<NodeId>(i);
      while (next[u] != kNone) u = next[u];
      root[i] = u;
    }
    out.forests.push_back(next);
    out.roots.push_back(std::move(root));
  }

  // Nodes below i have their arc decided; nodes from i on have next == kNone.
  void recurse(NodeId i) {
    if (static_cast<std::size_t>(i) == next.size()) {
      emit();
      return;
    }
    recurse(i + 1);
    for (NodeId v : g.successors(i)) {
      if (closes_cycle(i, v)) continue;
      next[i] = v;
      recurse(i + 1);
      next[i] = kNone;
    }
  }
};

}  // namespace

ForestEnumeration enumerate_forests(const Digraph& g, std::size_t max_nodes, std::size_t budget) {
  const std::size_t n = g.node_count();
  if (n > max_nodes) {
    throw CapacityError("forest enumeration is limited to " + std::to_string(max_nodes) +
                        " nodes, graph has " + std::to_string(n));
  }
  Enumerator e{g, budget, std::vector<NodeId>(n, kNone), {}};
  e.out.node_count = n;
  e.recurse(0);
  return std::move(e.out);
}

Eigen::MatrixXd forest_matrix(const ForestEnumeration& forests) {
  const auto n = static_cast<Eigen::Index>(forests.node_count);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  for (const auto& root : forests.roots) {
    for (Eigen::Index i = 0; i < n; ++i) counts(i, root[static_cast<std::size_t>(i)]) += 1.0;
  }
  return counts / static_cast<double>(forests.size());
}

CentralityVector centrality_from_forests(const ForestEnumeration& forests) {
  const std::size_t n = forests.node_count;
  std::vector<std::uint64_t> total(n, 0);
  for (const auto& root : forests.roots) {
    auto m = root_multiplicities(root);
    for (std::size_t i = 0; i < n; ++i) total[i] += m[i];
  }
  CentralityVector rho;
  rho.values.resize(n);
  const double denom = static_cast<double>(n) * static_cast<double>(forests.size());
  for (std::size_t i = 0; i < n; ++i) rho.values[i] = static_cast<double>(total[i]) / denom;
  return rho;
}

}  // namespace fjopt
