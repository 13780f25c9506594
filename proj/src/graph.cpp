#include "fjopt/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

#include "fjopt/error.hpp"

namespace fjopt {

Digraph Digraph::from_arcs(std::size_t n, std::span<const Arc> arcs) {
  if (n > static_cast<std::size_t>(std::numeric_limits<NodeId>::max())) {
    throw ValidationError("node count " + std::to_string(n) + " exceeds NodeId range");
  }
  Digraph g;
  g.offsets_.assign(n + 1, 0);
  g.in_degree_.assign(n, 0);
  for (const auto& [u, v] : arcs) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n ||
        static_cast<std::size_t>(v) >= n) {
      throw ValidationError("arc " + std::to_string(u) + "->" + std::to_string(v) +
                            " has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) {
      throw ValidationError("self-arc at node " + std::to_string(u));
    }
    ++g.offsets_[u + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];

  g.targets_.resize(arcs.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : arcs) g.targets_[cursor[u]++] = v;

  for (std::size_t u = 0; u < n; ++u) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw ValidationError("duplicate arc " + std::to_string(u) + "->" +
                            std::to_string(*dup));
    }
    for (auto it = first; it != last; ++it) ++g.in_degree_[*it];
  }
  return g;
}

std::vector<NodeId> Digraph::out_degrees() const {
  std::vector<NodeId> out(node_count());
  for (std::size_t u = 0; u < out.size(); ++u) out[u] = out_degree(static_cast<NodeId>(u));
  return out;
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count());
  for (std::size_t u = 0; u < node_count(); ++u) {
    for (NodeId v : successors(static_cast<NodeId>(u))) out.emplace_back(static_cast<NodeId>(u), v);
  }
  return out;
}

bool Digraph::has_arc(NodeId u, NodeId v) const noexcept {
  auto succ = successors(u);
  return std::binary_search(succ.begin(), succ.end(), v);
}

std::pair<std::vector<NodeId>, std::vector<NodeId>> degrees(const Digraph& g) {
  auto in = g.in_degrees();
  return {g.out_degrees(), std::vector<NodeId>(in.begin(), in.end())};
}

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool next_token(std::string_view& rest, std::string_view& token) {
  constexpr std::string_view ws = " \t,;";
  auto b = rest.find_first_not_of(ws);
  if (b == std::string_view::npos) return false;
  auto e = rest.find_first_of(ws, b);
  token = rest.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b);
  rest = e == std::string_view::npos ? std::string_view{} : rest.substr(e);
  return true;
}

std::uint64_t parse_id(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer node id, got '" +
                               std::string(token) + "'");
  }
  return value;
}

// "# n=123" or "% n = 123"
bool parse_node_count_header(std::string_view comment, std::uint64_t& n) {
  comment = trim(comment.substr(1));
  if (comment.size() < 2 || comment[0] != 'n') return false;
  comment = trim(comment.substr(1));
  if (comment.empty() || comment[0] != '=') return false;
  comment = trim(comment.substr(1));
  auto [ptr, ec] = std::from_chars(comment.data(), comment.data() + comment.size(), n);
  return ec == std::errc{} && ptr == comment.data() + comment.size();
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::uint64_t header_n = 0;
  bool have_header = false;
  std::uint64_t max_id = 0;
  bool any_id = false;
  LoadedGraph result;

  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    std::string_view line = trim(buffer);
    if (line.empty()) continue;
    if (line[0] == '#' || line[0] == '%') {
      std::uint64_t n = 0;
      if (parse_node_count_header(line, n)) {
        if (have_header && n != header_n) {
          throw ParseError(line_no, "conflicting node count headers");
        }
        header_n = n;
        have_header = true;
      }
      continue;
    }
    std::string_view rest = line;
    std::string_view a;
    std::string_view b;
    if (!next_token(rest, a) || !next_token(rest, b)) {
      throw ParseError(line_no, "expected two node ids");
    }
    std::uint64_t u = parse_id(a, line_no);
    std::uint64_t v = parse_id(b, line_no);
    if (u == v) {
      if (options.self_arcs == SelfArcPolicy::reject) {
        throw ValidationError("line " + std::to_string(line_no) + ": self-arc at node " +
                              std::to_string(u));
      }
      ++result.self_arcs_dropped;
      // The node still exists even though its arc is discarded.
    }
    max_id = std::max({max_id, u, v});
    any_id = true;
    if (u != v) raw.emplace_back(u, v);
    if (options.relabel) {
      result.original_ids.push_back(u);
      result.original_ids.push_back(v);
    }
  }
  if (in.bad()) throw Error("read error while loading edge list");

  std::size_t n = 0;
  if (options.relabel) {
    auto& ids = result.original_ids;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    n = ids.size();
    if (have_header) {
      if (header_n < n) {
        throw ValidationError("header declares n=" + std::to_string(header_n) + " but " +
                              std::to_string(n) + " distinct ids appear");
      }
      n = header_n;
    }
    auto dense = [&](std::uint64_t id) {
      return static_cast<std::uint64_t>(std::lower_bound(ids.begin(), ids.end(), id) -
                                        ids.begin());
    };
    for (auto& [u, v] : raw) {
      u = dense(u);
      v = dense(v);
    }
  } else {
    n = any_id ? max_id + 1 : 0;
    if (have_header) {
      if (any_id && max_id >= header_n) {
        throw ValidationError("node id " + std::to_string(max_id) +
                              " is outside the declared n=" + std::to_string(header_n));
      }
      n = header_n;
    }
  }
  if (n > static_cast<std::uint64_t>(std::numeric_limits<NodeId>::max())) {
    throw ValidationError("node count " + std::to_string(n) + " exceeds NodeId range");
  }

  std::sort(raw.begin(), raw.end());
  auto unique_end = std::unique(raw.begin(), raw.end());
  std::size_t duplicates = static_cast<std::size_t>(raw.end() - unique_end);
  if (duplicates > 0 && options.duplicates == DuplicatePolicy::reject) {
    auto [u, v] = *unique_end;
    throw ValidationError("duplicate arc " + std::to_string(u) + "->" + std::to_string(v));
  }
  raw.erase(unique_end, raw.end());
  result.duplicates_merged = duplicates;

  std::vector<Arc> arcs;
  arcs.reserve(raw.size());
  for (auto [u, v] : raw) arcs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  result.graph = Digraph::from_arcs(n, arcs);
  return result;
}

LoadedGraph load_edge_list_file(const std::string& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path + "'");
  return load_edge_list(in, options);
}

void write_edge_list(const Digraph& g, std::ostream& out) {
  out << "# n=" << g.node_count() << '\n';
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.successors(static_cast<NodeId>(u))) out << u << ' ' << v << '\n';
  }
}

}  // namespace fjopt
