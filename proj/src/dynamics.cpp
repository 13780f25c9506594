#include "fjopt/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "fjopt/error.hpp"

namespace fjopt {

OpinionVector::OpinionVector(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("internal opinion of node " + std::to_string(i) + " is " +
                            std::to_string(v) + ", outside [0, 1]");
    }
  }
}

OpinionVector OpinionVector::complement() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](double v) { return 1.0 - v; });
  return OpinionVector(std::move(out));
}

namespace {

void require_same_size(const Digraph& g, std::size_t len, const char* what) {
  if (g.node_count() != len) {
    throw DomainError(std::string(what) + " has length " + std::to_string(len) +
                      " but the graph has " + std::to_string(g.node_count()) + " nodes");
  }
}

void require_dense_fits(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw CapacityError("n=" + std::to_string(n) + " exceeds the dense size cap of " +
                        std::to_string(cap) +
                        "; use the forest-sampling estimator for graphs this large");
  }
}

// Writes one synchronous update of z into next; returns the max-norm change.
double fj_update(const Digraph& g, std::span<const double> s, std::span<const double> z,
                 std::span<double> next) {
  double change = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto u = static_cast<NodeId>(i);
    double acc = s[i];
    for (NodeId j : g.successors(u)) acc += z[j];
    next[i] = acc / (1.0 + g.out_degree(u));
    change = std::max(change, std::abs(next[i] - z[i]));
  }
  return change;
}

}  // namespace

ExpressedOpinions step_opinions(const Digraph& g, const OpinionVector& s,
                                const ExpressedOpinions& z) {
  require_same_size(g, s.size(), "opinion vector");
  require_same_size(g, z.values.size(), "expressed opinion vector");
  ExpressedOpinions out;
  out.values.resize(s.size());
  fj_update(g, s.values(), z.values, out.values);
  out.iterations = z.iterations + 1;
  out.converged = false;
  return out;
}

ExpressedOpinions equilibrium(const Digraph& g, const OpinionVector& s,
                              const EquilibriumOptions& options) {
  require_same_size(g, s.size(), "opinion vector");
  if (options.method == EquilibriumMethod::solve) {
    FjSystem system(g, options.dense_cap);
    return {system.solve(s.values()), true, 0};
  }

  if (!(options.tolerance > 0.0)) throw DomainError("iteration tolerance must be positive");
  std::vector<double> z(s.values().begin(), s.values().end());
  std::vector<double> next(z.size());
  double change = 0.0;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    change = fj_update(g, s.values(), z, next);
    z.swap(next);
    if (change < options.tolerance) return {std::move(z), true, it};
  }
  throw NonConvergenceError("FJ iteration did not reach tolerance " +
                                std::to_string(options.tolerance) + " within " +
                                std::to_string(options.max_iterations) + " iterations",
                            std::move(z), options.max_iterations, change);
}

double average_opinion(std::span<const double> z) {
  if (z.empty()) throw DomainError("average of an empty opinion vector");
  return std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(z.size());
}

Eigen::MatrixXd identity_plus_laplacian(const Digraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto u = static_cast<NodeId>(i);
    m(i, i) += g.out_degree(u);
    for (NodeId v : g.successors(u)) m(i, v) = -1.0;
  }
  return m;
}

FundamentalMatrix fundamental_matrix(const Digraph& g, std::size_t dense_cap) {
  require_dense_fits(g.node_count(), dense_cap);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(identity_plus_laplacian(g));
  return {lu.inverse()};
}

CentralityVector structure_centrality_exact(const Digraph& g, CentralityMode mode,
                                            std::size_t dense_cap) {
  if (mode == CentralityMode::single_solve) return FjSystem(g, dense_cap).centrality();

  FundamentalMatrix omega = fundamental_matrix(g, dense_cap);
  const double n = static_cast<double>(g.node_count());
  Eigen::VectorXd means = omega.entries.colwise().sum().transpose() / n;
  return {std::vector<double>(means.begin(), means.end()), CentralitySource::exact, 0};
}

FjSystem::FjSystem(const Digraph& g, std::size_t dense_cap) : n_(g.node_count()) {
  require_dense_fits(n_, dense_cap);
  if (n_ > 0) lu_.compute(identity_plus_laplacian(g));
}

std::vector<double> FjSystem::solve(std::span<const double> s) const {
  if (s.size() != n_) throw DomainError("opinion vector length does not match the graph");
  if (n_ == 0) return {};
  Eigen::Map<const Eigen::VectorXd> rhs(s.data(), static_cast<Eigen::Index>(n_));
  Eigen::VectorXd z = lu_.solve(rhs);
  return {z.begin(), z.end()};
}

double FjSystem::objective(std::span<const double> s) const { return average_opinion(solve(s)); }

CentralityVector FjSystem::centrality() const {
  if (n_ == 0) return {{}, CentralitySource::exact, 0};
  Eigen::VectorXd rhs =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n_), 1.0 / static_cast<double>(n_));
  Eigen::VectorXd x = lu_.transpose().solve(rhs);
  return {std::vector<double>(x.begin(), x.end()), CentralitySource::exact, 0};
}

EquilibriumEvaluator::EquilibriumEvaluator(const Digraph& g, std::size_t dense_cap,
                                           double tolerance, std::size_t max_iterations)
    : g_(&g), tolerance_(tolerance), max_iterations_(max_iterations) {
  if (g.node_count() <= dense_cap) system_.emplace(g, dense_cap);
}

std::vector<double> EquilibriumEvaluator::solve(std::span<const double> s) const {
  if (system_) return system_->solve(s);
  if (s.size() != g_->node_count()) {
    throw DomainError("opinion vector length does not match the graph");
  }
  std::vector<double> z(s.begin(), s.end());
  std::vector<double> next(z.size());
  for (std::size_t it = 0; it < max_iterations_; ++it) {
    double change = fj_update(*g_, s, z, next);
    z.swap(next);
    if (change < tolerance_) return z;
  }
  throw NonConvergenceError("FJ iteration did not converge while evaluating an objective", z,
                            max_iterations_, tolerance_);
}

OpinionVector read_opinions(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    const char* first = line.data() + b;
    const char* last = line.data() + e + 1;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw ParseError(line_no, "expected one real opinion value");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("line " + std::to_string(line_no) + ": opinion " +
                            std::string(first, last) + " is outside [0, 1]");
    }
    values.push_back(v);
  }
  return OpinionVector(std::move(values));
}

OpinionVector read_opinions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open opinion file '" + path + "'");
  return read_opinions(in);
}

void write_expressed_opinions_csv(const ExpressedOpinions& z, std::ostream& out) {
  out << "node,z\n";
  char buf[32];
  for (std::size_t i = 0; i < z.values.size(); ++i) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, z.values[i]);
    out << i << ',' << std::string_view(buf, static_cast<std::size_t>(end - buf)) << '\n';
  }
}

}  // namespace fjopt
