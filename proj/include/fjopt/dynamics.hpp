#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fjopt/graph.hpp"

namespace fjopt {

/// Largest n accepted by the dense O(n^3) routines unless overridden.
inline constexpr std::size_t kDefaultDenseCap = 20000;

/// Internal opinions, one value in [0, 1] per node.
class OpinionVector {
 public:
  OpinionVector() = default;
  /// Throws ValidationError if any value is outside [0, 1] or not finite.
  explicit OpinionVector(std::vector<double> values);

  static OpinionVector constant(std::size_t n, double value) {
    return OpinionVector(std::vector<double>(n, value));
  }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Elementwise 1 - s. Maps an OpinionMax instance onto OpinionMin.
  OpinionVector complement() const;

  friend bool operator==(const OpinionVector&, const OpinionVector&) = default;

 private:
  std::vector<double> values_;
};

struct ExpressedOpinions {
  std::vector<double> values;
  bool converged = true;
  /// Number of synchronous updates; zero for the direct solve.
  std::size_t iterations = 0;
};

enum class EquilibriumMethod { solve, iterate };

struct EquilibriumOptions {
  EquilibriumMethod method = EquilibriumMethod::solve;
  double tolerance = 1e-10;
  std::size_t max_iterations = 1'000'000;
  std::size_t dense_cap = kDefaultDenseCap;
};

/// One synchronous FJ update: z'_i = (s_i + sum_{j in N(i)} z_j) / (1 + d_i).
ExpressedOpinions step_opinions(const Digraph& g, const OpinionVector& s,
                                const ExpressedOpinions& z);

/// Equilibrium z = (I + L)^{-1} s, either by dense LU or by repeating
/// step_opinions from z = s until the max-norm change drops below tolerance.
/// The iterative path throws NonConvergenceError carrying the last iterate.
ExpressedOpinions equilibrium(const Digraph& g, const OpinionVector& s,
                              const EquilibriumOptions& options = {});

/// Arithmetic mean of the expressed opinions.
double average_opinion(std::span<const double> z);
inline double average_opinion(const ExpressedOpinions& z) { return average_opinion(z.values); }

/// Dense I + L.
Eigen::MatrixXd identity_plus_laplacian(const Digraph& g);

/// Omega = (I + L)^{-1}. Row-stochastic with 0 <= w_ji < w_ii <= 1.
struct FundamentalMatrix {
  Eigen::MatrixXd entries;

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

/// Throws CapacityError when n > dense_cap.
FundamentalMatrix fundamental_matrix(const Digraph& g, std::size_t dense_cap = kDefaultDenseCap);

enum class CentralitySource { exact, sampled };

/// Structure centrality rho (exact) or its Monte-Carlo estimate.
struct CentralityVector {
  std::vector<double> values;
  CentralitySource source = CentralitySource::exact;
  /// Number of sampled forests; zero for exact values.
  std::size_t samples = 0;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const noexcept { return values[i]; }
};

enum class CentralityMode {
  /// Column means of the full inverse.
  dense,
  /// One transposed solve (I + L)^T x = (1/n) 1.
  single_solve,
};

CentralityVector structure_centrality_exact(const Digraph& g,
                                            CentralityMode mode = CentralityMode::single_solve,
                                            std::size_t dense_cap = kDefaultDenseCap);

/// LU factorization of I + L kept around for repeated equilibrium solves on
/// one graph (objective re-evaluation, brute force enumeration, k sweeps).
class FjSystem {
 public:
  explicit FjSystem(const Digraph& g, std::size_t dense_cap = kDefaultDenseCap);

  std::size_t size() const noexcept { return n_; }

  /// (I + L)^{-1} s.
  std::vector<double> solve(std::span<const double> s) const;
  /// Average equilibrium opinion g(z) for internal opinions s.
  double objective(std::span<const double> s) const;
  /// Column means of (I + L)^{-1} via a single transposed solve.
  CentralityVector centrality() const;

 private:
  std::size_t n_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Equilibrium solves for graphs of any size: dense LU up to dense_cap,
/// synchronous FJ iteration beyond it.
class EquilibriumEvaluator {
 public:
  explicit EquilibriumEvaluator(const Digraph& g, std::size_t dense_cap = kDefaultDenseCap,
                                double tolerance = 1e-12,
                                std::size_t max_iterations = 1'000'000);

  bool dense() const noexcept { return system_.has_value(); }
  std::size_t size() const noexcept { return g_->node_count(); }

  std::vector<double> solve(std::span<const double> s) const;
  double objective(std::span<const double> s) const { return average_opinion(solve(s)); }
  double objective(const OpinionVector& s) const { return objective(s.values()); }

 private:
  const Digraph* g_;
  std::optional<FjSystem> system_;
  double tolerance_;
  std::size_t max_iterations_;
};

/// Reads one real per line. Blank lines and lines starting with '#' are
/// skipped. Throws ParseError or ValidationError.
OpinionVector read_opinions(std::istream& in);
OpinionVector read_opinions_file(const std::string& path);

/// CSV "node,z".
void write_expressed_opinions_csv(const ExpressedOpinions& z, std::ostream& out);

}  // namespace fjopt
