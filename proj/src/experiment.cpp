#include "fjopt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "fjopt/baselines.hpp"
#include "fjopt/error.hpp"
#include "fjopt/exact_solver.hpp"

namespace fjopt {

std::string_view distribution_name(OpinionDistributionKind kind) noexcept {
  switch (kind) {
    case OpinionDistributionKind::uniform: return "uniform";
    case OpinionDistributionKind::normal: return "normal";
    case OpinionDistributionKind::powerlaw: return "powerlaw";
    case OpinionDistributionKind::exponential: return "exp";
  }
  return "";
}

std::optional<OpinionDistributionKind> parse_distribution(std::string_view name) noexcept {
  for (auto kind : {OpinionDistributionKind::uniform, OpinionDistributionKind::normal,
                    OpinionDistributionKind::powerlaw, OpinionDistributionKind::exponential}) {
    if (distribution_name(kind) == name) return kind;
  }
  if (name == "exponential") return OpinionDistributionKind::exponential;
  return std::nullopt;
}

namespace {

void map_to_unit_interval(std::vector<double>& v) {
  if (v.empty()) return;
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double min = *lo;
  const double range = *hi - min;
  for (double& x : v) x = range > 0.0 ? std::clamp((x - min) / range, 0.0, 1.0) : 0.5;
}

}  // namespace

OpinionVector generate_opinions(std::size_t n, const OpinionDistribution& dist) {
  std::mt19937_64 engine(dist.seed);
  std::vector<double> v(n);
  switch (dist.kind) {
    case OpinionDistributionKind::uniform: {
      std::uniform_real_distribution<double> d(0.0, 1.0);
      for (double& x : v) x = d(engine);
      return OpinionVector(std::move(v));
    }
    case OpinionDistributionKind::normal: {
      std::normal_distribution<double> d(0.0, 1.0);
      for (double& x : v) x = d(engine);
      break;
    }
    case OpinionDistributionKind::powerlaw: {
      if (!(dist.powerlaw_exponent > 1.0)) {
        throw DomainError("power-law exponent must exceed 1");
      }
      std::uniform_real_distribution<double> d(0.0, 1.0);
      const double inv = -1.0 / (dist.powerlaw_exponent - 1.0);
      for (double& x : v) x = std::pow(1.0 - d(engine), inv);
      break;
    }
    case OpinionDistributionKind::exponential: {
      if (!(dist.exponential_rate > 0.0)) throw DomainError("exponential rate must be positive");
      std::exponential_distribution<double> d(dist.exponential_rate);
      for (double& x : v) x = d(engine);
      break;
    }
  }
  map_to_unit_interval(v);
  return OpinionVector(std::move(v));
}

Digraph random_digraph(std::size_t n, double avg_out_degree, std::uint64_t seed) {
  if (!(avg_out_degree >= 0.0)) throw DomainError("average out-degree must be non-negative");
  const auto target = static_cast<std::size_t>(std::llround(avg_out_degree * static_cast<double>(n)));
  const double possible = static_cast<double>(n) * static_cast<double>(n > 0 ? n - 1 : 0);
  if (static_cast<double>(target) > possible) {
    throw DomainError("requested more arcs than a simple digraph on n nodes can hold");
  }
  std::mt19937_64 engine(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, n > 0 ? n - 1 : 0);
  std::vector<Arc> arcs;
  arcs.reserve(target);
  // Draw in rounds and deduplicate until the target count is met.
  while (arcs.size() < target) {
    std::size_t missing = target - arcs.size();
    for (std::size_t i = 0; i < missing; ++i) {
      auto u = static_cast<NodeId>(pick(engine));
      auto v = static_cast<NodeId>(pick(engine));
      if (u != v) arcs.emplace_back(u, v);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  }
  return Digraph::from_arcs(n, arcs);
}

Digraph preferential_digraph(std::size_t n, std::size_t arcs_per_node, double reciprocity,
                             std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  // Each node appears once per unit of weight (in-degree + 1).
  std::vector<NodeId> urn;
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    auto u = static_cast<NodeId>(i);
    std::vector<NodeId> targets;
    const std::size_t want = std::min(arcs_per_node, i);
    for (std::size_t attempt = 0; targets.size() < want && attempt < 20 * want + 20; ++attempt) {
      std::uniform_int_distribution<std::size_t> pick(0, urn.size() - 1);
      NodeId v = urn[pick(engine)];
      if (std::find(targets.begin(), targets.end(), v) == targets.end()) targets.push_back(v);
    }
    for (NodeId v : targets) {
      arcs.emplace_back(u, v);
      urn.push_back(v);
      if (coin(engine) < reciprocity) {
        arcs.emplace_back(v, u);
        urn.push_back(u);
      }
    }
    urn.push_back(u);
  }
  return Digraph::from_arcs(n, arcs);
}

const CompareCell* ComparisonReport::find(std::string_view method, std::size_t k,
                                          std::uint64_t opinion_seed) const {
  for (const auto& c : cells) {
    if (c.method == method && c.k == k && c.opinion_seed == opinion_seed) return &c;
  }
  return nullptr;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

bool is_known_method(std::string_view m) {
  return m == "exact" || m == "fast" || parse_baseline(m).has_value();
}

}  // namespace

ComparisonReport compare_methods(const Digraph& g, const CompareConfig& config,
                                 const std::optional<OpinionVector>& opinions) {
  for (const auto& m : config.methods) {
    if (!is_known_method(m)) throw DomainError("unknown method '" + m + "'");
  }
  for (std::size_t k : config.ks) require_k_in_range(k, g.node_count());
  config.plan.validate();
  if (opinions && opinions->size() != g.node_count()) {
    throw DomainError("opinion vector length does not match the graph");
  }

  ComparisonReport report;
  report.graph_name = config.graph_name;
  report.n = g.node_count();
  report.m = g.arc_count();
  report.config = config;
  if (opinions) report.config.opinion_repeats = 1;

  EquilibriumEvaluator evaluator(g, config.dense_cap);
  auto wants = [&](std::string_view m) {
    return std::find(config.methods.begin(), config.methods.end(), m) != config.methods.end();
  };

  // Centrality for exact and fast does not depend on the opinions, so it is
  // computed once; its cost is added to every cell of that method.
  std::optional<ExactSolver> exact;
  std::optional<std::string> exact_error;
  double exact_setup_ms = 0.0;
  if (wants("exact")) {
    auto t0 = Clock::now();
    try {
      exact.emplace(g, config.dense_cap);
    } catch (const CapacityError& e) {
      exact_error = e.what();
    }
    exact_setup_ms = elapsed_ms(t0);
  }
  std::optional<FastSolver> fast;
  double fast_setup_ms = 0.0;
  if (wants("fast")) {
    auto t0 = Clock::now();
    fast.emplace(g, config.plan);
    fast_setup_ms = elapsed_ms(t0);
  }

  for (std::size_t rep = 0; rep < report.config.opinion_repeats; ++rep) {
    OpinionDistribution dist = config.distribution;
    dist.seed += rep;
    const OpinionVector s = opinions ? *opinions : generate_opinions(g.node_count(), dist);
    report.baseline_objectives.push_back(evaluator.objective(s));

    for (std::size_t k : config.ks) {
      std::size_t first_cell = report.cells.size();
      for (const auto& method : config.methods) {
        CompareCell cell;
        cell.method = method;
        cell.k = k;
        cell.opinion_seed = dist.seed;
        auto t0 = Clock::now();
        try {
          Selection sel;
          if (method == "exact") {
            if (!exact) throw CapacityError(*exact_error);
            sel = exact->opinion_min(s, k);
            cell.wall_ms = exact_setup_ms + elapsed_ms(t0);
          } else if (method == "fast") {
            sel = fast->opinion_min(s, k);
            cell.wall_ms = fast_setup_ms + elapsed_ms(t0);
          } else {
            switch (*parse_baseline(method)) {
              case BaselineKind::random:
                sel = select_random(g, s, k, config.plan.base_seed, evaluator);
                break;
              case BaselineKind::in_degree: sel = select_in_degree(g, s, k, evaluator); break;
              case BaselineKind::internal_opinion:
                sel = select_internal_opinion(g, s, k, evaluator);
                break;
              case BaselineKind::expressed_opinion:
                sel = select_expressed_opinion(g, s, k, evaluator);
                break;
            }
            cell.wall_ms = elapsed_ms(t0);
          }
          rescore(sel, evaluator, s, 0.0);
          cell.selection = std::move(sel);
        } catch (const Error& e) {
          cell.error = e.what();
          cell.wall_ms = elapsed_ms(t0);
        }
        report.cells.push_back(std::move(cell));
      }

      const CompareCell* ex = nullptr;
      CompareCell* fa = nullptr;
      for (std::size_t c = first_cell; c < report.cells.size(); ++c) {
        if (report.cells[c].method == "exact") ex = &report.cells[c];
        if (report.cells[c].method == "fast") fa = &report.cells[c];
      }
      if (ex && fa && ex->selection && fa->selection && ex->selection->objective > 0.0) {
        const double g_t = ex->selection->objective;
        fa->gamma = std::abs(g_t - fa->selection->objective) / g_t;
      }
    }
  }

  for (std::size_t k : config.ks) {
    GammaSummary summary;
    summary.k = k;
    double sum = 0.0;
    for (const auto& c : report.cells) {
      if (c.method == "fast" && c.k == k && c.gamma) {
        sum += *c.gamma;
        ++summary.defined;
      }
    }
    if (summary.defined > 0) summary.mean = sum / static_cast<double>(summary.defined);
    report.gamma_mean.push_back(summary);
  }
  return report;
}

namespace {

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json report_to_json(const ComparisonReport& report) {
  using nlohmann::json;
  const auto& cfg = report.config;
  json j;
  j["schema"] = "fjopt.compare/1";
  j["graph"] = {{"name", report.graph_name}, {"n", report.n}, {"m", report.m}};
  j["opinions"] = {{"distribution", distribution_name(cfg.distribution.kind)},
                   {"seed", cfg.distribution.seed},
                   {"repeats", cfg.opinion_repeats}};
  j["plan"] = cfg.plan.to_json();
  j["dense_cap"] = cfg.dense_cap;
  j["methods"] = cfg.methods;
  j["ks"] = cfg.ks;

  json baselines = json::array();
  for (std::size_t r = 0; r < report.baseline_objectives.size(); ++r) {
    baselines.push_back({{"opinion_seed", cfg.distribution.seed + r},
                         {"objective", report.baseline_objectives[r]}});
  }
  j["baseline_objectives"] = baselines;

  json cells = json::array();
  json gamma_per_seed = json::array();
  for (const auto& c : report.cells) {
    json cell;
    if (c.selection) {
      cell = selection_to_json(*c.selection);
      cell["method"] = c.method;
    } else {
      cell = {{"method", c.method},
              {"k", c.k},
              {"nodes", nullptr},
              {"objective", nullptr},
              {"baseline_objective", nullptr},
              {"objective_estimated", false}};
    }
    cell["opinion_seed"] = c.opinion_seed;
    cell["gamma"] = optional_json(c.gamma);
    cell["wall_ms"] = c.wall_ms;
    cell["error"] = optional_json(c.error);
    cells.push_back(std::move(cell));
    if (c.method == "fast") {
      gamma_per_seed.push_back(
          {{"opinion_seed", c.opinion_seed}, {"k", c.k}, {"gamma", optional_json(c.gamma)}});
    }
  }
  j["cells"] = cells;
  j["gamma_per_seed"] = gamma_per_seed;

  json means = json::array();
  for (const auto& g : report.gamma_mean) {
    means.push_back(
        {{"k", g.k}, {"gamma_mean", optional_json(g.mean)}, {"seeds_defined", g.defined}});
  }
  j["gamma_mean"] = means;
  return j;
}

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void write_report_csv(const ComparisonReport& report, std::ostream& out) {
  out << "method,k,objective,gamma,wall_ms\n";
  for (const auto& c : report.cells) {
    out << c.method << ',' << c.k << ',';
    if (c.selection) out << format_double(c.selection->objective);
    out << ',';
    if (c.gamma) out << format_double(*c.gamma);
    out << ',' << format_double(c.wall_ms) << '\n';
  }
}

BenchRow bench_sampler_on(const Digraph& g, std::size_t samples, std::uint64_t seed,
                          unsigned threads) {
  SamplingPlan plan = SamplingPlan::with_samples(samples, seed);
  plan.threads = threads;
  plan.validate();
  auto t0 = Clock::now();
  RootCounts counts = sample_root_counts(g, plan);
  BenchRow row;
  row.total_ms = elapsed_ms(t0);
  row.n = g.node_count();
  row.m = g.arc_count();
  row.samples = samples;
  row.per_sample_ms = row.total_ms / static_cast<double>(samples);
  row.steps_per_node = static_cast<double>(counts.total_steps) /
                       (static_cast<double>(samples) * static_cast<double>(std::max<std::size_t>(row.n, 1)));
  return row;
}

std::vector<BenchRow> bench_sampler(const BenchConfig& config) {
  if (config.samples == 0) throw DomainError("the number of sampled forests must be at least 1");
  std::vector<BenchRow> rows;
  for (std::size_t n : config.sizes) {
    Digraph g = random_digraph(n, config.avg_degree, config.seed);
    rows.push_back(bench_sampler_on(g, config.samples, config.seed, config.threads));
  }
  return rows;
}

nlohmann::json bench_to_json(const std::vector<BenchRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n},
                   {"m", r.m},
                   {"l", r.samples},
                   {"total_ms", r.total_ms},
                   {"per_sample_ms", r.per_sample_ms},
                   {"steps_per_node", r.steps_per_node}});
  }
  return out;
}

void write_centrality_csv(const CentralityVector& rho, std::ostream& out) {
  out << "node,rho\n";
  for (std::size_t i = 0; i < rho.size(); ++i) out << i << ',' << format_double(rho[i]) << '\n';
}

std::vector<std::size_t> parse_count_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& item : parse_name_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !(v >= 0.0) || v != std::floor(v) || v > 9.0e15) {
      throw DomainError("'" + item + "' is not a non-negative integer");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<std::string> parse_name_list(std::string_view text) {
  std::vector<std::string> out;
  if (text.find_first_not_of(' ') == std::string_view::npos) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw DomainError("empty entry in list '" + std::string(text) + "'");
    out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

}  // namespace fjopt
