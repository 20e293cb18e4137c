#include "mbounds/bounds1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mbounds/arbitrage.hpp"
#include "mbounds/error.hpp"

namespace mbounds {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kWitnessTol = 1e-12;

std::vector<double> merged(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (out.empty() || x - out.back() > kMergeTol) out.push_back(x);
  }
  return out;
}

void check_instruments(const std::vector<QuotedInstrument>& instruments, int t_star) {
  for (const QuotedInstrument& q : instruments) {
    if (q.maturity < 1 || q.maturity > t_star) {
      throw Error(ErrorCode::kInvalidInput,
                  "quoted instruments must mature between 1 and the target maturity");
    }
  }
}

Witness1D extract_witness(const Lp1D& lp, const std::vector<double>& grid,
                          const std::vector<double>& values) {
  Witness1D w;
  w.grid = grid;
  const int n = lp.n;
  for (int t = 1; t <= lp.t_star; ++t) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) row[i] = values[lp.marginal(t, i)];
    w.marginals.push_back(std::move(row));
  }
  for (int t = 1; t < lp.t_star; ++t) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const double v = values[lp.pair(t, a, b)];
        if (v > kWitnessTol) w.transitions.push_back({t, a, b, v});
      }
    }
  }
  return w;
}

}  // namespace

DiscreteDistribution Witness1D::marginal(int t) const {
  const std::vector<double>& m = marginals.at(static_cast<std::size_t>(t - 1));
  std::vector<Atom> atoms;
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] > kWitnessTol) {
      atoms.push_back({grid[i], m[i]});
      total += m[i];
    }
  }
  for (Atom& a : atoms) a.weight /= total;
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) head += atoms[i].weight;
  if (!atoms.empty()) atoms.back().weight = 1.0 - head;
  return DiscreteDistribution(std::move(atoms));
}

BreakpointSet breakpoint_set(const NormalizedSurface& surface, const std::string& asset,
                             int t_star, const Payoff1D& payoff, double L,
                             const std::vector<QuotedInstrument>& instruments) {
  std::vector<double> pts{0.0};
  for (const Quote& q : surface.quotes()) {
    if (q.asset == asset && q.maturity <= t_star) pts.push_back(q.strike);
  }
  for (const StrikePrice& f : future_vertices_unchecked(surface, asset, t_star)) {
    pts.push_back(f.strike);
  }
  for (double k : payoff.kinks()) pts.push_back(k);
  for (const QuotedInstrument& q : instruments) {
    for (double k : q.payoff.kinks()) pts.push_back(k);
  }
  double need = surface.spot(asset);
  for (double p : pts) need = std::max(need, p);
  if (!(L >= need - kMergeTol)) {
    std::ostringstream msg;
    msg << "support bound " << L << " below required " << need;
    throw Error(ErrorCode::kSupportBoundTooSmall, msg.str());
  }
  pts.push_back(L);
  BreakpointSet out{merged(std::move(pts))};
  // A point merged into L must not push L itself off the grid.
  out.points.back() = std::max(out.points.back(), L);
  return out;
}

Lp1D build_lp_1d(const NormalizedSurface& surface, const std::string& asset, int t_star,
                 const Payoff1D& payoff, const BreakpointSet& grid, lp::Sense sense,
                 const std::vector<QuotedInstrument>& instruments) {
  if (t_star < 1) throw Error(ErrorCode::kInvalidInput, "target maturity must be >= 1");
  const std::vector<double>& k = grid.points;
  const int n = static_cast<int>(k.size());
  Lp1D out{lp::LpModel(sense), t_star, n};
  lp::LpModel& m = out.model;
  const std::size_t pairs = static_cast<std::size_t>(t_star - 1) * n * n;
  m.reserve(static_cast<std::size_t>(t_star) * n + pairs,
            static_cast<std::size_t>(t_star) * 3 * n, pairs * 3 + 8 * n);

  for (int t = 1; t <= t_star; ++t) {
    for (int i = 0; i < n; ++i) {
      m.add_variable(0.0, lp::kInfinity, t == t_star ? payoff(k[i]) : 0.0);
    }
  }
  for (int t = 1; t < t_star; ++t) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) m.add_variable(0.0, lp::kInfinity, 0.0);
    }
  }

  std::vector<std::pair<int, double>> terms;
  for (int i = 0; i < n; ++i) terms.emplace_back(out.marginal(1, i), 1.0);
  m.add_row(terms, lp::Relation::kEqual, 1.0, "mass");

  for (int t = 1; t < t_star; ++t) {
    for (int a = 0; a < n; ++a) {
      terms.clear();
      for (int b = 0; b < n; ++b) terms.emplace_back(out.pair(t, a, b), 1.0);
      terms.emplace_back(out.marginal(t, a), -1.0);
      m.add_row(terms, lp::Relation::kEqual, 0.0);
      terms.clear();
      for (int b = 0; b < n; ++b) terms.emplace_back(out.pair(t, b, a), 1.0);
      terms.emplace_back(out.marginal(t + 1, a), -1.0);
      m.add_row(terms, lp::Relation::kEqual, 0.0);
      terms.clear();
      for (int b = 0; b < n; ++b) {
        if (b != a) terms.emplace_back(out.pair(t, a, b), k[b] - k[a]);
      }
      m.add_row(terms, lp::Relation::kEqual, 0.0);
    }
  }

  auto call_row = [&](int t, double strike, lp::Relation rel, double price) {
    terms.clear();
    for (int i = 0; i < n; ++i) {
      if (k[i] > strike) terms.emplace_back(out.marginal(t, i), k[i] - strike);
    }
    m.add_row(terms, rel, price);
  };
  const double x0 = surface.spot(asset);
  for (int t = 1; t <= t_star; ++t) call_row(t, 0.0, lp::Relation::kEqual, x0);
  for (const Quote& q : surface.quotes()) {
    if (q.asset != asset || q.maturity > t_star || q.strike == 0.0) continue;
    call_row(q.maturity, q.strike, lp::Relation::kEqual, q.price);
  }
  for (const QuotedInstrument& q : instruments) {
    terms.clear();
    for (int i = 0; i < n; ++i) terms.emplace_back(out.marginal(q.maturity, i), q.payoff(k[i]));
    m.add_row(terms, lp::Relation::kEqual, q.price);
  }
  for (const StrikePrice& f : future_vertices_unchecked(surface, asset, t_star)) {
    call_row(t_star, f.strike, lp::Relation::kLessEqual, f.price);
  }
  return out;
}

double default_support_bound_1d(const NormalizedSurface& surface,
                                const std::string& asset, const Payoff1D& payoff,
                                const std::vector<QuotedInstrument>& instruments) {
  double m = std::max(surface.spot(asset), witness_support_bound(surface, asset));
  for (const Quote& q : surface.quotes()) {
    if (q.asset == asset) m = std::max(m, q.strike);
  }
  for (double x : payoff.kinks()) m = std::max(m, x);
  for (const QuotedInstrument& q : instruments) {
    for (double x : q.payoff.kinks()) m = std::max(m, x);
  }
  return 2.0 * m;
}

Bounds1D bound_payoff_1d(const NormalizedSurface& surface, const std::string& asset,
                         int t_star, const Payoff1D& payoff,
                         const Bounds1DOptions& options) {
  if (t_star < 1) throw Error(ErrorCode::kInvalidInput, "target maturity must be >= 1");
  const NormalizedSurface data =
      options.target_maturity_only ? surface.only_maturity(t_star) : surface;
  const ArbitrageReport report = check_no_arbitrage(data, asset, options.tol);
  if (!report.consistent()) {
    throw Error(ErrorCode::kArbitragePresent,
                "quotes admit arbitrage: " + report.violations.front().detail);
  }
  check_instruments(options.instruments, t_star);
  const double L = options.support_bound.value_or(
      default_support_bound_1d(data, asset, payoff, options.instruments));
  const BreakpointSet grid =
      breakpoint_set(data, asset, t_star, payoff, L, options.instruments);

  Bounds1D result;
  for (const lp::Sense sense : {lp::Sense::kMinimize, lp::Sense::kMaximize}) {
    const Lp1D program =
        build_lp_1d(data, asset, t_star, payoff, grid, sense, options.instruments);
    const lp::LpSolution sol = lp::solve(program.model, options.solver);
    if (sol.status != lp::Status::kOptimal) {
      if (!options.instruments.empty()) {
        throw Error(ErrorCode::kInfeasible,
                    "quoted instruments admit no martingale on the grid");
      }
      throw Error(ErrorCode::kInfeasibleDespiteCheck,
                  "bound program is " + std::string(lp::status_name(sol.status)) +
                      " although the quotes passed the arbitrage check");
    }
    Diagnostics diag{program.model.num_variables(), program.model.num_constraints(),
                     program.model.num_nonzeros(), sol.iterations, sol.max_residual, L};
    Witness1D witness = extract_witness(program, grid.points, sol.values);
    if (sense == lp::Sense::kMinimize) {
      result.lower = sol.objective;
      result.witness_lower = std::move(witness);
      result.diagnostics_lower = diag;
    } else {
      result.upper = sol.objective;
      result.witness_upper = std::move(witness);
      result.diagnostics_upper = diag;
    }
  }
  return result;
}

std::vector<Bounds1D> bound_convergence_in_L(const NormalizedSurface& surface,
                                             const std::string& asset, int t_star,
                                             const Payoff1D& payoff,
                                             const std::vector<double>& schedule,
                                             const Bounds1DOptions& options) {
  std::vector<Bounds1D> out;
  double previous = -lp::kInfinity;
  for (double L : schedule) {
    if (!(L > previous)) {
      throw Error(ErrorCode::kInvalidInput, "support schedule must be increasing");
    }
    previous = L;
    Bounds1DOptions o = options;
    o.support_bound = L;
    out.push_back(bound_payoff_1d(surface, asset, t_star, payoff, o));
  }
  return out;
}

}  // namespace mbounds
