#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mbounds/lp.hpp"
#include "mbounds/payoff.hpp"
#include "mbounds/psi.hpp"
#include "mbounds/quotes.hpp"
#include "mbounds/result.hpp"

namespace mbounds {

/// Quoted instrument with a general piecewise-linear payoff.
struct QuotedInstrument {
  int maturity = 1;
  Payoff1D payoff;
  double price = 0.0;
};

struct Bounds1DOptions {
  std::optional<double> support_bound;  // L; default derived from the data
  double tol = 1e-9;                    // data tolerance of the arbitrage check
  bool target_maturity_only = false;    // drop quotes of other maturities
  std::vector<QuotedInstrument> instruments;  // maturities <= t*
  lp::SolverOptions solver;
};

struct BreakpointSet {
  std::vector<double> points;  // sorted, contains 0 and L
  std::size_t size() const { return points.size(); }
};

/// Markov martingale on the breakpoint grid.
struct Witness1D {
  struct Transition {
    int t;  // from t to t + 1
    int from;
    int to;
    double weight;
  };
  std::vector<double> grid;
  std::vector<std::vector<double>> marginals;  // [t - 1][n]
  std::vector<Transition> transitions;         // weights above 1e-12

  /// Marginal at t with tiny or negative weights removed and renormalized.
  DiscreteDistribution marginal(int t) const;
};

/// Program with its variable layout: marginal (t, n) at (t - 1) N + n and
/// pair (t, n1, n2) at t* N + (t - 1) N^2 + n1 N + n2.
struct Lp1D {
  lp::LpModel model;
  int t_star = 1;
  int n = 0;
  int marginal(int t, int node) const { return (t - 1) * n + node; }
  int pair(int t, int from, int to) const {
    return t_star * n + (t - 1) * n * n + from * n + to;
  }
};

BreakpointSet breakpoint_set(const NormalizedSurface& surface, const std::string& asset,
                             int t_star, const Payoff1D& payoff, double L,
                             const std::vector<QuotedInstrument>& instruments = {});

Lp1D build_lp_1d(const NormalizedSurface& surface, const std::string& asset, int t_star,
                 const Payoff1D& payoff, const BreakpointSet& grid, lp::Sense sense,
                 const std::vector<QuotedInstrument>& instruments = {});

/// Default truncation 2 max(witness bound, strikes, payoff kinks, X_0).
double default_support_bound_1d(const NormalizedSurface& surface,
                                const std::string& asset, const Payoff1D& payoff,
                                const std::vector<QuotedInstrument>& instruments = {});

using Bounds1D = BoundsResult<Witness1D>;

/// Lowest and highest E[g(X_{t*})] over martingales matching the quotes.
/// Throws ArbitragePresent, SupportBoundTooSmall, InfeasibleDespiteCheck.
Bounds1D bound_payoff_1d(const NormalizedSurface& surface, const std::string& asset,
                         int t_star, const Payoff1D& payoff,
                         const Bounds1DOptions& options = {});

std::vector<Bounds1D> bound_convergence_in_L(const NormalizedSurface& surface,
                                             const std::string& asset, int t_star,
                                             const Payoff1D& payoff,
                                             const std::vector<double>& schedule,
                                             const Bounds1DOptions& options = {});

}  // namespace mbounds
