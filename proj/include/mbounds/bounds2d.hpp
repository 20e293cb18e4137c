#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mbounds/lp.hpp"
#include "mbounds/payoff.hpp"
#include "mbounds/quotes.hpp"
#include "mbounds/result.hpp"

namespace mbounds {

using Point2 = std::array<double, 2>;

struct Segment {
  Point2 a;
  Point2 b;
};

/// Closed convex cell of a graph, corners counter-clockwise.
struct Region {
  std::vector<Point2> polygon;
  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;  // bounding box
  bool rectangular = true;
};

/// Planar subdivision of [0, L]^2 by axis-parallel and oblique lines.
struct Graph {
  double L = 0.0;
  std::vector<double> x_lines;  // sorted, include 0 and L
  std::vector<double> y_lines;
  std::vector<Line> oblique;    // normalized to a^2 + b^2 = 1
  std::vector<Point2> vertices; // lexicographic
  std::vector<Region> regions;  // lexicographic by centroid

  /// Smallest index of a closed region containing p, -1 outside the box.
  int region_of(const Point2& p) const;
  /// Index of the vertex within tol of p, -1 if none.
  int vertex_index(const Point2& p) const;
  /// Every line clipped to the box.
  std::vector<Segment> edges() const;
};

/// Graphs G_1 .. G_{t*}; G_t for t < t* uses the strikes quoted at t, G_{t*}
/// adds future hull strikes and the payoff lines.
struct GraphSpec {
  double L = 0.0;
  std::vector<Graph> graphs;
  int t_star() const { return static_cast<int>(graphs.size()); }
  const Graph& at(int t) const { return graphs.at(static_cast<std::size_t>(t - 1)); }
  std::vector<Segment> all_edges() const;
};

/// Throws ArbitragePresent, UnknownAsset, SupportBoundTooSmall.
GraphSpec build_graphs(const NormalizedSurface& surface, const std::string& asset_x,
                       const std::string& asset_y, int t_star, const Payoff2D& payoff,
                       double L, double tol = 1e-9);

struct Bounds2DOptions {
  std::optional<double> support_bound;
  double tol = 1e-9;
  bool target_maturity_only = false;
  double variable_budget = 2e6;  // LP columns, exact and lattice programs
  bool restricted_lattice = false;
  bool parallel = true;          // min and max on separate threads
  lp::SolverOptions solver;
};

/// Region path with its atom. Paths of probability <= 1e-12 are dropped.
struct PathAtom {
  std::vector<int> regions;  // r_1 .. r_t
  double probability = 0.0;
  Point2 atom{};
};

struct TerminalMass {
  std::vector<int> regions;  // r_1 .. r_{t*-1}
  int vertex = 0;
  Point2 point{};
  double probability = 0.0;
};

struct Witness2D {
  std::vector<std::vector<PathAtom>> levels;  // [t - 1] for t < t*
  std::vector<TerminalMass> terminal;
};

/// Path-indexed program with its column layout.
struct Lp2DExact {
  lp::LpModel model;
  int t_star = 1;
  std::vector<int> region_counts;       // |R_t| for t < t*
  std::vector<std::size_t> level_offset;  // first column of level t (3 per path)
  std::size_t terminal_offset = 0;
  int vertex_count = 0;
  std::size_t paths(int t) const;  // paths through levels 1..t
};

/// Columns of the path program, computed without building it.
double exact_variable_count(const GraphSpec& graphs);

Lp2DExact build_lp_2d_exact(const NormalizedSurface& surface, const std::string& asset_x,
                            const std::string& asset_y, const GraphSpec& graphs,
                            const Payoff2D& payoff, lp::Sense sense);

double default_support_bound_2d(const NormalizedSurface& surface,
                                const std::string& asset_x, const std::string& asset_y);

using Bounds2D = BoundsResult<Witness2D>;

/// Exact bounds on E[g(X_{t*}, Y_{t*})]. Throws ArbitragePresent,
/// PathBudgetExceeded, SupportBoundTooSmall, InfeasibleDespiteCheck.
Bounds2D bound_payoff_2d_exact(const NormalizedSurface& surface,
                               const std::string& asset_x, const std::string& asset_y,
                               int t_star, const Payoff2D& payoff,
                               const Bounds2DOptions& options = {});

/// Node sets per time: the eps lattice on [0, L + (t - 1) eps]^2, or its
/// nodes within Chebyshev distance t eps of some edge when restricted.
struct LatticeSpec {
  double eps = 0.0;
  double L = 0.0;
  bool restricted = false;
  std::vector<std::vector<Point2>> nodes;  // [t - 1], x-major
  std::size_t total_nodes() const;
};

LatticeSpec build_lattice(double L, double eps, int t_star, bool restricted = false,
                          const std::vector<Segment>& edges = {});
LatticeSpec build_lattice(const GraphSpec& graphs, double eps, bool restricted);

double lattice_variable_count(const LatticeSpec& lattice);

/// Markov martingale on lattice nodes.
struct WitnessLattice {
  struct Transition {
    int t;
    int from;
    int to;
    double weight;
  };
  std::vector<std::vector<Point2>> nodes;
  std::vector<std::vector<double>> marginals;  // [t - 1][n]
  std::vector<Transition> transitions;         // weights above 1e-12
};

struct Lp2DLattice {
  lp::LpModel model;
  std::vector<std::size_t> marginal_offset;  // [t - 1]
  std::vector<std::size_t> pair_offset;      // [t - 1] for t < t*
  std::vector<int> sizes;                    // |N_t|
};

Lp2DLattice build_lp_2d_lattice(const NormalizedSurface& surface,
                                const std::string& asset_x, const std::string& asset_y,
                                int t_star, const LatticeSpec& lattice,
                                const Payoff2D& payoff, lp::Sense sense);

using Bounds2DApprox = BoundsResult<WitnessLattice>;

/// Lattice bounds; within lattice_lipschitz * eps * t* of the exact ones.
/// Throws ArbitragePresent, NodeBudgetExceeded, SupportBoundTooSmall.
Bounds2DApprox bound_payoff_2d_approx(const NormalizedSurface& surface,
                                      const std::string& asset_x,
                                      const std::string& asset_y, int t_star,
                                      const Payoff2D& payoff, double eps,
                                      const Bounds2DOptions& options = {});

}  // namespace mbounds
