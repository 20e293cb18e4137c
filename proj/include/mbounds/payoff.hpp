#pragma once

#include <array>
#include <utility>
#include <vector>

namespace mbounds {

/// Continuous piecewise-linear payoff on [0, inf). Left of the first
/// breakpoint the first segment is extended; right of the last one the
/// terminal slope applies.
class Payoff1D {
 public:
  Payoff1D() = default;
  /// Throws InvalidInput unless breakpoints are nonempty, nonnegative and
  /// strictly increasing in x.
  Payoff1D(std::vector<std::pair<double, double>> breakpoints, double terminal_slope);

  static Payoff1D call(double strike);
  static Payoff1D put(double strike);
  static Payoff1D linear(double intercept, double slope);

  const std::vector<std::pair<double, double>>& breakpoints() const {
    return breakpoints_;
  }
  double terminal_slope() const { return terminal_slope_; }

  double operator()(double x) const;
  /// Points where the slope changes.
  std::vector<double> kinks() const;
  /// Largest absolute slope.
  double lipschitz() const;

 private:
  std::vector<std::pair<double, double>> breakpoints_;
  double terminal_slope_ = 0.0;
};

/// a*x + b*y = c
struct Line {
  double a;
  double b;
  double c;
};

/// Affine piece c0 + cx*x + cy*y valid on the cell containing `sample`.
struct AffinePiece {
  std::array<double, 2> sample;
  double c0;
  double cx;
  double cy;
};

/// Continuous piecewise-linear payoff on [0, inf)^2: either
/// (alpha*x + beta*y - k)^+ or affine pieces on the cells cut out by lines.
class Payoff2D {
 public:
  Payoff2D() = default;
  static Payoff2D canonical(double alpha, double beta, double k);
  /// Each piece applies where the sign pattern of a*x + b*y - c over all
  /// lines matches that of its sample point. Throws InvalidInput if a
  /// sample lies on a line or two pieces share a cell.
  static Payoff2D general(std::vector<Line> lines, std::vector<AffinePiece> pieces);

  bool is_canonical() const { return canonical_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double k() const { return k_; }
  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }

  double operator()(double x, double y) const;

  /// Constant c with |g(p) - g(q)| <= c * eps whenever p, q differ by at
  /// most eps per coordinate: alpha + beta for the canonical form and
  /// sqrt(2) times the largest gradient norm otherwise.
  double lattice_lipschitz() const;

 private:
  bool canonical_ = true;
  double alpha_ = 0.0, beta_ = 0.0, k_ = 0.0;
  std::vector<Line> lines_;
  std::vector<AffinePiece> pieces_;
};

}  // namespace mbounds
