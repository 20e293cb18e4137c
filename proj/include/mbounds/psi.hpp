#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace mbounds {

struct Atom {
  double location;
  double weight;
};

/// Finite-support probability law on [0, inf).
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;

  /// Sorts atoms, merges equal locations and validates. Throws
  /// Error(kInvalidDistribution) on negative locations, weights outside
  /// (0, 1] or a total mass off 1 by more than 1e-12.
  explicit DiscreteDistribution(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double mean() const;

  /// E[(X - k)^+]
  double call(double strike) const;

 private:
  std::vector<Atom> atoms_;
};

/// Piecewise-linear function on [0, inf) given by breakpoints (x, value)
/// with the first at x = 0, and a slope used after the last breakpoint.
class PsiFunction {
 public:
  PsiFunction() = default;
  PsiFunction(std::vector<std::pair<double, double>> breakpoints,
              double terminal_slope);
  /// Explicit segment slopes, one per breakpoint (the last is the terminal
  /// slope). Avoids the rounding of recomputing slopes from values.
  PsiFunction(std::vector<std::pair<double, double>> breakpoints,
              std::vector<double> slopes);

  const std::vector<std::pair<double, double>>& breakpoints() const {
    return breakpoints_;
  }
  double terminal_slope() const { return slopes_.empty() ? 0.0 : slopes_.back(); }

  double operator()(double x) const;

  /// Slope of the segment immediately right of t.
  double right_derivative(double t) const;

  /// Slopes of the segments between breakpoints followed by the terminal
  /// slope; size equals breakpoints().size().
  const std::vector<double>& slopes() const { return slopes_; }

 private:
  std::vector<std::pair<double, double>> breakpoints_;
  std::vector<double> slopes_;
};

PsiFunction psi_of_distribution(const DiscreteDistribution& d);

double right_derivative(const PsiFunction& psi, double t);

/// Inverts the transform. Throws Error(kInvalidPsi) unless psi is convex,
/// nonincreasing, has slopes in [-1, 0] and vanishes eventually.
DiscreteDistribution distribution_of_psi(const PsiFunction& psi);

struct MonotonicityResult {
  bool nondecreasing = true;
  std::optional<std::pair<std::size_t, double>> first_violation;  // (index, x)
};

/// True iff psis[0] <= psis[1] <= ... everywhere; the violation index i
/// means psis[i] > psis[i + 1] at x. Throws Error(kMeanMismatch) when the
/// values at 0 disagree beyond tol.
MonotonicityResult check_nondecreasing(const std::vector<PsiFunction>& psis,
                                       double tol = 1e-9);

}  // namespace mbounds
