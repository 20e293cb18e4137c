#pragma once

#include <string>
#include <vector>

#include "mbounds/psi.hpp"
#include "mbounds/quotes.hpp"

namespace mbounds {

struct EnvelopeVertex {
  double strike;
  double price;
  std::size_t source;  // index into the input points
};

/// Lower boundary of the convex hull of (strike, price) points closed by the
/// ideal points (0, +inf) and (+inf, 0): +inf left of the first vertex,
/// linear between vertices, flat at the last price to the right.
class LowerEnvelope {
 public:
  LowerEnvelope() = default;
  explicit LowerEnvelope(std::vector<EnvelopeVertex> vertices)
      : vertices_(std::move(vertices)) {}

  const std::vector<EnvelopeVertex>& vertices() const { return vertices_; }
  double operator()(double strike) const;
  /// Slopes between consecutive vertices (all negative).
  std::vector<double> slopes() const;

 private:
  std::vector<EnvelopeVertex> vertices_;
};

/// Throws Error(kEmptyInput) on an empty set.
LowerEnvelope lower_envelope(const std::vector<std::pair<double, double>>& points);

enum class ViolationKind { kIntrinsicViolation, kInteriorPoint };

struct Violation {
  ViolationKind kind;
  Quote quote;
  std::string detail;
};

struct ArbitrageReport {
  std::vector<Violation> violations;
  bool consistent() const { return violations.empty(); }
};

std::string_view violation_kind_name(ViolationKind kind);

/// Checks C >= X_0 - k for every quote and that no quote of maturity t lies
/// strictly above the envelope of the quotes of maturity >= t together with
/// (0, X_0). Throws UnknownAsset.
ArbitrageReport check_no_arbitrage(const NormalizedSurface& surface,
                                   const std::string& asset, double tol = 1e-9);

/// Envelope vertices of the quotes of maturity >= t_star and (0, X_0) that
/// come from maturities after t_star. Throws ArbitragePresent.
std::vector<StrikePrice> future_vertices(const NormalizedSurface& surface,
                                         const std::string& asset, int t_star,
                                         double tol = 1e-9);
/// Same without the consistency check.
std::vector<StrikePrice> future_vertices_unchecked(const NormalizedSurface& surface,
                                                   const std::string& asset,
                                                   int t_star);

struct WitnessEnvelopes {
  std::vector<PsiFunction> psis;  // one per maturity 1..n
  double support_bound = 0.0;     // largest zero of any psi
};

/// Nondecreasing transforms matching every quote. Throws ArbitragePresent.
WitnessEnvelopes witness_envelopes(const NormalizedSurface& surface,
                                   const std::string& asset, double tol = 1e-9);

/// Support bound of the witness construction, computed without checking
/// consistency; usable as a truncation hint on any surface.
double witness_support_bound(const NormalizedSurface& surface,
                             const std::string& asset);

}  // namespace mbounds
