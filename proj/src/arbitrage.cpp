#include "mbounds/arbitrage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "mbounds/error.hpp"

namespace mbounds {

namespace {

constexpr double kStrikeTol = 1e-12;

double cross(const EnvelopeVertex& o, const EnvelopeVertex& a,
             const EnvelopeVertex& b) {
  return (a.strike - o.strike) * (b.price - o.price) -
         (a.price - o.price) * (b.strike - o.strike);
}

// Quotes of maturity >= t preceded by the anchor (0, X_0) of maturity 0.
std::vector<StrikePrice> anchored_points(const NormalizedSurface& surface,
                                         const std::string& asset, int t) {
  std::vector<StrikePrice> pts = surface.slice_geq(asset, t);
  pts.insert(pts.begin(), StrikePrice{0.0, surface.spot(asset), 0});
  return pts;
}

LowerEnvelope envelope_of(const std::vector<StrikePrice>& pts) {
  std::vector<std::pair<double, double>> xy;
  xy.reserve(pts.size());
  for (const StrikePrice& p : pts) xy.emplace_back(p.strike, p.price);
  return lower_envelope(xy);
}

std::vector<LowerEnvelope> envelopes_by_maturity(const NormalizedSurface& surface,
                                                 const std::string& asset) {
  std::vector<LowerEnvelope> out;
  for (int t = 1; t <= std::max(1, surface.maturity_count()); ++t) {
    out.push_back(envelope_of(anchored_points(surface, asset, t)));
  }
  return out;
}

struct Extension {
  std::vector<PsiFunction> psis;
  double support_bound = 0.0;
};

Extension extend(const std::vector<LowerEnvelope>& envelopes) {
  double s_star = -std::numeric_limits<double>::infinity();
  for (const LowerEnvelope& env : envelopes) {
    for (double s : env.slopes()) s_star = std::max(s_star, s);
  }
  if (!std::isfinite(s_star)) s_star = -1.0;

  Extension out;
  for (const LowerEnvelope& env : envelopes) {
    std::vector<std::pair<double, double>> bp;
    for (const EnvelopeVertex& v : env.vertices()) bp.emplace_back(v.strike, v.price);
    const auto [k_last, c_last] = bp.back();
    double zero = k_last;
    if (c_last > 0.0) {
      zero = k_last + c_last / -s_star;
      bp.emplace_back(zero, 0.0);
    }
    out.support_bound = std::max(out.support_bound, zero);
    out.psis.emplace_back(std::move(bp), 0.0);
  }
  return out;
}

void require_consistent(const NormalizedSurface& surface, const std::string& asset,
                        double tol) {
  const ArbitrageReport report = check_no_arbitrage(surface, asset, tol);
  if (!report.consistent()) {
    throw Error(ErrorCode::kArbitragePresent,
                "quotes for '" + asset + "' admit arbitrage: " +
                    report.violations.front().detail);
  }
}

}  // namespace

double LowerEnvelope::operator()(double strike) const {
  if (vertices_.empty() || strike < vertices_.front().strike - kStrikeTol) {
    return std::numeric_limits<double>::infinity();
  }
  if (strike >= vertices_.back().strike) return vertices_.back().price;
  auto it = std::upper_bound(
      vertices_.begin(), vertices_.end(), strike,
      [](double k, const EnvelopeVertex& v) { return k < v.strike; });
  if (it == vertices_.begin()) return vertices_.front().price;
  const EnvelopeVertex& a = *(it - 1);
  const EnvelopeVertex& b = *it;
  return a.price + (b.price - a.price) * (strike - a.strike) / (b.strike - a.strike);
}

std::vector<double> LowerEnvelope::slopes() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    out.push_back((vertices_[i + 1].price - vertices_[i].price) /
                  (vertices_[i + 1].strike - vertices_[i].strike));
  }
  return out;
}

LowerEnvelope lower_envelope(const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) {
    throw Error(ErrorCode::kEmptyInput, "envelope of an empty point set");
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(points[a].first, points[a].second, a) <
           std::tie(points[b].first, points[b].second, b);
  });
  std::vector<EnvelopeVertex> hull;
  for (std::size_t idx : order) {
    const EnvelopeVertex p{points[idx].first, points[idx].second, idx};
    if (!hull.empty() && hull.back().strike == p.strike) continue;
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  // Keep the strictly decreasing part; the flat extension covers the rest.
  std::size_t keep = 1;
  while (keep < hull.size() && hull[keep].price < hull[keep - 1].price) ++keep;
  hull.resize(keep);
  return LowerEnvelope(std::move(hull));
}

std::string_view violation_kind_name(ViolationKind kind) {
  return kind == ViolationKind::kIntrinsicViolation ? "IntrinsicViolation"
                                                    : "InteriorPoint";
}

ArbitrageReport check_no_arbitrage(const NormalizedSurface& surface,
                                   const std::string& asset, double tol) {
  const double x0 = surface.spot(asset);
  const std::vector<LowerEnvelope> envelopes = envelopes_by_maturity(surface, asset);
  ArbitrageReport report;
  for (const Quote& q : surface.quotes()) {
    if (q.asset != asset) continue;
    if (q.price < x0 - q.strike - tol) {
      std::ostringstream msg;
      msg << "price " << q.price << " below intrinsic value " << x0 - q.strike
          << " at strike " << q.strike << ", maturity " << q.maturity;
      report.violations.push_back({ViolationKind::kIntrinsicViolation, q, msg.str()});
    }
    const LowerEnvelope& env = envelopes[static_cast<std::size_t>(q.maturity - 1)];
    const double bound = env(q.strike);
    const EnvelopeVertex& last = env.vertices().back();
    if (q.price > bound + tol) {
      std::ostringstream msg;
      msg << "price " << q.price << " at strike " << q.strike << ", maturity "
          << q.maturity << " exceeds the envelope value " << bound
          << " of later quotes";
      report.violations.push_back({ViolationKind::kInteriorPoint, q, msg.str()});
    } else if (q.strike > last.strike + kStrikeTol && q.price > tol) {
      std::ostringstream msg;
      msg << "positive price " << q.price << " at strike " << q.strike
          << ", maturity " << q.maturity << " right of the envelope minimum at "
          << last.strike;
      report.violations.push_back({ViolationKind::kInteriorPoint, q, msg.str()});
    }
  }
  return report;
}

std::vector<StrikePrice> future_vertices_unchecked(const NormalizedSurface& surface,
                                                   const std::string& asset,
                                                   int t_star) {
  const std::vector<StrikePrice> pts = anchored_points(surface, asset, t_star);
  const LowerEnvelope env = envelope_of(pts);
  std::vector<StrikePrice> out;
  for (const EnvelopeVertex& v : env.vertices()) {
    const StrikePrice& p = pts[v.source];
    if (p.maturity > t_star) out.push_back(p);
  }
  return out;
}

std::vector<StrikePrice> future_vertices(const NormalizedSurface& surface,
                                         const std::string& asset, int t_star,
                                         double tol) {
  require_consistent(surface, asset, tol);
  return future_vertices_unchecked(surface, asset, t_star);
}

WitnessEnvelopes witness_envelopes(const NormalizedSurface& surface,
                                   const std::string& asset, double tol) {
  require_consistent(surface, asset, tol);
  Extension ext = extend(envelopes_by_maturity(surface, asset));
  return {std::move(ext.psis), ext.support_bound};
}

double witness_support_bound(const NormalizedSurface& surface,
                             const std::string& asset) {
  return extend(envelopes_by_maturity(surface, asset)).support_bound;
}

}  // namespace mbounds
