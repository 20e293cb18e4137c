#include "mbounds/payoff.hpp"

#include <algorithm>
#include <cmath>

#include "mbounds/error.hpp"

namespace mbounds {

namespace {

constexpr double kSideTol = 1e-12;

int side(const Line& l, double x, double y) {
  const double v = l.a * x + l.b * y - l.c;
  const double scale = 1.0 + std::abs(l.c) + std::abs(l.a * x) + std::abs(l.b * y);
  if (std::abs(v) <= kSideTol * scale) return 0;
  return v > 0.0 ? 1 : -1;
}

}  // namespace

Payoff1D::Payoff1D(std::vector<std::pair<double, double>> breakpoints,
                   double terminal_slope)
    : breakpoints_(std::move(breakpoints)), terminal_slope_(terminal_slope) {
  if (breakpoints_.empty()) {
    throw Error(ErrorCode::kInvalidInput, "payoff needs at least one breakpoint");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const auto [x, v] = breakpoints_[i];
    if (!std::isfinite(x) || !std::isfinite(v) || x < 0.0) {
      throw Error(ErrorCode::kInvalidInput,
                  "payoff breakpoints must be finite with x >= 0");
    }
    if (i > 0 && !(x > breakpoints_[i - 1].first)) {
      throw Error(ErrorCode::kInvalidInput,
                  "payoff breakpoints must be strictly increasing");
    }
  }
  if (!std::isfinite(terminal_slope_)) {
    throw Error(ErrorCode::kInvalidInput, "payoff terminal slope must be finite");
  }
}

Payoff1D Payoff1D::call(double strike) {
  if (strike <= 0.0) return Payoff1D({{0.0, -strike}}, 1.0);
  return Payoff1D({{0.0, 0.0}, {strike, 0.0}}, 1.0);
}

Payoff1D Payoff1D::put(double strike) {
  if (strike <= 0.0) return Payoff1D({{0.0, 0.0}}, 0.0);
  return Payoff1D({{0.0, strike}, {strike, 0.0}}, 0.0);
}

Payoff1D Payoff1D::linear(double intercept, double slope) {
  return Payoff1D({{0.0, intercept}}, slope);
}

double Payoff1D::operator()(double x) const {
  const auto& bp = breakpoints_;
  if (x >= bp.back().first) return bp.back().second + terminal_slope_ * (x - bp.back().first);
  if (bp.size() == 1) return bp[0].second + terminal_slope_ * (x - bp[0].first);
  if (x <= bp.front().first) {
    const double s = (bp[1].second - bp[0].second) / (bp[1].first - bp[0].first);
    return bp[0].second + s * (x - bp[0].first);
  }
  auto it = std::upper_bound(bp.begin(), bp.end(), x,
                             [](double v, const auto& b) { return v < b.first; });
  const auto& a = *(it - 1);
  const auto& b = *it;
  return a.second + (b.second - a.second) * (x - a.first) / (b.first - a.first);
}

std::vector<double> Payoff1D::kinks() const {
  std::vector<double> slopes;
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    slopes.push_back((breakpoints_[i + 1].second - breakpoints_[i].second) /
                     (breakpoints_[i + 1].first - breakpoints_[i].first));
  }
  slopes.push_back(terminal_slope_);
  std::vector<double> out;
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    const double scale = 1.0 + std::abs(slopes[i]) + std::abs(slopes[i - 1]);
    if (std::abs(slopes[i] - slopes[i - 1]) > 1e-12 * scale) {
      out.push_back(breakpoints_[i].first);
    }
  }
  return out;
}

double Payoff1D::lipschitz() const {
  double m = std::abs(terminal_slope_);
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    m = std::max(m, std::abs((breakpoints_[i + 1].second - breakpoints_[i].second) /
                             (breakpoints_[i + 1].first - breakpoints_[i].first)));
  }
  return m;
}

Payoff2D Payoff2D::canonical(double alpha, double beta, double k) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(k) ||
      alpha < 0.0 || beta < 0.0) {
    throw Error(ErrorCode::kInvalidInput,
                "canonical payoff needs finite alpha, beta >= 0 and finite k");
  }
  Payoff2D p;
  p.canonical_ = true;
  p.alpha_ = alpha;
  p.beta_ = beta;
  p.k_ = k;
  if (alpha != 0.0 || beta != 0.0) p.lines_.push_back({alpha, beta, k});
  return p;
}

Payoff2D Payoff2D::general(std::vector<Line> lines, std::vector<AffinePiece> pieces) {
  if (pieces.empty()) {
    throw Error(ErrorCode::kInvalidInput, "payoff needs at least one piece");
  }
  for (const Line& l : lines) {
    if (!std::isfinite(l.a) || !std::isfinite(l.b) || !std::isfinite(l.c) ||
        (l.a == 0.0 && l.b == 0.0)) {
      throw Error(ErrorCode::kInvalidInput, "payoff line is degenerate");
    }
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (const Line& l : lines) {
      if (side(l, pieces[i].sample[0], pieces[i].sample[1]) == 0) {
        throw Error(ErrorCode::kInvalidInput, "piece sample lies on a payoff line");
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      bool same = true;
      for (const Line& l : lines) {
        if (side(l, pieces[i].sample[0], pieces[i].sample[1]) !=
            side(l, pieces[j].sample[0], pieces[j].sample[1])) {
          same = false;
        }
      }
      if (same) throw Error(ErrorCode::kInvalidInput, "two pieces share a cell");
    }
  }
  Payoff2D p;
  p.canonical_ = false;
  p.lines_ = std::move(lines);
  p.pieces_ = std::move(pieces);
  return p;
}

double Payoff2D::operator()(double x, double y) const {
  if (canonical_) return std::max(0.0, alpha_ * x + beta_ * y - k_);
  for (const AffinePiece& piece : pieces_) {
    bool match = true;
    for (const Line& l : lines_) {
      const int s = side(l, x, y);
      if (s != 0 && s != side(l, piece.sample[0], piece.sample[1])) {
        match = false;
        break;
      }
    }
    if (match) return piece.c0 + piece.cx * x + piece.cy * y;
  }
  throw Error(ErrorCode::kInvalidInput, "payoff has no piece covering the point");
}

double Payoff2D::lattice_lipschitz() const {
  if (canonical_) return alpha_ + beta_;
  double m = 0.0;
  for (const AffinePiece& p : pieces_) m = std::max(m, std::hypot(p.cx, p.cy));
  return std::sqrt(2.0) * m;
}

}  // namespace mbounds
