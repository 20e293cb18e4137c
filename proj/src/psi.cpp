#include "mbounds/psi.hpp"

#include <algorithm>
#include <cmath>

#include "mbounds/error.hpp"

namespace mbounds {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kShapeTol = 1e-10;

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) {
  if (atoms.empty()) {
    throw Error(ErrorCode::kInvalidDistribution, "distribution has no atoms");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (!(a.location >= 0.0) || !std::isfinite(a.location)) {
      throw Error(ErrorCode::kInvalidDistribution,
                  "atom location must be finite and nonnegative");
    }
    if (!(a.weight > 0.0) || a.weight > 1.0 + kMergeTol) {
      throw Error(ErrorCode::kInvalidDistribution,
                  "atom weight must lie in (0, 1]");
    }
    if (!atoms_.empty() && a.location == atoms_.back().location) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(a);
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kMergeTol) {
    throw Error(ErrorCode::kInvalidDistribution, "weights do not sum to 1");
  }
}

double DiscreteDistribution::mean() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.weight * a.location;
  return m;
}

double DiscreteDistribution::call(double strike) const {
  double v = 0.0;
  for (const Atom& a : atoms_) {
    if (a.location > strike) v += a.weight * (a.location - strike);
  }
  return v;
}

PsiFunction::PsiFunction(std::vector<std::pair<double, double>> breakpoints,
                         double terminal_slope)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) {
    throw Error(ErrorCode::kInvalidPsi, "psi function needs breakpoints");
  }
  slopes_.reserve(breakpoints_.size());
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    const double dx = breakpoints_[i + 1].first - breakpoints_[i].first;
    if (!(dx > 0.0)) {
      throw Error(ErrorCode::kInvalidPsi,
                  "psi breakpoints must be strictly increasing");
    }
    slopes_.push_back((breakpoints_[i + 1].second - breakpoints_[i].second) / dx);
  }
  slopes_.push_back(terminal_slope);
}

PsiFunction::PsiFunction(std::vector<std::pair<double, double>> breakpoints,
                         std::vector<double> slopes)
    : breakpoints_(std::move(breakpoints)), slopes_(std::move(slopes)) {
  if (breakpoints_.empty() || slopes_.size() != breakpoints_.size()) {
    throw Error(ErrorCode::kInvalidPsi,
                "psi function needs one slope per breakpoint");
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i + 1].first > breakpoints_[i].first)) {
      throw Error(ErrorCode::kInvalidPsi,
                  "psi breakpoints must be strictly increasing");
    }
  }
}

double PsiFunction::operator()(double x) const {
  if (breakpoints_.empty()) return 0.0;
  if (x <= breakpoints_.front().first) {
    return breakpoints_.front().second +
           slopes_.front() * (x - breakpoints_.front().first);
  }
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), x,
      [](double v, const std::pair<double, double>& b) { return v < b.first; });
  const std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return breakpoints_[i].second + slopes_[i] * (x - breakpoints_[i].first);
}

double PsiFunction::right_derivative(double t) const {
  if (breakpoints_.empty()) return 0.0;
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), t,
      [](double v, const std::pair<double, double>& b) { return v < b.first; });
  if (it == breakpoints_.begin()) return slopes_.front();
  return slopes_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double right_derivative(const PsiFunction& psi, double t) {
  return psi.right_derivative(t);
}

PsiFunction psi_of_distribution(const DiscreteDistribution& d) {
  const auto& atoms = d.atoms();
  std::vector<double> xs;
  xs.reserve(atoms.size() + 1);
  if (atoms.empty() || atoms.front().location > 0.0) xs.push_back(0.0);
  for (const Atom& a : atoms) xs.push_back(a.location);

  std::vector<std::pair<double, double>> breakpoints;
  std::vector<double> slopes(xs.size(), 0.0);
  breakpoints.reserve(xs.size());
  for (double x : xs) breakpoints.emplace_back(x, d.call(x));
  // Slope right of xs[i] is minus the mass strictly above it.
  double tail = 0.0;
  std::size_t a = atoms.size();
  for (std::size_t i = xs.size(); i-- > 0;) {
    while (a > 0 && atoms[a - 1].location > xs[i]) tail += atoms[--a].weight;
    slopes[i] = std::max(-1.0, -tail);
  }
  return PsiFunction(std::move(breakpoints), std::move(slopes));
}

DiscreteDistribution distribution_of_psi(const PsiFunction& psi) {
  const auto& bp = psi.breakpoints();
  const auto& slopes = psi.slopes();
  if (bp.empty() || std::abs(bp.front().first) > kMergeTol) {
    throw Error(ErrorCode::kInvalidPsi, "psi must start at x = 0");
  }
  // Merge breakpoints closer than the tie tolerance; the later slope wins.
  std::vector<double> xs{0.0};
  std::vector<double> ss{slopes.front()};
  for (std::size_t i = 1; i < bp.size(); ++i) {
    if (bp[i].first - xs.back() <= kMergeTol) {
      ss.back() = slopes[i];
    } else {
      xs.push_back(bp[i].first);
      ss.push_back(slopes[i]);
    }
  }
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (ss[i] > kShapeTol) {
      throw Error(ErrorCode::kInvalidPsi, "psi must be nonincreasing");
    }
    if (ss[i] < -1.0 - kShapeTol) {
      throw Error(ErrorCode::kInvalidPsi, "psi slope below -1");
    }
    if (i > 0 && ss[i] < ss[i - 1] - kShapeTol) {
      throw Error(ErrorCode::kInvalidPsi, "psi must be convex");
    }
  }
  if (std::abs(ss.back()) > kShapeTol ||
      std::abs(psi(xs.back())) > kShapeTol * std::max(1.0, psi(0.0))) {
    throw Error(ErrorCode::kInvalidPsi, "psi must vanish eventually");
  }

  std::vector<Atom> atoms;
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double before = i == 0 ? -1.0 : ss[i - 1];
    const double jump = ss[i] - before;
    if (jump < kMergeTol) continue;
    atoms.push_back({xs[i], jump});
    total += jump;
  }
  if (atoms.empty()) {
    throw Error(ErrorCode::kInvalidPsi, "psi carries no mass");
  }
  for (Atom& a : atoms) a.weight /= total;
  return DiscreteDistribution(std::move(atoms));
}

MonotonicityResult check_nondecreasing(const std::vector<PsiFunction>& psis,
                                       double tol) {
  MonotonicityResult result;
  if (psis.size() < 2) return result;
  const double base = psis.front()(0.0);
  for (const PsiFunction& p : psis) {
    if (std::abs(p(0.0) - base) > tol) {
      throw Error(ErrorCode::kMeanMismatch, "psi values at 0 differ");
    }
  }
  std::vector<double> xs;
  for (const PsiFunction& p : psis) {
    for (const auto& b : p.breakpoints()) xs.push_back(b.first);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  // One probe past the last breakpoint covers the terminal slopes.
  xs.push_back(xs.back() + 1.0);
  for (double x : xs) {
    for (std::size_t i = 0; i + 1 < psis.size(); ++i) {
      if (psis[i](x) > psis[i + 1](x) + tol) {
        result.nondecreasing = false;
        result.first_violation = std::make_pair(i, x);
        return result;
      }
    }
  }
  return result;
}

}  // namespace mbounds
