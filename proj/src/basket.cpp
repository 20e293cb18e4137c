#include "mbounds/basket.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mbounds/error.hpp"

namespace mbounds {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kWitnessTol = 1e-12;

struct Hyperplane {
  std::vector<double> normal;
  double offset;
};

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// Solves the n x n system given by the selected hyperplanes; false when a
// pivot falls below the threshold.
bool solve_subset(const std::vector<Hyperplane>& planes, const std::vector<int>& pick,
                  int n, std::vector<double>& x) {
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  std::vector<double> b(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    const Hyperplane& h = planes[pick[r]];
    double scale = 0.0;
    for (double v : h.normal) scale = std::max(scale, std::abs(v));
    for (int c = 0; c < n; ++c) a[r * n + c] = h.normal[c] / scale;
    b[r] = h.offset / scale;
  }
  for (int col = 0; col < n; ++col) {
    int best = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[best * n + col])) best = r;
    }
    if (std::abs(a[best * n + col]) < kPivotTol) return false;
    if (best != col) {
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[best * n + c]);
      std::swap(b[col], b[best]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  x.assign(static_cast<std::size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
    x[r] = s / a[r * n + r];
  }
  return true;
}

// Box hyperplanes follow the given ones: x_h = 0 then x_h = L.
VertexSet arrangement_vertices(std::vector<Hyperplane> planes, int n, double L,
                               const BasketLimits& limits) {
  for (int h = 0; h < n; ++h) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e[h] = 1.0;
    planes.push_back({e, 0.0});
  }
  for (int h = 0; h < n; ++h) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e[h] = 1.0;
    planes.push_back({e, L});
  }
  const int total = static_cast<int>(planes.size());
  if (binomial(total, n) > static_cast<double>(limits.max_subsets)) {
    throw Error(ErrorCode::kDimensionLimitExceeded,
                "too many hyperplane subsets to enumerate");
  }

  const double tol = 1e-9 * std::max(1.0, L);
  struct Candidate {
    std::vector<double> point;
    long long subset;
    std::vector<int> pick;
  };
  std::vector<Candidate> found;
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<double> x;
  long long subset = 0;
  while (true) {
    bool usable = true;
    for (int r = 0; r < n; ++r) {
      if (std::all_of(planes[pick[r]].normal.begin(), planes[pick[r]].normal.end(),
                      [](double v) { return v == 0.0; })) {
        usable = false;
      }
    }
    if (usable && solve_subset(planes, pick, n, x)) {
      bool inside = true;
      for (double& v : x) {
        if (v < -tol || v > L + tol) {
          inside = false;
          break;
        }
        // Snap to the box faces; also clears negative zeros.
        if (v < tol) v = 0.0;
        if (v > L - tol) v = L;
      }
      if (inside) found.push_back({x, subset, pick});
    }
    ++subset;
    int i = n - 1;
    while (i >= 0 && pick[i] == total - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }

  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return a.point < b.point;
  });
  std::vector<Candidate> kept;
  for (Candidate& c : found) {
    bool merged = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if (c.point[0] - it->point[0] > tol) break;
      double dist = 0.0;
      for (int h = 0; h < n; ++h) dist = std::max(dist, std::abs(c.point[h] - it->point[h]));
      if (dist <= tol) {
        if (c.subset < it->subset) {
          it->subset = c.subset;
          it->pick = c.pick;
        }
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(std::move(c));
  }
  VertexSet out;
  for (Candidate& c : kept) {
    out.points.push_back(std::move(c.point));
    out.provenance.push_back(std::move(c.pick));
  }
  return out;
}

std::vector<Hyperplane> constraint_planes(const BasketInstance& instance) {
  std::vector<Hyperplane> planes;
  for (const BasketConstraint& c : instance.constraints) planes.push_back({c.weights, c.strike});
  return planes;
}

double basket_payoff(const std::vector<double>& w, double k, const std::vector<double>& x) {
  double s = -k;
  for (std::size_t h = 0; h < w.size(); ++h) s += w[h] * x[h];
  return std::max(0.0, s);
}

}  // namespace

double vertex_count_bound(int n, int m) { return binomial(2 * n + m, n); }

void validate_basket(const BasketInstance& instance, const BasketLimits& limits) {
  const int n = instance.n;
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "basket dimension must be >= 1");
  if (n > limits.max_dimension) {
    throw Error(ErrorCode::kDimensionLimitExceeded,
                "basket dimension " + std::to_string(n) + " above limit " +
                    std::to_string(limits.max_dimension));
  }
  if (static_cast<int>(instance.constraints.size()) > limits.max_constraints) {
    throw Error(ErrorCode::kDimensionLimitExceeded, "too many basket constraints");
  }
  if (!(instance.L > 0.0) || !std::isfinite(instance.L)) {
    throw Error(ErrorCode::kInvalidInput, "support bound L must be positive");
  }
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
    const BasketConstraint& c = instance.constraints[i];
    const std::string where = "constraints[" + std::to_string(i) + "]";
    if (static_cast<int>(c.weights.size()) != n || !finite(c.weights)) {
      throw Error(ErrorCode::kInvalidInput, where + ".weights must have n finite entries");
    }
    if (!(c.strike >= 0.0) || !std::isfinite(c.strike)) {
      throw Error(ErrorCode::kNegativeValue, where + ".strike must be nonnegative");
    }
    if (!(c.price >= 0.0) || !std::isfinite(c.price)) {
      throw Error(ErrorCode::kNegativeValue, where + ".price must be nonnegative");
    }
  }
  const BasketTarget& t = instance.target;
  if (static_cast<int>(t.weights.size()) != n || !finite(t.weights)) {
    throw Error(ErrorCode::kInvalidInput, "target.weights must have n finite entries");
  }
  if (std::any_of(t.weights.begin(), t.weights.end(), [](double w) { return w < 0.0; })) {
    throw Error(ErrorCode::kNegativeValue, "target.weights must be nonnegative");
  }
  if (!(t.strike >= 0.0) || !std::isfinite(t.strike)) {
    throw Error(ErrorCode::kNegativeValue, "target.strike must be nonnegative");
  }
}

VertexSet enumerate_vertices(const BasketInstance& instance, const BasketLimits& limits) {
  validate_basket(instance, limits);
  return arrangement_vertices(constraint_planes(instance), instance.n, instance.L, limits);
}

BasketBounds bound_basket(const BasketInstance& instance, const BasketLimits& limits,
                          const lp::SolverOptions& solver) {
  validate_basket(instance, limits);
  std::vector<Hyperplane> planes = constraint_planes(instance);
  planes.push_back({instance.target.weights, instance.target.strike});
  const VertexSet vertices =
      arrangement_vertices(std::move(planes), instance.n, instance.L, limits);

  BasketBounds result;
  for (const lp::Sense sense : {lp::Sense::kMinimize, lp::Sense::kMaximize}) {
    lp::LpModel model(sense);
    const int v_count = static_cast<int>(vertices.size());
    for (const auto& v : vertices.points) {
      model.add_variable(0.0, lp::kInfinity,
                         basket_payoff(instance.target.weights, instance.target.strike, v));
    }
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < v_count; ++j) terms.emplace_back(j, 1.0);
    model.add_row(terms, lp::Relation::kEqual, 1.0, "mass");
    for (const BasketConstraint& c : instance.constraints) {
      terms.clear();
      for (int j = 0; j < v_count; ++j) {
        const double f = basket_payoff(c.weights, c.strike, vertices.points[j]);
        if (f != 0.0) terms.emplace_back(j, f);
      }
      model.add_row(terms, lp::Relation::kEqual, c.price);
    }
    const lp::LpSolution sol = lp::solve(model, solver);
    if (sol.status != lp::Status::kOptimal) {
      throw Error(ErrorCode::kInfeasible,
                  "basket prices admit no distribution on [0, L]^n");
    }
    BasketWitness w;
    for (int j = 0; j < v_count; ++j) {
      if (sol.values[j] > kWitnessTol) {
        w.points.push_back(vertices.points[j]);
        w.weights.push_back(sol.values[j]);
      }
    }
    Diagnostics diag{model.num_variables(), model.num_constraints(), model.num_nonzeros(),
                     sol.iterations, sol.max_residual, instance.L};
    if (sense == lp::Sense::kMinimize) {
      result.lower = sol.objective;
      result.witness_lower = std::move(w);
      result.diagnostics_lower = diag;
    } else {
      result.upper = sol.objective;
      result.witness_upper = std::move(w);
      result.diagnostics_upper = diag;
    }
  }
  return result;
}

}  // namespace mbounds
