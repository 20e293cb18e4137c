#include "mbounds/lp.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string_view>

#include "mbounds/error.hpp"

namespace mbounds::lp {

std::string_view status_name(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "Optimal";
    case Status::kInfeasible:
      return "Infeasible";
    case Status::kUnbounded:
      return "Unbounded";
  }
  return "Unknown";
}

int LpModel::add_variable(double lower, double upper, double objective,
                          std::string name) {
  variables_.push_back({std::move(name), lower, upper, objective});
  return static_cast<int>(variables_.size()) - 1;
}

int LpModel::add_constraint(Relation relation, double rhs, std::string name) {
  constraints_.push_back({std::move(name), relation, rhs});
  return static_cast<int>(constraints_.size()) - 1;
}

void LpModel::add_coefficient(int row, int col, double value) {
  if (value == 0.0) return;
  entries_.push_back({row, col, value});
}

int LpModel::add_row(const std::vector<std::pair<int, double>>& terms,
                     Relation relation, double rhs, std::string name) {
  const int row = add_constraint(relation, rhs, std::move(name));
  for (const auto& [col, value] : terms) add_coefficient(row, col, value);
  return row;
}

void LpModel::set_objective(int col, double value) {
  variables_.at(static_cast<std::size_t>(col)).objective = value;
}

void LpModel::reserve(std::size_t variables, std::size_t constraints,
                      std::size_t nonzeros) {
  variables_.reserve(variables);
  constraints_.reserve(constraints);
  entries_.reserve(nonzeros);
}

void LpModel::validate() const {
  const int n = num_variables();
  const int m = num_constraints();
  for (const Entry& e : entries_) {
    if (e.row < 0 || e.row >= m || e.col < 0 || e.col >= n) {
      throw Error(ErrorCode::kInvalidInput,
                  "coefficient references an undeclared row or variable");
    }
    if (!std::isfinite(e.value)) {
      throw Error(ErrorCode::kInvalidInput, "non-finite coefficient");
    }
  }
  for (const Variable& v : variables_) {
    if (v.lower > v.upper || std::isnan(v.lower) || std::isnan(v.upper) ||
        !std::isfinite(v.objective)) {
      throw Error(ErrorCode::kInvalidInput,
                  "invalid bounds or objective for variable '" + v.name + "'");
    }
  }
  for (const Constraint& c : constraints_) {
    if (!std::isfinite(c.rhs)) {
      throw Error(ErrorCode::kInvalidInput,
                  "non-finite rhs in constraint '" + c.name + "'");
    }
  }
}

std::vector<double> LpModel::row_activities(const std::vector<double>& x) const {
  std::vector<double> activity(constraints_.size(), 0.0);
  for (const Entry& e : entries_) {
    activity[static_cast<std::size_t>(e.row)] +=
        e.value * x[static_cast<std::size_t>(e.col)];
  }
  return activity;
}

double LpModel::objective_value(const std::vector<double>& x) const {
  double total = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    total += variables_[j].objective * x[j];
  }
  return total;
}

double LpModel::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    worst = std::max(worst, variables_[j].lower - x[j]);
    worst = std::max(worst, x[j] - variables_[j].upper);
  }
  const std::vector<double> activity = row_activities(x);
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const double gap = activity[i] - constraints_[i].rhs;
    switch (constraints_[i].relation) {
      case Relation::kLessEqual:
        worst = std::max(worst, gap);
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, -gap);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(gap));
        break;
    }
  }
  return worst;
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

enum class NonbasicState { kBasic, kAtLower, kAtUpper, kFree };

struct Eta {
  int pivot_row;
  double pivot;
  std::vector<std::pair<int, double>> entries;  // off-pivot entries of alpha
};

// Columns 0..n-1 are structural; column n+i is the logical of row i with
// coefficient -1, so every row reads  a_i . x - r_i = 0  with r_i bounded by
// the constraint's relation.
class RevisedSimplex {
 public:
  RevisedSimplex(const LpModel& model, const SolverOptions& options)
      : options_(options),
        m_(model.num_constraints()),
        n_(model.num_variables()) {
    const int total = n_ + m_;
    lower_.resize(static_cast<std::size_t>(total));
    upper_.resize(static_cast<std::size_t>(total));
    cost_.assign(static_cast<std::size_t>(total), 0.0);
    const double sign = model.sense() == Sense::kMaximize ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) {
      const Variable& v = model.variables()[static_cast<std::size_t>(j)];
      lower_[j] = v.lower;
      upper_[j] = v.upper;
      cost_[j] = sign * v.objective;
    }
    for (int i = 0; i < m_; ++i) {
      const Constraint& c = model.constraints()[static_cast<std::size_t>(i)];
      double lo = -kInfinity, up = kInfinity;
      switch (c.relation) {
        case Relation::kLessEqual:
          up = c.rhs;
          break;
        case Relation::kGreaterEqual:
          lo = c.rhs;
          break;
        case Relation::kEqual:
          lo = up = c.rhs;
          break;
      }
      lower_[n_ + i] = lo;
      upper_[n_ + i] = up;
    }
    BuildColumns(model);
  }

  LpSolution Run() {
    InitialBasis();
    Refactor();
    ComputeBasicValues();

    std::vector<double> basic_cost(static_cast<std::size_t>(m_));
    std::vector<double> alpha;
    int recheck_budget = 8;
    bool fresh = true;  // factorization and x_B recomputed since last pivot

    while (true) {
      if (iterations_ >= options_.max_iterations) {
        throw Error(ErrorCode::kNumericalFailure,
                    "simplex iteration limit exhausted");
      }
      if (since_refactor_ >= options_.refactor_interval) {
        Refactor();
        ComputeBasicValues();
        fresh = true;
      }

      const bool phase_one = AnyBasicInfeasible();
      for (int p = 0; p < m_; ++p) {
        const int j = basis_[p];
        if (phase_one) {
          const double x = x_[j];
          basic_cost[p] = x < lower_[j] - options_.feasibility_tol   ? -1.0
                          : x > upper_[j] + options_.feasibility_tol ? 1.0
                                                                     : 0.0;
        } else {
          basic_cost[p] = cost_[j];
        }
      }
      Btran(basic_cost, duals_);

      double reduced = 0.0;
      const int entering = Price(phase_one, &reduced);
      if (entering < 0) {
        if (!fresh && recheck_budget > 0) {
          // Confirm the verdict on a fresh factorization.
          --recheck_budget;
          Refactor();
          ComputeBasicValues();
          fresh = true;
          continue;
        }
        if (perturbed_) {
          RemovePerturbation();
          fresh = true;
          continue;
        }
        return Finish(phase_one ? Status::kInfeasible : Status::kOptimal);
      }

      Ftran(entering, alpha);
      const double direction = reduced < 0.0 ? 1.0 : -1.0;
      const RatioResult ratio = RatioTest(entering, direction, alpha, phase_one);
      if (ratio.unbounded) {
        if (phase_one) {
          throw Error(ErrorCode::kNumericalFailure,
                      "unbounded ray while minimizing infeasibility");
        }
        return Finish(Status::kUnbounded);
      }

      const double step = ratio.step;
      x_[entering] += direction * step;
      for (int p = 0; p < m_; ++p) {
        if (alpha[p] != 0.0) x_[basis_[p]] -= direction * step * alpha[p];
      }

      if (ratio.leaving_row < 0) {
        state_[entering] = state_[entering] == NonbasicState::kAtLower
                               ? NonbasicState::kAtUpper
                               : NonbasicState::kAtLower;
        x_[entering] = state_[entering] == NonbasicState::kAtLower
                           ? lower_[entering]
                           : upper_[entering];
      } else {
        const int p = ratio.leaving_row;
        const int leaving = basis_[p];
        x_[leaving] = ratio.leaving_value;
        state_[leaving] = ratio.leaving_value == lower_[leaving]
                              ? NonbasicState::kAtLower
                              : NonbasicState::kAtUpper;
        if (lower_[leaving] == -kInfinity && upper_[leaving] == kInfinity) {
          state_[leaving] = NonbasicState::kFree;
        }
        position_[leaving] = -1;
        basis_[p] = entering;
        position_[entering] = p;
        state_[entering] = NonbasicState::kBasic;
        AppendEta(p, alpha);
        ++since_refactor_;
      }
      fresh = false;
      ++iterations_;

      if (step <= 1e-12) {
        if (++degenerate_run_ > options_.bland_after) {
          if (perturb_rounds_ < 5) {
            Perturb();
            degenerate_run_ = 0;
          } else {
            bland_ = true;
          }
        }
      } else {
        degenerate_run_ = 0;
        bland_ = false;
      }
    }
  }

 private:
  struct RatioResult {
    bool unbounded = false;
    int leaving_row = -1;  // -1: entering variable flips between its bounds
    double step = 0.0;
    double leaving_value = 0.0;
  };

  void BuildColumns(const LpModel& model) {
    std::vector<int> counts(static_cast<std::size_t>(n_) + 1, 0);
    for (const Entry& e : model.entries()) ++counts[e.col + 1];
    for (int j = 0; j < n_; ++j) counts[j + 1] += counts[j];
    col_start_ = counts;
    row_index_.resize(model.entries().size());
    value_.resize(model.entries().size());
    std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
    for (const Entry& e : model.entries()) {
      const int k = fill[e.col]++;
      row_index_[k] = e.row;
      value_[k] = e.value;
    }
    // Sum duplicates within each column.
    std::vector<int> new_start(static_cast<std::size_t>(n_) + 1, 0);
    std::vector<int> last_seen(static_cast<std::size_t>(m_), -1);
    int out = 0;
    for (int j = 0; j < n_; ++j) {
      const int begin = out;
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        const int r = row_index_[k];
        if (last_seen[r] >= begin) {
          value_[last_seen[r]] += value_[k];
        } else {
          last_seen[r] = out;
          row_index_[out] = r;
          value_[out] = value_[k];
          ++out;
        }
      }
      new_start[j + 1] = out;
    }
    row_index_.resize(static_cast<std::size_t>(out));
    value_.resize(static_cast<std::size_t>(out));
    col_start_ = std::move(new_start);
  }

  void InitialBasis() {
    const int total = n_ + m_;
    x_.assign(static_cast<std::size_t>(total), 0.0);
    state_.assign(static_cast<std::size_t>(total), NonbasicState::kAtLower);
    position_.assign(static_cast<std::size_t>(total), -1);
    for (int j = 0; j < n_; ++j) {
      if (lower_[j] > -kInfinity) {
        x_[j] = lower_[j];
        state_[j] = NonbasicState::kAtLower;
      } else if (upper_[j] < kInfinity) {
        x_[j] = upper_[j];
        state_[j] = NonbasicState::kAtUpper;
      } else {
        x_[j] = 0.0;
        state_[j] = NonbasicState::kFree;
      }
    }
    basis_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      position_[n_ + i] = i;
      state_[n_ + i] = NonbasicState::kBasic;
    }
  }

  void Refactor() {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(m_) * 4);
    for (int p = 0; p < m_; ++p) {
      const int j = basis_[p];
      if (j >= n_) {
        triplets.emplace_back(j - n_, p, -1.0);
      } else {
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
          triplets.emplace_back(row_index_[k], p, value_[k]);
        }
      }
    }
    SparseMatrix basis_matrix(m_, m_);
    basis_matrix.setFromTriplets(triplets.begin(), triplets.end());
    basis_matrix.makeCompressed();
    lu_.analyzePattern(basis_matrix);
    lu_.factorize(basis_matrix);
    if (lu_.info() != Eigen::Success) {
      throw Error(ErrorCode::kNumericalFailure,
                  "basis factorization failed: " + lu_.lastErrorMessage());
    }
    etas_.clear();
    since_refactor_ = 0;
  }

  void ComputeBasicValues() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < n_ + m_; ++j) {
      if (position_[j] >= 0 || x_[j] == 0.0) continue;
      AddColumn(j, -x_[j], rhs);
    }
    Eigen::VectorXd xb = Solve(rhs);
    for (int p = 0; p < m_; ++p) x_[basis_[p]] = xb[p];
  }

  void AddColumn(int j, double scale, Eigen::VectorXd& target) const {
    if (j >= n_) {
      target[j - n_] -= scale;
      return;
    }
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      target[row_index_[k]] += scale * value_[k];
    }
  }

  double ColumnDot(int j, const std::vector<double>& y) const {
    if (j >= n_) return -y[j - n_];
    double total = 0.0;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      total += y[row_index_[k]] * value_[k];
    }
    return total;
  }

  Eigen::VectorXd Solve(const Eigen::VectorXd& rhs) {
    Eigen::VectorXd x = lu_.solve(rhs);
    for (const Eta& eta : etas_) {
      const double xp = x[eta.pivot_row] / eta.pivot;
      x[eta.pivot_row] = xp;
      if (xp == 0.0) continue;
      for (const auto& [i, a] : eta.entries) x[i] -= a * xp;
    }
    return x;
  }

  void Ftran(int j, std::vector<double>& alpha) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    AddColumn(j, 1.0, rhs);
    Eigen::VectorXd x = Solve(rhs);
    alpha.assign(x.data(), x.data() + m_);
    for (double& a : alpha) {
      if (std::abs(a) < 1e-14) a = 0.0;
    }
  }

  void Btran(const std::vector<double>& cb, std::vector<double>& y) {
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(cb.data(), m_);
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double acc = w[it->pivot_row];
      for (const auto& [i, a] : it->entries) acc -= a * w[i];
      w[it->pivot_row] = acc / it->pivot;
    }
    Eigen::VectorXd sol = lu_.transpose().solve(w);
    y.assign(sol.data(), sol.data() + m_);
  }

  void AppendEta(int pivot_row, const std::vector<double>& alpha) {
    Eta eta;
    eta.pivot_row = pivot_row;
    eta.pivot = alpha[pivot_row];
    for (int i = 0; i < m_; ++i) {
      if (i != pivot_row && alpha[i] != 0.0) eta.entries.emplace_back(i, alpha[i]);
    }
    etas_.push_back(std::move(eta));
  }

  // Widens the bounds of the current basic variables by small deterministic
  // amounts so that degenerate vertices become nondegenerate.
  void Perturb() {
    if (!perturbed_) {
      original_lower_ = lower_;
      original_upper_ = upper_;
    }
    perturbed_ = true;
    ++perturb_rounds_;
    for (int p = 0; p < m_; ++p) {
      const int j = basis_[p];
      if (lower_[j] != original_lower_[j] || upper_[j] != original_upper_[j]) continue;
      if (lower_[j] > -kInfinity) {
        lower_[j] -= 1e-6 * (1.0 + std::abs(lower_[j])) * (1.0 + NextUniform());
      }
      if (upper_[j] < kInfinity) {
        upper_[j] += 1e-6 * (1.0 + std::abs(upper_[j])) * (1.0 + NextUniform());
      }
    }
  }

  void RemovePerturbation() {
    lower_ = original_lower_;
    upper_ = original_upper_;
    perturbed_ = false;
    for (int j = 0; j < n_ + m_; ++j) {
      if (state_[j] == NonbasicState::kAtLower) x_[j] = lower_[j];
      if (state_[j] == NonbasicState::kAtUpper) x_[j] = upper_[j];
    }
    Refactor();
    ComputeBasicValues();
    degenerate_run_ = 0;
    bland_ = false;
  }

  double NextUniform() {
    rng_state_ = rng_state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(rng_state_ >> 11) * 0x1.0p-53;
  }

  bool AnyBasicInfeasible() const {
    for (int p = 0; p < m_; ++p) {
      const int j = basis_[p];
      if (x_[j] < lower_[j] - options_.feasibility_tol ||
          x_[j] > upper_[j] + options_.feasibility_tol) {
        return true;
      }
    }
    return false;
  }

  // Returns the entering column or -1; stores its reduced cost.
  int Price(bool phase_one, double* reduced) {
    const int total = n_ + m_;
    const double tol = options_.optimality_tol;
    auto candidate_score = [&](int j, double* d_out) -> double {
      if (state_[j] == NonbasicState::kBasic) return 0.0;
      if (lower_[j] == upper_[j]) return 0.0;
      const double d = (phase_one ? 0.0 : cost_[j]) - ColumnDot(j, duals_);
      *d_out = d;
      switch (state_[j]) {
        case NonbasicState::kAtLower:
          return d < -tol ? -d : 0.0;
        case NonbasicState::kAtUpper:
          return d > tol ? d : 0.0;
        case NonbasicState::kFree:
          return std::abs(d) > tol ? std::abs(d) : 0.0;
        case NonbasicState::kBasic:
          break;
      }
      return 0.0;
    };

    if (bland_) {
      for (int j = 0; j < total; ++j) {
        double d = 0.0;
        if (candidate_score(j, &d) > 0.0) {
          *reduced = d;
          return j;
        }
      }
      return -1;
    }

    // Partial pricing over cyclic segments for wide models.
    const int segment =
        total <= 8000 ? total : std::max(4000, total / 16);
    const int segments = (total + segment - 1) / segment;
    int best = -1;
    double best_score = 0.0, best_d = 0.0;
    for (int s = 0; s < segments; ++s) {
      const int seg = (price_segment_ + s) % segments;
      const int begin = seg * segment;
      const int end = std::min(total, begin + segment);
      for (int j = begin; j < end; ++j) {
        double d = 0.0;
        const double score = candidate_score(j, &d);
        if (score > best_score) {
          best_score = score;
          best = j;
          best_d = d;
        }
      }
      if (best >= 0) {
        price_segment_ = (seg + 1) % segments;
        break;
      }
    }
    *reduced = best_d;
    return best;
  }

  RatioResult RatioTest(int entering, double direction,
                        const std::vector<double>& alpha, bool phase_one) {
    const double tol = options_.feasibility_tol;
    double amax = 0.0;
    for (double a : alpha) amax = std::max(amax, std::abs(a));
    const double piv = std::max(options_.pivot_tol, (bland_ ? 1e-7 : 1e-9) * amax);
    RatioResult result;

    auto effective_bounds = [&](int j, double* lo, double* up) {
      *lo = lower_[j];
      *up = upper_[j];
      if (phase_one) {
        if (x_[j] < lower_[j] - tol) {
          *lo = -kInfinity;
          *up = lower_[j];
        } else if (x_[j] > upper_[j] + tol) {
          *lo = upper_[j];
          *up = kInfinity;
        }
      }
    };

    const double range = upper_[entering] - lower_[entering];

    if (bland_) {
      double best = kInfinity;
      int best_row = -1;
      double best_value = 0.0;
      for (int p = 0; p < m_; ++p) {
        if (std::abs(alpha[p]) <= piv) continue;
        const int j = basis_[p];
        double lo, up;
        effective_bounds(j, &lo, &up);
        const double rate = -direction * alpha[p];
        double theta, target;
        if (rate < 0.0) {
          if (lo == -kInfinity) continue;
          theta = std::max(0.0, (x_[j] - lo) / -rate);
          target = lo;
        } else {
          if (up == kInfinity) continue;
          theta = std::max(0.0, (up - x_[j]) / rate);
          target = up;
        }
        if (theta < best - 1e-12 ||
            (theta <= best + 1e-12 && best_row >= 0 && j < basis_[best_row])) {
          best = std::min(best, theta);
          best_row = p;
          best_value = target;
        }
      }
      if (range <= best) {
        if (range == kInfinity) {
          result.unbounded = true;
          return result;
        }
        result.step = range;
        return result;
      }
      result.leaving_row = best_row;
      result.step = best;
      result.leaving_value = best_value;
      return result;
    }

    // Harris two-pass ratio test.
    double relaxed_max = kInfinity;
    for (int p = 0; p < m_; ++p) {
      if (std::abs(alpha[p]) <= piv) continue;
      const int j = basis_[p];
      double lo, up;
      effective_bounds(j, &lo, &up);
      const double rate = -direction * alpha[p];
      if (rate < 0.0) {
        if (lo == -kInfinity) continue;
        relaxed_max = std::min(relaxed_max, (x_[j] - lo + tol) / -rate);
      } else {
        if (up == kInfinity) continue;
        relaxed_max = std::min(relaxed_max, (up - x_[j] + tol) / rate);
      }
    }
    if (range <= relaxed_max) {
      if (range == kInfinity) {
        result.unbounded = true;
        return result;
      }
      result.step = range;
      return result;
    }
    double best_pivot = 0.0;
    for (int p = 0; p < m_; ++p) {
      if (std::abs(alpha[p]) <= piv) continue;
      const int j = basis_[p];
      double lo, up;
      effective_bounds(j, &lo, &up);
      const double rate = -direction * alpha[p];
      double theta, target;
      if (rate < 0.0) {
        if (lo == -kInfinity) continue;
        theta = (x_[j] - lo) / -rate;
        target = lo;
      } else {
        if (up == kInfinity) continue;
        theta = (up - x_[j]) / rate;
        target = up;
      }
      if (theta <= relaxed_max && std::abs(alpha[p]) > best_pivot) {
        best_pivot = std::abs(alpha[p]);
        result.leaving_row = p;
        result.step = std::max(0.0, theta);
        result.leaving_value = target;
      }
    }
    return result;
  }

  LpSolution Finish(Status status) {
    LpSolution solution;
    solution.status = status;
    solution.iterations = iterations_;
    solution.values.assign(x_.begin(), x_.begin() + n_);
    double objective = 0.0;
    for (int j = 0; j < n_; ++j) objective += cost_[j] * x_[j];
    solution.objective = objective;  // sign fixed by caller
    return solution;
  }

  const SolverOptions options_;
  const int m_;
  const int n_;
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> value_;
  std::vector<double> lower_, upper_, cost_;
  std::vector<double> x_;
  std::vector<NonbasicState> state_;
  std::vector<int> basis_;
  std::vector<int> position_;
  std::vector<double> duals_;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  int since_refactor_ = 0;
  long iterations_ = 0;
  int degenerate_run_ = 0;
  bool bland_ = false;
  bool perturbed_ = false;
  int perturb_rounds_ = 0;
  std::uint64_t rng_state_ = 0x853c49e6748fea9bULL;
  std::vector<double> original_lower_, original_upper_;
  int price_segment_ = 0;
};

}  // namespace

LpSolution solve(const LpModel& model, const SolverOptions& options) {
  model.validate();
  RevisedSimplex simplex(model, options);
  LpSolution solution = simplex.Run();
  solution.objective = model.objective_value(solution.values);
  solution.row_activities = model.row_activities(solution.values);
  solution.max_residual = model.max_violation(solution.values);
  return solution;
}

void write_mps(const LpModel& model, std::ostream& out,
               const std::string& name) {
  auto field = [](const std::string& s, int width) {
    std::ostringstream os;
    os << std::left << std::setw(width) << s;
    return os.str();
  };
  auto number = [](double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
  };
  auto row_name = [](int i) { return "R" + std::to_string(i); };
  auto col_name = [](int j) { return "C" + std::to_string(j); };

  out << "NAME          " << name << "\n";
  if (model.sense() == Sense::kMaximize) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n";
  out << " N  COST\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const auto relation = model.constraints()[static_cast<std::size_t>(i)].relation;
    const char* type = relation == Relation::kEqual       ? "E"
                       : relation == Relation::kLessEqual ? "L"
                                                          : "G";
    out << " " << type << "  " << row_name(i) << "\n";
  }

  std::vector<std::vector<std::pair<int, double>>> columns(
      static_cast<std::size_t>(model.num_variables()));
  for (const Entry& e : model.entries()) {
    columns[static_cast<std::size_t>(e.col)].emplace_back(e.row, e.value);
  }
  out << "COLUMNS\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    auto& col = columns[static_cast<std::size_t>(j)];
    std::stable_sort(col.begin(), col.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const double obj = model.variables()[static_cast<std::size_t>(j)].objective;
    if (obj != 0.0) {
      out << "    " << field(col_name(j), 8) << "  " << field("COST", 8) << "  "
          << number(obj) << "\n";
    }
    for (const auto& [row, value] : col) {
      out << "    " << field(col_name(j), 8) << "  " << field(row_name(row), 8)
          << "  " << number(value) << "\n";
    }
  }
  out << "RHS\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const double rhs = model.constraints()[static_cast<std::size_t>(i)].rhs;
    if (rhs != 0.0) {
      out << "    " << field("RHS", 8) << "  " << field(row_name(i), 8) << "  "
          << number(rhs) << "\n";
    }
  }
  out << "BOUNDS\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variables()[static_cast<std::size_t>(j)];
    const std::string col = field(col_name(j), 8);
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      out << " FR BND       " << col << "\n";
      continue;
    }
    if (v.lower == v.upper) {
      out << " FX BND       " << col << "  " << number(v.lower) << "\n";
      continue;
    }
    if (v.lower == -kInfinity) {
      out << " MI BND       " << col << "\n";
    } else if (v.lower != 0.0) {
      out << " LO BND       " << col << "  " << number(v.lower) << "\n";
    }
    if (v.upper != kInfinity) {
      out << " UP BND       " << col << "  " << number(v.upper) << "\n";
    }
  }
  out << "ENDATA\n";
}

}  // namespace mbounds::lp
