#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mbounds::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Sense { kMinimize, kMaximize };
enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string_view status_name(Status status);

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  double objective = 0.0;
};

struct Constraint {
  std::string name;
  Relation relation = Relation::kEqual;
  double rhs = 0.0;
};

struct Entry {
  int row;
  int col;
  double value;
};

// A sparse linear program. Coefficients are kept as (row, col, value)
// triplets; duplicates are summed when the solver assembles its columns.
class LpModel {
 public:
  explicit LpModel(Sense sense = Sense::kMinimize) : sense_(sense) {}

  int add_variable(double lower, double upper, double objective,
                   std::string name = {});
  int add_constraint(Relation relation, double rhs, std::string name = {});
  void add_coefficient(int row, int col, double value);

  // Convenience for a whole row at once.
  int add_row(const std::vector<std::pair<int, double>>& terms,
              Relation relation, double rhs, std::string name = {});

  void set_objective(int col, double value);
  void set_sense(Sense sense) { sense_ = sense; }
  void reserve(std::size_t variables, std::size_t constraints,
               std::size_t nonzeros);

  Sense sense() const { return sense_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  std::size_t num_nonzeros() const { return entries_.size(); }

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Entry>& entries() const { return entries_; }

  // Throws Error(kInvalidInput) when a coefficient references an undeclared
  // variable/row, a bound pair is inverted, or a rhs is not finite.
  void validate() const;

  // Row activities a_i . x for a candidate point.
  std::vector<double> row_activities(const std::vector<double>& x) const;
  double objective_value(const std::vector<double>& x) const;

  // Largest violation of any constraint or variable bound at x.
  double max_violation(const std::vector<double>& x) const;

 private:
  Sense sense_;
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<Entry> entries_;
};

struct SolverOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-10;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 200;
  int refactor_interval = 100;
  long max_iterations = 5'000'000;
};

struct LpSolution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;
  std::vector<double> row_activities;
  double max_residual = 0.0;
  long iterations = 0;
};

// Bounded primal revised simplex. Deterministic for identical input.
// Throws Error(kNumericalFailure) when the iteration budget is exhausted or
// the basis becomes singular.
LpSolution solve(const LpModel& model, const SolverOptions& options = {});

// Fixed-form MPS dump for cross-checking with external solvers. Rows and
// columns are renamed R<i> / C<j> to fit the fixed fields.
void write_mps(const LpModel& model, std::ostream& out,
               const std::string& name = "MBOUNDS");

}  // namespace mbounds::lp
