#pragma once

#include <vector>

#include "mbounds/lp.hpp"
#include "mbounds/result.hpp"

namespace mbounds {

/// Observed price of (w . X - k)^+.
struct BasketConstraint {
  std::vector<double> weights;
  double strike = 0.0;
  double price = 0.0;
};

struct BasketTarget {
  std::vector<double> weights;  // nonnegative
  double strike = 0.0;
};

struct BasketInstance {
  int n = 0;
  double L = 0.0;  // support bound: X in [0, L]^n
  std::vector<BasketConstraint> constraints;
  BasketTarget target;
};

struct BasketLimits {
  int max_dimension = 6;
  int max_constraints = 32;
  long long max_subsets = 50'000'000;
};

/// Points of [0, L]^n where n independent hyperplanes of the family meet.
/// provenance[i] lists the hyperplanes of the first subset yielding
/// points[i]: constraint j is j, x_h = 0 is m + h, x_h = L is m + n + h.
struct VertexSet {
  std::vector<std::vector<double>> points;
  std::vector<std::vector<int>> provenance;
  std::size_t size() const { return points.size(); }
};

struct BasketWitness {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
};

using BasketBounds = BoundsResult<BasketWitness>;

/// Throws InvalidInput on inconsistent dimensions, DimensionLimitExceeded
/// beyond the limits.
void validate_basket(const BasketInstance& instance, const BasketLimits& limits = {});

/// Vertices of the arrangement of the constraint hyperplanes and the box.
VertexSet enumerate_vertices(const BasketInstance& instance,
                             const BasketLimits& limits = {});

/// Optimal weights on the vertices of the arrangement that also contains
/// the target hyperplane. Throws Infeasible when the quoted prices admit no
/// distribution on the box.
BasketBounds bound_basket(const BasketInstance& instance, const BasketLimits& limits = {},
                          const lp::SolverOptions& solver = {});

/// (2n + m)! / ((n + m)! n!)
double vertex_count_bound(int n, int m);

}  // namespace mbounds
