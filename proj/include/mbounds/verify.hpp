#pragma once

#include <string>

#include "mbounds/basket.hpp"
#include "mbounds/bounds1d.hpp"
#include "mbounds/bounds2d.hpp"

namespace mbounds {

/// Largest constraint residual of a witness, recomputed from the quotes.
struct Audit {
  double max_residual = 0.0;
  std::string worst;  // label of the constraint attaining it
  void record(double residual, const std::string& label);
  bool passed(double tol) const { return max_residual <= tol; }
};

/// Mass, means, consistency, martingale, quote and future-vertex rows, the
/// support [0, L] and the objective against `bound`.
Audit audit_witness_1d(const NormalizedSurface& surface, const std::string& asset,
                       int t_star, const Payoff1D& payoff, const Witness1D& witness,
                       double bound, double L, const Bounds1DOptions& options = {});

/// Path atoms inside their regions, one-step martingale property of every
/// path, quotes, future vertices, terminal points on vertices of G_{t*}.
Audit audit_witness_2d(const NormalizedSurface& surface, const std::string& asset_x,
                       const std::string& asset_y, int t_star, const Payoff2D& payoff,
                       const Witness2D& witness, double bound, double L,
                       const Bounds2DOptions& options = {});

/// Lattice program rows with the t eps slack on quotes.
Audit audit_witness_lattice(const NormalizedSurface& surface, const std::string& asset_x,
                            const std::string& asset_y, int t_star, const Payoff2D& payoff,
                            double eps, const WitnessLattice& witness, double bound,
                            const Bounds2DOptions& options = {});

/// Weights form a law on [0, L]^n matching every basket price.
Audit audit_witness_basket(const BasketInstance& instance, const BasketWitness& witness,
                           double bound);

/// Marginals of the 1D witness ordered in the convex order.
MonotonicityResult witness_nondecreasing(const Witness1D& witness, double tol = 1e-9);

}  // namespace mbounds
