#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mbounds/psi.hpp"
#include "mbounds/quotes.hpp"

namespace mbounds::testing {

/// Binary-tree martingale started at x0: every atom x moves to x(1 - d) or
/// x(1 + u) with the probabilities that keep the mean.
inline std::vector<DiscreteDistribution> tree_marginals(std::mt19937& rng, double x0,
                                                        int steps) {
  std::uniform_real_distribution<double> down(0.05, 0.8), up(0.05, 1.0);
  std::vector<Atom> atoms{{x0, 1.0}};
  std::vector<DiscreteDistribution> out;
  for (int t = 0; t < steps; ++t) {
    const double d = down(rng), u = up(rng);
    const double p_down = u / (u + d);
    std::vector<Atom> next;
    for (const Atom& a : atoms) {
      next.push_back({a.location * (1 - d), a.weight * p_down});
      next.push_back({a.location * (1 + u), a.weight * (1 - p_down)});
    }
    atoms = next;
    // Merge equal locations and fix the total at exactly one.
    DiscreteDistribution law = [&] {
      std::vector<Atom> fixed = atoms;
      double head = 0.0;
      for (std::size_t i = 0; i + 1 < fixed.size(); ++i) head += fixed[i].weight;
      fixed.back().weight = 1.0 - head;
      return DiscreteDistribution(fixed);
    }();
    out.push_back(law);
  }
  return out;
}

struct RandomSurface {
  NormalizedSurface surface;
  std::vector<DiscreteDistribution> marginals;
};

/// Consistent single-asset surface priced off a tree martingale with
/// strikes on a quarter grid.
inline RandomSurface random_surface(std::mt19937& rng, int maturities, int max_strikes,
                                    const std::string& asset = "A", double x0 = 10.0) {
  RandomSurface out{{}, tree_marginals(rng, x0, maturities)};
  std::uniform_int_distribution<int> count(1, max_strikes);
  std::uniform_int_distribution<int> strike(1, 80);
  std::vector<Quote> quotes;
  for (int t = 1; t <= maturities; ++t) {
    const int c = count(rng);
    for (int j = 0; j < c; ++j) {
      const double k = strike(rng) * 0.25;
      quotes.push_back({asset, t, k, out.marginals[t - 1].call(k)});
    }
  }
  out.surface = NormalizedSurface({{asset, x0}}, quotes, maturities, 1e-12);
  return out;
}

struct RandomPair {
  NormalizedSurface surface;
  std::vector<DiscreteDistribution> x;  // marginals of asset A
  std::vector<DiscreteDistribution> y;  // marginals of asset B
};

/// Two independent tree martingales quoted on one surface as assets A and B.
inline RandomPair random_pair(std::mt19937& rng, int maturities, int max_strikes,
                              double x0 = 10.0, double y0 = 10.0) {
  RandomSurface a = random_surface(rng, maturities, max_strikes, "A", x0);
  RandomSurface b = random_surface(rng, maturities, max_strikes, "B", y0);
  std::vector<Quote> quotes = a.surface.quotes();
  for (const Quote& q : b.surface.quotes()) quotes.push_back(q);
  return {NormalizedSurface({{"A", x0}, {"B", y0}}, quotes, maturities, 1e-12),
          a.marginals, b.marginals};
}

}  // namespace mbounds::testing
