#include "mbounds/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mbounds/arbitrage.hpp"
#include "mbounds/error.hpp"

namespace mbounds {

namespace {

double call(double x, double k) { return std::max(0.0, x - k); }

NormalizedSurface restrict(const NormalizedSurface& s, int t_star, bool only) {
  return only ? s.only_maturity(t_star) : s;
}

// Distance by which p lies outside the box of the region.
double outside(const Region& r, const Point2& p) {
  return std::max({r.x_lo - p[0], p[0] - r.x_hi, r.y_lo - p[1], p[1] - r.y_hi, 0.0});
}

}  // namespace

void Audit::record(double residual, const std::string& label) {
  if (!(residual <= max_residual)) {
    max_residual = std::isnan(residual) ? lp::kInfinity : residual;
    worst = label;
  }
}

Audit audit_witness_1d(const NormalizedSurface& surface, const std::string& asset,
                       int t_star, const Payoff1D& payoff, const Witness1D& w,
                       double bound, double L, const Bounds1DOptions& options) {
  const NormalizedSurface s = restrict(surface, t_star, options.target_maturity_only);
  Audit a;
  if (static_cast<int>(w.marginals.size()) != t_star) {
    throw Error(ErrorCode::kInvalidInput, "witness has the wrong number of marginals");
  }
  const std::vector<double>& k = w.grid;
  for (double x : k) a.record(std::max(-x, x - L), "support");
  const double x0 = s.spot(asset);
  auto expect = [&](int t, auto&& f) {
    double v = 0.0;
    const std::vector<double>& m = w.marginals[t - 1];
    for (std::size_t i = 0; i < m.size(); ++i) {
      a.record(-m[i], "nonnegative");
      v += m[i] * f(k[i]);
    }
    return v;
  };
  for (int t = 1; t <= t_star; ++t) {
    const std::string tag = " t=" + std::to_string(t);
    a.record(std::abs(expect(t, [](double) { return 1.0; }) - 1.0), "mass" + tag);
    a.record(std::abs(expect(t, [](double x) { return x; }) - x0), "mean" + tag);
  }
  const std::size_t n = k.size();
  std::vector<std::vector<double>> out(t_star, std::vector<double>(n)),
      in(t_star, std::vector<double>(n)), drift(t_star, std::vector<double>(n));
  for (const Witness1D::Transition& tr : w.transitions) {
    a.record(-tr.weight, "nonnegative");
    out[tr.t - 1][tr.from] += tr.weight;
    in[tr.t][tr.to] += tr.weight;
    drift[tr.t - 1][tr.from] += tr.weight * (k[tr.to] - k[tr.from]);
  }
  for (int t = 1; t < t_star; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      a.record(std::abs(out[t - 1][i] - w.marginals[t - 1][i]), "outflow");
      a.record(std::abs(in[t][i] - w.marginals[t][i]), "inflow");
      a.record(std::abs(drift[t - 1][i]), "martingale");
    }
  }
  for (const Quote& q : s.quotes()) {
    if (q.asset != asset || q.maturity > t_star) continue;
    const double v = expect(q.maturity, [&](double x) { return call(x, q.strike); });
    a.record(std::abs(v - q.price), "quote k=" + std::to_string(q.strike));
  }
  for (const QuotedInstrument& q : options.instruments) {
    const double v = expect(q.maturity, [&](double x) { return q.payoff(x); });
    a.record(std::abs(v - q.price), "instrument");
  }
  for (const StrikePrice& f : future_vertices_unchecked(s, asset, t_star)) {
    const double v = expect(t_star, [&](double x) { return call(x, f.strike); });
    a.record(v - f.price, "future k=" + std::to_string(f.strike));
  }
  a.record(std::abs(expect(t_star, payoff) - bound), "objective");
  return a;
}

Audit audit_witness_2d(const NormalizedSurface& surface, const std::string& asset_x,
                       const std::string& asset_y, int t_star, const Payoff2D& payoff,
                       const Witness2D& w, double bound, double L,
                       const Bounds2DOptions& options) {
  const NormalizedSurface s = restrict(surface, t_star, options.target_maturity_only);
  const GraphSpec graphs = build_graphs(s, asset_x, asset_y, t_star, payoff, L, options.tol);
  const std::string assets[2] = {asset_x, asset_y};
  Audit a;
  using Node = std::pair<double, Point2>;  // probability, location
  std::map<std::vector<int>, Node> parents{{{}, {1.0, {s.spot(asset_x), s.spot(asset_y)}}}};

  auto close = [&](const std::map<std::vector<int>, Node>& sums, const std::string& tag) {
    for (const auto& [path, parent] : parents) {
      const auto it = sums.find(path);
      const Node child = it == sums.end() ? Node{0.0, {0.0, 0.0}} : it->second;
      a.record(std::abs(child.first - parent.first), "mass" + tag);
      for (int h = 0; h < 2; ++h) {
        a.record(std::abs(child.second[h] - parent.first * parent.second[h]),
                 "martingale" + tag);
      }
    }
    for (const auto& [path, child] : sums) {
      if (!parents.count(path)) a.record(child.first, "orphan" + tag);
    }
  };
  auto quote_rows = [&](int t, auto&& expect) {
    for (const Quote& q : s.quotes()) {
      if (q.maturity != t || q.strike == 0.0) continue;
      for (int h = 0; h < 2; ++h) {
        if (q.asset != assets[h]) continue;
        a.record(std::abs(expect(h, q.strike) - q.price),
                 "quote " + q.asset + " t=" + std::to_string(t));
      }
    }
  };

  if (static_cast<int>(w.levels.size()) != t_star - 1) {
    throw Error(ErrorCode::kInvalidInput, "witness has the wrong number of levels");
  }
  for (int t = 1; t < t_star; ++t) {
    const std::string tag = " t=" + std::to_string(t);
    const Graph& g = graphs.at(t);
    std::map<std::vector<int>, Node> sums, next;
    for (const PathAtom& p : w.levels[t - 1]) {
      a.record(-p.probability, "nonnegative");
      if (static_cast<int>(p.regions.size()) != t || p.regions.back() < 0 ||
          p.regions.back() >= static_cast<int>(g.regions.size())) {
        a.record(lp::kInfinity, "path shape" + tag);
        continue;
      }
      a.record(outside(g.regions[p.regions.back()], p.atom), "atom region" + tag);
      Node& e = sums[std::vector<int>(p.regions.begin(), p.regions.end() - 1)];
      e.first += p.probability;
      for (int h = 0; h < 2; ++h) e.second[h] += p.probability * p.atom[h];
      next[p.regions] = {p.probability, p.atom};
    }
    close(sums, tag);
    parents = std::move(next);
    quote_rows(t, [&](int h, double k) {
      double v = 0.0;
      for (const PathAtom& p : w.levels[t - 1]) v += p.probability * call(p.atom[h], k);
      return v;
    });
  }

  const Graph& last = graphs.at(t_star);
  std::map<std::vector<int>, Node> sums;
  double objective = 0.0;
  for (const TerminalMass& m : w.terminal) {
    a.record(-m.probability, "nonnegative");
    if (last.vertex_index(m.point) < 0) a.record(lp::kInfinity, "terminal off vertex");
    Node& e = sums[m.regions];
    e.first += m.probability;
    for (int h = 0; h < 2; ++h) e.second[h] += m.probability * m.point[h];
    objective += m.probability * payoff(m.point[0], m.point[1]);
  }
  close(sums, " t=" + std::to_string(t_star));
  auto terminal_call = [&](int h, double k) {
    double v = 0.0;
    for (const TerminalMass& m : w.terminal) v += m.probability * call(m.point[h], k);
    return v;
  };
  quote_rows(t_star, terminal_call);
  for (int h = 0; h < 2; ++h) {
    for (const StrikePrice& f : future_vertices_unchecked(s, assets[h], t_star)) {
      a.record(terminal_call(h, f.strike) - f.price, "future " + assets[h]);
    }
  }
  a.record(std::abs(objective - bound), "objective");
  return a;
}

Audit audit_witness_lattice(const NormalizedSurface& surface, const std::string& asset_x,
                            const std::string& asset_y, int t_star, const Payoff2D& payoff,
                            double eps, const WitnessLattice& w, double bound,
                            const Bounds2DOptions& options) {
  const NormalizedSurface s = restrict(surface, t_star, options.target_maturity_only);
  const std::string assets[2] = {asset_x, asset_y};
  Audit a;
  if (static_cast<int>(w.nodes.size()) != t_star ||
      static_cast<int>(w.marginals.size()) != t_star) {
    throw Error(ErrorCode::kInvalidInput, "witness has the wrong number of marginals");
  }
  auto expect = [&](int t, auto&& f) {
    double v = 0.0;
    for (std::size_t i = 0; i < w.nodes[t - 1].size(); ++i) {
      a.record(-w.marginals[t - 1][i], "nonnegative");
      v += w.marginals[t - 1][i] * f(w.nodes[t - 1][i]);
    }
    return v;
  };
  for (int t = 1; t <= t_star; ++t) {
    a.record(std::abs(expect(t, [](const Point2&) { return 1.0; }) - 1.0),
             "mass t=" + std::to_string(t));
  }
  for (int h = 0; h < 2; ++h) {
    a.record(std::abs(expect(1, [h](const Point2& p) { return p[h]; }) - s.spot(assets[h])),
             "mean " + assets[h]);
  }
  std::vector<std::vector<double>> out(t_star), in(t_star);
  std::vector<std::vector<Point2>> drift(t_star);
  for (int t = 1; t <= t_star; ++t) {
    out[t - 1].assign(w.nodes[t - 1].size(), 0.0);
    in[t - 1].assign(w.nodes[t - 1].size(), 0.0);
    drift[t - 1].assign(w.nodes[t - 1].size(), Point2{0.0, 0.0});
  }
  for (const WitnessLattice::Transition& tr : w.transitions) {
    a.record(-tr.weight, "nonnegative");
    out[tr.t - 1][tr.from] += tr.weight;
    in[tr.t][tr.to] += tr.weight;
    for (int h = 0; h < 2; ++h) {
      drift[tr.t - 1][tr.from][h] +=
          tr.weight * (w.nodes[tr.t][tr.to][h] - w.nodes[tr.t - 1][tr.from][h]);
    }
  }
  for (int t = 1; t < t_star; ++t) {
    for (std::size_t i = 0; i < w.nodes[t - 1].size(); ++i) {
      a.record(std::abs(out[t - 1][i] - w.marginals[t - 1][i]), "outflow");
      a.record(std::max(std::abs(drift[t - 1][i][0]), std::abs(drift[t - 1][i][1])),
               "martingale");
    }
    for (std::size_t i = 0; i < w.nodes[t].size(); ++i) {
      a.record(std::abs(in[t][i] - w.marginals[t][i]), "inflow");
    }
  }
  for (const Quote& q : s.quotes()) {
    if (q.maturity > t_star || q.strike == 0.0) continue;
    for (int h = 0; h < 2; ++h) {
      if (q.asset != assets[h]) continue;
      const double v =
          expect(q.maturity, [&](const Point2& p) { return call(p[h], q.strike); });
      a.record(std::abs(v - q.price) - q.maturity * eps, "quote " + q.asset);
    }
  }
  for (int h = 0; h < 2; ++h) {
    for (const StrikePrice& f : future_vertices_unchecked(s, assets[h], t_star)) {
      const double v = expect(t_star, [&](const Point2& p) { return call(p[h], f.strike); });
      a.record(v - f.price - t_star * eps, "future " + assets[h]);
    }
  }
  a.record(std::abs(expect(t_star, [&](const Point2& p) { return payoff(p[0], p[1]); }) -
                    bound),
           "objective");
  return a;
}

Audit audit_witness_basket(const BasketInstance& instance, const BasketWitness& w,
                           double bound) {
  Audit a;
  if (w.points.size() != w.weights.size()) {
    throw Error(ErrorCode::kInvalidInput, "witness points and weights differ in length");
  }
  auto basket = [](const std::vector<double>& weights, const std::vector<double>& x,
                   double k) {
    double v = -k;
    for (std::size_t h = 0; h < x.size(); ++h) v += weights[h] * x[h];
    return std::max(0.0, v);
  };
  double mass = 0.0;
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    a.record(-w.weights[i], "nonnegative");
    mass += w.weights[i];
    for (double x : w.points[i]) a.record(std::max(-x, x - instance.L), "support");
  }
  a.record(std::abs(mass - 1.0), "mass");
  auto expect = [&](const std::vector<double>& weights, double k) {
    double v = 0.0;
    for (std::size_t i = 0; i < w.points.size(); ++i) {
      v += w.weights[i] * basket(weights, w.points[i], k);
    }
    return v;
  };
  for (std::size_t j = 0; j < instance.constraints.size(); ++j) {
    const BasketConstraint& c = instance.constraints[j];
    a.record(std::abs(expect(c.weights, c.strike) - c.price), "basket " + std::to_string(j));
  }
  a.record(std::abs(expect(instance.target.weights, instance.target.strike) - bound),
           "objective");
  return a;
}

MonotonicityResult witness_nondecreasing(const Witness1D& witness, double tol) {
  std::vector<PsiFunction> psis;
  for (std::size_t t = 1; t <= witness.marginals.size(); ++t) {
    psis.push_back(psi_of_distribution(witness.marginal(static_cast<int>(t))));
  }
  return check_nondecreasing(psis, tol);
}

}  // namespace mbounds
