#include "mbounds/bounds2d.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "mbounds/arbitrage.hpp"
#include "mbounds/error.hpp"

namespace mbounds {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kWitnessTol = 1e-12;

double geo_tol(double L) { return 1e-9 * std::max(1.0, L); }

double side(const Line& l, const Point2& p) { return l.a * p[0] + l.b * p[1] - l.c; }

std::vector<double> axis_lines(std::vector<double> xs, double L) {
  xs.push_back(0.0);
  xs.push_back(L);
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (x < 0.0 || x > L) continue;
    if (out.empty() || x - out.back() > kMergeTol) out.push_back(x);
  }
  out.back() = L;
  return out;
}

bool crosses_interior(const Line& l, double L, double tol) {
  const Point2 corners[4] = {{0.0, 0.0}, {L, 0.0}, {L, L}, {0.0, L}};
  double lo = 0.0, hi = 0.0;
  for (const Point2& c : corners) {
    lo = std::min(lo, side(l, c));
    hi = std::max(hi, side(l, c));
  }
  return lo < -tol && hi > tol;
}

std::vector<Line> payoff_lines(const Payoff2D& g) {
  if (!g.is_canonical()) return g.lines();
  if (g.alpha() > 0.0 || g.beta() > 0.0) return {Line{g.alpha(), g.beta(), g.k()}};
  return {};
}

void add_payoff_lines(const Payoff2D& g, double L, std::vector<double>& xs,
                      std::vector<double>& ys, std::vector<Line>& oblique) {
  const double tol = geo_tol(L);
  for (Line l : payoff_lines(g)) {
    const double norm = std::hypot(l.a, l.b);
    if (norm == 0.0) continue;
    l = {l.a / norm, l.b / norm, l.c / norm};
    if (std::abs(l.b) <= 1e-14) {
      xs.push_back(l.c / l.a);
    } else if (std::abs(l.a) <= 1e-14) {
      ys.push_back(l.c / l.b);
    } else if (crosses_interior(l, L, tol)) {
      if (l.b < 0.0) l = {-l.a, -l.b, -l.c};
      bool seen = false;
      for (const Line& o : oblique) {
        seen = seen || (std::abs(o.a - l.a) <= 1e-12 && std::abs(o.b - l.b) <= 1e-12 &&
                        std::abs(o.c - l.c) <= tol);
      }
      if (!seen) oblique.push_back(l);
    }
  }
}

bool less_point(const Point2& p, const Point2& q) {
  return p[0] < q[0] || (p[0] == q[0] && p[1] < q[1]);
}

std::vector<Point2> clip(const std::vector<Point2>& poly, const Line& l, double sign,
                         double tol) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& cur = poly[i];
    const Point2& nxt = poly[(i + 1) % n];
    double sc = sign * side(l, cur);
    double sn = sign * side(l, nxt);
    if (std::abs(sc) <= tol) sc = 0.0;
    if (std::abs(sn) <= tol) sn = 0.0;
    if (sc <= 0.0) out.push_back(cur);
    if ((sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0)) {
      const double s = sc / (sc - sn);
      out.push_back({cur[0] + s * (nxt[0] - cur[0]), cur[1] + s * (nxt[1] - cur[1])});
    }
  }
  std::vector<Point2> dedup;
  for (const Point2& p : out) {
    if (dedup.empty() || std::abs(p[0] - dedup.back()[0]) > tol ||
        std::abs(p[1] - dedup.back()[1]) > tol) {
      dedup.push_back(p);
    }
  }
  while (dedup.size() > 1 && std::abs(dedup.front()[0] - dedup.back()[0]) <= tol &&
         std::abs(dedup.front()[1] - dedup.back()[1]) <= tol) {
    dedup.pop_back();
  }
  return dedup;
}

double area(const std::vector<Point2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % poly.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

Point2 centroid(const std::vector<Point2>& poly) {
  Point2 c{0.0, 0.0};
  for (const Point2& p : poly) {
    c[0] += p[0];
    c[1] += p[1];
  }
  c[0] /= static_cast<double>(poly.size());
  c[1] /= static_cast<double>(poly.size());
  return c;
}

Graph make_graph(std::vector<double> xs, std::vector<double> ys, std::vector<Line> oblique,
                 double L) {
  const double tol = geo_tol(L);
  Graph g;
  g.L = L;
  g.x_lines = axis_lines(std::move(xs), L);
  g.y_lines = axis_lines(std::move(ys), L);
  g.oblique = std::move(oblique);

  std::vector<Point2> pts;
  for (double x : g.x_lines) {
    for (double y : g.y_lines) pts.push_back({x, y});
  }
  auto in_box = [&](double v) { return v >= -tol && v <= L + tol; };
  auto snap = [&](double v) {
    if (std::abs(v) <= tol) return 0.0;
    if (std::abs(v - L) <= tol) return L;
    return v;
  };
  for (std::size_t i = 0; i < g.oblique.size(); ++i) {
    const Line& l = g.oblique[i];
    for (double x : g.x_lines) {
      const double y = (l.c - l.a * x) / l.b;
      if (in_box(y)) pts.push_back({x, snap(y)});
    }
    for (double y : g.y_lines) {
      const double x = (l.c - l.b * y) / l.a;
      if (in_box(x)) pts.push_back({snap(x), y});
    }
    for (std::size_t j = 0; j < i; ++j) {
      const Line& m = g.oblique[j];
      const double det = l.a * m.b - m.a * l.b;
      if (std::abs(det) <= 1e-12) continue;
      const double x = (l.c * m.b - m.c * l.b) / det;
      const double y = (l.a * m.c - m.a * l.c) / det;
      if (in_box(x) && in_box(y)) pts.push_back({snap(x), snap(y)});
    }
  }
  std::sort(pts.begin(), pts.end(), less_point);
  for (const Point2& p : pts) {
    bool seen = false;
    for (const Point2& q : g.vertices) {
      seen = seen || (std::abs(p[0] - q[0]) <= tol && std::abs(p[1] - q[1]) <= tol);
    }
    if (!seen) g.vertices.push_back(p);
  }

  std::vector<std::pair<std::vector<Point2>, bool>> polys;
  for (std::size_t i = 0; i + 1 < g.x_lines.size(); ++i) {
    for (std::size_t j = 0; j + 1 < g.y_lines.size(); ++j) {
      const double x0 = g.x_lines[i], x1 = g.x_lines[i + 1];
      const double y0 = g.y_lines[j], y1 = g.y_lines[j + 1];
      polys.push_back({{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, true});
    }
  }
  const double min_area = 1e-14 * std::max(1.0, L * L);
  for (const Line& l : g.oblique) {
    std::vector<std::pair<std::vector<Point2>, bool>> next;
    for (auto& [poly, rect] : polys) {
      double lo = 0.0, hi = 0.0;
      for (const Point2& p : poly) {
        lo = std::min(lo, side(l, p));
        hi = std::max(hi, side(l, p));
      }
      if (lo < -tol && hi > tol) {
        for (double sign : {1.0, -1.0}) {
          std::vector<Point2> part = clip(poly, l, sign, tol);
          if (part.size() >= 3 && std::abs(area(part)) > min_area) {
            next.push_back({std::move(part), false});
          }
        }
      } else {
        next.push_back({std::move(poly), rect});
      }
    }
    polys = std::move(next);
  }
  for (auto& [poly, rect] : polys) {
    Region r;
    r.rectangular = rect;
    r.x_lo = r.x_hi = poly.front()[0];
    r.y_lo = r.y_hi = poly.front()[1];
    for (const Point2& p : poly) {
      r.x_lo = std::min(r.x_lo, p[0]);
      r.x_hi = std::max(r.x_hi, p[0]);
      r.y_lo = std::min(r.y_lo, p[1]);
      r.y_hi = std::max(r.y_hi, p[1]);
    }
    r.polygon = std::move(poly);
    g.regions.push_back(std::move(r));
  }
  std::stable_sort(g.regions.begin(), g.regions.end(), [](const Region& a, const Region& b) {
    return less_point(centroid(a.polygon), centroid(b.polygon));
  });
  return g;
}

std::vector<double> strikes_at(const NormalizedSurface& s, const std::string& asset, int t) {
  std::vector<double> out;
  for (const Quote& q : s.quotes()) {
    if (q.asset == asset && q.maturity == t) out.push_back(q.strike);
  }
  return out;
}

void require_consistent(const NormalizedSurface& s, const std::string& asset, double tol) {
  const ArbitrageReport report = check_no_arbitrage(s, asset, tol);
  if (!report.consistent()) {
    throw Error(ErrorCode::kArbitragePresent,
                "quotes on " + asset + " admit arbitrage: " + report.violations.front().detail);
  }
}

void require_box(const NormalizedSurface& s, const std::string& asset, int t_star, double L) {
  double need = s.spot(asset);
  for (const Quote& q : s.quotes()) {
    if (q.asset == asset && q.maturity <= t_star) need = std::max(need, q.strike);
  }
  for (const StrikePrice& f : future_vertices_unchecked(s, asset, t_star)) {
    need = std::max(need, f.strike);
  }
  if (!(L >= need - kMergeTol) || !std::isfinite(L)) {
    std::ostringstream msg;
    msg << "support bound " << L << " below required " << need << " for " << asset;
    throw Error(ErrorCode::kSupportBoundTooSmall, msg.str());
  }
}

bool segment_hits_box(const Segment& s, double xlo, double xhi, double ylo, double yhi) {
  double t0 = 0.0, t1 = 1.0;
  const double dx = s.b[0] - s.a[0];
  const double dy = s.b[1] - s.a[1];
  auto edge = [&](double p, double q) {
    if (p == 0.0) return q >= 0.0;
    const double r = q / p;
    if (p < 0.0) {
      if (r > t1) return false;
      t0 = std::max(t0, r);
    } else {
      if (r < t0) return false;
      t1 = std::min(t1, r);
    }
    return true;
  };
  return edge(-dx, s.a[0] - xlo) && edge(dx, xhi - s.a[0]) && edge(-dy, s.a[1] - ylo) &&
         edge(dy, yhi - s.a[1]);
}

template <typename Result, typename Fn>
void solve_both(bool parallel, Result& result, Fn fn) {
  if (parallel) {
    auto low = std::async(std::launch::async, fn, lp::Sense::kMinimize);
    auto high = std::async(std::launch::async, fn, lp::Sense::kMaximize);
    auto lo = low.get();
    auto hi = high.get();
    result.lower = lo.objective;
    result.witness_lower = std::move(lo.witness);
    result.diagnostics_lower = lo.diagnostics;
    result.upper = hi.objective;
    result.witness_upper = std::move(hi.witness);
    result.diagnostics_upper = hi.diagnostics;
    return;
  }
  auto lo = fn(lp::Sense::kMinimize);
  result.lower = lo.objective;
  result.witness_lower = std::move(lo.witness);
  result.diagnostics_lower = lo.diagnostics;
  auto hi = fn(lp::Sense::kMaximize);
  result.upper = hi.objective;
  result.witness_upper = std::move(hi.witness);
  result.diagnostics_upper = hi.diagnostics;
}

template <typename Witness>
struct Solved {
  double objective = 0.0;
  Witness witness;
  Diagnostics diagnostics;
};

lp::LpSolution solve_or_throw(const lp::LpModel& model, const lp::SolverOptions& options) {
  lp::LpSolution sol = lp::solve(model, options);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kInfeasibleDespiteCheck,
                "bound program is " + std::string(lp::status_name(sol.status)) +
                    " although the quotes passed the arbitrage check");
  }
  return sol;
}

Diagnostics diagnostics_of(const lp::LpModel& m, const lp::LpSolution& sol, double L) {
  return {m.num_variables(), m.num_constraints(), m.num_nonzeros(),
          sol.iterations,    sol.max_residual,    L};
}

}  // namespace

int Graph::region_of(const Point2& p) const {
  const double tol = geo_tol(L);
  if (p[0] < -tol || p[1] < -tol || p[0] > L + tol || p[1] > L + tol) return -1;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const std::vector<Point2>& poly = regions[i].polygon;
    bool inside = true;
    for (std::size_t j = 0; j < poly.size() && inside; ++j) {
      const Point2& a = poly[j];
      const Point2& b = poly[(j + 1) % poly.size()];
      const double ex = b[0] - a[0], ey = b[1] - a[1];
      const double cross = ex * (p[1] - a[1]) - ey * (p[0] - a[0]);
      inside = cross >= -tol * std::hypot(ex, ey);
    }
    if (inside) return static_cast<int>(i);
  }
  return -1;
}

int Graph::vertex_index(const Point2& p) const {
  const double tol = geo_tol(L);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (std::abs(vertices[i][0] - p[0]) <= tol && std::abs(vertices[i][1] - p[1]) <= tol) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::vector<Segment> Graph::edges() const {
  const double tol = geo_tol(L);
  std::vector<Segment> out;
  for (double x : x_lines) out.push_back({{x, 0.0}, {x, L}});
  for (double y : y_lines) out.push_back({{0.0, y}, {L, y}});
  for (const Line& l : oblique) {
    std::vector<Point2> on;
    for (const Point2& v : vertices) {
      if (std::abs(side(l, v)) <= tol) on.push_back(v);
    }
    if (on.empty()) continue;
    out.push_back({on.front(), on.back()});
  }
  return out;
}

std::vector<Segment> GraphSpec::all_edges() const {
  std::vector<Segment> out;
  for (const Graph& g : graphs) {
    for (const Segment& s : g.edges()) out.push_back(s);
  }
  return out;
}

GraphSpec build_graphs(const NormalizedSurface& surface, const std::string& asset_x,
                       const std::string& asset_y, int t_star, const Payoff2D& payoff,
                       double L, double tol) {
  if (t_star < 1) throw Error(ErrorCode::kInvalidInput, "target maturity must be >= 1");
  if (!(L > 0.0)) throw Error(ErrorCode::kInvalidInput, "support bound must be positive");
  require_consistent(surface, asset_x, tol);
  require_consistent(surface, asset_y, tol);
  require_box(surface, asset_x, t_star, L);
  require_box(surface, asset_y, t_star, L);

  GraphSpec spec;
  spec.L = L;
  for (int t = 1; t <= t_star; ++t) {
    std::vector<double> xs = strikes_at(surface, asset_x, t);
    std::vector<double> ys = strikes_at(surface, asset_y, t);
    std::vector<Line> oblique;
    if (t == t_star) {
      for (const StrikePrice& f : future_vertices_unchecked(surface, asset_x, t_star)) {
        xs.push_back(f.strike);
      }
      for (const StrikePrice& f : future_vertices_unchecked(surface, asset_y, t_star)) {
        ys.push_back(f.strike);
      }
      add_payoff_lines(payoff, L, xs, ys, oblique);
    }
    spec.graphs.push_back(make_graph(std::move(xs), std::move(ys), std::move(oblique), L));
  }
  return spec;
}

std::size_t Lp2DExact::paths(int t) const {
  std::size_t n = 1;
  for (int s = 1; s <= t; ++s) n *= static_cast<std::size_t>(region_counts[s - 1]);
  return n;
}

double exact_variable_count(const GraphSpec& graphs) {
  double paths = 1.0, total = 0.0;
  for (int t = 1; t < graphs.t_star(); ++t) {
    paths *= static_cast<double>(graphs.at(t).regions.size());
    total += 3.0 * paths;
  }
  return total + paths * static_cast<double>(graphs.at(graphs.t_star()).vertices.size());
}

Lp2DExact build_lp_2d_exact(const NormalizedSurface& surface, const std::string& asset_x,
                            const std::string& asset_y, const GraphSpec& graphs,
                            const Payoff2D& payoff, lp::Sense sense) {
  const int ts = graphs.t_star();
  Lp2DExact out;
  out.model = lp::LpModel(sense);
  out.t_star = ts;
  lp::LpModel& m = out.model;
  std::size_t col = 0;
  for (int t = 1; t < ts; ++t) {
    out.region_counts.push_back(static_cast<int>(graphs.at(t).regions.size()));
    out.level_offset.push_back(col);
    col += 3 * out.paths(t);
  }
  out.terminal_offset = col;
  const Graph& last = graphs.at(ts);
  const std::vector<Point2>& verts = last.vertices;
  out.vertex_count = static_cast<int>(verts.size());
  const std::size_t V = verts.size();
  const std::size_t parents = out.paths(ts - 1);
  m.reserve(col + parents * V, col + 4 * parents, 8 * col + 4 * parents * V);

  for (std::size_t i = 0; i < col; ++i) m.add_variable(0.0, lp::kInfinity, 0.0);
  for (std::size_t q = 0; q < parents; ++q) {
    for (const Point2& v : verts) m.add_variable(0.0, lp::kInfinity, payoff(v[0], v[1]));
  }

  auto P = [&](int t, std::size_t p) {
    return static_cast<int>(out.level_offset[t - 1] + 3 * p);
  };
  auto T = [&](std::size_t q, std::size_t v) {
    return static_cast<int>(out.terminal_offset + q * V + v);
  };
  auto region = [&](int t, std::size_t p) -> const Region& {
    return graphs.at(t).regions[p % static_cast<std::size_t>(out.region_counts[t - 1])];
  };
  // Coordinate h of the atom on path p is lo * P + width * zhat.
  auto atom_terms = [&](int t, std::size_t p, int h, double scale,
                        std::vector<std::pair<int, double>>& terms) {
    const Region& r = region(t, p);
    const double lo = h == 0 ? r.x_lo : r.y_lo;
    const double width = h == 0 ? r.x_hi - r.x_lo : r.y_hi - r.y_lo;
    if (lo != 0.0) terms.emplace_back(P(t, p), scale * lo);
    if (width != 0.0) terms.emplace_back(P(t, p) + 1 + h, scale * width);
  };

  std::vector<std::pair<int, double>> terms;
  if (ts == 1) {
    for (std::size_t v = 0; v < V; ++v) terms.emplace_back(T(0, v), 1.0);
  } else {
    for (std::size_t p = 0; p < out.paths(1); ++p) terms.emplace_back(P(1, p), 1.0);
  }
  m.add_row(terms, lp::Relation::kEqual, 1.0, "mass");

  const double spot[2] = {surface.spot(asset_x), surface.spot(asset_y)};
  for (int h = 0; h < 2; ++h) {
    terms.clear();
    if (ts == 1) {
      for (std::size_t v = 0; v < V; ++v) terms.emplace_back(T(0, v), verts[v][h]);
    } else {
      for (std::size_t p = 0; p < out.paths(1); ++p) atom_terms(1, p, h, 1.0, terms);
    }
    m.add_row(terms, lp::Relation::kEqual, spot[h], h == 0 ? "mean_x" : "mean_y");
  }

  for (int t = 1; t < ts; ++t) {
    for (std::size_t p = 0; p < out.paths(t); ++p) {
      for (int h = 0; h < 2; ++h) {
        m.add_row({{P(t, p) + 1 + h, 1.0}, {P(t, p), -1.0}}, lp::Relation::kLessEqual, 0.0);
      }
    }
  }

  for (int t = 2; t < ts; ++t) {
    const std::size_t R = static_cast<std::size_t>(out.region_counts[t - 1]);
    for (std::size_t q = 0; q < out.paths(t - 1); ++q) {
      terms.clear();
      for (std::size_t r = 0; r < R; ++r) terms.emplace_back(P(t, q * R + r), 1.0);
      terms.emplace_back(P(t - 1, q), -1.0);
      m.add_row(terms, lp::Relation::kEqual, 0.0);
      for (int h = 0; h < 2; ++h) {
        terms.clear();
        for (std::size_t r = 0; r < R; ++r) atom_terms(t, q * R + r, h, 1.0, terms);
        atom_terms(t - 1, q, h, -1.0, terms);
        m.add_row(terms, lp::Relation::kEqual, 0.0);
      }
    }
  }
  if (ts > 1) {
    for (std::size_t q = 0; q < parents; ++q) {
      terms.clear();
      for (std::size_t v = 0; v < V; ++v) terms.emplace_back(T(q, v), 1.0);
      terms.emplace_back(P(ts - 1, q), -1.0);
      m.add_row(terms, lp::Relation::kEqual, 0.0);
      for (int h = 0; h < 2; ++h) {
        terms.clear();
        for (std::size_t v = 0; v < V; ++v) {
          if (verts[v][h] != 0.0) terms.emplace_back(T(q, v), verts[v][h]);
        }
        atom_terms(ts - 1, q, h, -1.0, terms);
        m.add_row(terms, lp::Relation::kEqual, 0.0);
      }
    }
  }

  const double tol = geo_tol(graphs.L);
  auto call_row = [&](int h, int t, double strike, lp::Relation rel, double price) {
    terms.clear();
    if (t == ts) {
      for (std::size_t q = 0; q < parents; ++q) {
        for (std::size_t v = 0; v < V; ++v) {
          if (verts[v][h] > strike) terms.emplace_back(T(q, v), verts[v][h] - strike);
        }
      }
    } else {
      for (std::size_t p = 0; p < out.paths(t); ++p) {
        const Region& r = region(t, p);
        const double lo = h == 0 ? r.x_lo : r.y_lo;
        const double hi = h == 0 ? r.x_hi : r.y_hi;
        if (hi <= strike + tol) continue;
        if (lo < strike - tol) {
          throw Error(ErrorCode::kNumericalFailure, "strike line missing from graph");
        }
        if (lo != strike) terms.emplace_back(P(t, p), lo - strike);
        if (hi != lo) terms.emplace_back(P(t, p) + 1 + h, hi - lo);
      }
    }
    m.add_row(terms, rel, price);
  };
  const std::string assets[2] = {asset_x, asset_y};
  for (const Quote& q : surface.quotes()) {
    if (q.maturity > ts || q.strike == 0.0) continue;
    for (int h = 0; h < 2; ++h) {
      if (q.asset == assets[h]) call_row(h, q.maturity, q.strike, lp::Relation::kEqual, q.price);
    }
  }
  for (int h = 0; h < 2; ++h) {
    for (const StrikePrice& f : future_vertices_unchecked(surface, assets[h], ts)) {
      call_row(h, ts, f.strike, lp::Relation::kLessEqual, f.price);
    }
  }
  return out;
}

double default_support_bound_2d(const NormalizedSurface& surface,
                                const std::string& asset_x, const std::string& asset_y) {
  double m = 0.0;
  for (const std::string& a : {asset_x, asset_y}) {
    m = std::max({m, surface.spot(a), witness_support_bound(surface, a)});
    for (const Quote& q : surface.quotes()) {
      if (q.asset == a) m = std::max(m, q.strike);
    }
  }
  return 2.0 * m;
}

namespace {

Witness2D extract_exact(const Lp2DExact& lp, const GraphSpec& graphs,
                        const std::vector<double>& x) {
  Witness2D w;
  const int ts = lp.t_star;
  auto decode = [&](int t, std::size_t p) {
    std::vector<int> regions(static_cast<std::size_t>(t));
    for (int s = t; s >= 1; --s) {
      const std::size_t R = static_cast<std::size_t>(lp.region_counts[s - 1]);
      regions[s - 1] = static_cast<int>(p % R);
      p /= R;
    }
    return regions;
  };
  for (int t = 1; t < ts; ++t) {
    std::vector<PathAtom> level;
    for (std::size_t p = 0; p < lp.paths(t); ++p) {
      const std::size_t c = lp.level_offset[t - 1] + 3 * p;
      const double prob = x[c];
      if (prob <= kWitnessTol) continue;
      PathAtom a;
      a.regions = decode(t, p);
      a.probability = prob;
      const Region& r = graphs.at(t).regions[a.regions.back()];
      const double zx = std::clamp(x[c + 1] / prob, 0.0, 1.0);
      const double zy = std::clamp(x[c + 2] / prob, 0.0, 1.0);
      a.atom = {r.x_lo + (r.x_hi - r.x_lo) * zx, r.y_lo + (r.y_hi - r.y_lo) * zy};
      level.push_back(std::move(a));
    }
    w.levels.push_back(std::move(level));
  }
  const std::vector<Point2>& verts = graphs.at(ts).vertices;
  const std::size_t V = verts.size();
  for (std::size_t q = 0; q < lp.paths(ts - 1); ++q) {
    for (std::size_t v = 0; v < V; ++v) {
      const double prob = x[lp.terminal_offset + q * V + v];
      if (prob <= kWitnessTol) continue;
      w.terminal.push_back({decode(ts - 1, q), static_cast<int>(v), verts[v], prob});
    }
  }
  return w;
}

NormalizedSurface data_for(const NormalizedSurface& surface, int t_star,
                           const Bounds2DOptions& options) {
  if (t_star < 1) throw Error(ErrorCode::kInvalidInput, "target maturity must be >= 1");
  return options.target_maturity_only ? surface.only_maturity(t_star) : surface;
}

}  // namespace

Bounds2D bound_payoff_2d_exact(const NormalizedSurface& surface,
                               const std::string& asset_x, const std::string& asset_y,
                               int t_star, const Payoff2D& payoff,
                               const Bounds2DOptions& options) {
  const NormalizedSurface data = data_for(surface, t_star, options);
  const double L =
      options.support_bound.value_or(default_support_bound_2d(data, asset_x, asset_y));
  const GraphSpec graphs = build_graphs(data, asset_x, asset_y, t_star, payoff, L, options.tol);
  const double count = exact_variable_count(graphs);
  if (count > options.variable_budget) {
    std::ostringstream msg;
    msg << "path program needs " << count << " variables, budget is "
        << options.variable_budget << "; use the lattice approximation";
    throw Error(ErrorCode::kPathBudgetExceeded, msg.str());
  }
  auto job = [&](lp::Sense sense) {
    const Lp2DExact program = build_lp_2d_exact(data, asset_x, asset_y, graphs, payoff, sense);
    const lp::LpSolution sol = solve_or_throw(program.model, options.solver);
    return Solved<Witness2D>{sol.objective, extract_exact(program, graphs, sol.values),
                             diagnostics_of(program.model, sol, L)};
  };
  Bounds2D result;
  solve_both(options.parallel, result, job);
  return result;
}

std::size_t LatticeSpec::total_nodes() const {
  std::size_t n = 0;
  for (const auto& v : nodes) n += v.size();
  return n;
}

LatticeSpec build_lattice(double L, double eps, int t_star, bool restricted,
                          const std::vector<Segment>& edges) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidInput, "lattice step must be positive");
  }
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw Error(ErrorCode::kInvalidInput, "support bound must be positive");
  }
  if (t_star < 1) throw Error(ErrorCode::kInvalidInput, "target maturity must be >= 1");
  LatticeSpec out;
  out.eps = eps;
  out.L = L;
  out.restricted = restricted;
  const long base = static_cast<long>(std::ceil(L / eps - 1e-9));
  const double slack = 1e-12 * std::max(1.0, L);
  for (int t = 1; t <= t_star; ++t) {
    const long n = base + t - 1;
    const double r = t * eps + slack;
    std::vector<Point2> nodes;
    for (long i = 0; i <= n; ++i) {
      for (long j = 0; j <= n; ++j) {
        const Point2 p{static_cast<double>(i) * eps, static_cast<double>(j) * eps};
        bool keep = !restricted;
        for (std::size_t e = 0; e < edges.size() && !keep; ++e) {
          keep = segment_hits_box(edges[e], p[0] - r, p[0] + r, p[1] - r, p[1] + r);
        }
        if (keep) nodes.push_back(p);
      }
    }
    out.nodes.push_back(std::move(nodes));
  }
  return out;
}

LatticeSpec build_lattice(const GraphSpec& graphs, double eps, bool restricted) {
  return build_lattice(graphs.L, eps, graphs.t_star(), restricted, graphs.all_edges());
}

double lattice_variable_count(const LatticeSpec& lattice) {
  double total = 0.0;
  for (std::size_t t = 0; t < lattice.nodes.size(); ++t) {
    const double n = static_cast<double>(lattice.nodes[t].size());
    total += n;
    if (t + 1 < lattice.nodes.size()) {
      total += n * static_cast<double>(lattice.nodes[t + 1].size());
    }
  }
  return total;
}

Lp2DLattice build_lp_2d_lattice(const NormalizedSurface& surface,
                                const std::string& asset_x, const std::string& asset_y,
                                int t_star, const LatticeSpec& lattice,
                                const Payoff2D& payoff, lp::Sense sense) {
  if (static_cast<int>(lattice.nodes.size()) != t_star) {
    throw Error(ErrorCode::kInvalidInput, "lattice depth differs from target maturity");
  }
  Lp2DLattice out;
  out.model = lp::LpModel(sense);
  lp::LpModel& m = out.model;
  const double eps = lattice.eps;
  std::size_t col = 0;
  for (int t = 1; t <= t_star; ++t) {
    out.sizes.push_back(static_cast<int>(lattice.nodes[t - 1].size()));
    out.marginal_offset.push_back(col);
    col += lattice.nodes[t - 1].size();
  }
  std::size_t pairs = 0;
  for (int t = 1; t < t_star; ++t) {
    out.pair_offset.push_back(col + pairs);
    pairs += lattice.nodes[t - 1].size() * lattice.nodes[t].size();
  }
  m.reserve(col + pairs, 4 * col, 4 * pairs + 4 * col);

  for (int t = 1; t <= t_star; ++t) {
    for (const Point2& p : lattice.nodes[t - 1]) {
      m.add_variable(0.0, lp::kInfinity, t == t_star ? payoff(p[0], p[1]) : 0.0);
    }
  }
  for (std::size_t i = 0; i < pairs; ++i) m.add_variable(0.0, lp::kInfinity, 0.0);

  auto marg = [&](int t, std::size_t n) {
    return static_cast<int>(out.marginal_offset[t - 1] + n);
  };
  std::vector<std::pair<int, double>> terms;
  const std::vector<Point2>& first = lattice.nodes[0];
  for (std::size_t n = 0; n < first.size(); ++n) terms.emplace_back(marg(1, n), 1.0);
  m.add_row(terms, lp::Relation::kEqual, 1.0, "mass");
  const double spot[2] = {surface.spot(asset_x), surface.spot(asset_y)};
  for (int h = 0; h < 2; ++h) {
    terms.clear();
    for (std::size_t n = 0; n < first.size(); ++n) {
      if (first[n][h] != 0.0) terms.emplace_back(marg(1, n), first[n][h]);
    }
    m.add_row(terms, lp::Relation::kEqual, spot[h], h == 0 ? "mean_x" : "mean_y");
  }

  for (int t = 1; t < t_star; ++t) {
    const std::vector<Point2>& from = lattice.nodes[t - 1];
    const std::vector<Point2>& to = lattice.nodes[t];
    const int out_rows = m.num_constraints();
    for (std::size_t a = 0; a < from.size(); ++a) {
      m.add_constraint(lp::Relation::kEqual, 0.0);
      m.add_coefficient(out_rows + static_cast<int>(a), marg(t, a), -1.0);
    }
    const int in_rows = m.num_constraints();
    for (std::size_t b = 0; b < to.size(); ++b) {
      m.add_constraint(lp::Relation::kEqual, 0.0);
      m.add_coefficient(in_rows + static_cast<int>(b), marg(t + 1, b), -1.0);
    }
    const int mart_rows = m.num_constraints();
    for (std::size_t a = 0; a < 2 * from.size(); ++a) {
      m.add_constraint(lp::Relation::kEqual, 0.0);
    }
    std::size_t c = out.pair_offset[t - 1];
    for (std::size_t a = 0; a < from.size(); ++a) {
      for (std::size_t b = 0; b < to.size(); ++b, ++c) {
        const int col_id = static_cast<int>(c);
        m.add_coefficient(out_rows + static_cast<int>(a), col_id, 1.0);
        m.add_coefficient(in_rows + static_cast<int>(b), col_id, 1.0);
        for (int h = 0; h < 2; ++h) {
          const double d = to[b][h] - from[a][h];
          if (d != 0.0) m.add_coefficient(mart_rows + static_cast<int>(2 * a) + h, col_id, d);
        }
      }
    }
  }

  auto call_terms = [&](int h, int t, double strike) {
    terms.clear();
    const std::vector<Point2>& nodes = lattice.nodes[t - 1];
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      if (nodes[n][h] > strike) terms.emplace_back(marg(t, n), nodes[n][h] - strike);
    }
  };
  const std::string assets[2] = {asset_x, asset_y};
  for (const Quote& q : surface.quotes()) {
    if (q.maturity > t_star || q.strike == 0.0) continue;
    for (int h = 0; h < 2; ++h) {
      if (q.asset != assets[h]) continue;
      call_terms(h, q.maturity, q.strike);
      const double slack = q.maturity * eps;
      m.add_row(terms, lp::Relation::kGreaterEqual, q.price - slack);
      m.add_row(terms, lp::Relation::kLessEqual, q.price + slack);
    }
  }
  for (int h = 0; h < 2; ++h) {
    for (const StrikePrice& f : future_vertices_unchecked(surface, assets[h], t_star)) {
      call_terms(h, t_star, f.strike);
      m.add_row(terms, lp::Relation::kLessEqual, f.price + t_star * eps);
    }
  }
  return out;
}

namespace {

WitnessLattice extract_lattice(const Lp2DLattice& lp, const LatticeSpec& lattice,
                               const std::vector<double>& x) {
  WitnessLattice w;
  w.nodes = lattice.nodes;
  const int ts = static_cast<int>(lattice.nodes.size());
  for (int t = 1; t <= ts; ++t) {
    std::vector<double> row(lattice.nodes[t - 1].size());
    for (std::size_t n = 0; n < row.size(); ++n) row[n] = x[lp.marginal_offset[t - 1] + n];
    w.marginals.push_back(std::move(row));
  }
  for (int t = 1; t < ts; ++t) {
    const std::size_t nb = lattice.nodes[t].size();
    std::size_t c = lp.pair_offset[t - 1];
    for (std::size_t a = 0; a < lattice.nodes[t - 1].size(); ++a) {
      for (std::size_t b = 0; b < nb; ++b, ++c) {
        if (x[c] > kWitnessTol) {
          w.transitions.push_back({t, static_cast<int>(a), static_cast<int>(b), x[c]});
        }
      }
    }
  }
  return w;
}

}  // namespace

Bounds2DApprox bound_payoff_2d_approx(const NormalizedSurface& surface,
                                      const std::string& asset_x,
                                      const std::string& asset_y, int t_star,
                                      const Payoff2D& payoff, double eps,
                                      const Bounds2DOptions& options) {
  const NormalizedSurface data = data_for(surface, t_star, options);
  const double L =
      options.support_bound.value_or(default_support_bound_2d(data, asset_x, asset_y));
  const GraphSpec graphs = build_graphs(data, asset_x, asset_y, t_star, payoff, L, options.tol);
  const LatticeSpec lattice = build_lattice(graphs, eps, options.restricted_lattice);
  const double count = lattice_variable_count(lattice);
  if (count > options.variable_budget) {
    std::ostringstream msg;
    msg << "lattice program needs " << count << " variables, budget is "
        << options.variable_budget;
    throw Error(ErrorCode::kNodeBudgetExceeded, msg.str());
  }
  auto job = [&](lp::Sense sense) {
    const Lp2DLattice program =
        build_lp_2d_lattice(data, asset_x, asset_y, t_star, lattice, payoff, sense);
    const lp::LpSolution sol = solve_or_throw(program.model, options.solver);
    return Solved<WitnessLattice>{sol.objective, extract_lattice(program, lattice, sol.values),
                                  diagnostics_of(program.model, sol, L)};
  };
  Bounds2DApprox result;
  solve_both(options.parallel, result, job);
  return result;
}

}  // namespace mbounds
