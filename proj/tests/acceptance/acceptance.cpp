// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>

#include "generators.hpp"
#include "oracles.hpp"
#include "mbounds/arbitrage.hpp"
#include "mbounds/basket.hpp"
#include "mbounds/bounds1d.hpp"
#include "mbounds/bounds2d.hpp"
#include "mbounds/error.hpp"
#include "mbounds/psi.hpp"
#include "mbounds/quotes.hpp"
#include "mbounds/verify.hpp"

using namespace mbounds;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Witness audits collected from every optimal result below.
struct AuditLog {
  int checked = 0;
  int failed = 0;
  double worst = 0.0;
  std::string worst_label;
  int monotone_checked = 0;
  int monotone_failed = 0;

  void add(const Audit& a, const std::string& where) {
    ++checked;
    if (!a.passed(1e-7)) ++failed;
    if (a.max_residual >= worst) {
      worst = a.max_residual;
      worst_label = where + ": " + a.worst;
    }
  }
  void add_1d(const NormalizedSurface& s, const std::string& asset, int ts, const Payoff1D& g,
              const Bounds1D& r, const Bounds1DOptions& o, const std::string& where) {
    const double L = r.diagnostics_lower.support_bound;
    add(audit_witness_1d(s, asset, ts, g, r.witness_lower, r.lower, L, o), where);
    add(audit_witness_1d(s, asset, ts, g, r.witness_upper, r.upper, L, o), where);
    for (const Witness1D* w : {&r.witness_lower, &r.witness_upper}) {
      ++monotone_checked;
      if (!witness_nondecreasing(*w, 1e-7).nondecreasing) ++monotone_failed;
    }
  }
};

AuditLog audits;
int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void criterion_1() {
  std::mt19937 rng(101);
  double worst = 0.0, slowest = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const testing::RandomSurface data = testing::random_surface(rng, n, 4);
    const std::vector<Quote>& quotes = data.surface.quotes();
    const Quote q = quotes[std::uniform_int_distribution<std::size_t>(0, quotes.size() - 1)(rng)];
    const auto start = Clock::now();
    const Payoff1D g = Payoff1D::call(q.strike);
    const Bounds1D r = bound_payoff_1d(data.surface, "A", q.maturity, g);
    slowest = std::max(slowest, seconds_since(start));
    worst = std::max({worst, std::abs(r.lower - q.price), std::abs(r.upper - q.price)});
    audits.add_1d(data.surface, "A", q.maturity, g, r, {}, "replication");
  }
  report(1, worst <= 1e-6 && slowest < 1.0,
         fmt("50 surfaces, max |bound - C| = %.3g, slowest instance %.3f s", worst, slowest));
}

bool lp_feasible(const NormalizedSurface& s) {
  const double L_wit = witness_support_bound(s, "A");
  double need = s.spot("A");
  for (const Quote& q : s.quotes()) need = std::max(need, q.strike);
  const double L = std::max(2.0 * L_wit, need);
  const Payoff1D zero = Payoff1D::linear(0.0, 0.0);
  const int n = s.maturity_count();
  const BreakpointSet grid = breakpoint_set(s, "A", n, zero, L);
  const Lp1D program = build_lp_1d(s, "A", n, zero, grid, lp::Sense::kMinimize);
  return lp::solve(program.model).status == lp::Status::kOptimal;
}

void criterion_2() {
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0, total = 0, arbitrage = 0;
  for (int trial = 0; trial < 240; ++trial) {
    const testing::RandomSurface data = testing::random_surface(rng, 1 + trial % 3, 4);
    std::vector<Quote> quotes = data.surface.quotes();
    if (trial % 2 == 1) {
      Quote& q = quotes[std::uniform_int_distribution<std::size_t>(0, quotes.size() - 1)(rng)];
      switch (trial % 3) {
        case 0: q.price += 0.2 + 2.0 * u(rng); break;
        case 1: q.price = std::max(0.0, q.price - 0.2 - 2.0 * u(rng)); break;
        default: q.price = std::max(0.0, 10.0 - q.strike) * u(rng); break;
      }
    }
    const NormalizedSurface s({{"A", 10.0}}, quotes, data.surface.maturity_count(), 1e-12);
    const bool consistent = check_no_arbitrage(s, "A").consistent();
    arbitrage += !consistent;
    agree += consistent == lp_feasible(s);
    ++total;
  }
  report(2, agree == total,
         fmt("%d/%d surfaces agree (%d with arbitrage)", agree, total, arbitrage));
}

void criterion_3() {
  std::mt19937 rng(303);
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_real_distribution<double> loc(0.0, 50.0), w(0.01, 1.0);
  double worst = 0.0;
  bool shape = true;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Atom> atoms;
    double total = 0.0;
    const int m = count(rng);
    for (int i = 0; i < m; ++i) {
      atoms.push_back({std::round(loc(rng) * 1000) / 1000, w(rng)});
      total += atoms.back().weight;
    }
    double head = 0.0;
    for (int i = 0; i + 1 < m; ++i) head += (atoms[i].weight /= total);
    atoms.back().weight = 1.0 - head;
    const DiscreteDistribution d(atoms);
    const DiscreteDistribution back = distribution_of_psi(psi_of_distribution(d));
    if (back.size() != d.size()) {
      shape = false;
      continue;
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      worst = std::max({worst, std::abs(back.atoms()[i].location - d.atoms()[i].location),
                        std::abs(back.atoms()[i].weight - d.atoms()[i].weight)});
    }
  }
  report(3, shape && worst <= 1e-12,
         fmt("1000 laws, max atom error %.3g%s", worst, shape ? "" : ", atom count changed"));
}

NormalizedSurface load_pair() {
  const std::string dir = MBOUNDS_TEST_DATA;
  std::ifstream q(dir + "/pair_quotes.csv"), s(dir + "/pair_spots.csv");
  const std::vector<RawQuote> raw = read_quotes_csv(q);
  std::map<double, double> df;
  for (const RawQuote& r : raw) df[r.maturity] = 1.0;
  return normalize(load_surface(raw, read_spots_csv(s), df));
}

void criterion_4() {
  const NormalizedSurface s = load_pair();
  double slack = 1e300;
  int strict = 0, strikes = 0;
  for (double k = 12.0; k <= 24.0; k += 1.0) {
    const Payoff2D g = Payoff2D::canonical(1, 1, k);
    Bounds2DOptions all;
    all.support_bound = default_support_bound_2d(s, "A", "B");
    Bounds2DOptions only = all;
    only.target_maturity_only = true;
    const Bounds2D full = bound_payoff_2d_exact(s, "A", "B", 2, g, all);
    const Bounds2D loose = bound_payoff_2d_exact(s, "A", "B", 2, g, only);
    const double L = *all.support_bound;
    audits.add(audit_witness_2d(s, "A", "B", 2, g, full.witness_lower, full.lower, L, all), "tightening");
    audits.add(audit_witness_2d(s, "A", "B", 2, g, full.witness_upper, full.upper, L, all), "tightening");
    audits.add(audit_witness_2d(s, "A", "B", 2, g, loose.witness_lower, loose.lower, L, only), "tightening");
    audits.add(audit_witness_2d(s, "A", "B", 2, g, loose.witness_upper, loose.upper, L, only), "tightening");
    const double lo = full.lower - loose.lower, hi = loose.upper - full.upper;
    slack = std::min({slack, lo, hi});
    strict += lo > 1e-8 || hi > 1e-8;
    ++strikes;
  }
  report(4, slack >= -1e-8 && strict >= 1,
         fmt("%d strikes, min slack %.3g, strictly tighter on %d", strikes, slack, strict));
}

double tree_call(double s, double a, double b, double k, int t) {
  double v = 0.0;
  for (double da : {-a, a}) {
    if (t == 1) {
      v += 0.5 * std::max(0.0, s + da - k);
      continue;
    }
    for (double db : {-b, b}) v += 0.25 * std::max(0.0, s + da + db - k);
  }
  return v;
}

NormalizedSurface toy_surface() {
  return NormalizedSurface({{"A", 1.5}, {"B", 1.75}},
                           {{"A", 1, 1.75, tree_call(1.5, 0.25, 0.25, 1.75, 1)},
                            {"A", 2, 1.75, tree_call(1.5, 0.25, 0.25, 1.75, 2)},
                            {"B", 1, 1.75, tree_call(1.75, 0.125, 0.25, 1.75, 1)},
                            {"B", 2, 1.75, tree_call(1.75, 0.125, 0.25, 1.75, 2)}});
}

void criterion_5() {
  const NormalizedSurface s = toy_surface();
  const Payoff2D g = Payoff2D::canonical(1, 1, 3);
  Bounds2DOptions o;
  o.support_bound = 4.0;
  o.restricted_lattice = true;
  const auto start = Clock::now();
  const Bounds2D exact = bound_payoff_2d_exact(s, "A", "B", 2, g, o);
  audits.add(audit_witness_2d(s, "A", "B", 2, g, exact.witness_lower, exact.lower, 4.0, o), "convergence");
  audits.add(audit_witness_2d(s, "A", "B", 2, g, exact.witness_upper, exact.upper, 4.0, o), "convergence");
  bool within = true, shrinking = true;
  std::vector<double> lower, upper;
  std::string detail = fmt("exact [%.6f, %.6f]", exact.lower, exact.upper);
  for (double eps : {0.5, 0.25, 0.125}) {
    const Bounds2DApprox a = bound_payoff_2d_approx(s, "A", "B", 2, g, eps, o);
    audits.add(audit_witness_lattice(s, "A", "B", 2, g, eps, a.witness_lower, a.lower, o), "convergence");
    audits.add(audit_witness_lattice(s, "A", "B", 2, g, eps, a.witness_upper, a.upper, o), "convergence");
    const double limit = g.lattice_lipschitz() * eps * 2 + 1e-6;
    within = within && std::abs(a.lower - exact.lower) <= limit &&
             std::abs(a.upper - exact.upper) <= limit;
    lower.push_back(a.lower);
    upper.push_back(a.upper);
    detail += fmt(", eps %.3g [%.6f, %.6f]", eps, a.lower, a.upper);
  }
  for (std::size_t i = 2; i < lower.size(); ++i) {
    shrinking = shrinking &&
                std::abs(lower[i] - lower[i - 1]) <= std::abs(lower[i - 1] - lower[i - 2]) + 1e-9 &&
                std::abs(upper[i] - upper[i - 1]) <= std::abs(upper[i - 1] - upper[i - 2]) + 1e-9;
  }
  const double elapsed = seconds_since(start);
  report(5, within && shrinking && elapsed < 60.0,
         detail + fmt(", %.1f s%s%s", elapsed, within ? "" : ", distance above limit",
                      shrinking ? "" : ", gaps grow"));
}

void criterion_6() {
  const double x0 = 37.75, y0 = 11.22, k = 10.0;
  BasketInstance inst{2, 2.0 * x0, {{{1.0, 0.0}, 0.0, x0}, {{0.0, 1.0}, 0.0, y0}},
                      {{1.0, 1.0}, k}};
  const BasketBounds b = bound_basket(inst);
  audits.add(audit_witness_basket(inst, b.witness_lower, b.lower), "deep in the money");
  audits.add(audit_witness_basket(inst, b.witness_upper, b.upper), "deep in the money");
  const double intrinsic = x0 + y0 - k;
  const bool pass = b.upper - b.lower <= 1e-6 && std::abs(b.lower - intrinsic) <= 1e-6 &&
                    std::abs(b.upper - intrinsic) <= 1e-6;
  report(6, pass,
         fmt("L = %.2f, bounds [%.6f, %.6f], intrinsic %.2f", inst.L, b.lower, b.upper,
             intrinsic));
}

void criterion_7() {
  std::mt19937 rng(707);
  std::uniform_int_distribution<int> dim(1, 4), cons(0, 5), wi(-2, 3);
  std::uniform_real_distribution<double> kk(0.0, 3.0);
  int over = 0, mismatched = 0, brute = 0;
  for (int trial = 0; trial < 200; ++trial) {
    BasketInstance inst;
    inst.n = dim(rng);
    inst.L = 2.0;
    const int m = cons(rng);
    for (int i = 0; i < m; ++i) {
      BasketConstraint c;
      for (int h = 0; h < inst.n; ++h) c.weights.push_back(wi(rng));
      if (std::all_of(c.weights.begin(), c.weights.end(), [](double w) { return w == 0; })) {
        c.weights[0] = 1;
      }
      c.strike = std::round(kk(rng) * 4) / 4;
      inst.constraints.push_back(c);
    }
    inst.target = {std::vector<double>(inst.n, 1.0), 1.0};
    const VertexSet v = enumerate_vertices(inst);
    over += static_cast<double>(v.size()) > vertex_count_bound(inst.n, m);
    if (inst.n <= 3) {
      ++brute;
      mismatched += !testing::same_points(v.points, testing::brute_vertices(inst));
    }
  }
  report(7, over == 0 && mismatched == 0,
         fmt("200 instances, %d above the bound, %d/%d brute-force mismatches", over,
             mismatched, brute));
}

void criterion_8() {
  std::mt19937 rng(808);
  double worst_basket = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const testing::RandomSurface data = testing::random_surface(rng, 1, 4);
    const double kt = 0.25 * std::uniform_int_distribution<int>(1, 80)(rng);
    Bounds1DOptions o;
    o.support_bound = default_support_bound_1d(data.surface, "A", Payoff1D::call(kt));
    const Bounds1D one = bound_payoff_1d(data.surface, "A", 1, Payoff1D::call(kt), o);
    audits.add_1d(data.surface, "A", 1, Payoff1D::call(kt), one, o, "cross-module");
    BasketInstance inst{1, *o.support_bound, {{{1.0}, 0.0, 10.0}}, {{1.0}, kt}};
    for (const Quote& q : data.surface.quotes()) {
      if (q.strike > 0.0) inst.constraints.push_back({{1.0}, q.strike, q.price});
    }
    const BasketBounds b = bound_basket(inst);
    audits.add(audit_witness_basket(inst, b.witness_lower, b.lower), "cross-module");
    audits.add(audit_witness_basket(inst, b.witness_upper, b.upper), "cross-module");
    worst_basket =
        std::max({worst_basket, std::abs(b.lower - one.lower), std::abs(b.upper - one.upper)});
  }

  const NormalizedSurface s = toy_surface();
  Bounds2DOptions o2;
  o2.support_bound = 4.0;
  Bounds1DOptions o1;
  o1.support_bound = 4.0;
  double excess = -1e300;
  for (double k : {1.25, 1.75, 2.25}) {
    const Bounds1D one = bound_payoff_1d(s, "A", 2, Payoff1D::call(k), o1);
    audits.add_1d(s, "A", 2, Payoff1D::call(k), one, o1, "cross-module");
    for (double eps : {0.5, 0.25}) {
      const Payoff2D g = Payoff2D::canonical(1, 0, k);
      const Bounds2DApprox a = bound_payoff_2d_approx(s, "A", "B", 2, g, eps, o2);
      audits.add(audit_witness_lattice(s, "A", "B", 2, g, eps, a.witness_lower, a.lower, o2), "cross-module");
      audits.add(audit_witness_lattice(s, "A", "B", 2, g, eps, a.witness_upper, a.upper, o2), "cross-module");
      const double allowed = eps * 2 + 1e-6;
      excess = std::max({excess, std::abs(a.lower - one.lower) - allowed,
                         std::abs(a.upper - one.upper) - allowed});
    }
  }
  report(8, worst_basket <= 1e-6 && excess <= 0.0,
         fmt("basket vs 1D max diff %.3g; 2D beta = 0 vs 1D worst margin %.3g", worst_basket,
             excess));
}

void criterion_9() {
  std::mt19937 rng(909);
  for (int trial = 0; trial < 20; ++trial) {
    const testing::RandomPair data = testing::random_pair(rng, 2, 2);
    const Payoff2D g = Payoff2D::canonical(1.0, 0.5 + 0.1 * trial, 10.0 + trial);
    const int ts = 1 + trial % 2;
    const Bounds2D r = bound_payoff_2d_exact(data.surface, "A", "B", ts, g);
    const double L = r.diagnostics_lower.support_bound;
    audits.add(audit_witness_2d(data.surface, "A", "B", ts, g, r.witness_lower, r.lower, L), "audit");
    audits.add(audit_witness_2d(data.surface, "A", "B", ts, g, r.witness_upper, r.upper, L), "audit");
  }
  report(9, audits.failed == 0 && audits.monotone_failed == 0,
         fmt("%d witnesses audited, worst residual %.3g (%s); %d/%d 1D witnesses nondecreasing",
             audits.checked, audits.worst, audits.worst_label.c_str(),
             audits.monotone_checked - audits.monotone_failed, audits.monotone_checked));
}

}  // namespace

int main() {
  const std::function<void()> criteria[] = {criterion_1, criterion_2, criterion_3,
                                            criterion_4, criterion_5, criterion_6,
                                            criterion_7, criterion_8, criterion_9};
  int id = 1;
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      report(id, false, std::string("threw: ") + e.what());
    }
    ++id;
  }
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
