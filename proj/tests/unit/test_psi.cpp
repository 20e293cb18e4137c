#include <cmath>
#include <random>

#include "doctest.h"
#include "mbounds/error.hpp"
#include "mbounds/psi.hpp"

using namespace mbounds;

namespace {

DiscreteDistribution random_law(std::mt19937& rng, int max_atoms) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_real_distribution<double> loc(0.0, 50.0);
  std::uniform_real_distribution<double> w(0.05, 1.0);
  const int n = count(rng);
  std::vector<Atom> atoms;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    atoms.push_back({std::round(loc(rng) * 100) / 100, w(rng)});
    total += atoms.back().weight;
  }
  for (Atom& a : atoms) a.weight /= total;
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) s += atoms[i].weight;
  atoms.back().weight = 1.0 - s;
  return DiscreteDistribution(atoms);
}

}  // namespace

TEST_CASE("psi: evaluation of single and two-atom laws") {
  const PsiFunction one = psi_of_distribution(DiscreteDistribution({{5.0, 1.0}}));
  CHECK(one(3.0) == doctest::Approx(2.0));
  CHECK(one(5.0) == doctest::Approx(0.0));
  CHECK(right_derivative(one, 0.0) == doctest::Approx(-1.0));
  const PsiFunction two =
      psi_of_distribution(DiscreteDistribution({{0.0, 0.5}, {10.0, 0.5}}));
  CHECK(two(4.0) == doctest::Approx(3.0));
  CHECK(right_derivative(two, 4.0) == doctest::Approx(-0.5));
  CHECK(right_derivative(two, 12.0) == doctest::Approx(0.0));
}

TEST_CASE("psi: inverse of a hand-built transform") {
  const PsiFunction psi({{0.0, 5.0}, {2.0, 3.0}, {8.0, 0.0}}, 0.0);
  const DiscreteDistribution d = distribution_of_psi(psi);
  REQUIRE(d.size() == 2);
  CHECK(d.atoms()[0].location == doctest::Approx(2.0));
  CHECK(d.atoms()[0].weight == doctest::Approx(0.5));
  CHECK(d.atoms()[1].location == doctest::Approx(8.0));
  CHECK(d.atoms()[1].weight == doctest::Approx(0.5));
  CHECK(d.mean() == doctest::Approx(psi(0.0)));

  const DiscreteDistribution single =
      distribution_of_psi(psi_of_distribution(DiscreteDistribution({{5.0, 1.0}})));
  REQUIRE(single.size() == 1);
  CHECK(single.atoms()[0].location == 5.0);
}

TEST_CASE("psi: invalid transforms are rejected") {
  CHECK_THROWS_AS(distribution_of_psi(PsiFunction({{0.0, 12.0}, {10.0, 0.0}}, 0.0)),
                  Error);  // slope -1.2
  CHECK_THROWS_AS(distribution_of_psi(PsiFunction({{0.0, 5.0}, {5.0, 0.0}}, 0.1)),
                  Error);  // increasing tail
  CHECK_THROWS_AS(distribution_of_psi(PsiFunction({{0.0, 5.0}, {2.0, 4.0}, {4.0, 1.0}}, 0.0)),
                  Error);  // concave
  CHECK_THROWS_AS(distribution_of_psi(PsiFunction({{0.0, 5.0}, {4.0, 1.0}}, 0.0)),
                  Error);  // never reaches 0
  CHECK_THROWS_AS(distribution_of_psi(PsiFunction({{1.0, 5.0}, {6.0, 0.0}}, 0.0)),
                  Error);  // does not start at 0
  try {
    distribution_of_psi(PsiFunction({{0.0, 12.0}, {10.0, 0.0}}, 0.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidPsi);
  }
}

TEST_CASE("psi: invalid distributions are rejected") {
  CHECK_THROWS_AS(DiscreteDistribution({{-1.0, 1.0}}), Error);
  CHECK_THROWS_AS(DiscreteDistribution({{1.0, 0.4}, {2.0, 0.4}}), Error);
  CHECK_THROWS_AS(DiscreteDistribution(std::vector<Atom>{}), Error);
}

TEST_CASE("psi: round trip and transform properties on random laws") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const DiscreteDistribution d = random_law(rng, 8);
    const PsiFunction psi = psi_of_distribution(d);
    CHECK(psi(0.0) == doctest::Approx(d.mean()).epsilon(1e-14));
    const auto& slopes = psi.slopes();
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      CHECK(slopes[i] <= 0.0);
      CHECK(slopes[i] >= -1.0);
      if (i > 0) CHECK(slopes[i] >= slopes[i - 1]);
    }
    CHECK(psi.terminal_slope() == 0.0);
    for (double x = 0.0; x < 60.0; x += 0.7) {
      CHECK(psi(x) >= psi(0.0) - x - 1e-12);
      CHECK(psi(x) == doctest::Approx(d.call(x)).epsilon(1e-12));
    }
    const DiscreteDistribution back = distribution_of_psi(psi);
    REQUIRE(back.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(std::abs(back.atoms()[i].location - d.atoms()[i].location) <= 1e-12);
      CHECK(std::abs(back.atoms()[i].weight - d.atoms()[i].weight) <= 1e-12);
    }
  }
}

TEST_CASE("psi: monotone sequences") {
  const PsiFunction a = psi_of_distribution(DiscreteDistribution({{5.0, 1.0}}));
  const PsiFunction b =
      psi_of_distribution(DiscreteDistribution({{0.0, 0.5}, {10.0, 0.5}}));
  CHECK(check_nondecreasing({a, a}).nondecreasing);
  CHECK(check_nondecreasing({a, b}).nondecreasing);
  const MonotonicityResult r = check_nondecreasing({b, a});
  CHECK_FALSE(r.nondecreasing);
  REQUIRE(r.first_violation.has_value());
  CHECK(r.first_violation->first == 0);
  CHECK(r.first_violation->second == doctest::Approx(5.0));
  const PsiFunction c = psi_of_distribution(DiscreteDistribution({{6.0, 1.0}}));
  CHECK_THROWS_AS(check_nondecreasing({a, c}), Error);
}

TEST_CASE("psi: breakpoint comparison matches dense comparison") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    // Same mean through a mean-preserving spread of a common base.
    const DiscreteDistribution d1 = random_law(rng, 4);
    const DiscreteDistribution d2 = random_law(rng, 4);
    const double shift = d1.mean() - d2.mean();
    std::vector<Atom> moved;
    for (const Atom& a : d2.atoms()) moved.push_back({a.location + std::max(shift, 0.0), a.weight});
    std::vector<Atom> base;
    for (const Atom& a : d1.atoms()) base.push_back({a.location + std::max(-shift, 0.0), a.weight});
    const PsiFunction p1 = psi_of_distribution(DiscreteDistribution(base));
    const PsiFunction p2 = psi_of_distribution(DiscreteDistribution(moved));
    if (std::abs(p1(0.0) - p2(0.0)) > 1e-9) continue;
    bool dense = true;
    for (double x = 0.0; x < 120.0; x += 0.01) {
      if (p1(x) > p2(x) + 1e-9) dense = false;
    }
    CHECK(check_nondecreasing({p1, p2}).nondecreasing == dense);
  }
}
