#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mbounds/error.hpp"
#include "mbounds/quotes.hpp"

using namespace mbounds;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidInput;
}

}  // namespace

TEST_CASE("quotes: ingestion and deduplication") {
  const std::map<std::string, double> spots{{"A", 12.0}};
  const std::map<double, double> df{{52.0, 1.0}};
  CHECK(load_surface({{"A", 52, 10.0, 5.0}}, spots, df).quotes.size() == 1);
  CHECK(load_surface({{"A", 52, 10.0, 5.0}, {"A", 52, 10.0, 5.0}}, spots, df)
            .quotes.size() == 1);
  CHECK(code_of([&] {
          load_surface({{"A", 52, 10, 5}, {"A", 52, 10, 6}}, spots, df);
        }) == ErrorCode::kConflictingDuplicate);
  CHECK(code_of([&] { load_surface({{"B", 52, 10, 5}}, spots, df); }) ==
        ErrorCode::kMissingSpot);
  CHECK(code_of([&] { load_surface({{"A", 26, 10, 5}}, spots, df); }) ==
        ErrorCode::kMissingDiscountFactor);
  CHECK(code_of([&] { load_surface({{"A", 52, 10, -5}}, spots, df); }) ==
        ErrorCode::kNegativeValue);
}

TEST_CASE("quotes: strike-0 quotes must equal the spot") {
  const std::map<std::string, double> spots{{"A", 12.0}};
  const std::map<double, double> df{{1.0, 0.9}};
  CHECK(normalize(load_surface({{"A", 1, 0.0, 12.0}}, spots, df)).quotes().size() == 1);
  CHECK(code_of([&] { normalize(load_surface({{"A", 1, 0.0, 11.0}}, spots, df)); }) ==
        ErrorCode::kArbitragePresent);
}

TEST_CASE("quotes: normalization discounts strikes and ranks maturities") {
  const std::map<std::string, double> spots{{"A", 12.0}};
  const std::map<double, double> df{{0.5, 1.0}, {1.0, std::exp(-0.05)}};
  const NormalizedSurface s = normalize(
      load_surface({{"A", 1.0, 10.0, 4.0}, {"A", 0.5, 10.0, 3.0}, {"A", 1.0, 0.0, 12.0}},
                   spots, df));
  CHECK(s.maturity_count() == 2);
  const auto t1 = s.slice("A", 1);
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].strike == 10.0);
  const auto t2 = s.slice("A", 2);
  REQUIRE(t2.size() == 2);
  CHECK(t2[0].strike == 0.0);
  CHECK(t2[1].strike == doctest::Approx(10.0 * std::exp(-0.05)).epsilon(1e-15));
  CHECK(t2[1].strike == doctest::Approx(9.512294245007140));
  CHECK(normalize(s) == s);
  CHECK(flat_rate_discount(0.05, 1.0) == doctest::Approx(std::exp(-0.05)));
  const auto curve = flat_rate_curve({26, 52}, 0.05, 1.0 / 52);
  CHECK(curve.at(52) == doctest::Approx(std::exp(-0.05)));
}

TEST_CASE("quotes: relabeling maturities monotonically changes nothing") {
  const std::map<std::string, double> spots{{"A", 12.0}};
  const std::vector<RawQuote> a{{"A", 1, 10, 5}, {"A", 2, 20, 2}};
  const std::vector<RawQuote> b{{"A", 30, 10, 5}, {"A", 90, 20, 2}};
  const NormalizedSurface sa = normalize(load_surface(a, spots, {{1, 1}, {2, 1}}));
  const NormalizedSurface sb = normalize(load_surface(b, spots, {{30, 1}, {90, 1}}));
  CHECK(sa == sb);
}

TEST_CASE("quotes: slices") {
  const NormalizedSurface s({{"A", 12.0}}, {{"A", 1, 10, 5}, {"A", 2, 20, 2}});
  const auto s2 = s.slice("A", 2);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].strike == 20);
  CHECK(s2[0].price == 2);
  CHECK(s.slice_geq("A", 1).size() == 2);
  CHECK(s.slice("A", 3).empty());
  CHECK(code_of([&] { s.slice("B", 1); }) == ErrorCode::kUnknownAsset);
  auto all = s.slice("A", 1);
  const auto later = s.slice_geq("A", 2);
  all.insert(all.end(), later.begin(), later.end());
  CHECK(all == s.slice_geq("A", 1));
}

TEST_CASE("quotes: csv readers") {
  std::istringstream q("asset,maturity,strike,price\nA,52,10.0,5.0\n\nA,52,20,1.5\n");
  const auto records = read_quotes_csv(q);
  REQUIRE(records.size() == 2);
  CHECK(records[1].strike == 20.0);
  std::istringstream sp("asset,spot\nA,12\n");
  CHECK(read_spots_csv(sp).at("A") == 12.0);
  std::istringstream d("maturity,df\n52,0.95\n");
  CHECK(read_discounts_csv(d).at(52.0) == 0.95);
  std::istringstream bad("asset,maturity,strike,price\nA,52,ten,5\n");
  CHECK(code_of([&] { read_quotes_csv(bad); }) == ErrorCode::kInvalidInput);
  std::istringstream header("asset,strike\n");
  CHECK(code_of([&] { read_quotes_csv(header); }) == ErrorCode::kInvalidInput);
}
