#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mbounds/cli.hpp"
#include "mbounds/error.hpp"

using namespace mbounds;
using namespace mbounds::cli;
using Json = nlohmann::json;

namespace {

const std::string kData = MBOUNDS_TEST_DATA;

RunConfig pair_config() {
  RunConfig c;
  c.command = Command::kBound2DExact;
  c.quotes = kData + "/pair_quotes.csv";
  c.spots = kData + "/pair_spots.csv";
  c.asset = "A";
  c.asset2 = "B";
  c.maturity = 2;
  c.payoff = "call2:1,1,18";
  return c;
}

struct Ran {
  int code;
  std::string out;
  std::string err;
};

Ran execute(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: check reports calendar arbitrage") {
  RunConfig c;
  c.command = Command::kCheck;
  c.quotes = kData + "/calendar_quotes.csv";
  c.spots = kData + "/single_spots.csv";
  const Ran r = execute(c);
  CHECK(r.code == 2);
  const Json j = Json::parse(r.out);
  CHECK(j["status"] == "arbitrage");
  REQUIRE(j["violations"].size() == 1);
  CHECK(j["violations"][0]["kind"] == "InteriorPoint");
  CHECK(j["violations"][0]["strike"] == 10.0);
  CHECK(j["inputs_digest"].get<std::string>().size() == 64);

  c.quotes = kData + "/pair_quotes.csv";
  c.spots = kData + "/pair_spots.csv";
  CHECK(execute(c).code == 0);
}

TEST_CASE("cli: bound1d replicates a quoted call") {
  RunConfig c;
  c.command = Command::kBound1D;
  c.quotes = kData + "/single_quotes.csv";
  c.spots = kData + "/single_spots.csv";
  c.discounts = kData + "/single_discounts.csv";
  c.asset = "A";
  c.maturity = 1;
  c.payoff = "call:15";
  c.witness = true;
  const Ran r = execute(c);
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["lower"].get<double>() == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(j["upper"].get<double>() == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(j["status"] == "optimal");
  CHECK(j["diagnostics"]["lower"]["verified"] == true);
  CHECK(j["diagnostics"]["upper"]["verified"] == true);
  CHECK(j["witness"]["upper"]["marginals"].size() == 2);

  c.format = Format::kCsv;
  CHECK(execute(c).out == "command,lower,upper,status\nbound1d,1.5,1.5,optimal\n");
}

TEST_CASE("cli: basket reports and malformed input") {
  RunConfig c;
  c.command = Command::kBasket;
  c.quotes = kData + "/basket.json";
  const Ran ok = execute(c);
  REQUIRE(ok.code == 0);
  const Json j = Json::parse(ok.out);
  CHECK(j["lower"].get<double>() <= j["upper"].get<double>());
  CHECK(j["diagnostics"]["upper"]["verified"] == true);

  c.quotes = kData + "/basket_malformed.json";
  const Ran bad = execute(c);
  CHECK(bad.code == 1);
  CHECK(bad.err.find("constraints[0].price") != std::string::npos);
  CHECK(Json::parse(bad.out)["error"]["code"] == "InvalidInput");

  c.quotes = kData + "/missing.json";
  CHECK(execute(c).code == 1);
}

TEST_CASE("cli: usage errors") {
  RunConfig c = pair_config();
  c.asset2.clear();
  CHECK_THROWS_AS(validate(c), Error);
  CHECK(execute(c).code == 1);
  c = pair_config();
  c.maturity = 5;
  CHECK(execute(c).code == 1);
  c = pair_config();
  c.command = Command::kBound2DApprox;
  CHECK(execute(c).code == 1);
  try {
    sweep(pair_config(), {});
    FAIL("expected a usage error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUsage);
  }
}

TEST_CASE("cli: sweeps") {
  RunConfig c = pair_config();
  const std::vector<SweepRow> one = sweep(c, {18});
  REQUIRE(one.size() == 1);
  CHECK(one[0].ok);

  const std::vector<double> grid{14, 16, 18, 20, 22};
  c.jobs = 3;
  const std::vector<SweepRow> rows = sweep(c, grid);
  REQUIRE(rows.size() == grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].strike == grid[i]);
    REQUIRE(rows[i].ok);
    CHECK(rows[i].lower <= rows[i].upper + 1e-9);
    if (i > 0) {
      CHECK(rows[i].upper <= rows[i - 1].upper + 1e-9);
      CHECK(rows[i].lower <= rows[i - 1].lower + 1e-9);
      // Call prices are 1-Lipschitz and convex in the strike.
      CHECK(rows[i - 1].upper - rows[i].upper <= 2.0 * (grid[i] - grid[i - 1]) + 1e-9);
    }
  }
  c.jobs = 1;
  const std::vector<SweepRow> serial = sweep(c, grid);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(serial[i].lower == rows[i].lower);
    CHECK(serial[i].upper == rows[i].upper);
  }

  c.strikes = {10, 20, 30};
  c.format = Format::kCsv;
  const Ran r = execute(c);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("strike,lower,upper\n10,", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);

  RunConfig b;
  b.command = Command::kBasket;
  b.quotes = kData + "/basket.json";
  b.jobs = 2;
  const std::vector<SweepRow> br = sweep(b, {10, 20, 30});
  for (std::size_t i = 1; i < br.size(); ++i) CHECK(br[i].upper <= br[i - 1].upper + 1e-9);
}

TEST_CASE("cli: output is byte-identical across runs") {
  RunConfig c = pair_config();
  c.witness = true;
  c.jobs = 2;
  const Ran a = execute(c);
  const Ran b = execute(c);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  c.command = Command::kBound2DApprox;
  c.eps = 2.0;
  c.restricted_lattice = true;
  CHECK(execute(c).out == execute(c).out);
}

TEST_CASE("cli: payoff specs and digests") {
  CHECK(parse_payoff_1d("call:10")(12.0) == 2.0);
  CHECK(parse_payoff_1d("put:10")(7.0) == 3.0);
  CHECK(parse_payoff_1d("linear:1,2")(3.0) == 7.0);
  const Payoff1D pwl = parse_payoff_1d("pwl:0:0,5:5,10:0;0");
  CHECK(pwl(5.0) == 5.0);
  CHECK(pwl(12.0) == 0.0);
  CHECK_THROWS_AS(parse_payoff_1d("call:x"), Error);
  CHECK_THROWS_AS(parse_payoff_1d("spread:1"), Error);
  CHECK(parse_payoff_2d("call2:1,2,3")(1.0, 2.0) == 2.0);
  CHECK(parse_payoff_2d("call:3")(5.0, 100.0) == 2.0);
  CHECK(with_strike("call2:1,0.5,3", 7.5) == "call2:1,0.5,7.5");
  CHECK_THROWS_AS(with_strike("linear:1,2", 3), Error);
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(parse_command("bound2d-approx") == Command::kBound2DApprox);
  CHECK_FALSE(parse_command("bound3d").has_value());
}
