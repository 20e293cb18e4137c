#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mbounds/cli.hpp"

int main(int argc, char** argv) {
  using namespace mbounds::cli;
  CLI::App app{"No-arbitrage bounds on option prices from observed call quotes"};
  RunConfig config;
  std::string command, format = "json";

  app.add_option("command", command,
                 "check | bound1d | bound2d-exact | bound2d-approx | basket")
      ->required();
  app.add_option("--quotes", config.quotes, "Quote CSV (basket: instance JSON)")
      ->envname("MB_QUOTES");
  app.add_option("--spots", config.spots, "Spot CSV")->envname("MB_SPOTS");
  app.add_option("--discounts", config.discounts, "Discount factor CSV")
      ->envname("MB_DISCOUNTS");
  app.add_option("--asset", config.asset, "Asset (first asset for 2D)")->envname("MB_ASSET");
  app.add_option("--asset2", config.asset2, "Second asset for 2D")->envname("MB_ASSET2");
  app.add_option("--maturity", config.maturity, "Target maturity as quoted")
      ->envname("MB_MATURITY");
  app.add_option("--payoff", config.payoff,
                 "call:K | put:K | linear:a,b | pwl:x:y,...;s | call2:a,b,k")
      ->envname("MB_PAYOFF");
  app.add_option("--L", config.L, "Support bound")->envname("MB_L");
  app.add_option("--eps", config.eps, "Lattice step")->envname("MB_EPS");
  app.add_option("--tol", config.tol, "Arbitrage check tolerance")->envname("MB_TOL");
  app.add_option("--format", format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->envname("MB_FORMAT");
  app.add_option("--jobs", config.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->envname("MB_JOBS");
  app.add_option("--budget", config.budget, "Variable budget of 2D programs")
      ->envname("MB_BUDGET");
  app.add_option("--strikes", config.strikes, "Strike grid for a sweep")
      ->delimiter(',')
      ->envname("MB_STRIKES");
  app.add_flag("--restricted-lattice", config.restricted_lattice,
               "Keep lattice nodes near graph edges only")
      ->envname("MB_RESTRICTED_LATTICE");
  app.add_flag("--target-only", config.target_maturity_only,
               "Use the target maturity quotes only")
      ->envname("MB_TARGET_ONLY");
  app.add_flag("--witness", config.witness, "Include witness distributions")
      ->envname("MB_WITNESS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const auto parsed = parse_command(command);
  if (!parsed) {
    std::cerr << "error: Usage: unknown command '" << command << "'\n";
    return 1;
  }
  config.command = *parsed;
  config.format = format == "csv" ? Format::kCsv : Format::kJson;
  return run(config, std::cout, std::cerr);
}
