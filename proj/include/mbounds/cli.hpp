#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbounds/payoff.hpp"

namespace mbounds::cli {

enum class Command { kCheck, kBound1D, kBound2DExact, kBound2DApprox, kBasket };
enum class Format { kJson, kCsv };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

struct RunConfig {
  Command command = Command::kCheck;
  std::string quotes;     // CSV, or JSON for basket
  std::string spots;      // CSV
  std::string discounts;  // CSV, optional: factor 1 everywhere
  std::string asset;
  std::string asset2;
  std::optional<double> maturity;  // raw label as in the quote file
  std::string payoff;
  std::optional<double> L;
  std::optional<double> eps;
  double tol = 1e-9;
  Format format = Format::kJson;
  int jobs = 1;
  std::optional<double> budget;
  bool restricted_lattice = false;
  bool target_maturity_only = false;
  bool witness = false;
  std::vector<double> strikes;  // sweep grid; empty runs a single bound
};

/// Throws Error(kUsage) when a required input of the command is missing.
void validate(const RunConfig& config);

/// Payoff specs: call:K, put:K, linear:a,b (a + b x), pwl:x:y,x:y,...;s.
Payoff1D parse_payoff_1d(const std::string& spec);
/// call2:a,b,k is (a x + b y - k)^+; call:K and put:K act on the first asset.
Payoff2D parse_payoff_2d(const std::string& spec);
/// Same spec with the strike replaced; call, put and call2 only.
std::string with_strike(const std::string& spec, double strike);

std::string sha256_hex(std::string_view data);

struct SweepRow {
  double strike = 0.0;
  bool ok = false;
  double lower = 0.0;
  double upper = 0.0;
  std::string error;  // code name when !ok
};

/// One bound per strike on a pool of config.jobs workers; rows come back in
/// grid order. Throws Error(kUsage) on an empty grid.
std::vector<SweepRow> sweep(const RunConfig& config, const std::vector<double>& grid);

/// Writes the report to out and diagnostics to err. Returns 0 on success, 2
/// when check finds arbitrage, 1 on errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mbounds::cli
