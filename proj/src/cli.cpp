#include "mbounds/cli.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mbounds/arbitrage.hpp"
#include "mbounds/basket.hpp"
#include "mbounds/bounds1d.hpp"
#include "mbounds/bounds2d.hpp"
#include "mbounds/error.hpp"
#include "mbounds/quotes.hpp"
#include "mbounds/verify.hpp"

namespace mbounds::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kAuditTol = 1e-7;

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Error usage(const std::string& msg) { return Error(ErrorCode::kUsage, msg); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<double> numbers(const std::string& text, char sep, const std::string& spec) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw usage("payoff '" + spec + "': '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw usage("payoff '" + spec + "' has no ':'");
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::vector<double> args(const std::string& spec, std::size_t count) {
  const auto [kind, rest] = split_spec(spec);
  std::vector<double> v = numbers(rest, ',', spec);
  if (v.size() != count) {
    throw usage("payoff '" + spec + "' expects " + std::to_string(count) + " numbers");
  }
  return v;
}

// Loaded quote data with the digest of the raw files.
struct Inputs {
  std::string digest;
  NormalizedSurface surface;
  std::map<double, double> discounts;
};

Inputs load_inputs(const RunConfig& c) {
  std::string material;
  auto add = [&](const std::string& role, const std::string& text) {
    material += role;
    material.push_back('\0');
    material += std::to_string(text.size());
    material.push_back('\0');
    material += text;
  };
  const std::string quotes = slurp(c.quotes);
  const std::string spots = slurp(c.spots);
  add("quotes", quotes);
  add("spots", spots);
  std::istringstream qs(quotes), ss(spots);
  const std::vector<RawQuote> raw = read_quotes_csv(qs);
  std::map<double, double> df;
  if (!c.discounts.empty()) {
    const std::string text = slurp(c.discounts);
    add("discounts", text);
    std::istringstream ds(text);
    df = read_discounts_csv(ds);
  } else {
    for (const RawQuote& q : raw) df[q.maturity] = 1.0;
  }
  Inputs in;
  in.digest = sha256_hex(material);
  in.discounts = df;
  in.surface = normalize(load_surface(raw, read_spots_csv(ss), df, c.tol), c.tol);
  return in;
}

int rank_of(const Inputs& in, double maturity) {
  const std::vector<double>& raw = in.surface.raw_maturities();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == maturity) return static_cast<int>(i) + 1;
  }
  throw usage("maturity " + fmt12(maturity) + " is not quoted");
}

double discount_at(const Inputs& in, double maturity) {
  const auto it = in.discounts.find(maturity);
  return it == in.discounts.end() ? 1.0 : it->second;
}

// D g(x / D) in discounted coordinates.
Payoff1D discounted(const Payoff1D& g, double d) {
  std::vector<std::pair<double, double>> pts = g.breakpoints();
  for (auto& [x, y] : pts) {
    x *= d;
    y *= d;
  }
  return Payoff1D(pts, g.terminal_slope());
}

Payoff2D discounted(const Payoff2D& g, double d) {
  return Payoff2D::canonical(g.alpha(), g.beta(), g.k() * d);
}

Json diagnostics_json(const Diagnostics& d, const Audit& audit) {
  return Json{{"variables", d.variables},
              {"constraints", d.constraints},
              {"nonzeros", d.nonzeros},
              {"iterations", d.iterations},
              {"max_residual", round12(d.max_residual)},
              {"support_bound", round12(d.support_bound)},
              {"audit_residual", round12(audit.max_residual)},
              {"verified", audit.passed(kAuditTol)}};
}

Json witness_json(const Witness1D& w) {
  Json marginals = Json::array();
  for (std::size_t t = 0; t < w.marginals.size(); ++t) {
    Json atoms = Json::array();
    for (std::size_t i = 0; i < w.grid.size(); ++i) {
      if (w.marginals[t][i] > 1e-12) {
        atoms.push_back({round12(w.grid[i]), round12(w.marginals[t][i])});
      }
    }
    marginals.push_back(atoms);
  }
  Json transitions = Json::array();
  for (const auto& tr : w.transitions) {
    transitions.push_back({tr.t, round12(w.grid[tr.from]), round12(w.grid[tr.to]),
                           round12(tr.weight)});
  }
  return Json{{"marginals", marginals}, {"transitions", transitions}};
}

Json witness_json(const Witness2D& w) {
  Json levels = Json::array();
  for (const auto& level : w.levels) {
    Json paths = Json::array();
    for (const PathAtom& p : level) {
      paths.push_back({{"regions", p.regions},
                       {"probability", round12(p.probability)},
                       {"atom", {round12(p.atom[0]), round12(p.atom[1])}}});
    }
    levels.push_back(paths);
  }
  Json terminal = Json::array();
  for (const TerminalMass& m : w.terminal) {
    terminal.push_back({{"regions", m.regions},
                        {"point", {round12(m.point[0]), round12(m.point[1])}},
                        {"probability", round12(m.probability)}});
  }
  return Json{{"levels", levels}, {"terminal", terminal}};
}

Json witness_json(const WitnessLattice& w) {
  Json marginals = Json::array();
  for (std::size_t t = 0; t < w.marginals.size(); ++t) {
    Json atoms = Json::array();
    for (std::size_t i = 0; i < w.nodes[t].size(); ++i) {
      if (w.marginals[t][i] > 1e-12) {
        atoms.push_back({round12(w.nodes[t][i][0]), round12(w.nodes[t][i][1]),
                         round12(w.marginals[t][i])});
      }
    }
    marginals.push_back(atoms);
  }
  Json transitions = Json::array();
  for (const auto& tr : w.transitions) {
    transitions.push_back({tr.t, tr.from, tr.to, round12(tr.weight)});
  }
  return Json{{"marginals", marginals}, {"transitions", transitions}};
}

Json witness_json(const BasketWitness& w) {
  Json atoms = Json::array();
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    Json p = Json::array();
    for (double x : w.points[i]) p.push_back(round12(x));
    atoms.push_back({{"point", p}, {"weight", round12(w.weights[i])}});
  }
  return atoms;
}

template <typename W>
Json bounds_json(const RunConfig& c, const std::string& digest, const BoundsResult<W>& r,
                 const Audit& lo, const Audit& up) {
  Json j{{"command", command_name(c.command)},
         {"inputs_digest", digest},
         {"lower", round12(r.lower)},
         {"upper", round12(r.upper)},
         {"status", "optimal"}};
  if (c.witness) {
    j["witness"] = {{"lower", witness_json(r.witness_lower)},
                    {"upper", witness_json(r.witness_upper)}};
  }
  j["diagnostics"] = {{"lower", diagnostics_json(r.diagnostics_lower, lo)},
                      {"upper", diagnostics_json(r.diagnostics_upper, up)}};
  return j;
}

// Basket instance from JSON, naming the offending field on errors.
BasketInstance parse_basket(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("basket: malformed JSON: ") + e.what());
  }
  auto field = [](const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
      throw Error(ErrorCode::kInvalidInput, "basket: missing field '" + path + "'");
    }
    return obj.at(key);
  };
  auto number = [&](const Json& obj, const std::string& key, const std::string& path) {
    const Json v = field(obj, key, path);
    if (!v.is_number()) {
      throw Error(ErrorCode::kInvalidInput, "basket: field '" + path + "' must be a number");
    }
    return v.get<double>();
  };
  auto vector = [&](const Json& obj, const std::string& key, const std::string& path) {
    const Json v = field(obj, key, path);
    if (!v.is_array()) {
      throw Error(ErrorCode::kInvalidInput, "basket: field '" + path + "' must be an array");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw Error(ErrorCode::kInvalidInput, "basket: field '" + path + "[" +
                                                  std::to_string(i) + "]' must be a number");
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  };
  BasketInstance inst;
  inst.L = number(j, "L", "L");
  const Json target = field(j, "target", "target");
  inst.target = {vector(target, "weights", "target.weights"),
                 number(target, "strike", "target.strike")};
  inst.n = static_cast<int>(inst.target.weights.size());
  const Json cons = field(j, "constraints", "constraints");
  if (!cons.is_array()) {
    throw Error(ErrorCode::kInvalidInput, "basket: field 'constraints' must be an array");
  }
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const std::string p = "constraints[" + std::to_string(i) + "].";
    inst.constraints.push_back({vector(cons[i], "weights", p + "weights"),
                                number(cons[i], "strike", p + "strike"),
                                number(cons[i], "price", p + "price")});
  }
  return inst;
}

struct Outcome {
  Json report;
  double lower = 0.0;
  double upper = 0.0;
};

Outcome bound_once(const RunConfig& c, const Inputs& in, const std::string& payoff) {
  const int t = rank_of(in, *c.maturity);
  const double d = discount_at(in, *c.maturity);
  switch (c.command) {
    case Command::kBound1D: {
      Bounds1DOptions o;
      o.support_bound = c.L;
      o.tol = c.tol;
      o.target_maturity_only = c.target_maturity_only;
      const Payoff1D g = discounted(parse_payoff_1d(payoff), d);
      const Bounds1D r = bound_payoff_1d(in.surface, c.asset, t, g, o);
      const double L = r.diagnostics_lower.support_bound;
      const Audit lo = audit_witness_1d(in.surface, c.asset, t, g, r.witness_lower, r.lower, L, o);
      const Audit up = audit_witness_1d(in.surface, c.asset, t, g, r.witness_upper, r.upper, L, o);
      return {bounds_json(c, in.digest, r, lo, up), r.lower, r.upper};
    }
    case Command::kBound2DExact:
    case Command::kBound2DApprox: {
      Bounds2DOptions o;
      o.support_bound = c.L;
      o.tol = c.tol;
      o.target_maturity_only = c.target_maturity_only;
      o.restricted_lattice = c.restricted_lattice;
      o.parallel = c.jobs > 1;
      if (c.budget) o.variable_budget = *c.budget;
      const Payoff2D g = discounted(parse_payoff_2d(payoff), d);
      if (c.command == Command::kBound2DExact) {
        const Bounds2D r = bound_payoff_2d_exact(in.surface, c.asset, c.asset2, t, g, o);
        const double L = r.diagnostics_lower.support_bound;
        const Audit lo = audit_witness_2d(in.surface, c.asset, c.asset2, t, g,
                                          r.witness_lower, r.lower, L, o);
        const Audit up = audit_witness_2d(in.surface, c.asset, c.asset2, t, g,
                                          r.witness_upper, r.upper, L, o);
        return {bounds_json(c, in.digest, r, lo, up), r.lower, r.upper};
      }
      const Bounds2DApprox r =
          bound_payoff_2d_approx(in.surface, c.asset, c.asset2, t, g, *c.eps, o);
      const Audit lo = audit_witness_lattice(in.surface, c.asset, c.asset2, t, g, *c.eps,
                                             r.witness_lower, r.lower, o);
      const Audit up = audit_witness_lattice(in.surface, c.asset, c.asset2, t, g, *c.eps,
                                             r.witness_upper, r.upper, o);
      Json j = bounds_json(c, in.digest, r, lo, up);
      j["diagnostics"]["eps"] = round12(*c.eps);
      return {j, r.lower, r.upper};
    }
    default:
      throw usage("not a bound command");
  }
}

Outcome basket_once(const RunConfig& c, const BasketInstance& base, const std::string& digest,
                    std::optional<double> strike) {
  BasketInstance inst = base;
  if (c.L) inst.L = *c.L;
  if (strike) inst.target.strike = *strike;
  const BasketBounds r = bound_basket(inst);
  Diagnostics lo_d = r.diagnostics_lower, up_d = r.diagnostics_upper;
  lo_d.support_bound = up_d.support_bound = inst.L;
  BasketBounds shown = r;
  shown.diagnostics_lower = lo_d;
  shown.diagnostics_upper = up_d;
  const Audit lo = audit_witness_basket(inst, r.witness_lower, r.lower);
  const Audit up = audit_witness_basket(inst, r.witness_upper, r.upper);
  return {bounds_json(c, digest, shown, lo, up), r.lower, r.upper};
}

Json check_report(const RunConfig& c, const Inputs& in, bool& arbitrage) {
  Json violations = Json::array();
  std::vector<std::string> assets;
  if (!c.asset.empty()) {
    assets.push_back(c.asset);
    if (!c.asset2.empty()) assets.push_back(c.asset2);
  } else {
    for (const auto& [name, spot] : in.surface.spots()) assets.push_back(name);
  }
  const std::vector<double>& raw = in.surface.raw_maturities();
  for (const std::string& a : assets) {
    for (const Violation& v : check_no_arbitrage(in.surface, a, c.tol).violations) {
      const double label = raw.empty() ? v.quote.maturity : raw[v.quote.maturity - 1];
      violations.push_back({{"asset", v.quote.asset},
                            {"maturity", round12(label)},
                            {"strike", round12(v.quote.strike)},
                            {"price", round12(v.quote.price)},
                            {"kind", violation_kind_name(v.kind)},
                            {"detail", v.detail}});
    }
  }
  arbitrage = !violations.empty();
  return Json{{"command", command_name(c.command)},
              {"inputs_digest", in.digest},
              {"status", arbitrage ? "arbitrage" : "consistent"},
              {"violations", violations}};
}

void emit(const RunConfig& c, const Json& j, std::ostream& out) {
  if (c.format == Format::kJson) {
    out << j.dump(2) << '\n';
    return;
  }
  auto cell = [](const Json& v) {
    if (v.is_number()) return fmt12(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  const std::string status = j.at("status").get<std::string>();
  if (status == "error") {
    out << "command,status,code,message\n"
        << j.at("command").get<std::string>() << ",error," << cell(j["error"]["code"]) << ','
        << std::quoted(cell(j["error"]["message"])) << '\n';
  } else if (j.contains("rows")) {
    out << "strike,lower,upper\n";
    for (const Json& row : j["rows"]) {
      out << cell(row["strike"]) << ',' << (row.contains("lower") ? cell(row["lower"]) : "")
          << ',' << (row.contains("upper") ? cell(row["upper"]) : "") << '\n';
    }
  } else if (j.contains("violations")) {
    out << "asset,maturity,strike,price,kind\n";
    for (const Json& v : j["violations"]) {
      out << cell(v["asset"]) << ',' << cell(v["maturity"]) << ',' << cell(v["strike"]) << ','
          << cell(v["price"]) << ',' << cell(v["kind"]) << '\n';
    }
  } else {
    out << "command,lower,upper,status\n"
        << cell(j["command"]) << ',' << cell(j["lower"]) << ',' << cell(j["upper"]) << ','
        << status << '\n';
  }
}

// Runs f(i) for every index on `jobs` threads.
template <typename F>
void parallel_for(std::size_t count, int jobs, F&& f) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) f(i);
  };
  std::vector<std::thread> pool;
  const std::size_t n = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  for (std::size_t k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "check") return Command::kCheck;
  if (name == "bound1d") return Command::kBound1D;
  if (name == "bound2d-exact") return Command::kBound2DExact;
  if (name == "bound2d-approx") return Command::kBound2DApprox;
  if (name == "basket") return Command::kBasket;
  return std::nullopt;
}

std::string_view command_name(Command command) {
  switch (command) {
    case Command::kCheck: return "check";
    case Command::kBound1D: return "bound1d";
    case Command::kBound2DExact: return "bound2d-exact";
    case Command::kBound2DApprox: return "bound2d-approx";
    case Command::kBasket: return "basket";
  }
  return "?";
}

void validate(const RunConfig& c) {
  auto need = [&](bool present, const char* flag) {
    if (!present) {
      throw usage(std::string(command_name(c.command)) + " requires " + flag);
    }
  };
  need(!c.quotes.empty(), "--quotes");
  if (c.command != Command::kBasket) need(!c.spots.empty(), "--spots");
  if (c.command == Command::kCheck) return;
  if (c.command != Command::kBasket) {
    need(!c.asset.empty(), "--asset");
    need(c.maturity.has_value(), "--maturity");
    need(!c.payoff.empty(), "--payoff");
  }
  if (c.command == Command::kBound2DExact || c.command == Command::kBound2DApprox) {
    need(!c.asset2.empty(), "--asset2");
  }
  if (c.command == Command::kBound2DApprox) need(c.eps.has_value(), "--eps");
  if (c.jobs < 1) throw usage("--jobs must be at least 1");
}

Payoff1D parse_payoff_1d(const std::string& spec) {
  const auto [kind, rest] = split_spec(spec);
  if (kind == "call") return Payoff1D::call(args(spec, 1)[0]);
  if (kind == "put") return Payoff1D::put(args(spec, 1)[0]);
  if (kind == "linear") {
    const std::vector<double> v = args(spec, 2);
    return Payoff1D::linear(v[0], v[1]);
  }
  if (kind == "pwl") {
    const std::size_t semi = rest.find(';');
    if (semi == std::string::npos) throw usage("payoff '" + spec + "' needs ';slope'");
    std::vector<std::pair<double, double>> pts;
    std::stringstream in(rest.substr(0, semi));
    std::string item;
    while (std::getline(in, item, ',')) {
      const std::vector<double> xy = numbers(item, ':', spec);
      if (xy.size() != 2) throw usage("payoff '" + spec + "': breakpoints are x:y");
      pts.emplace_back(xy[0], xy[1]);
    }
    const std::vector<double> slope = numbers(rest.substr(semi + 1), ',', spec);
    if (slope.size() != 1) throw usage("payoff '" + spec + "' needs one terminal slope");
    return Payoff1D(pts, slope[0]);
  }
  throw usage("unknown payoff kind '" + kind + "'");
}

Payoff2D parse_payoff_2d(const std::string& spec) {
  const auto [kind, rest] = split_spec(spec);
  if (kind == "call2") {
    const std::vector<double> v = args(spec, 3);
    if (v[0] < 0.0 || v[1] < 0.0) throw usage("call2 weights must be nonnegative");
    return Payoff2D::canonical(v[0], v[1], v[2]);
  }
  if (kind == "call") return Payoff2D::canonical(1.0, 0.0, args(spec, 1)[0]);
  throw usage("unknown two-asset payoff kind '" + kind + "'");
}

std::string with_strike(const std::string& spec, double strike) {
  const auto [kind, rest] = split_spec(spec);
  if (kind == "call" || kind == "put") return kind + ":" + fmt12(strike);
  if (kind == "call2") {
    const std::vector<double> v = args(spec, 3);
    return "call2:" + fmt12(v[0]) + "," + fmt12(v[1]) + "," + fmt12(strike);
  }
  throw usage("payoff '" + spec + "' has no strike to sweep");
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kNumericalFailure, "SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

std::vector<SweepRow> sweep(const RunConfig& c, const std::vector<double>& grid) {
  if (grid.empty()) throw usage("strike grid is empty");
  validate(c);
  if (c.command == Command::kCheck) throw usage("check has no strike to sweep");
  std::vector<SweepRow> rows(grid.size());
  std::optional<Inputs> in;
  BasketInstance basket;
  std::string digest;
  if (c.command == Command::kBasket) {
    const std::string text = slurp(c.quotes);
    basket = parse_basket(text);
    digest = sha256_hex(text);
  } else {
    in = load_inputs(c);
    with_strike(c.payoff, grid.front());
  }
  RunConfig single = c;
  single.witness = false;
  if (c.command != Command::kBasket) single.jobs = 1;
  parallel_for(grid.size(), c.jobs, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.strike = grid[i];
    try {
      const Outcome o = c.command == Command::kBasket
                            ? basket_once(single, basket, digest, grid[i])
                            : bound_once(single, *in, with_strike(c.payoff, grid[i]));
      row.ok = true;
      row.lower = o.lower;
      row.upper = o.upper;
    } catch (const Error& e) {
      row.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
  });
  return rows;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::string digest;
  try {
    validate(c);
    if (!c.strikes.empty()) {
      const std::vector<SweepRow> rows = sweep(c, c.strikes);
      if (c.command == Command::kBasket) {
        digest = sha256_hex(slurp(c.quotes));
      } else {
        digest = load_inputs(c).digest;
      }
      Json list = Json::array();
      bool failed = false;
      for (const SweepRow& r : rows) {
        Json row{{"strike", round12(r.strike)}};
        if (r.ok) {
          row["lower"] = round12(r.lower);
          row["upper"] = round12(r.upper);
          row["status"] = "optimal";
        } else {
          row["status"] = "error";
          row["error"] = r.error;
          failed = true;
          err << "strike " << fmt12(r.strike) << ": " << r.error << '\n';
        }
        list.push_back(row);
      }
      emit(c,
           Json{{"command", command_name(c.command)},
                {"inputs_digest", digest},
                {"status", failed ? "partial" : "optimal"},
                {"rows", list}},
           out);
      return failed ? 1 : 0;
    }
    if (c.command == Command::kBasket) {
      const std::string text = slurp(c.quotes);
      digest = sha256_hex(text);
      emit(c, basket_once(c, parse_basket(text), digest, std::nullopt).report, out);
      return 0;
    }
    const Inputs in = load_inputs(c);
    digest = in.digest;
    if (c.command == Command::kCheck) {
      bool arbitrage = false;
      emit(c, check_report(c, in, arbitrage), out);
      return arbitrage ? 2 : 0;
    }
    emit(c, bound_once(c, in, c.payoff).report, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    Json j{{"command", command_name(c.command)}};
    if (!digest.empty()) j["inputs_digest"] = digest;
    j["status"] = "error";
    j["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    emit(c, j, out);
    return 1;
  }
}

}  // namespace mbounds::cli
