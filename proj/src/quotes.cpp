#include "mbounds/quotes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "mbounds/error.hpp"

namespace mbounds {

namespace {

constexpr double kStrikeZeroTol = 1e-8;

void check_nonnegative(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidInput, std::string(what) + " is not finite");
  }
  if (v < 0.0) {
    throw Error(ErrorCode::kNegativeValue, std::string(what) + " is negative");
  }
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& field, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kInvalidInput, "line " + std::to_string(line_no) +
                                              ": cannot parse number '" + field + "'");
  }
  return value;
}

// Reads rows after checking the header; calls fn(fields, line number).
template <typename Fn>
void read_csv(std::istream& in, const std::vector<std::string>& header, Fn fn) {
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split(line);
    if (!seen_header) {
      if (fields != header) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        throw Error(ErrorCode::kInvalidInput,
                    "line " + std::to_string(line_no) + ": expected header '" +
                        expected + "'");
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kInvalidInput,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields");
    }
    fn(fields, line_no);
  }
  if (!seen_header) {
    throw Error(ErrorCode::kInvalidInput, "missing CSV header");
  }
}

}  // namespace

NormalizedSurface::NormalizedSurface(std::map<std::string, double> spots,
                                     std::vector<Quote> quotes,
                                     int maturity_count, double tol)
    : spots_(std::move(spots)) {
  for (const auto& [asset, spot] : spots_) check_nonnegative(spot, "spot");
  int max_t = 0;
  for (const Quote& q : quotes) {
    check_nonnegative(q.strike, "strike");
    check_nonnegative(q.price, "price");
    if (q.maturity < 1) {
      throw Error(ErrorCode::kInvalidInput, "maturity index must be >= 1");
    }
    if (!spots_.count(q.asset)) {
      throw Error(ErrorCode::kMissingSpot, "no spot for asset '" + q.asset + "'");
    }
    max_t = std::max(max_t, q.maturity);
  }
  maturity_count_ = maturity_count > 0 ? maturity_count : max_t;
  if (max_t > maturity_count_) {
    throw Error(ErrorCode::kInvalidInput, "quote maturity beyond maturity count");
  }
  std::sort(quotes.begin(), quotes.end(), [](const Quote& a, const Quote& b) {
    return std::tie(a.asset, a.maturity, a.strike, a.price) <
           std::tie(b.asset, b.maturity, b.strike, b.price);
  });
  for (const Quote& q : quotes) {
    if (!quotes_.empty()) {
      const Quote& prev = quotes_.back();
      if (prev.asset == q.asset && prev.maturity == q.maturity &&
          prev.strike == q.strike) {
        if (std::abs(prev.price - q.price) <= tol) continue;
        std::ostringstream msg;
        msg << "conflicting prices for " << q.asset << " maturity " << q.maturity
            << " strike " << q.strike;
        throw Error(ErrorCode::kConflictingDuplicate, msg.str());
      }
    }
    if (q.strike == 0.0 &&
        std::abs(q.price - spots_.at(q.asset)) > kStrikeZeroTol) {
      throw Error(ErrorCode::kArbitragePresent,
                  "strike-0 quote for '" + q.asset + "' differs from its spot");
    }
    quotes_.push_back(q);
  }
}

bool NormalizedSurface::has_asset(const std::string& asset) const {
  return spots_.count(asset) > 0;
}

double NormalizedSurface::spot(const std::string& asset) const {
  const auto it = spots_.find(asset);
  if (it == spots_.end()) {
    throw Error(ErrorCode::kUnknownAsset, "unknown asset '" + asset + "'");
  }
  return it->second;
}

std::vector<StrikePrice> NormalizedSurface::slice(const std::string& asset,
                                                  int t) const {
  spot(asset);
  std::vector<StrikePrice> out;
  for (const Quote& q : quotes_) {
    if (q.asset == asset && q.maturity == t) out.push_back({q.strike, q.price, t});
  }
  return out;
}

std::vector<StrikePrice> NormalizedSurface::slice_geq(const std::string& asset,
                                                      int t) const {
  spot(asset);
  std::vector<StrikePrice> out;
  for (const Quote& q : quotes_) {
    if (q.asset == asset && q.maturity >= t) {
      out.push_back({q.strike, q.price, q.maturity});
    }
  }
  std::sort(out.begin(), out.end(), [](const StrikePrice& a, const StrikePrice& b) {
    return std::tie(a.strike, a.maturity, a.price) <
           std::tie(b.strike, b.maturity, b.price);
  });
  return out;
}

NormalizedSurface NormalizedSurface::only_maturity(int t) const {
  NormalizedSurface out = *this;
  out.quotes_.clear();
  for (const Quote& q : quotes_) {
    if (q.maturity == t) out.quotes_.push_back(q);
  }
  return out;
}

QuoteSurface load_surface(const std::vector<RawQuote>& records,
                          const std::map<std::string, double>& spots,
                          const std::map<double, double>& discount_factors,
                          double tol) {
  QuoteSurface surface;
  for (const auto& [asset, spot] : spots) check_nonnegative(spot, "spot");
  for (const auto& [maturity, df] : discount_factors) {
    if (!std::isfinite(maturity) || !(df > 0.0) || df > 1.0) {
      throw Error(ErrorCode::kInvalidInput,
                  "discount factors must lie in (0, 1]");
    }
  }
  surface.spots = spots;
  surface.discount_factors = discount_factors;
  std::vector<RawQuote> sorted = records;
  for (const RawQuote& r : sorted) {
    check_nonnegative(r.strike, "strike");
    check_nonnegative(r.price, "price");
    if (!std::isfinite(r.maturity) || !(r.maturity > 0.0)) {
      throw Error(ErrorCode::kInvalidInput, "maturity must be positive");
    }
    if (!spots.count(r.asset)) {
      throw Error(ErrorCode::kMissingSpot, "no spot for asset '" + r.asset + "'");
    }
    if (!discount_factors.count(r.maturity)) {
      std::ostringstream msg;
      msg << "no discount factor for maturity " << r.maturity;
      throw Error(ErrorCode::kMissingDiscountFactor, msg.str());
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const RawQuote& a, const RawQuote& b) {
    return std::tie(a.asset, a.maturity, a.strike, a.price) <
           std::tie(b.asset, b.maturity, b.strike, b.price);
  });
  std::set<double> maturities;
  for (const RawQuote& r : sorted) {
    if (!surface.quotes.empty()) {
      const RawQuote& prev = surface.quotes.back();
      if (prev.asset == r.asset && prev.maturity == r.maturity &&
          prev.strike == r.strike) {
        if (std::abs(prev.price - r.price) <= tol) continue;
        std::ostringstream msg;
        msg << "conflicting prices for " << r.asset << " maturity " << r.maturity
            << " strike " << r.strike;
        throw Error(ErrorCode::kConflictingDuplicate, msg.str());
      }
    }
    surface.quotes.push_back(r);
    maturities.insert(r.maturity);
  }
  surface.maturity_order.assign(maturities.begin(), maturities.end());
  return surface;
}

NormalizedSurface normalize(const QuoteSurface& surface, double tol) {
  std::map<double, int> rank;
  for (std::size_t i = 0; i < surface.maturity_order.size(); ++i) {
    rank[surface.maturity_order[i]] = static_cast<int>(i) + 1;
  }
  std::vector<Quote> quotes;
  quotes.reserve(surface.quotes.size());
  for (const RawQuote& r : surface.quotes) {
    const auto it = rank.find(r.maturity);
    if (it == rank.end()) {
      throw Error(ErrorCode::kInvalidInput, "quote maturity missing from order");
    }
    const auto df = surface.discount_factors.find(r.maturity);
    if (df == surface.discount_factors.end()) {
      throw Error(ErrorCode::kMissingDiscountFactor, "missing discount factor");
    }
    quotes.push_back({r.asset, it->second, r.strike * df->second, r.price});
  }
  NormalizedSurface out(surface.spots, std::move(quotes),
                        static_cast<int>(surface.maturity_order.size()), tol);
  out.set_raw_maturities(surface.maturity_order);
  return out;
}

double flat_rate_discount(double rate, double tau) { return std::exp(-rate * tau); }

std::map<double, double> flat_rate_curve(const std::vector<double>& maturities,
                                         double rate, double years_per_unit) {
  std::map<double, double> curve;
  for (double m : maturities) curve[m] = flat_rate_discount(rate, m * years_per_unit);
  return curve;
}

std::vector<RawQuote> read_quotes_csv(std::istream& in) {
  std::vector<RawQuote> out;
  read_csv(in, {"asset", "maturity", "strike", "price"},
           [&](const std::vector<std::string>& f, std::size_t line) {
             if (f[0].empty()) {
               throw Error(ErrorCode::kInvalidInput,
                           "line " + std::to_string(line) + ": empty asset");
             }
             out.push_back({f[0], parse_number(f[1], line),
                            parse_number(f[2], line), parse_number(f[3], line)});
           });
  return out;
}

std::map<std::string, double> read_spots_csv(std::istream& in) {
  std::map<std::string, double> out;
  read_csv(in, {"asset", "spot"},
           [&](const std::vector<std::string>& f, std::size_t line) {
             const double v = parse_number(f[1], line);
             const auto [it, inserted] = out.emplace(f[0], v);
             if (!inserted && it->second != v) {
               throw Error(ErrorCode::kConflictingDuplicate,
                           "line " + std::to_string(line) +
                               ": conflicting spot for '" + f[0] + "'");
             }
           });
  return out;
}

std::map<double, double> read_discounts_csv(std::istream& in) {
  std::map<double, double> out;
  read_csv(in, {"maturity", "df"},
           [&](const std::vector<std::string>& f, std::size_t line) {
             const double m = parse_number(f[0], line);
             const double v = parse_number(f[1], line);
             const auto [it, inserted] = out.emplace(m, v);
             if (!inserted && it->second != v) {
               throw Error(ErrorCode::kConflictingDuplicate,
                           "line " + std::to_string(line) +
                               ": conflicting discount factor");
             }
           });
  return out;
}

}  // namespace mbounds
