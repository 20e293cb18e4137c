#pragma once

#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mbounds {

/// Observed call price with a raw (calendar) maturity label.
struct RawQuote {
  std::string asset;
  double maturity = 0.0;
  double strike = 0.0;
  double price = 0.0;
};

/// Call price on the discounted scale with maturity given as rank 1..n.
struct Quote {
  std::string asset;
  int maturity = 1;
  double strike = 0.0;
  double price = 0.0;

  bool operator==(const Quote&) const = default;
};

struct StrikePrice {
  double strike;
  double price;
  int maturity;  // rank of the originating quote

  bool operator==(const StrikePrice&) const = default;
};

/// Validated quotes before discounting.
struct QuoteSurface {
  std::map<std::string, double> spots;
  std::map<double, double> discount_factors;  // raw maturity -> factor
  std::vector<RawQuote> quotes;
  std::vector<double> maturity_order;  // sorted distinct raw maturities
};

/// Surface on the zero-rate scale: strikes multiplied by the discount factor
/// and maturities replaced by their ranks 1..n.
class NormalizedSurface {
 public:
  NormalizedSurface() = default;

  /// Validates and deduplicates. maturity_count = 0 uses the largest quoted
  /// maturity. Throws NegativeValue, MissingSpot, ConflictingDuplicate,
  /// InvalidInput or ArbitragePresent (strike-0 quote off the spot).
  NormalizedSurface(std::map<std::string, double> spots,
                    std::vector<Quote> quotes, int maturity_count = 0,
                    double tol = 1e-9);

  const std::map<std::string, double>& spots() const { return spots_; }
  const std::vector<Quote>& quotes() const { return quotes_; }
  int maturity_count() const { return maturity_count_; }
  const std::vector<double>& raw_maturities() const { return raw_maturities_; }
  void set_raw_maturities(std::vector<double> raw) { raw_maturities_ = std::move(raw); }

  bool has_asset(const std::string& asset) const;
  /// Throws UnknownAsset.
  double spot(const std::string& asset) const;

  /// Quotes of maturity t sorted by strike.
  std::vector<StrikePrice> slice(const std::string& asset, int t) const;
  /// Quotes of maturity >= t sorted by (strike, maturity).
  std::vector<StrikePrice> slice_geq(const std::string& asset, int t) const;

  /// Copy keeping only the quotes of maturity t (same maturity range).
  NormalizedSurface only_maturity(int t) const;

  bool operator==(const NormalizedSurface& other) const {
    return spots_ == other.spots_ && quotes_ == other.quotes_ &&
           maturity_count_ == other.maturity_count_;
  }

 private:
  std::map<std::string, double> spots_;
  std::vector<Quote> quotes_;  // sorted by (asset, maturity, strike)
  int maturity_count_ = 0;
  std::vector<double> raw_maturities_;
};

/// Validates raw records. Identical rows collapse; rows agreeing on
/// (asset, maturity, strike) but not on price raise ConflictingDuplicate.
QuoteSurface load_surface(const std::vector<RawQuote>& records,
                          const std::map<std::string, double>& spots,
                          const std::map<double, double>& discount_factors,
                          double tol = 1e-9);

NormalizedSurface normalize(const QuoteSurface& surface, double tol = 1e-9);
inline const NormalizedSurface& normalize(const NormalizedSurface& surface) {
  return surface;
}

/// e^{-rate * tau}
double flat_rate_discount(double rate, double tau);
std::map<double, double> flat_rate_curve(const std::vector<double>& maturities,
                                         double rate, double years_per_unit = 1.0);

// CSV readers. Headers: asset,maturity,strike,price / asset,spot /
// maturity,df. Throw InvalidInput naming the line on malformed rows.
std::vector<RawQuote> read_quotes_csv(std::istream& in);
std::map<std::string, double> read_spots_csv(std::istream& in);
std::map<double, double> read_discounts_csv(std::istream& in);

}  // namespace mbounds
