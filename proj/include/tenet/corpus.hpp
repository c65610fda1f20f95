#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tenet/date.hpp"
#include "tenet/types.hpp"

namespace tenet {

// Daily closing prices, dates x tickers. Missing cells hold NaN.
class PricePanel {
 public:
  PricePanel() = default;
  // Validates: strictly increasing dates, unique tickers, present prices > 0.
  PricePanel(std::vector<Date> dates, std::vector<std::string> tickers, Matrix prices);

  const std::vector<Date>& dates() const { return dates_; }
  const std::vector<std::string>& tickers() const { return tickers_; }
  const Matrix& prices() const { return prices_; }

  std::size_t rows() const { return dates_.size(); }
  std::size_t cols() const { return tickers_.size(); }
  bool present(std::size_t t, std::size_t i) const;
  std::size_t missing_count() const;

 private:
  std::vector<Date> dates_;
  std::vector<std::string> tickers_;
  Matrix prices_;
};

// Log-returns, dates x variables, no missing entries. dates()[t] is the day
// on which return t is realized.
class ReturnPanel {
 public:
  ReturnPanel() = default;
  ReturnPanel(std::vector<Date> dates, std::vector<Variable> variables, Matrix returns);

  const std::vector<Date>& dates() const { return dates_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const Matrix& returns() const { return returns_; }

  std::size_t rows() const { return dates_.size(); }
  std::size_t cols() const { return variables_.size(); }

  // True when the panel carries a lag-0 block followed by its lag-1 twin.
  bool is_lag_expanded() const;

  // Rows [begin, begin + count).
  ReturnPanel slice_rows(std::size_t begin, std::size_t count) const;
  ReturnPanel select_columns(const std::vector<std::size_t>& columns) const;

 private:
  std::vector<Date> dates_;
  std::vector<Variable> variables_;
  Matrix returns_;
};

struct SectorInfo {
  std::string sector;
  std::string industry;
  std::string subindustry;
};

inline constexpr double kDefaultLiquidity = 0.80;

// Sector, industry and sub-industry per ticker. The lone "Diversified" sector
// is folded into "Financial" on load.
class SectorTaxonomy {
 public:
  void add(const std::string& ticker, SectorInfo info);

  bool contains(const std::string& ticker) const;
  // Throws DataError naming the ticker when absent.
  const SectorInfo& at(const std::string& ticker) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Throws DataError naming the first ticker without an entry.
  void require(const std::vector<std::string>& tickers) const;

  // Sectors in order of first appearance among `tickers`, each with the
  // column indices of its members.
  std::vector<std::pair<std::string, std::vector<std::size_t>>> group(
      const std::vector<std::string>& tickers) const;

 private:
  std::map<std::string, SectorInfo> entries_;
};

// Price CSV: header `date,ticker,close`, one observation per row.
PricePanel read_prices(std::istream& in);
PricePanel load_prices(const std::filesystem::path& source);

// Keeps tickers present on at least min_fraction of all dates.
PricePanel filter_liquidity(const PricePanel& panel, double min_fraction = kDefaultLiquidity);

// Log-returns between consecutive present prices of each ticker, then
// restricted to the dates on which every ticker has a return.
ReturnPanel compute_log_returns(const PricePanel& panel);

// Doubles the variable set with one-day lagged copies: lag-0 block, then the
// lag-1 block in the same ticker order, one row shorter.
ReturnPanel lag_expand(const ReturnPanel& panel);

// Taxonomy CSV: header `ticker,sector,industry,subindustry`.
SectorTaxonomy read_taxonomy(std::istream& in);
SectorTaxonomy load_taxonomy(const std::filesystem::path& source);

}  // namespace tenet
