#include "tenet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <unordered_map>

#include "tenet/csv.hpp"
#include "tenet/error.hpp"

namespace tenet {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

void check_header(const std::string& line, const std::vector<std::string>& expected,
                  const std::string& what) {
  auto fields = csv::split_record(line);
  for (auto& f : fields) f = trim(f);
  if (!fields.empty() && fields[0].size() >= 3 && fields[0].compare(0, 3, "\xEF\xBB\xBF") == 0) {
    fields[0].erase(0, 3);
  }
  if (fields != expected) {
    std::string want;
    for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
    throw DataError(what + ": expected header '" + want + "', got '" + line + "'");
  }
}

void expect_header(std::istream& in, const std::vector<std::string>& expected,
                   const std::string& what) {
  std::string line;
  if (!csv::read_line(in, line)) throw DataError(what + ": missing header");
  check_header(line, expected, what);
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

// ---------------------------------------------------------------------------
// PricePanel

PricePanel::PricePanel(std::vector<Date> dates, std::vector<std::string> tickers, Matrix prices)
    : dates_(std::move(dates)), tickers_(std::move(tickers)), prices_(std::move(prices)) {
  if (static_cast<std::size_t>(prices_.rows()) != dates_.size() ||
      static_cast<std::size_t>(prices_.cols()) != tickers_.size()) {
    throw DataError("price matrix shape does not match dates x tickers");
  }
  for (std::size_t t = 1; t < dates_.size(); ++t) {
    if (!(dates_[t - 1] < dates_[t])) {
      throw DataError("dates not strictly increasing at " + dates_[t].iso());
    }
  }
  std::set<std::string> seen;
  for (const auto& ticker : tickers_) {
    if (!seen.insert(ticker).second) throw DataError("duplicate ticker " + ticker);
  }
  for (Eigen::Index t = 0; t < prices_.rows(); ++t) {
    for (Eigen::Index i = 0; i < prices_.cols(); ++i) {
      const double p = prices_(t, i);
      if (!std::isnan(p) && !(p > 0.0 && std::isfinite(p))) {
        throw DataError("non-positive price for " + tickers_[i] + " on " + dates_[t].iso());
      }
    }
  }
}

bool PricePanel::present(std::size_t t, std::size_t i) const {
  return !std::isnan(prices_(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)));
}

std::size_t PricePanel::missing_count() const {
  return static_cast<std::size_t>(prices_.array().isNaN().count());
}

// ---------------------------------------------------------------------------
// ReturnPanel

ReturnPanel::ReturnPanel(std::vector<Date> dates, std::vector<Variable> variables, Matrix returns)
    : dates_(std::move(dates)), variables_(std::move(variables)), returns_(std::move(returns)) {
  if (static_cast<std::size_t>(returns_.rows()) != dates_.size() ||
      static_cast<std::size_t>(returns_.cols()) != variables_.size()) {
    throw DataError("return matrix shape does not match dates x variables");
  }
  for (std::size_t t = 1; t < dates_.size(); ++t) {
    if (!(dates_[t - 1] < dates_[t])) {
      throw DataError("dates not strictly increasing at " + dates_[t].iso());
    }
  }
  if (!returns_.allFinite()) throw DataError("return panel contains missing or non-finite entries");
  std::set<std::string> seen;
  for (const auto& v : variables_) {
    if (v.lag != 0 && v.lag != 1) throw DataError("unsupported lag on " + v.name());
    if (!seen.insert(v.name()).second) throw DataError("duplicate variable " + v.name());
  }
}

bool ReturnPanel::is_lag_expanded() const {
  const std::size_t n = variables_.size();
  if (n == 0 || n % 2 != 0) return false;
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const auto& base = variables_[i];
    const auto& lagged = variables_[half + i];
    if (base.lag != 0 || lagged.lag != 1 || base.ticker != lagged.ticker) return false;
  }
  return true;
}

ReturnPanel ReturnPanel::slice_rows(std::size_t begin, std::size_t count) const {
  if (begin + count > rows()) throw UsageError("row slice out of range");
  std::vector<Date> dates(dates_.begin() + static_cast<std::ptrdiff_t>(begin),
                          dates_.begin() + static_cast<std::ptrdiff_t>(begin + count));
  Matrix block = returns_.middleRows(static_cast<Eigen::Index>(begin),
                                     static_cast<Eigen::Index>(count));
  return ReturnPanel(std::move(dates), variables_, std::move(block));
}

ReturnPanel ReturnPanel::select_columns(const std::vector<std::size_t>& columns) const {
  std::vector<Variable> vars;
  Matrix block(returns_.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] >= cols()) throw UsageError("column index out of range");
    vars.push_back(variables_[columns[k]]);
    block.col(static_cast<Eigen::Index>(k)) = returns_.col(static_cast<Eigen::Index>(columns[k]));
  }
  return ReturnPanel(dates_, std::move(vars), std::move(block));
}

// ---------------------------------------------------------------------------
// SectorTaxonomy

void SectorTaxonomy::add(const std::string& ticker, SectorInfo info) {
  if (info.sector == "Diversified") info.sector = "Financial";
  entries_[ticker] = std::move(info);
}

bool SectorTaxonomy::contains(const std::string& ticker) const {
  return entries_.count(ticker) != 0;
}

const SectorInfo& SectorTaxonomy::at(const std::string& ticker) const {
  auto it = entries_.find(ticker);
  if (it == entries_.end()) throw DataError("ticker " + ticker + " missing from sector taxonomy");
  return it->second;
}

void SectorTaxonomy::require(const std::vector<std::string>& tickers) const {
  for (const auto& t : tickers) at(t);
}

std::vector<std::pair<std::string, std::vector<std::size_t>>> SectorTaxonomy::group(
    const std::vector<std::string>& tickers) const {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < tickers.size(); ++i) {
    const auto& sector = at(tickers[i]).sector;
    auto [it, inserted] = slot.emplace(sector, groups.size());
    if (inserted) groups.push_back({sector, {}});
    groups[it->second].second.push_back(i);
  }
  return groups;
}

// ---------------------------------------------------------------------------
// Loading

PricePanel read_prices(std::istream& in) {
  expect_header(in, {"date", "ticker", "close"}, "price file");

  struct Observation {
    Date date;
    std::string ticker;
    double close;
    std::size_t line_no;
  };
  std::vector<Observation> rows;
  std::string line;
  std::size_t line_no = 1;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = csv::split_record(line);
      if (fields.size() != 3) throw DataError("expected 3 fields");
      Observation obs{Date::parse(trim(fields[0])), trim(fields[1]),
                      csv::parse_double(fields[2], "close"), line_no};
      if (obs.ticker.empty()) throw DataError("empty ticker");
      if (!(obs.close > 0.0) || !std::isfinite(obs.close)) {
        throw DataError("non-positive price " + trim(fields[2]));
      }
      rows.push_back(std::move(obs));
    } catch (const DataError& e) {
      throw DataError("price file row " + std::to_string(line_no) + ": " + e.what());
    }
  }

  std::set<Date> date_set;
  std::set<std::string> ticker_set;
  for (const auto& r : rows) {
    date_set.insert(r.date);
    ticker_set.insert(r.ticker);
  }
  std::vector<Date> dates(date_set.begin(), date_set.end());
  // Tickers keep first-appearance order so files grouped by sector stay grouped.
  std::vector<std::string> tickers;
  std::unordered_map<std::string, std::size_t> ticker_index;
  for (const auto& r : rows) {
    if (ticker_index.emplace(r.ticker, tickers.size()).second) tickers.push_back(r.ticker);
  }
  std::map<Date, std::size_t> date_index;
  for (std::size_t t = 0; t < dates.size(); ++t) date_index[dates[t]] = t;

  Matrix prices = Matrix::Constant(static_cast<Eigen::Index>(dates.size()),
                                   static_cast<Eigen::Index>(tickers.size()), kMissing);
  for (const auto& r : rows) {
    const auto t = static_cast<Eigen::Index>(date_index[r.date]);
    const auto i = static_cast<Eigen::Index>(ticker_index[r.ticker]);
    if (!std::isnan(prices(t, i))) {
      throw DataError("price file row " + std::to_string(r.line_no) +
                      ": duplicate observation for " + r.ticker + " on " + r.date.iso());
    }
    prices(t, i) = r.close;
  }
  return PricePanel(std::move(dates), std::move(tickers), std::move(prices));
}

PricePanel load_prices(const std::filesystem::path& source) {
  auto in = open_or_throw(source);
  return read_prices(in);
}

SectorTaxonomy read_taxonomy(std::istream& in) {
  SectorTaxonomy taxonomy;
  std::string line;
  if (!csv::read_line(in, line)) return taxonomy;
  check_header(line, {"ticker", "sector", "industry", "subindustry"}, "taxonomy file");
  std::size_t line_no = 1;
  std::set<std::string> seen;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = csv::split_record(line);
    if (fields.size() != 4) {
      throw DataError("taxonomy file row " + std::to_string(line_no) + ": expected 4 fields");
    }
    for (auto& f : fields) f = trim(f);
    if (fields[0].empty() || fields[1].empty()) {
      throw DataError("taxonomy file row " + std::to_string(line_no) +
                      ": ticker and sector are required");
    }
    if (!seen.insert(fields[0]).second) {
      throw DataError("taxonomy file row " + std::to_string(line_no) + ": duplicate ticker " +
                      fields[0]);
    }
    taxonomy.add(fields[0], SectorInfo{fields[1], fields[2], fields[3]});
  }
  return taxonomy;
}

SectorTaxonomy load_taxonomy(const std::filesystem::path& source) {
  auto in = open_or_throw(source);
  return read_taxonomy(in);
}

// ---------------------------------------------------------------------------
// Transformations

PricePanel filter_liquidity(const PricePanel& panel, double min_fraction) {
  const std::size_t total = panel.rows();
  std::vector<std::string> kept;
  std::vector<Eigen::Index> columns;
  for (std::size_t i = 0; i < panel.cols(); ++i) {
    std::size_t present = 0;
    for (std::size_t t = 0; t < total; ++t) present += panel.present(t, i) ? 1 : 0;
    // present/total >= min_fraction, in integer-safe form.
    if (static_cast<double>(present) >= min_fraction * static_cast<double>(total)) {
      kept.push_back(panel.tickers()[i]);
      columns.push_back(static_cast<Eigen::Index>(i));
    }
  }
  Matrix prices(panel.prices().rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    prices.col(static_cast<Eigen::Index>(k)) = panel.prices().col(columns[k]);
  }
  return PricePanel(panel.dates(), std::move(kept), std::move(prices));
}

ReturnPanel compute_log_returns(const PricePanel& panel) {
  if (panel.rows() < 2) throw DataError("at least 2 dates are needed to compute returns");
  const auto T = static_cast<Eigen::Index>(panel.rows());
  const auto N = static_cast<Eigen::Index>(panel.cols());
  const Matrix& prices = panel.prices();

  Matrix raw = Matrix::Constant(T - 1, N, kMissing);
  for (Eigen::Index i = 0; i < N; ++i) {
    double last = kMissing;
    for (Eigen::Index t = 0; t < T; ++t) {
      const double p = prices(t, i);
      if (std::isnan(p)) continue;
      if (!std::isnan(last)) raw(t - 1, i) = std::log(p) - std::log(last);
      last = p;
    }
  }

  std::vector<Eigen::Index> complete;
  for (Eigen::Index t = 0; t < T - 1; ++t) {
    if (!raw.row(t).array().isNaN().any()) complete.push_back(t);
  }
  std::vector<Date> dates;
  Matrix returns(static_cast<Eigen::Index>(complete.size()), N);
  for (std::size_t k = 0; k < complete.size(); ++k) {
    dates.push_back(panel.dates()[static_cast<std::size_t>(complete[k] + 1)]);
    returns.row(static_cast<Eigen::Index>(k)) = raw.row(complete[k]);
  }
  std::vector<Variable> vars;
  for (const auto& ticker : panel.tickers()) vars.push_back(Variable{ticker, 0});
  return ReturnPanel(std::move(dates), std::move(vars), std::move(returns));
}

ReturnPanel lag_expand(const ReturnPanel& panel) {
  for (const auto& v : panel.variables()) {
    if (v.lag != 0) throw UsageError("panel is already lag-expanded");
  }
  if (panel.rows() < 2) throw DataError("lag expansion needs at least 2 rows");
  const auto T = static_cast<Eigen::Index>(panel.rows());
  const auto N = static_cast<Eigen::Index>(panel.cols());
  Matrix out(T - 1, 2 * N);
  out.leftCols(N) = panel.returns().bottomRows(T - 1);
  out.rightCols(N) = panel.returns().topRows(T - 1);
  std::vector<Variable> vars = panel.variables();
  for (const auto& v : panel.variables()) vars.push_back(Variable{v.ticker, 1});
  std::vector<Date> dates(panel.dates().begin() + 1, panel.dates().end());
  return ReturnPanel(std::move(dates), std::move(vars), std::move(out));
}

}  // namespace tenet
