#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "synthetic.hpp"
#include "tenet/corpus.hpp"
#include "tenet/error.hpp"

using namespace tenet;
using Catch::Matchers::ContainsSubstring;

namespace {

PricePanel prices_of(std::string text) {
  std::istringstream in(std::move(text));
  return read_prices(in);
}

// One ticker per column, NaN for missing.
PricePanel panel_with(const std::vector<std::vector<double>>& columns) {
  const std::size_t t = columns.front().size();
  Matrix m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(columns.size()));
  std::vector<std::string> names;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    names.push_back("T" + std::to_string(j));
    for (std::size_t k = 0; k < t; ++k) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = columns[j][k];
  }
  return PricePanel(synthetic::calendar(t), names, m);
}

std::vector<double> presence(std::size_t total, std::size_t present) {
  std::vector<double> v(total, std::nan(""));
  for (std::size_t k = 0; k < present; ++k) v[k] = 100.0 + static_cast<double>(k);
  return v;
}

}  // namespace

TEST_CASE("read_prices maps rows onto a dates x tickers panel", "[corpus]") {
  const auto p = prices_of(
      "date,ticker,close\n"
      "2003-01-02,AAA,10\n"
      "2003-01-02,BBB,20\n"
      "2003-01-03,AAA,11\n");
  REQUIRE(p.rows() == 2);
  REQUIRE(p.cols() == 2);
  CHECK(p.missing_count() == 1);
  CHECK_FALSE(p.present(1, 1));
  CHECK(p.tickers() == std::vector<std::string>{"AAA", "BBB"});
}

TEST_CASE("read_prices rejects bad rows with their row number", "[corpus]") {
  SECTION("zero price") {
    CHECK_THROWS_WITH(prices_of("date,ticker,close\n2003-01-02,AAA,10\n2003-01-03,AAA,0.0\n"),
                      ContainsSubstring("row 3"));
  }
  SECTION("duplicate observation") {
    CHECK_THROWS_WITH(
        prices_of("date,ticker,close\n2003-01-02,AAA,10\n2003-01-02,AAA,11\n"),
        ContainsSubstring("row 3"));
  }
  SECTION("malformed row") {
    CHECK_THROWS_AS(prices_of("date,ticker,close\n2003-01-02,AAA\n"), DataError);
    CHECK_THROWS_AS(prices_of("date,ticker,close\n2003-02-30,AAA,1\n"), DataError);
    CHECK_THROWS_AS(prices_of("date,ticker,close\n2003-01-02,AAA,abc\n"), DataError);
  }
  SECTION("wrong header") { CHECK_THROWS_AS(prices_of("day,ticker,close\n"), DataError); }
}

TEST_CASE("large synthetic price file keeps its dimensions", "[corpus]") {
  const std::size_t n = 464, t = 2516;
  const auto path = std::filesystem::temp_directory_path() / "tenet_corpus_large.csv";
  const Matrix prices = synthetic::prices_from_returns(synthetic::gaussian(t - 1, n, 7));
  synthetic::write_price_csv(path, prices, synthetic::tickers(n));
  const auto panel = load_prices(path);
  std::filesystem::remove(path);
  CHECK(panel.rows() == t);
  CHECK(panel.cols() == n);
  CHECK(panel.missing_count() == 0);
}

TEST_CASE("filter_liquidity keeps tickers present often enough", "[corpus]") {
  SECTION("79% present at threshold 0.80 is dropped") {
    const auto p = panel_with({presence(100, 79), presence(100, 100)});
    const auto f = filter_liquidity(p, 0.80);
    CHECK(f.tickers() == std::vector<std::string>{"T1"});
  }
  SECTION("threshold 0 keeps everything") {
    const auto p = panel_with({presence(20, 1), presence(20, 20)});
    CHECK(filter_liquidity(p, 0.0).cols() == 2);
  }
  SECTION("50/85/100 at 0.8 keeps two") {
    const auto p = panel_with({presence(20, 10), presence(20, 17), presence(20, 20)});
    const auto f = filter_liquidity(p, 0.8);
    CHECK(f.cols() == 2);
    SECTION("idempotent") {
      const auto g = filter_liquidity(f, 0.8);
      CHECK(g.tickers() == f.tickers());
      CHECK(g.rows() == f.rows());
    }
  }
}

TEST_CASE("compute_log_returns", "[corpus]") {
  CHECK(compute_log_returns(panel_with({{100, 100}})).returns()(0, 0) == 0.0);
  CHECK(compute_log_returns(panel_with({{100, 110}})).returns()(0, 0) ==
        Catch::Approx(0.0953101798).epsilon(1e-9));
  CHECK(compute_log_returns(panel_with({{100, 110}})).returns()(0, 0) == Catch::Approx(std::log(1.1)).epsilon(1e-14));

  const auto flat = compute_log_returns(panel_with({{5, 5, 5, 5, 5}}));
  REQUIRE(flat.rows() == 4);
  CHECK(flat.returns().isZero(0.0));

  CHECK_THROWS_AS(compute_log_returns(panel_with({{100}})), DataError);
}

TEST_CASE("returns bridge gaps and keep complete rows only", "[corpus]") {
  const double nan = std::nan("");
  const auto r = compute_log_returns(panel_with({{100, nan, 121, 133.1}, {10, 11, 12, 13}}));
  // Day 1 has no return for T0; day 2 spans the gap back to day 0.
  REQUIRE(r.rows() == 2);
  CHECK(r.dates()[0] == synthetic::calendar(4)[2]);
  CHECK(r.returns()(0, 0) == Catch::Approx(std::log(1.21)));
  CHECK(r.returns()(0, 1) == Catch::Approx(std::log(12.0 / 11.0)));
}

TEST_CASE("log returns round-trip through prices", "[corpus]") {
  const Matrix returns = synthetic::gaussian(300, 5, 11);
  const Matrix prices = synthetic::prices_from_returns(returns);
  const auto panel = PricePanel(synthetic::calendar(301), {"A", "B", "C", "D", "E"}, prices);
  const auto back = compute_log_returns(panel);
  CHECK((back.returns() - returns).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lag_expand", "[corpus]") {
  Matrix m(3, 1);
  m << 1, 2, 3;
  const auto p = synthetic::panel_from(m);
  const auto e = lag_expand(p);
  REQUIRE(e.cols() == 2);
  REQUIRE(e.rows() == 2);
  CHECK(e.returns()(0, 0) == 2);
  CHECK(e.returns()(1, 0) == 3);
  CHECK(e.returns()(0, 1) == 1);
  CHECK(e.returns()(1, 1) == 2);
  CHECK(e.variables()[1].name() == "S0@1");
  CHECK(e.is_lag_expanded());
  CHECK_THROWS_AS(lag_expand(e), UsageError);

  SECTION("paper-sized panel doubles its variables") {
    const auto big = lag_expand(synthetic::panel_from(synthetic::gaussian(2516, 464, 3)));
    CHECK(big.cols() == 928);
    CHECK(big.rows() == 2515);
  }
  SECTION("dropping the lag block recovers the tail of the original") {
    const auto src = synthetic::panel_from(synthetic::gaussian(40, 4, 5));
    const auto x = lag_expand(src);
    const auto lag0 = x.select_columns({0, 1, 2, 3});
    const auto tail = src.slice_rows(1, 39);
    CHECK(lag0.returns() == tail.returns());
    CHECK(lag0.dates() == tail.dates());
    CHECK(x.select_columns({4, 5, 6, 7}).returns() == src.slice_rows(0, 39).returns());
  }
}

TEST_CASE("taxonomy", "[corpus]") {
  std::istringstream in(
      "ticker,sector,industry,subindustry\n"
      "LUK,Diversified,Holding Companies,Diversified Operations\n"
      "JPM,Financial,Banks,Money Center Banks\n");
  const auto tax = read_taxonomy(in);
  CHECK(tax.at("LUK").sector == "Financial");
  CHECK(tax.at("JPM").sector == "Financial");
  CHECK_THROWS_WITH(tax.require({"JPM", "XOM"}), ContainsSubstring("XOM"));

  std::istringstream empty("");
  const auto none = read_taxonomy(empty);
  CHECK(none.empty());
  CHECK_NOTHROW(none.require({}));
}
