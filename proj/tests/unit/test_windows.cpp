#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "synthetic.hpp"
#include "tenet/error.hpp"
#include "tenet/netmetrics.hpp"
#include "tenet/windows.hpp"

using namespace tenet;

TEST_CASE("window_slices", "[windows]") {
  const auto w = window_slices(5, 3, 1);
  REQUIRE(w.size() == 3);
  CHECK(w[0].last() == 2);
  CHECK(w[1].last() == 3);
  CHECK(w[2].last() == 4);

  const auto tiles = window_slices(12, 4, 4);
  REQUIRE(tiles.size() == 3);
  for (std::size_t k = 0; k + 1 < tiles.size(); ++k) CHECK(tiles[k].end == tiles[k + 1].begin);

  CHECK(window_slices(7, 7, 1) == std::vector<IndexRange>{{0, 7}});
  CHECK(window_slices(3, 5, 1).empty());
  CHECK_THROWS_AS(window_slices(5, 1, 1), UsageError);
  CHECK_THROWS_AS(window_slices(5, 3, 0), UsageError);
}

TEST_CASE("semester_slices", "[windows]") {
  std::vector<Date> decade;
  for (int y = 2003; y <= 2012; ++y) {
    for (int m = 1; m <= 12; ++m) decade.push_back(Date{y, m, 15});
  }
  const auto s = semester_slices(decade);
  REQUIRE(s.size() == 20);
  CHECK(s.front().label == "2003-S1");
  CHECK(s[1].label == "2003-S2");
  CHECK(s.back().label == "2012-S2");
  CHECK(s.front().range == IndexRange{0, 6});

  const std::vector<Date> june = {{2008, 6, 2}, {2008, 6, 3}, {2008, 6, 30}};
  const auto one = semester_slices(june);
  REQUIRE(one.size() == 1);
  CHECK(one[0].label == "2008-S1");
  CHECK(semester_slices({}).empty());
}

TEST_CASE("rolling_mean_correlation", "[windows]") {
  SECTION("identical columns give mean correlation one") {
    const Matrix base = synthetic::gaussian(60, 1, 2);
    Matrix m(60, 3);
    m << base, base, base;
    const auto s = rolling_mean_correlation(synthetic::panel_from(m), 20, 5);
    REQUIRE(s.size() == 9);
    for (Eigen::Index k = 0; k < s.mean.size(); ++k) CHECK(s.mean(k) == Catch::Approx(1.0));
  }
  SECTION("independent columns sit near 1/N") {
    const std::size_t n = 50, width = 400;
    const auto s = rolling_mean_correlation(synthetic::panel_from(synthetic::gaussian(width + 20, n, 3)),
                                            width, 10);
    for (Eigen::Index k = 0; k < s.mean.size(); ++k) {
      CHECK(std::abs(s.mean(k) - 1.0 / n) < 2.0 / std::sqrt(static_cast<double>(width)));
    }
  }
  SECTION("a single full-width window equals the full-sample statistic") {
    const auto p = synthetic::panel_from(synthetic::coupled_ar(80, 6, 0.2, 0.8, 4));
    const auto s = rolling_mean_correlation(p, 80, 1);
    REQUIRE(s.size() == 1);
    const auto c = pearson_matrix(p);
    CHECK(s.mean(0) == Catch::Approx(c.values.sum() / 36.0).epsilon(1e-12));
    CHECK(s.anchor_dates[0] == p.dates().back());
  }
  SECTION("constant windows are skipped and logged") {
    Matrix m = synthetic::gaussian(30, 2, 5);
    m.block(0, 1, 12, 1).setZero();
    const auto s = rolling_mean_correlation(synthetic::panel_from(m), 10, 1);
    CHECK(s.size() == 21 - 3);
    REQUIRE(s.skipped.size() == 3);
    CHECK(s.skipped[0].variable == "S1");
  }
}

TEST_CASE("rolling_mean_te", "[windows]") {
  SECTION("in and out totals agree per window") {
    const auto p = synthetic::panel_from(synthetic::coupled_ar(120, 5, 0.3, 1.0, 7));
    const auto s = rolling_mean_te(p, 50, 10, 0.02);
    REQUIRE(s.in.size() == 8);
    for (Eigen::Index k = 0; k < s.in.mean.size(); ++k) {
      CHECK(s.in.per_variable.row(k).sum() == Catch::Approx(s.out.per_variable.row(k).sum()).epsilon(1e-12));
      CHECK(s.in.mean(k) == Catch::Approx(s.out.mean(k)).epsilon(1e-12));
    }
  }
  SECTION("coupling switched on mid-sample raises the series") {
    // First half independent, second half strongly factor-coupled.
    Matrix m = synthetic::gaussian(600, 6, 9, 0.02);
    m.bottomRows(300) = synthetic::coupled_ar(300, 6, 0.0, 2.0, 10, 0.02);
    const auto s = rolling_mean_te(synthetic::panel_from(m), 100, 50, 0.02);
    const Eigen::Index k = s.out.mean.size();
    REQUIRE(k >= 6);
    CHECK(s.out.mean(k - 1) > s.out.mean(0));
    CHECK(s.out.mean.tail(2).minCoeff() > s.out.mean.head(3).maxCoeff());
  }
  SECTION("shuffled input stays flat") {
    const auto s = rolling_mean_te(synthetic::panel_from(synthetic::gaussian(400, 4, 11, 0.02)), 100, 25, 0.02);
    const double spread = s.out.mean.maxCoeff() - s.out.mean.minCoeff();
    CHECK(spread < 0.25 * s.out.mean.mean());
  }
}

TEST_CASE("volatility_panel", "[windows]") {
  Matrix m(2, 2);
  m << -0.02, 0.0, 0.01, -0.5;
  const Matrix v = volatility_panel(synthetic::panel_from(m));
  CHECK(v(0, 0) == 0.02);
  CHECK(v(0, 1) == 0.0);
  CHECK(v.rowwise().mean()(1) == Catch::Approx(0.255));
}

TEST_CASE("window statistics are causal", "[windows][property]") {
  const Matrix clean = synthetic::coupled_ar(160, 5, 0.2, 1.0, 21);
  const auto p = synthetic::panel_from(clean);
  const auto corr = rolling_mean_correlation(p, 40, 1);
  const auto te = rolling_mean_te(p, 40, 1, 0.02);
  for (std::size_t k : {0u, 37u, 80u, 119u}) {
    const std::size_t anchor_row = k + 39;
    Matrix dirty = clean;
    Rng rng(k);
    for (Eigen::Index t = static_cast<Eigen::Index>(anchor_row) + 1; t < dirty.rows(); ++t) {
      for (Eigen::Index j = 0; j < dirty.cols(); ++j) dirty(t, j) = 5.0 * standard_normal(rng);
    }
    const auto pd = synthetic::panel_from(dirty);
    const auto corr_d = rolling_mean_correlation(pd, 40, 1);
    const auto te_d = rolling_mean_te(pd, 40, 1, 0.02);
    const auto i = static_cast<Eigen::Index>(k);
    CHECK(corr_d.anchor_dates[k] == corr.anchor_dates[k]);
    CHECK(corr_d.per_variable.row(i) == corr.per_variable.row(i));
    CHECK(te_d.in.per_variable.row(i) == te.in.per_variable.row(i));
    CHECK(te_d.out.per_variable.row(i) == te.out.per_variable.row(i));
  }
}

TEST_CASE("consecutive windows differ by one row each way", "[windows][property]") {
  const auto p = synthetic::panel_from(synthetic::coupled_ar(90, 4, 0.2, 1.0, 22));
  const auto s = rolling_mean_correlation(p, 30, 1);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto c = pearson_matrix(p.slice_rows(k, 30));
    CHECK(s.per_variable.row(static_cast<Eigen::Index>(k)).transpose().isApprox(
        node_strength(c) / 4.0, 1e-14));
  }
}

TEST_CASE("semester TE series", "[windows]") {
  const auto p = synthetic::panel_from(synthetic::coupled_ar(400, 4, 0.2, 1.0, 23));
  const auto sems = semester_slices(p.dates());
  const auto s = mean_te_series(p, sems, kSemesterBinWidth);
  CHECK(s.in.size() == sems.size());
  CHECK(s.in.labels.front() == sems.front().label);
}
