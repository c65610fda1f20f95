#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "synthetic.hpp"
#include "tenet/error.hpp"
#include "tenet/netmetrics.hpp"

using namespace tenet;

namespace {

CorrelationMatrix corr_of(const Matrix& values) {
  return CorrelationMatrix{synthetic::tickers(static_cast<std::size_t>(values.rows())), values};
}

Matrix uniform_square(Rng& rng, Eigen::Index n) {
  Matrix m(n, n);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = std::abs(standard_normal(rng));
  return m;
}

std::vector<std::size_t> argsort(const Vector& v) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) {
    return v(static_cast<Eigen::Index>(a)) < v(static_cast<Eigen::Index>(b));
  });
  return idx;
}

}  // namespace

TEST_CASE("correlation_distance endpoints", "[netmetrics]") {
  Matrix c(3, 3);
  c << 1, 0, -1, 0, 1, 0.5, -1, 0.5, 1;
  const auto d = correlation_distance(corr_of(c));
  CHECK(d.values(0, 0) == 0.0);
  CHECK(d.values(0, 1) == Catch::Approx(std::sqrt(2.0)));
  CHECK(d.values(0, 2) == Catch::Approx(2.0));
  CHECK(d.values(1, 2) == Catch::Approx(1.0));
  CHECK(d.values == d.values.transpose());
}

TEST_CASE("correlation_distance is monotone decreasing in C", "[netmetrics][property]") {
  std::vector<double> cs;
  for (int k = -100; k <= 100; ++k) cs.push_back(k / 100.0);
  double previous = 3.0;
  for (double c : cs) {
    Matrix m(2, 2);
    m << 1, c, c, 1;
    const double d = correlation_distance(corr_of(m)).values(0, 1);
    CHECK(d < previous);
    previous = d;
  }
}

TEST_CASE("correlation_distance satisfies the triangle inequality", "[netmetrics][property]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = pearson_matrix(synthetic::panel_from(synthetic::coupled_ar(60, 12, 0.2, 0.8, seed)));
    const Matrix d = correlation_distance(c).values;
    CHECK(d.minCoeff() >= 0.0);
    CHECK(d.maxCoeff() <= 2.0);
    for (Eigen::Index i = 0; i < 12; ++i) {
      for (Eigen::Index j = 0; j < 12; ++j) {
        for (Eigen::Index k = 0; k < 12; ++k) CHECK(d(i, j) <= d(i, k) + d(k, j) + 1e-12);
      }
    }
  }
}

TEST_CASE("te_distance", "[netmetrics]") {
  const auto vars = synthetic::tickers(2);
  SECTION("symmetric input is left symmetric") {
    Matrix v(2, 2);
    v << 1, 0.3, 0.3, 1;
    const auto d = te_distance(v, vars);
    CHECK(d.distance.values(0, 1) == Catch::Approx(std::sqrt(1.4)));
    CHECK(d.distance.values(1, 0) == d.distance.values(0, 1));
  }
  SECTION("unit values both ways give zero") {
    const auto d = te_distance(Matrix::Ones(2, 2), vars);
    CHECK(d.distance.values.isZero(0.0));
  }
  SECTION("the smaller distance wins") {
    // 2(1 - v) = 0.25 -> 0.5, 2(1 - v) = 0.49 -> 0.7
    Matrix v(2, 2);
    v << 1, 0.875, 0.755, 1;
    const auto d = te_distance(v, vars);
    CHECK(d.distance.values(0, 1) == Catch::Approx(0.5));
    CHECK(d.distance.values(1, 0) == Catch::Approx(0.5));
    CHECK(d.distance.values.diagonal().isZero(0.0));
  }
  SECTION("values above one are clamped and counted") {
    Matrix v(2, 2);
    v << 1, 1.3, 0.2, 1;
    const auto d = te_distance(v, vars);
    CHECK(d.clamped == 1);
    CHECK(d.distance.values(0, 1) == 0.0);
  }
}

TEST_CASE("node_strength includes the self term", "[netmetrics]") {
  CHECK(node_strength(corr_of(Matrix::Identity(3, 3))) == Vector::Ones(3));
  CHECK(node_strength(corr_of(Matrix::Ones(3, 3))) == Vector::Constant(3, 3.0));
}

TEST_CASE("node_strength ranking survives a constant off-diagonal shift", "[netmetrics][property]") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto c = pearson_matrix(synthetic::panel_from(synthetic::coupled_ar(80, 15, 0.1, 0.7, seed)));
    Matrix shifted = c.values.array() + 0.05;
    shifted.diagonal() = c.values.diagonal();
    CHECK(argsort(node_strength(c.values)) == argsort(node_strength(shifted)));
  }
}

TEST_CASE("in_out_node_strength", "[netmetrics]") {
  const auto zero = in_out_node_strength(Matrix::Zero(3, 3));
  CHECK(zero.in.isZero(0.0));
  CHECK(zero.out.isZero(0.0));

  Matrix single(2, 2);
  single << 0, 1, 0, 0;
  const auto s = in_out_node_strength(single);
  CHECK(s.out == Vector::Unit(2, 0));
  CHECK(s.in == Vector::Unit(2, 1));

  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = uniform_square(rng, 7);
    const auto io = in_out_node_strength(m);
    CHECK(io.in.sum() == Catch::Approx(m.sum()).epsilon(1e-14));
    CHECK(io.out.sum() == Catch::Approx(m.sum()).epsilon(1e-14));
  }
}

TEST_CASE("asset_graph", "[netmetrics]") {
  CHECK(asset_graph(Matrix::Identity(4, 4), 0.8, false).edges.empty());
  CHECK(asset_graph(Matrix::Identity(4, 4), 0.8, false).nodes.empty());

  Matrix one_pair = Matrix::Constant(4, 4, 0.1);
  one_pair.diagonal().setOnes();
  one_pair(1, 3) = one_pair(3, 1) = 0.9;
  const auto g = asset_graph(one_pair, 0.8, false);
  CHECK(g.nodes == std::vector<std::size_t>{1, 3});
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].from == 1);
  CHECK(g.edges[0].to == 3);

  const auto complete = asset_graph(one_pair, -1.0, false);
  CHECK(complete.nodes.size() == 4);
  CHECK(complete.edges.size() == 6);

  Matrix directed = Matrix::Zero(3, 3);
  directed(0, 1) = 0.9;
  directed(1, 0) = 0.8;
  directed(1, 2) = 0.75;
  const auto dg = asset_graph(directed, 0.7, true);
  REQUIRE(dg.edges.size() == 3);
  CHECK(dg.edges[0].reciprocal);
  CHECK(dg.edges[1].reciprocal);
  CHECK_FALSE(dg.edges[2].reciprocal);

  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(asset_graph(asym, 0.1, false), UsageError);
}

TEST_CASE("asset_graph counts shrink as the threshold rises", "[netmetrics][property]") {
  const auto c = pearson_matrix(synthetic::panel_from(synthetic::coupled_ar(100, 20, 0.1, 1.0, 3)));
  std::size_t nodes = c.size() + 1, edges = c.size() * c.size();
  for (int k = 0; k <= 20; ++k) {
    const auto g = asset_graph(c.values, -1.0 + 0.1 * k, false);
    CHECK(g.nodes.size() <= nodes);
    CHECK(g.edges.size() <= edges);
    nodes = g.nodes.size();
    edges = g.edges.size();
  }
}

TEST_CASE("connected_components", "[netmetrics]") {
  CHECK(connected_components(AssetGraph{}).empty());

  Matrix two = Matrix::Zero(5, 5);
  two(3, 4) = two(4, 3) = 1;
  two(0, 2) = two(2, 0) = 1;
  const auto pairs = connected_components(asset_graph(two, 0.5, false));
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0] == std::vector<std::size_t>{0, 2});
  CHECK(pairs[1] == std::vector<std::size_t>{3, 4});

  Matrix path = Matrix::Zero(4, 4);
  path(1, 2) = 1;  // directed path 1 -> 2 -> 3, weakly connected
  path(2, 3) = 1;
  const auto one = connected_components(asset_graph(path, 0.5, true));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == std::vector<std::size_t>{1, 2, 3});

  Matrix mixed = Matrix::Zero(6, 6);
  mixed(5, 4) = mixed(4, 5) = 1;
  mixed(0, 1) = mixed(1, 0) = 1;
  mixed(1, 2) = mixed(2, 1) = 1;
  const auto sorted = connected_components(asset_graph(mixed, 0.5, false));
  REQUIRE(sorted.size() == 2);
  CHECK(sorted[0].size() == 3);
  CHECK(sorted[1] == std::vector<std::size_t>{4, 5});
}

TEST_CASE("sector_index", "[netmetrics]") {
  std::istringstream in(
      "ticker,sector,industry,subindustry\n"
      "S0,Energy,Oil,Integrated\nS1,Energy,Oil,Integrated\n"
      "S2,Tech,Chips,Chips\nS3,Tech,Chips,Chips\nS4,Tech,Chips,Chips\n"
      "S5,Tech,Chips,Chips\nS6,Tech,Chips,Chips\n");
  const auto tax = read_taxonomy(in);

  SECTION("perfectly correlated pair gets equal weights") {
    const Matrix base = synthetic::gaussian(100, 1, 5);
    Matrix m(100, 2);
    m << base, 3.0 * base;
    const Vector w = leading_eigenvector(pearson_matrix(synthetic::panel_from(m)).values);
    CHECK(w(0) == Catch::Approx(1 / std::sqrt(2.0)));
    CHECK(w(1) == Catch::Approx(1 / std::sqrt(2.0)));
  }
  SECTION("identical series give a proportional index") {
    const Matrix base = synthetic::gaussian(100, 1, 6);
    Matrix m(100, 2);
    m << base, base;
    const auto idx = sector_index(synthetic::panel_from(m), tax);
    CHECK((idx.returns().col(0) - std::sqrt(2.0) * base).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("one-factor sector tracks its factor") {
    Rng rng(12);
    const Eigen::Index t = 1000;
    Vector factor(t);
    Matrix m(t, 7);
    for (Eigen::Index k = 0; k < t; ++k) {
      factor(k) = standard_normal(rng);
      m(k, 0) = standard_normal(rng);
      m(k, 1) = standard_normal(rng);
      for (Eigen::Index j = 2; j < 7; ++j) m(k, j) = factor(k) + 0.3 * standard_normal(rng);
    }
    const auto idx = sector_index(synthetic::panel_from(m), tax);
    REQUIRE(idx.cols() == 2);
    CHECK(idx.variables()[1].ticker == "Tech");
    std::vector<double> a(factor.begin(), factor.end());
    std::vector<double> b(idx.returns().col(1).begin(), idx.returns().col(1).end());
    Matrix both(t, 2);
    both << factor, idx.returns().col(1);
    CHECK(pearson_matrix(synthetic::panel_from(both)).values(0, 1) > 0.99);
  }
  SECTION("a lone member is rejected") {
    std::istringstream solo_in("ticker,sector,industry,subindustry\nS0,A,x,y\nS1,B,x,y\nS2,B,x,y\n");
    const auto solo = read_taxonomy(solo_in);
    CHECK_THROWS_AS(sector_index(synthetic::panel_from(synthetic::gaussian(50, 3, 1)), solo), DataError);
  }
}

TEST_CASE("graph export", "[netmetrics]") {
  Matrix directed = Matrix::Zero(3, 3);
  directed(0, 1) = 0.9;
  directed(1, 0) = 0.8;
  directed(1, 2) = 0.75;
  const auto g = asset_graph(directed, 0.7, true);
  const std::vector<std::string> labels = {"AAA", "BBB", "CCC"};

  std::ostringstream graphml;
  write_graphml(graphml, g, labels);
  CHECK(graphml.str().find("<graphml") != std::string::npos);
  CHECK(graphml.str().find("AAA") != std::string::npos);
  CHECK(graphml.str().find("reciprocal") != std::string::npos);

  std::ostringstream dot;
  write_dot(dot, g, labels);
  const std::string s = dot.str();
  CHECK(s.find("digraph") != std::string::npos);
  CHECK(s.find("dir=none") != std::string::npos);
  // The reciprocal pair appears once.
  CHECK(std::count(s.begin(), s.end(), '>') == 2);
}
