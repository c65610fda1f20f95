#include "tenet/netmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "tenet/error.hpp"

namespace tenet {

namespace {

double mantegna(double c) { return std::sqrt(2.0 * (1.0 - c)); }

// Union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

DistanceMatrix correlation_distance(const CorrelationMatrix& corr) {
  Matrix d = corr.values.unaryExpr([](double c) { return mantegna(std::clamp(c, -1.0, 1.0)); });
  d.diagonal().setZero();
  return DistanceMatrix{corr.variables, std::move(d)};
}

TeDistance te_distance(const Matrix& normalized_s21, const std::vector<Variable>& variables) {
  if (normalized_s21.rows() != normalized_s21.cols()) {
    throw UsageError("te_distance needs a square matrix");
  }
  const Eigen::Index n = normalized_s21.rows();
  TeDistance out;
  Matrix d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double v = normalized_s21(i, j);
      if (i != j && v > 1.0) ++out.clamped;
      v = std::clamp(v, -1.0, 1.0);
      d(i, j) = mantegna(v);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double m = std::min(d(i, j), d(j, i));
      d(i, j) = m;
      d(j, i) = m;
    }
  }
  out.distance = DistanceMatrix{variables, std::move(d)};
  return out;
}

Vector node_strength(const Matrix& matrix) { return matrix.rowwise().sum(); }

Vector node_strength(const CorrelationMatrix& corr) { return node_strength(corr.values); }

InOutStrength in_out_node_strength(const Matrix& directed) {
  return InOutStrength{directed.colwise().sum().transpose(), directed.rowwise().sum()};
}

AssetGraph asset_graph(const Matrix& matrix, double threshold, bool directed) {
  if (matrix.rows() != matrix.cols()) throw UsageError("asset graph needs a square matrix");
  const Eigen::Index n = matrix.rows();
  if (!directed && n > 0 && (matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw UsageError("undirected asset graph needs a symmetric matrix");
  }
  AssetGraph g;
  g.directed = directed;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j || !(matrix(i, j) >= threshold)) continue;
      GraphEdge e{static_cast<std::size_t>(i), static_cast<std::size_t>(j), matrix(i, j), false};
      if (directed) e.reciprocal = matrix(j, i) >= threshold;
      g.edges.push_back(e);
      used[e.from] = used[e.to] = true;
    }
  }
  for (std::size_t k = 0; k < used.size(); ++k) {
    if (used[k]) g.nodes.push_back(k);
  }
  return g;
}

std::vector<std::vector<std::size_t>> connected_components(const AssetGraph& graph) {
  if (graph.nodes.empty()) return {};
  const std::size_t span = graph.nodes.back() + 1;
  DisjointSets sets(span);
  for (const auto& e : graph.edges) sets.unite(e.from, e.to);
  std::vector<std::vector<std::size_t>> by_root(span);
  for (std::size_t node : graph.nodes) by_root[sets.find(node)].push_back(node);
  std::vector<std::vector<std::size_t>> components;
  for (auto& members : by_root) {
    if (!members.empty()) components.push_back(std::move(members));
  }
  std::stable_sort(components.begin(), components.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return components;
}

Vector leading_eigenvector(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
  if (solver.info() != Eigen::Success) throw NumericError("eigen-decomposition failed");
  Vector v = solver.eigenvectors().col(symmetric.rows() - 1);
  if (v.sum() < 0.0) v = -v;
  return v;
}

ReturnPanel sector_index(const ReturnPanel& panel, const SectorTaxonomy& taxonomy) {
  for (const auto& v : panel.variables()) {
    if (v.lag != 0) throw UsageError("sector index expects an unexpanded panel");
  }
  std::vector<std::string> tickers;
  for (const auto& v : panel.variables()) tickers.push_back(v.ticker);
  const auto groups = taxonomy.group(tickers);

  Matrix series(panel.returns().rows(), static_cast<Eigen::Index>(groups.size()));
  std::vector<Variable> sectors;
  for (std::size_t s = 0; s < groups.size(); ++s) {
    const auto& [sector, members] = groups[s];
    if (members.size() < 2) {
      throw DataError("sector " + sector + " has fewer than 2 members");
    }
    const ReturnPanel sub = panel.select_columns(members);
    const Vector weights = leading_eigenvector(pearson_matrix(sub).values);
    series.col(static_cast<Eigen::Index>(s)) = sub.returns() * weights;
    sectors.push_back(Variable{sector, 0});
  }
  return ReturnPanel(panel.dates(), std::move(sectors), std::move(series));
}

}  // namespace tenet
