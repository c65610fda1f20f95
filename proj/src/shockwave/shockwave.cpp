#include "tenet/shockwave.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tenet/error.hpp"
#include "tenet/parallel.hpp"

namespace tenet {

PropagationMatrix build_propagation_matrix(const Matrix& s21, std::vector<Variable> variables) {
  if (s21.rows() != s21.cols()) throw UsageError("propagation matrix must be square");
  if (s21.size() > 0 && s21.minCoeff() < 0.0) {
    throw NumericError("propagation matrix has negative entries");
  }
  PropagationMatrix mte{std::move(variables), s21};
  mte.values.diagonal().setZero();
  return mte;
}

PropagationMatrix build_propagation_matrix(const QuadTEMatrix& te) {
  return build_propagation_matrix(te.quadrant(Quadrant::S21), te.base_variables());
}

ShockTrajectory propagate(const PropagationMatrix& mte, const Vector& initial,
                          std::size_t horizon) {
  const Eigen::Index n = mte.values.rows();
  if (initial.size() != n) {
    throw UsageError("initial volatility vector has " + std::to_string(initial.size()) +
                     " entries, expected " + std::to_string(n));
  }
  if (n > 0 && initial.minCoeff() < 0.0) throw UsageError("volatilities must be non-negative");
  ShockTrajectory out;
  out.horizon = horizon;
  out.volatilities.resize(static_cast<Eigen::Index>(horizon) + 1, n);
  out.volatilities.row(0) = initial.transpose();
  for (std::size_t t = 0; t < horizon; ++t) {
    const auto row = static_cast<Eigen::Index>(t);
    const double damping = std::exp(-static_cast<double>(t + 1));
    out.volatilities.row(row + 1) = (out.volatilities.row(row) * mte.values) * damping;
  }
  return out;
}

ShockTrajectory single_stock_shock(const PropagationMatrix& mte, std::size_t stock,
                                   double magnitude, std::size_t horizon) {
  if (stock >= mte.size()) {
    throw UsageError("stock index " + std::to_string(stock) + " out of range");
  }
  Vector v0 = Vector::Zero(mte.values.rows());
  v0(static_cast<Eigen::Index>(stock)) = magnitude;
  auto out = propagate(mte, v0, horizon);
  out.origin = stock < mte.variables.size() ? mte.variables[stock].name()
                                            : "stock " + std::to_string(stock);
  return out;
}

ShockTrajectory group_shock(const PropagationMatrix& mte, std::span<const std::size_t> stocks,
                            double magnitude, std::size_t horizon) {
  if (stocks.empty()) throw UsageError("group shock needs at least one stock");
  Vector v0 = Vector::Zero(mte.values.rows());
  for (std::size_t s : stocks) {
    if (s >= mte.size()) throw UsageError("stock index " + std::to_string(s) + " out of range");
    v0(static_cast<Eigen::Index>(s)) = magnitude;
  }
  auto out = propagate(mte, v0, horizon);
  out.origin = stocks.size() == mte.size() ? "systemic"
                                           : "group of " + std::to_string(stocks.size());
  return out;
}

Vector shock_propagation_strength(const PropagationMatrix& mte, double magnitude,
                                  std::size_t peak_day, unsigned threads) {
  if (peak_day < 1) throw UsageError("peak day must be at least 1");
  const std::size_t n = mte.size();
  Vector strength(static_cast<Eigen::Index>(n));
  parallel_for(n, threads, [&](std::size_t s) {
    const auto trajectory = single_stock_shock(mte, s, magnitude, peak_day);
    strength(static_cast<Eigen::Index>(s)) =
        trajectory.volatilities.row(static_cast<Eigen::Index>(peak_day)).mean();
  });
  return strength;
}

std::vector<std::size_t> descending_ranks(const Vector& values) {
  std::vector<std::size_t> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto at = [&](std::size_t k) { return values(static_cast<Eigen::Index>(k)); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return at(a) > at(b); });
  // Neighbours that differ only by rounding count as ties and keep index order.
  const double tol = kRankTieTolerance * (values.size() > 0 ? values.cwiseAbs().maxCoeff() : 0.0);
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin + 1;
    while (end < order.size() && at(order[end - 1]) - at(order[end]) <= tol) ++end;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(begin), order.begin() + static_cast<std::ptrdiff_t>(end));
    begin = end;
  }
  std::vector<std::size_t> rank(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k + 1;
  return rank;
}

}  // namespace tenet
