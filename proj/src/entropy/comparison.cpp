#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tenet/entropy.hpp"
#include "tenet/error.hpp"

namespace tenet {

namespace {

void require_pairs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UsageError("paired samples differ in length");
}

// Sum of t(t-1)/2 over runs of equal values in an already sorted sequence.
template <typename Equal>
double tied_pairs(std::size_t n, Equal&& equal) {
  double ties = 0.0;
  for (std::size_t a = 0; a < n;) {
    std::size_t b = a + 1;
    while (b < n && equal(a, b)) ++b;
    const double run = static_cast<double>(b - a);
    ties += run * (run - 1.0) / 2.0;
    a = b;
  }
  return ties;
}

// Merge sort on `values` counting exchanges (pairs with values[i] > values[j],
// i < j).
double count_exchanges(std::vector<double>& values, std::vector<double>& scratch,
                       std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0.0;
  const std::size_t mid = lo + (hi - lo) / 2;
  double swaps = count_exchanges(values, scratch, lo, mid) + count_exchanges(values, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (values[j] < values[i]) {
      scratch[k++] = values[j++];
      swaps += static_cast<double>(mid - i);
    } else {
      scratch[k++] = values[i++];
    }
  }
  while (i < mid) scratch[k++] = values[i++];
  while (j < hi) scratch[k++] = values[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            values.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

Coefficients coefficients(const std::vector<double>& x, const std::vector<double>& y) {
  return Coefficients{pearson_coefficient(x, y), spearman_coefficient(x, y), kendall_tau_b(x, y)};
}

}  // namespace

double pearson_coefficient(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y);
  const std::size_t n = x.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t a = 0; a < n;) {
    std::size_t b = a + 1;
    while (b < n && values[order[b]] == values[order[a]]) ++b;
    const double rank = (static_cast<double>(a) + static_cast<double>(b) + 1.0) / 2.0;
    for (std::size_t k = a; k < b; ++k) ranks[order[k]] = rank;
    a = b;
  }
  return ranks;
}

double spearman_coefficient(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson_coefficient(rx, ry);
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  // Knight's algorithm: sort by (x, y), count ties, then count the exchanges
  // a merge sort on y needs.
  require_pairs(x, y);
  const std::size_t n = x.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });
  std::vector<double> xs(n), ys(n);
  for (std::size_t k = 0; k < n; ++k) {
    xs[k] = x[order[k]];
    ys[k] = y[order[k]];
  }
  const double total = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double x_ties = tied_pairs(n, [&](std::size_t a, std::size_t b) { return xs[a] == xs[b]; });
  const double joint_ties = tied_pairs(
      n, [&](std::size_t a, std::size_t b) { return xs[a] == xs[b] && ys[a] == ys[b]; });
  std::vector<double> scratch(n);
  const double exchanges = count_exchanges(ys, scratch, 0, n);
  const double y_ties = tied_pairs(n, [&](std::size_t a, std::size_t b) { return ys[a] == ys[b]; });
  const double denom = std::sqrt((total - x_ties) * (total - y_ties));
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double score = total - x_ties - y_ties + joint_ties - 2.0 * exchanges;
  return std::clamp(score / denom, -1.0, 1.0);
}

TeCorrelationComparison te_correlation_comparison(const Matrix& te_s21,
                                                  const CorrelationMatrix& corr) {
  if (te_s21.rows() != te_s21.cols() || te_s21.rows() != corr.values.rows()) {
    throw UsageError("TE and correlation matrices cover different variable sets");
  }
  const Eigen::Index n = te_s21.rows();
  std::vector<double> te_all, corr_all, te_off, corr_off;
  te_all.reserve(static_cast<std::size_t>(n * n));
  corr_all.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      te_all.push_back(te_s21(i, j));
      corr_all.push_back(corr.values(i, j));
      if (i != j) {
        te_off.push_back(te_s21(i, j));
        corr_off.push_back(corr.values(i, j));
      }
    }
  }
  return TeCorrelationComparison{coefficients(te_all, corr_all), coefficients(te_off, corr_off)};
}

}  // namespace tenet
