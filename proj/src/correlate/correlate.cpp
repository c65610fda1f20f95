#include "tenet/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tenet/error.hpp"
#include "tenet/parallel.hpp"
#include "tenet/random.hpp"

namespace tenet {

namespace {

// Centers each column and scales it to unit Euclidean norm, so that Z^T Z is
// the correlation matrix.
Matrix standardize(const Matrix& data, const std::vector<std::string>& names) {
  if (data.rows() < 3) throw NumericError("correlation needs at least 3 observations");
  Matrix z = data.rowwise() - data.colwise().mean();
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    if (data.col(j).minCoeff() == data.col(j).maxCoeff()) {
      const std::string name = j < static_cast<Eigen::Index>(names.size())
                                   ? names[static_cast<std::size_t>(j)]
                                   : "column " + std::to_string(j);
      throw NumericError("zero-variance variable " + name + ": correlation undefined");
    }
    z.col(j) /= z.col(j).norm();
  }
  return z;
}

Matrix gram_to_correlation(const Matrix& z) {
  Matrix c(z.cols(), z.cols());
  c.setZero();
  c.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose());
  c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
  c = c.cwiseMax(-1.0).cwiseMin(1.0);
  c.diagonal().setOnes();
  return c;
}

}  // namespace

std::size_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

Matrix pearson_values(const Matrix& data, const std::vector<std::string>& names) {
  return gram_to_correlation(standardize(data, names));
}

CorrelationMatrix pearson_matrix(const ReturnPanel& panel) {
  return CorrelationMatrix{panel.variables(),
                           pearson_values(panel.returns(), names_of(panel.variables()))};
}

Band summarize(const std::vector<double>& values) {
  Band band;
  if (values.empty()) return band;
  const double n = static_cast<double>(values.size());
  band.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - band.mean) * (v - band.mean);
    band.std = std::sqrt(ss / (n - 1.0));
  }
  return band;
}

NullBand shuffle_null(const ReturnPanel& panel, std::size_t n_sims, std::uint64_t seed,
                      unsigned threads) {
  if (n_sims < 1) throw UsageError("shuffle_null needs n_sims >= 1");
  if (panel.cols() < 2) throw UsageError("shuffle_null needs at least 2 variables");
  // Permuting rows leaves column means and norms unchanged, so the panel is
  // standardized once.
  const Matrix z = standardize(panel.returns(), names_of(panel.variables()));
  const Eigen::Index T = z.rows();
  const Eigen::Index N = z.cols();

  std::vector<double> mins(n_sims), maxs(n_sims);
  parallel_for(n_sims, threads, [&](std::size_t sim) {
    Rng rng(derive_seed(seed, sim));
    Matrix shuffled(T, N);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(T));
    for (Eigen::Index j = 0; j < N; ++j) {
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      shuffle(std::span<Eigen::Index>(order), rng);
      for (Eigen::Index t = 0; t < T; ++t) shuffled(t, j) = z(order[static_cast<std::size_t>(t)], j);
    }
    Matrix c(N, N);
    c.setZero();
    c.selfadjointView<Eigen::Lower>().rankUpdate(shuffled.transpose());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Eigen::Index j = 0; j < N; ++j) {
      for (Eigen::Index i = j + 1; i < N; ++i) {
        lo = std::min(lo, c(i, j));
        hi = std::max(hi, c(i, j));
      }
    }
    mins[sim] = std::clamp(lo, -1.0, 1.0);
    maxs[sim] = std::clamp(hi, -1.0, 1.0);
  });

  NullBand band;
  band.n_sims = n_sims;
  band.seed = seed;
  band.min_stat = summarize(mins);
  band.max_stat = summarize(maxs);
  return band;
}

Histogram offdiag_histogram(const Matrix& values, std::size_t bin_count, double lo, double hi) {
  if (bin_count < 1) throw UsageError("histogram needs at least one bin");
  if (!(hi > lo)) throw UsageError("histogram range is empty");
  Histogram h;
  h.edges.resize(bin_count + 1);
  for (std::size_t k = 0; k <= bin_count; ++k) {
    h.edges[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bin_count);
  }
  h.counts.assign(bin_count, 0);
  const double width = (hi - lo) / static_cast<double>(bin_count);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < values.cols(); ++j) {
      const double v = values(i, j);
      if (v < lo || v > hi) continue;
      auto k = static_cast<std::size_t>(std::floor((v - lo) / width));
      k = std::min(k, bin_count - 1);
      ++h.counts[k];
    }
  }
  return h;
}

Histogram offdiag_histogram(const CorrelationMatrix& matrix, std::size_t bin_count) {
  return offdiag_histogram(matrix.values, bin_count);
}

}  // namespace tenet
