#pragma once

#include <cstdint>
#include <vector>

#include "tenet/corpus.hpp"
#include "tenet/types.hpp"

namespace tenet {

// Pearson correlations over a common sample: symmetric, unit diagonal,
// entries clamped to [-1, 1].
struct CorrelationMatrix {
  std::vector<Variable> variables;
  Matrix values;

  std::size_t size() const { return variables.size(); }
};

struct Band {
  double mean = 0.0;
  double std = 0.0;
};

// Spread of the off-diagonal extremes across shuffled replicas.
struct NullBand {
  std::size_t n_sims = 0;
  Band min_stat;
  Band max_stat;
  std::uint64_t seed = 0;
};

struct Histogram {
  std::vector<double> edges;         // bin_count + 1 edges
  std::vector<std::size_t> counts;   // bin_count counts

  std::size_t total() const;
};

CorrelationMatrix pearson_matrix(const ReturnPanel& panel);

// Column data -> correlation values. `names` labels columns in errors.
Matrix pearson_values(const Matrix& data, const std::vector<std::string>& names);

// Permutes every column independently n_sims times and records the smallest
// and largest off-diagonal correlation of each replica. Deterministic in
// `seed` for any thread count.
NullBand shuffle_null(const ReturnPanel& panel, std::size_t n_sims, std::uint64_t seed,
                      unsigned threads = 0);

// Upper-triangle entries of `values` binned over [lo, hi]; the top edge is
// inclusive.
Histogram offdiag_histogram(const Matrix& values, std::size_t bin_count, double lo = -1.0,
                            double hi = 1.0);
Histogram offdiag_histogram(const CorrelationMatrix& matrix, std::size_t bin_count);

// Mean and sample standard deviation.
Band summarize(const std::vector<double>& values);

}  // namespace tenet
