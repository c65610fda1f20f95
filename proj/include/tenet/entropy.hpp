#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tenet/corpus.hpp"
#include "tenet/correlate.hpp"
#include "tenet/types.hpp"

namespace tenet {

// Returns discretized on a grid shared by every variable:
// code = floor((return - origin) / bin_width).
struct DiscretePanel {
  std::vector<Variable> variables;
  double bin_width = 0.0;
  double origin = 0.0;
  CodeMatrix codes;  // T x N

  std::size_t rows() const { return static_cast<std::size_t>(codes.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(codes.cols()); }
};

enum class Quadrant { S11, S21, S12, S22 };

// "s11", "s21", ... ; parse throws UsageError on unknown names.
std::string to_string(Quadrant q);
Quadrant parse_quadrant(std::string_view name);
inline constexpr std::array<Quadrant, 4> kAllQuadrants = {Quadrant::S11, Quadrant::S21,
                                                          Quadrant::S12, Quadrant::S22};

// Transfer entropy over a lag-expanded variable set, 2N x 2N, entry (i, j)
// the TE from variable i to variable j in bits. Rows and columns list the
// lag-0 block first, then the lag-1 block.
//
// A lagged copy j@1 steps from j's previous return to j's current one, so a
// TE into j@1 measures what the source's current return adds to j's move
// beyond j's own past. Quadrants are labeled by that one-day transfer:
//
//   S11: x_i -> x_j      rows lag-0, cols lag-0
//   S21: x_i -> x_j@1    rows lag-0, cols lag-1  (self-transfer on the diagonal)
//   S12: x_i@1 -> x_j    rows lag-1, cols lag-0  (two-day gap, mostly noise)
//   S22: x_i@1 -> x_j@1  rows lag-1, cols lag-1
//
// Each quadrant is indexed by ticker, entry (i, j) from ticker i to ticker j.
struct QuadTEMatrix {
  std::vector<Variable> variables;
  Matrix values;

  std::size_t tickers() const { return variables.size() / 2; }
  Matrix quadrant(Quadrant q) const;
  // The lag-0 variables, which label the rows and columns of every quadrant.
  std::vector<Variable> base_variables() const;
};

DiscretePanel bin_panel(const ReturnPanel& panel, double bin_width);

// Plug-in TE from `source` to `dest` with one step of history on each side:
//
//   sum p(x', x, y) log2[ p(x', x, y) p(x) / (p(x', x) p(x, y)) ]
//
// over the T-1 triples (dest[n+1], dest[n], source[n]). Empty cells add 0.
double transfer_entropy(std::span<const int> source, std::span<const int> dest);

// N x N matrix of TE between every ordered pair of columns, entry (i, j) from
// i to j. Pairs are independent tasks writing disjoint cells.
Matrix te_matrix(const DiscretePanel& panel, unsigned threads = 0);

// Same as te_matrix on a lag-expanded panel, with quadrant addressing.
QuadTEMatrix te_matrix_expanded(const DiscretePanel& panel, unsigned threads = 0);

// Convenience: lag-expand, bin, and evaluate the quadrant matrix.
QuadTEMatrix te_matrix_from_returns(const ReturnPanel& panel, double bin_width,
                                    unsigned threads = 0);

// Lag-expands a discretized panel of lag-0 variables.
DiscretePanel lag_expand(const DiscretePanel& panel);

// S21 with column j divided by its lagged self-transfer S21(j, j).
Matrix normalize_te(const QuadTEMatrix& matrix);
Matrix normalize_te(const Matrix& s21, const std::vector<Variable>& variables);

// S21(i, j) - S21(j, i).
Matrix excess_te(const QuadTEMatrix& matrix);
Matrix excess_te(const Matrix& s21);

struct QuadrantNull {
  std::array<NullBand, 4> bands;  // indexed like kAllQuadrants

  const NullBand& operator[](Quadrant q) const { return bands[static_cast<std::size_t>(q)]; }
};

// Shuffles each lag-0 column of `panel` independently, lag-expands and
// recomputes the quadrant matrix n_sims times, recording per quadrant the
// extremes of the off-diagonal entries.
QuadrantNull te_shuffle_null(const DiscretePanel& panel, std::size_t n_sims,
                             std::uint64_t seed, unsigned threads = 0);

struct Coefficients {
  double pearson = 0.0;
  double spearman = 0.0;
  double kendall = 0.0;
};

struct TeCorrelationComparison {
  Coefficients with_diagonal;
  Coefficients without_diagonal;
};

// Agreement between S21 and the correlation matrix over the same tickers,
// computed on the vectorized entries.
TeCorrelationComparison te_correlation_comparison(const Matrix& te_s21,
                                                  const CorrelationMatrix& corr);

// Scalar comparators on paired samples. Kendall is tau-b (tie-corrected),
// computed in O(n log n).
double pearson_coefficient(std::span<const double> x, std::span<const double> y);
double spearman_coefficient(std::span<const double> x, std::span<const double> y);
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

// Average ranks (1-based), ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace tenet
