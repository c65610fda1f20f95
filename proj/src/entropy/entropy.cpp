#include "tenet/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "tenet/error.hpp"
#include "tenet/parallel.hpp"
#include "tenet/random.hpp"

namespace tenet {

namespace {

// Joint tables larger than this fall back to sorting the observed cells.
constexpr std::size_t kDenseCellLimit = std::size_t{1} << 22;

struct CompactSeries {
  std::vector<std::uint32_t> ids;
  std::uint32_t alphabet = 0;
};

CompactSeries compact(std::span<const int> codes) {
  std::vector<int> symbols(codes.begin(), codes.end());
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  CompactSeries out;
  out.alphabet = static_cast<std::uint32_t>(symbols.size());
  out.ids.reserve(codes.size());
  for (int c : codes) {
    const auto it = std::lower_bound(symbols.begin(), symbols.end(), c);
    out.ids.push_back(static_cast<std::uint32_t>(it - symbols.begin()));
  }
  return out;
}

// Count tables reused across pairs by one worker.
class Workspace {
 public:
  double evaluate(const CompactSeries& source, const CompactSeries& dest) {
    const std::size_t samples = dest.ids.size() - 1;
    const std::size_t kd = dest.alphabet;
    const std::size_t ks = source.alphabet;
    const std::size_t cells = kd * kd * ks;
    const double sum = cells <= kDenseCellLimit ? dense(source, dest, kd, ks, cells)
                                                : sparse(source, dest, kd, ks);
    return std::max(0.0, sum / static_cast<double>(samples));
  }

 private:
  double dense(const CompactSeries& source, const CompactSeries& dest, std::size_t kd,
               std::size_t ks, std::size_t cells) {
    if (joint_.size() < cells) joint_.resize(cells, 0);
    next_past_.assign(kd * kd, 0);
    past_source_.assign(kd * ks, 0);
    past_.assign(kd, 0);
    touched_.clear();

    const std::size_t samples = dest.ids.size() - 1;
    for (std::size_t n = 0; n < samples; ++n) {
      const std::size_t next = dest.ids[n + 1];
      const std::size_t now = dest.ids[n];
      const std::size_t src = source.ids[n];
      const std::size_t cell = (next * kd + now) * ks + src;
      if (joint_[cell]++ == 0) touched_.push_back(cell);
      ++next_past_[next * kd + now];
      ++past_source_[now * ks + src];
      ++past_[now];
    }

    double sum = 0.0;
    for (const std::size_t cell : touched_) {
      const std::size_t src = cell % ks;
      const std::size_t now = (cell / ks) % kd;
      const std::size_t next = cell / (ks * kd);
      const double c = joint_[cell];
      sum += c * std::log2(c * static_cast<double>(past_[now]) /
                           (static_cast<double>(next_past_[next * kd + now]) *
                            static_cast<double>(past_source_[now * ks + src])));
      joint_[cell] = 0;
    }
    return sum;
  }

  double sparse(const CompactSeries& source, const CompactSeries& dest, std::size_t kd,
                std::size_t ks) {
    const std::size_t samples = dest.ids.size() - 1;
    std::vector<std::uint64_t> keys(samples);
    std::unordered_map<std::uint64_t, std::uint32_t> next_past, past_source, past;
    for (std::size_t n = 0; n < samples; ++n) {
      const std::uint64_t next = dest.ids[n + 1];
      const std::uint64_t now = dest.ids[n];
      const std::uint64_t src = source.ids[n];
      keys[n] = (next * kd + now) * ks + src;
      ++next_past[next * kd + now];
      ++past_source[now * ks + src];
      ++past[now];
    }
    std::sort(keys.begin(), keys.end());
    double sum = 0.0;
    for (std::size_t a = 0; a < samples;) {
      std::size_t b = a;
      while (b < samples && keys[b] == keys[a]) ++b;
      const std::uint64_t cell = keys[a];
      const std::uint64_t src = cell % ks;
      const std::uint64_t now = (cell / ks) % kd;
      const std::uint64_t next = cell / (ks * kd);
      const double c = static_cast<double>(b - a);
      sum += c * std::log2(c * static_cast<double>(past[now]) /
                           (static_cast<double>(next_past[next * kd + now]) *
                            static_cast<double>(past_source[now * ks + src])));
      a = b;
    }
    return sum;
  }

  std::vector<std::uint32_t> joint_;
  std::vector<std::uint32_t> next_past_;
  std::vector<std::uint32_t> past_source_;
  std::vector<std::uint32_t> past_;
  std::vector<std::size_t> touched_;
};

std::vector<CompactSeries> compact_columns(const CodeMatrix& codes) {
  std::vector<CompactSeries> out;
  out.reserve(static_cast<std::size_t>(codes.cols()));
  for (Eigen::Index j = 0; j < codes.cols(); ++j) {
    out.push_back(compact(std::span<const int>(codes.col(j).data(),
                                               static_cast<std::size_t>(codes.rows()))));
  }
  return out;
}

bool is_expanded(const std::vector<Variable>& vars) {
  const std::size_t n = vars.size();
  if (n == 0 || n % 2 != 0) return false;
  for (std::size_t i = 0; i < n / 2; ++i) {
    if (vars[i].lag != 0 || vars[n / 2 + i].lag != 1 || vars[i].ticker != vars[n / 2 + i].ticker) {
      return false;
    }
  }
  return true;
}

void offdiag_extremes(const Matrix& block, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (Eigen::Index i = 0; i < block.rows(); ++i) {
    for (Eigen::Index j = 0; j < block.cols(); ++j) {
      if (i == j) continue;
      lo = std::min(lo, block(i, j));
      hi = std::max(hi, block(i, j));
    }
  }
}

}  // namespace

std::string to_string(Quadrant q) {
  switch (q) {
    case Quadrant::S11: return "s11";
    case Quadrant::S21: return "s21";
    case Quadrant::S12: return "s12";
    case Quadrant::S22: return "s22";
  }
  return "?";
}

Quadrant parse_quadrant(std::string_view name) {
  for (Quadrant q : kAllQuadrants) {
    if (to_string(q) == name) return q;
  }
  throw UsageError("unknown quadrant '" + std::string(name) + "' (expected s11, s21, s12, s22)");
}

Matrix QuadTEMatrix::quadrant(Quadrant q) const {
  const auto n = static_cast<Eigen::Index>(tickers());
  const Eigen::Index row = (q == Quadrant::S12 || q == Quadrant::S22) ? n : 0;
  const Eigen::Index col = (q == Quadrant::S21 || q == Quadrant::S22) ? n : 0;
  return values.block(row, col, n, n);
}

std::vector<Variable> QuadTEMatrix::base_variables() const {
  return {variables.begin(), variables.begin() + static_cast<std::ptrdiff_t>(tickers())};
}

DiscretePanel bin_panel(const ReturnPanel& panel, double bin_width) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw UsageError("bin width must be positive");
  }
  DiscretePanel out;
  out.variables = panel.variables();
  out.bin_width = bin_width;
  const Matrix& r = panel.returns();
  out.origin = r.size() > 0 ? r.minCoeff() : 0.0;
  if (r.size() > 0 && (r.maxCoeff() - out.origin) / bin_width > 1e9) {
    throw UsageError("bin width too small for the range of returns");
  }
  out.codes.resize(r.rows(), r.cols());
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    for (Eigen::Index t = 0; t < r.rows(); ++t) {
      out.codes(t, j) = static_cast<int>(std::floor((r(t, j) - out.origin) / bin_width));
    }
  }
  return out;
}

double transfer_entropy(std::span<const int> source, std::span<const int> dest) {
  if (source.size() != dest.size()) {
    throw UsageError("transfer entropy needs sequences of equal length");
  }
  if (dest.size() < 2) throw UsageError("transfer entropy needs at least 2 observations");
  Workspace ws;
  return ws.evaluate(compact(source), compact(dest));
}

Matrix te_matrix(const DiscretePanel& panel, unsigned threads) {
  const auto n = static_cast<Eigen::Index>(panel.cols());
  if (panel.rows() < 2) throw DataError("transfer entropy needs at least 2 observations");
  const auto columns = compact_columns(panel.codes);
  Matrix out(n, n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    Workspace ws;
    for (Eigen::Index j = 0; j < n; ++j) {
      out(static_cast<Eigen::Index>(i), j) = ws.evaluate(columns[i], columns[static_cast<std::size_t>(j)]);
    }
  });
  return out;
}

QuadTEMatrix te_matrix_expanded(const DiscretePanel& panel, unsigned threads) {
  if (!is_expanded(panel.variables)) {
    throw UsageError("quadrant TE matrix needs a lag-expanded panel");
  }
  return QuadTEMatrix{panel.variables, te_matrix(panel, threads)};
}

QuadTEMatrix te_matrix_from_returns(const ReturnPanel& panel, double bin_width,
                                    unsigned threads) {
  return te_matrix_expanded(bin_panel(lag_expand(panel), bin_width), threads);
}

DiscretePanel lag_expand(const DiscretePanel& panel) {
  for (const auto& v : panel.variables) {
    if (v.lag != 0) throw UsageError("panel is already lag-expanded");
  }
  if (panel.rows() < 2) throw DataError("lag expansion needs at least 2 rows");
  const auto T = static_cast<Eigen::Index>(panel.rows());
  const auto N = static_cast<Eigen::Index>(panel.cols());
  DiscretePanel out;
  out.bin_width = panel.bin_width;
  out.origin = panel.origin;
  out.variables = panel.variables;
  for (const auto& v : panel.variables) out.variables.push_back(Variable{v.ticker, 1});
  out.codes.resize(T - 1, 2 * N);
  out.codes.leftCols(N) = panel.codes.bottomRows(T - 1);
  out.codes.rightCols(N) = panel.codes.topRows(T - 1);
  return out;
}

Matrix normalize_te(const Matrix& s21, const std::vector<Variable>& variables) {
  Matrix out = s21;
  for (Eigen::Index j = 0; j < s21.cols(); ++j) {
    const double self = s21(j, j);
    if (!(self > 0.0)) {
      const std::string name = j < static_cast<Eigen::Index>(variables.size())
                                   ? variables[static_cast<std::size_t>(j)].name()
                                   : "column " + std::to_string(j);
      throw NumericError("lagged self-transfer of " + name + " is zero; cannot normalize");
    }
    out.col(j) /= self;
    out(j, j) = 1.0;
  }
  return out;
}

Matrix normalize_te(const QuadTEMatrix& matrix) {
  return normalize_te(matrix.quadrant(Quadrant::S21), matrix.base_variables());
}

Matrix excess_te(const Matrix& s21) {
  if (s21.rows() != s21.cols()) throw UsageError("excess TE needs a square matrix");
  return s21 - s21.transpose();
}

Matrix excess_te(const QuadTEMatrix& matrix) {
  return excess_te(matrix.quadrant(Quadrant::S21));
}

QuadrantNull te_shuffle_null(const DiscretePanel& panel, std::size_t n_sims,
                             std::uint64_t seed, unsigned threads) {
  if (n_sims < 1) throw UsageError("te_shuffle_null needs n_sims >= 1");
  if (panel.cols() < 2) throw UsageError("te_shuffle_null needs at least 2 variables");
  for (const auto& v : panel.variables) {
    if (v.lag != 0) throw UsageError("te_shuffle_null expects an unexpanded panel");
  }
  std::array<std::vector<double>, 4> mins, maxs;
  for (std::size_t sim = 0; sim < n_sims; ++sim) {
    Rng rng(derive_seed(seed, sim));
    DiscretePanel shuffled = panel;
    for (Eigen::Index j = 0; j < shuffled.codes.cols(); ++j) {
      shuffle(std::span<int>(shuffled.codes.col(j).data(), panel.rows()), rng);
    }
    const auto quad = te_matrix_expanded(lag_expand(shuffled), threads);
    for (std::size_t q = 0; q < kAllQuadrants.size(); ++q) {
      double lo = 0.0, hi = 0.0;
      offdiag_extremes(quad.quadrant(kAllQuadrants[q]), lo, hi);
      mins[q].push_back(lo);
      maxs[q].push_back(hi);
    }
  }
  QuadrantNull out;
  for (std::size_t q = 0; q < kAllQuadrants.size(); ++q) {
    out.bands[q] = NullBand{n_sims, summarize(mins[q]), summarize(maxs[q]), seed};
  }
  return out;
}

}  // namespace tenet
