#pragma once

#include <string>
#include <vector>

#include "tenet/corpus.hpp"
#include "tenet/date.hpp"
#include "tenet/types.hpp"

namespace tenet {

inline constexpr std::size_t kDefaultWindowWidth = 100;
inline constexpr double kFullPeriodBinWidth = 0.02;
inline constexpr double kSemesterBinWidth = 0.1;

// Half-open row range [begin, end).
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  std::size_t last() const { return end - 1; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct LabeledRange {
  std::string label;  // "2008-S2"
  IndexRange range;
};

// Windows [k*step, k*step + width) that fit inside `count` rows.
std::vector<IndexRange> window_slices(std::size_t count, std::size_t width, std::size_t step);

// Consecutive runs of dates in the same half-year (Jan-Jun, Jul-Dec).
std::vector<LabeledRange> semester_slices(const std::vector<Date>& dates);

struct WindowSkip {
  Date anchor;
  std::string variable;
  std::string reason;
};

// One entry per evaluated window, stamped with the window's last date.
struct WindowSeries {
  std::vector<Date> anchor_dates;
  std::vector<std::string> labels;  // semester labels, empty for rolling windows
  std::vector<Variable> variables;
  Vector mean;           // per window
  Matrix per_variable;   // windows x variables
  std::vector<WindowSkip> skipped;

  std::size_t size() const { return anchor_dates.size(); }
};

struct TeWindowSeries {
  WindowSeries in;
  WindowSeries out;
};

// Per window: correlation matrix, node strengths divided by N, and their
// mean ("mean correlation"). Windows holding a constant column are skipped.
WindowSeries mean_correlation_series(const ReturnPanel& panel,
                                     const std::vector<LabeledRange>& windows,
                                     unsigned threads = 0);
WindowSeries rolling_mean_correlation(const ReturnPanel& panel, std::size_t width,
                                      std::size_t step, unsigned threads = 0);

// Per window: lag expansion and binning on the window alone, S21, then the
// in and out node strengths divided by N and their means.
TeWindowSeries mean_te_series(const ReturnPanel& panel, const std::vector<LabeledRange>& windows,
                              double bin_width, unsigned threads = 0);
TeWindowSeries rolling_mean_te(const ReturnPanel& panel, std::size_t width, std::size_t step,
                               double bin_width, unsigned threads = 0);

// |r| entrywise.
Matrix volatility_panel(const ReturnPanel& panel);

// Unlabeled ranges -> labeled ranges with empty labels.
std::vector<LabeledRange> unlabeled(const std::vector<IndexRange>& ranges);

}  // namespace tenet
