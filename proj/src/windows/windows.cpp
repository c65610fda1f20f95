#include "tenet/windows.hpp"

#include <optional>

#include "tenet/correlate.hpp"
#include "tenet/entropy.hpp"
#include "tenet/error.hpp"
#include "tenet/netmetrics.hpp"
#include "tenet/parallel.hpp"

namespace tenet {

namespace {

struct WindowResult {
  bool ok = false;
  Vector first;
  Vector second;
  WindowSkip skip;
};

void check_panel(const ReturnPanel& panel) {
  for (const auto& v : panel.variables()) {
    if (v.lag != 0) throw UsageError("window statistics expect an unexpanded panel");
  }
}

WindowSeries empty_series(const ReturnPanel& panel) {
  WindowSeries s;
  s.variables = panel.variables();
  return s;
}

// Collects evaluated windows in window order.
void assemble(const ReturnPanel& panel, const std::vector<LabeledRange>& windows,
              const std::vector<WindowResult>& results, bool second, WindowSeries& series) {
  const auto n = static_cast<Eigen::Index>(panel.cols());
  std::size_t kept = 0;
  for (const auto& r : results) kept += r.ok ? 1 : 0;
  series.mean.resize(static_cast<Eigen::Index>(kept));
  series.per_variable.resize(static_cast<Eigen::Index>(kept), n);
  Eigen::Index row = 0;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const auto& r = results[w];
    if (!r.ok) {
      series.skipped.push_back(r.skip);
      continue;
    }
    const Vector& values = second ? r.second : r.first;
    series.anchor_dates.push_back(panel.dates()[windows[w].range.last()]);
    if (!windows[w].label.empty()) series.labels.push_back(windows[w].label);
    series.per_variable.row(row) = values.transpose();
    series.mean(row) = n > 0 ? values.mean() : 0.0;
    ++row;
  }
}

}  // namespace

std::vector<IndexRange> window_slices(std::size_t count, std::size_t width, std::size_t step) {
  if (width < 2) throw UsageError("window width must be at least 2");
  if (step < 1) throw UsageError("window step must be at least 1");
  std::vector<IndexRange> out;
  for (std::size_t begin = 0; begin + width <= count; begin += step) {
    out.push_back(IndexRange{begin, begin + width});
  }
  return out;
}

std::vector<LabeledRange> semester_slices(const std::vector<Date>& dates) {
  std::vector<LabeledRange> out;
  auto half = [](const Date& d) { return d.month <= 6 ? 1 : 2; };
  for (std::size_t t = 0; t < dates.size(); ++t) {
    const bool same = t > 0 && dates[t].year == dates[t - 1].year &&
                      half(dates[t]) == half(dates[t - 1]);
    if (same) {
      out.back().range.end = t + 1;
    } else {
      out.push_back(LabeledRange{std::to_string(dates[t].year) + "-S" + std::to_string(half(dates[t])),
                                 IndexRange{t, t + 1}});
    }
  }
  return out;
}

std::vector<LabeledRange> unlabeled(const std::vector<IndexRange>& ranges) {
  std::vector<LabeledRange> out;
  out.reserve(ranges.size());
  for (const auto& r : ranges) out.push_back(LabeledRange{{}, r});
  return out;
}

WindowSeries mean_correlation_series(const ReturnPanel& panel,
                                     const std::vector<LabeledRange>& windows,
                                     unsigned threads) {
  check_panel(panel);
  const auto n = static_cast<double>(panel.cols());
  std::vector<WindowResult> results(windows.size());
  parallel_for(windows.size(), threads, [&](std::size_t w) {
    const IndexRange range = windows[w].range;
    WindowResult& r = results[w];
    r.skip.anchor = panel.dates()[range.last()];
    if (range.size() < 3) {
      r.skip.reason = "fewer than 3 observations";
      return;
    }
    const Matrix block = panel.returns().middleRows(static_cast<Eigen::Index>(range.begin),
                                                    static_cast<Eigen::Index>(range.size()));
    for (Eigen::Index j = 0; j < block.cols(); ++j) {
      if (block.col(j).minCoeff() == block.col(j).maxCoeff()) {
        r.skip.variable = panel.variables()[static_cast<std::size_t>(j)].name();
        r.skip.reason = "zero variance";
        return;
      }
    }
    r.first = node_strength(pearson_values(block, names_of(panel.variables()))) / n;
    r.ok = true;
  });
  WindowSeries series = empty_series(panel);
  assemble(panel, windows, results, false, series);
  return series;
}

WindowSeries rolling_mean_correlation(const ReturnPanel& panel, std::size_t width,
                                      std::size_t step, unsigned threads) {
  if (width < 3) throw UsageError("correlation windows need width >= 3");
  return mean_correlation_series(panel, unlabeled(window_slices(panel.rows(), width, step)),
                                 threads);
}

TeWindowSeries mean_te_series(const ReturnPanel& panel, const std::vector<LabeledRange>& windows,
                              double bin_width, unsigned threads) {
  check_panel(panel);
  if (!(bin_width > 0.0)) throw UsageError("bin width must be positive");
  const auto n = static_cast<double>(panel.cols());
  std::vector<WindowResult> results(windows.size());
  // One window per worker keeps at most `threads` 2N x 2N matrices alive.
  parallel_for(windows.size(), threads, [&](std::size_t w) {
    const IndexRange range = windows[w].range;
    WindowResult& r = results[w];
    r.skip.anchor = panel.dates()[range.last()];
    if (range.size() < 3) {
      r.skip.reason = "fewer than 3 observations";
      return;
    }
    const ReturnPanel slice = panel.slice_rows(range.begin, range.size());
    const QuadTEMatrix quad = te_matrix_from_returns(slice, bin_width, 1);
    const auto strength = in_out_node_strength(quad.quadrant(Quadrant::S21));
    r.first = strength.in / n;
    r.second = strength.out / n;
    r.ok = true;
  });
  TeWindowSeries out{empty_series(panel), empty_series(panel)};
  assemble(panel, windows, results, false, out.in);
  assemble(panel, windows, results, true, out.out);
  return out;
}

TeWindowSeries rolling_mean_te(const ReturnPanel& panel, std::size_t width, std::size_t step,
                               double bin_width, unsigned threads) {
  if (width < 3) throw UsageError("TE windows need width >= 3");
  return mean_te_series(panel, unlabeled(window_slices(panel.rows(), width, step)), bin_width,
                        threads);
}

Matrix volatility_panel(const ReturnPanel& panel) { return panel.returns().cwiseAbs(); }

}  // namespace tenet
