#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tenet/corpus.hpp"
#include "tenet/correlate.hpp"
#include "tenet/embed.hpp"
#include "tenet/entropy.hpp"
#include "tenet/error.hpp"
#include "tenet/netmetrics.hpp"
#include "tenet/shockwave.hpp"
#include "tenet/windows.hpp"

namespace py = pybind11;
using namespace tenet;

namespace {

std::vector<Variable> placeholder_names(Eigen::Index n) {
  std::vector<Variable> v;
  for (Eigen::Index i = 0; i < n; ++i) v.push_back(Variable{"v" + std::to_string(i), 0});
  return v;
}

// Array input has no calendar; rows get consecutive placeholder dates.
ReturnPanel panel_of(const Matrix& returns) {
  std::vector<Date> dates;
  Date d{1900, 1, 1};
  for (Eigen::Index t = 0; t < returns.rows(); ++t) {
    dates.push_back(d);
    if (!is_valid_date(d.year, d.month, ++d.day)) {
      d.day = 1;
      if (++d.month > 12) {
        d.month = 1;
        ++d.year;
      }
    }
  }
  return ReturnPanel(std::move(dates), placeholder_names(returns.cols()), returns);
}

DiscretePanel codes_of(const CodeMatrix& codes) {
  DiscretePanel p;
  p.variables = placeholder_names(codes.cols());
  p.bin_width = 1.0;
  p.codes = codes;
  return p;
}

py::dict band_dict(const NullBand& b) {
  py::dict d;
  d["n_sims"] = b.n_sims;
  d["min_mean"] = b.min_stat.mean;
  d["min_std"] = b.min_stat.std;
  d["max_mean"] = b.max_stat.mean;
  d["max_std"] = b.max_stat.std;
  d["seed"] = b.seed;
  return d;
}

PropagationMatrix mte_of(const Matrix& s21) {
  return build_propagation_matrix(s21, placeholder_names(s21.rows()));
}

}  // namespace

PYBIND11_MODULE(tenet, m) {
  m.doc() = "Correlation and transfer-entropy networks of return panels";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());

  m.def(
      "load_returns",
      [](const std::string& path, double liquidity) {
        const auto panel = compute_log_returns(filter_liquidity(load_prices(path), liquidity));
        std::vector<std::string> dates;
        for (const auto& d : panel.dates()) dates.push_back(d.iso());
        return py::make_tuple(dates, names_of(panel.variables()), panel.returns());
      },
      py::arg("path"), py::arg("liquidity") = kDefaultLiquidity,
      "Reads a price CSV and returns (dates, tickers, log-returns T x N).");

  m.def(
      "log_returns",
      [](const Matrix& prices) {
        std::vector<std::string> names;
        for (const auto& v : placeholder_names(prices.cols())) names.push_back(v.ticker);
        std::vector<Date> dates = panel_of(prices).dates();
        return compute_log_returns(PricePanel(dates, names, prices)).returns();
      },
      py::arg("prices"), "Log-returns of a dates x tickers price array (NaN marks missing).");

  m.def(
      "pearson",
      [](const Matrix& returns) { return pearson_matrix(panel_of(returns)).values; },
      py::arg("returns"));
  m.def(
      "shuffle_null",
      [](const Matrix& returns, std::size_t n_sims, std::uint64_t seed, unsigned threads) {
        return band_dict(shuffle_null(panel_of(returns), n_sims, seed, threads));
      },
      py::arg("returns"), py::arg("n_sims"), py::arg("seed") = 42, py::arg("threads") = 0);

  m.def(
      "bin_returns",
      [](const Matrix& returns, double width) {
        const auto d = bin_panel(panel_of(returns), width);
        return py::make_tuple(d.codes, d.origin);
      },
      py::arg("returns"), py::arg("bin_width"), "Returns (codes, origin).");
  m.def(
      "transfer_entropy",
      [](const std::vector<int>& source, const std::vector<int>& dest) {
        return transfer_entropy(source, dest);
      },
      py::arg("source"), py::arg("dest"), "Plug-in TE from source to dest in bits.");
  m.def(
      "te_matrix",
      [](const CodeMatrix& codes, unsigned threads) { return te_matrix(codes_of(codes), threads); },
      py::arg("codes"), py::arg("threads") = 0);
  m.def(
      "te_quadrants",
      [](const Matrix& returns, double bin_width, unsigned threads) {
        const auto q = te_matrix_from_returns(panel_of(returns), bin_width, threads);
        py::dict d;
        for (Quadrant quad : kAllQuadrants) d[py::str(to_string(quad))] = q.quadrant(quad);
        d["expanded"] = q.values;
        return d;
      },
      py::arg("returns"), py::arg("bin_width") = kFullPeriodBinWidth, py::arg("threads") = 0);
  m.def(
      "normalize_te", [](const Matrix& s21) { return normalize_te(s21, placeholder_names(s21.rows())); },
      py::arg("s21"));
  m.def("excess_te", py::overload_cast<const Matrix&>(&excess_te), py::arg("s21"));
  m.def(
      "te_correlation_comparison",
      [](const Matrix& s21, const Matrix& corr) {
        const auto c = te_correlation_comparison(
            s21, CorrelationMatrix{placeholder_names(corr.rows()), corr});
        auto pack = [](const Coefficients& k) {
          py::dict d;
          d["pearson"] = k.pearson;
          d["spearman"] = k.spearman;
          d["kendall"] = k.kendall;
          return d;
        };
        py::dict d;
        d["with_diagonal"] = pack(c.with_diagonal);
        d["without_diagonal"] = pack(c.without_diagonal);
        return d;
      },
      py::arg("s21"), py::arg("corr"));

  m.def(
      "correlation_distance",
      [](const Matrix& corr) {
        return correlation_distance(CorrelationMatrix{placeholder_names(corr.rows()), corr}).values;
      },
      py::arg("corr"));
  m.def(
      "te_distance",
      [](const Matrix& normalized) {
        const auto d = te_distance(normalized, placeholder_names(normalized.rows()));
        return py::make_tuple(d.distance.values, d.clamped);
      },
      py::arg("normalized_s21"), "Returns (distance, clamped count).");
  m.def("node_strength", py::overload_cast<const Matrix&>(&node_strength), py::arg("matrix"));
  m.def(
      "in_out_node_strength",
      [](const Matrix& m) {
        const auto s = in_out_node_strength(m);
        return py::make_tuple(s.in, s.out);
      },
      py::arg("matrix"), "Returns (in, out) strengths.");
  m.def(
      "asset_graph",
      [](const Matrix& matrix, double threshold, bool directed) {
        const auto g = asset_graph(matrix, threshold, directed);
        py::list edges;
        for (const auto& e : g.edges) edges.append(py::make_tuple(e.from, e.to, e.weight, e.reciprocal));
        py::dict d;
        d["nodes"] = g.nodes;
        d["edges"] = edges;
        d["components"] = connected_components(g);
        return d;
      },
      py::arg("matrix"), py::arg("threshold"), py::arg("directed") = false);

  m.def(
      "classical_mds",
      [](const Matrix& dist, std::size_t dims) {
        const auto e = classical_mds(DistanceMatrix{placeholder_names(dist.rows()), dist}, dims);
        py::dict d;
        d["coords"] = e.coords;
        d["stress"] = e.stress;
        d["truncated_count"] = e.truncated_count;
        d["truncated_mass"] = e.truncated_mass;
        return d;
      },
      py::arg("dist"), py::arg("dims") = 2);
  m.def(
      "stress",
      [](const Matrix& dist, const Matrix& coords) {
        return stress(DistanceMatrix{placeholder_names(dist.rows()), dist}, coords);
      },
      py::arg("dist"), py::arg("coords"));

  m.def(
      "window_slices",
      [](std::size_t count, std::size_t width, std::size_t step) {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const auto& r : window_slices(count, width, step)) out.emplace_back(r.begin, r.end);
        return out;
      },
      py::arg("count"), py::arg("width") = kDefaultWindowWidth, py::arg("step") = 1,
      "Half-open [begin, end) row ranges.");
  m.def(
      "rolling_mean_correlation",
      [](const Matrix& returns, std::size_t width, std::size_t step) {
        return rolling_mean_correlation(panel_of(returns), width, step).mean;
      },
      py::arg("returns"), py::arg("width") = kDefaultWindowWidth, py::arg("step") = 1);
  m.def(
      "rolling_mean_te",
      [](const Matrix& returns, std::size_t width, std::size_t step, double bin_width) {
        const auto s = rolling_mean_te(panel_of(returns), width, step, bin_width);
        return py::make_tuple(s.in.mean, s.out.mean);
      },
      py::arg("returns"), py::arg("width") = kDefaultWindowWidth, py::arg("step") = 1,
      py::arg("bin_width") = kFullPeriodBinWidth, "Returns (mean in-TE, mean out-TE) per window.");

  m.def(
      "propagation_matrix", [](const Matrix& s21) { return mte_of(s21).values; }, py::arg("s21"));
  m.def(
      "propagate",
      [](const Matrix& s21, const Vector& initial, std::size_t horizon) {
        return propagate(mte_of(s21), initial, horizon).volatilities;
      },
      py::arg("s21"), py::arg("initial"), py::arg("horizon") = kDefaultHorizon,
      "Volatility trajectory, (horizon + 1) x N. The diagonal of s21 is ignored.");
  m.def(
      "shock_propagation_strength",
      [](const Matrix& s21, double magnitude, std::size_t peak_day) {
        return shock_propagation_strength(mte_of(s21), magnitude, peak_day);
      },
      py::arg("s21"), py::arg("magnitude") = kSingleShockMagnitude, py::arg("peak_day") = kPeakDay);
}
