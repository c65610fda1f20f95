#include <fstream>
#include <optional>
#include <ostream>
#include <set>

#include "tenet/app.hpp"
#include "tenet/corpus.hpp"
#include "tenet/correlate.hpp"
#include "tenet/csv.hpp"
#include "tenet/embed.hpp"
#include "tenet/entropy.hpp"
#include "tenet/error.hpp"
#include "tenet/io.hpp"
#include "tenet/netmetrics.hpp"
#include "tenet/shockwave.hpp"
#include "tenet/windows.hpp"

namespace tenet::app {

namespace {

namespace fs = std::filesystem;
using csv::escape;
using csv::format_double;

// Files written by one run, removed again if the run fails.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

  std::ofstream open(const std::string& name) {
    fs::create_directories(dir_);
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    if (recorded_.insert(name).second) files_.push_back(name);
    return out;
  }

  const std::vector<std::string>& files() const { return files_; }
  const fs::path& dir() const { return dir_; }

  void remove_all() {
    std::error_code ec;
    for (const auto& name : files_) fs::remove(dir_ / name, ec);
    fs::remove(dir_ / "manifest.json", ec);
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
  std::set<std::string> recorded_;
};

class Pipeline {
 public:
  Pipeline(const RunConfig& config, unsigned threads, Outputs& outputs, std::ostream& log)
      : cfg_(config), threads_(threads), out_(outputs), log_(log) {}

  void execute() {
    load();
    const std::string& cmd = cfg_.command;
    const bool all = cmd == "report";
    if (cmd == "ingest" || all) ingest();
    if (cmd == "corr" || all) correlation_outputs();
    if (cmd == "te" || all) te_outputs();
    if (cmd == "net" || all) network_outputs();
    if (cmd == "embed" || all) embedding_outputs();
    if (cmd == "windows" || all) window_outputs();
    if (cmd == "shock" || all) shock_outputs();
  }

 private:
  void load() {
    raw_prices_ = load_prices(cfg_.prices);
    prices_ = filter_liquidity(raw_prices_, cfg_.liquidity);
    returns_ = compute_log_returns(prices_);
    if (!cfg_.taxonomy.empty()) taxonomy_ = load_taxonomy(cfg_.taxonomy);
    if (returns_.cols() < 2) throw DataError("fewer than 2 tickers survive the liquidity filter");
    if (returns_.rows() < 3) throw DataError("fewer than 3 complete return rows");
  }

  std::vector<std::string> tickers() const { return names_of(returns_.variables()); }

  const SectorTaxonomy& taxonomy() {
    if (!taxonomy_) throw UsageError("this analysis needs a taxonomy file");
    taxonomy_->require(tickers());
    return *taxonomy_;
  }

  const CorrelationMatrix& correlation() {
    if (!corr_) corr_ = pearson_matrix(returns_);
    return *corr_;
  }

  const QuadTEMatrix& quad_te() {
    if (!te_) te_ = te_matrix_from_returns(returns_, cfg_.bin_width, threads_);
    return *te_;
  }

  Matrix s21() { return quad_te().quadrant(Quadrant::S21); }

  void write_matrix(const std::string& name, const std::vector<std::string>& names,
                    const Matrix& m) {
    auto f = out_.open(name);
    io::write_matrix_csv(f, names, names, m);
  }

  void write_json(const std::string& name, const nlohmann::json& j) {
    auto f = out_.open(name);
    f << j.dump(2) << '\n';
  }

  // -------------------------------------------------------------------------

  void ingest() {
    {
      auto f = out_.open("returns.csv");
      io::write_return_panel_csv(f, returns_);
    }
    std::vector<std::string> dropped;
    const std::set<std::string> kept(prices_.tickers().begin(), prices_.tickers().end());
    for (const auto& t : raw_prices_.tickers()) {
      if (!kept.count(t)) dropped.push_back(t);
    }
    write_json("ingest.json", {{"dates", raw_prices_.rows()},
                               {"tickers", raw_prices_.cols()},
                               {"missing_cells", raw_prices_.missing_count()},
                               {"liquidity", cfg_.liquidity},
                               {"retained_tickers", prices_.cols()},
                               {"dropped_tickers", dropped},
                               {"return_rows", returns_.rows()},
                               {"first_return_date", returns_.dates().front().iso()},
                               {"last_return_date", returns_.dates().back().iso()}});
  }

  void correlation_outputs() {
    const auto& corr = correlation();
    write_matrix("correlation.csv", tickers(), corr.values);
    {
      auto f = out_.open("correlation_histogram.csv");
      io::write_histogram_csv(f, offdiag_histogram(corr, cfg_.histogram_bins));
    }
    if (cfg_.corr_sims > 0) {
      const auto band = shuffle_null(returns_, cfg_.corr_sims, cfg_.seed, threads_);
      auto j = io::to_json(band);
      double lo = 1.0, hi = -1.0;
      for (Eigen::Index i = 0; i < corr.values.rows(); ++i) {
        for (Eigen::Index k = i + 1; k < corr.values.cols(); ++k) {
          lo = std::min(lo, corr.values(i, k));
          hi = std::max(hi, corr.values(i, k));
        }
      }
      j["observed"] = {{"min", lo}, {"max", hi}};
      write_json("correlation_null.json", j);
    }
  }

  void te_outputs() {
    const auto& quad = quad_te();
    if (cfg_.quadrant == "all") {
      write_matrix("te_expanded.csv", names_of(quad.variables), quad.values);
    } else {
      write_matrix("te_" + cfg_.quadrant + ".csv", tickers(),
                   quad.quadrant(parse_quadrant(cfg_.quadrant)));
    }
    try {
      write_matrix("te_s21_normalized.csv", tickers(), normalize_te(quad));
    } catch (const NumericError& e) {
      log_ << "tenet: warning: normalized S21 not written: " << e.what() << '\n';
    }
    write_matrix("te_excess.csv", tickers(), excess_te(quad));

    const auto cmp = te_correlation_comparison(s21(), correlation());
    auto coeffs = [](const Coefficients& c) {
      return nlohmann::json{{"pearson", c.pearson}, {"spearman", c.spearman}, {"kendall", c.kendall}};
    };
    write_json("te_vs_correlation.json", {{"with_diagonal", coeffs(cmp.with_diagonal)},
                                          {"without_diagonal", coeffs(cmp.without_diagonal)}});

    if (cfg_.te_sims > 0) {
      const auto null = te_shuffle_null(bin_panel(returns_, cfg_.bin_width), cfg_.te_sims,
                                        cfg_.seed, threads_);
      nlohmann::json j;
      for (Quadrant q : kAllQuadrants) j[to_string(q)] = io::to_json(null[q]);
      write_json("te_null.json", j);
    }
  }

  void write_graph(const std::string& stem, const AssetGraph& graph) {
    const auto names = tickers();
    const SectorTaxonomy* tax = taxonomy_ ? &*taxonomy_ : nullptr;
    {
      auto f = out_.open(stem + ".graphml");
      write_graphml(f, graph, names, tax);
    }
    {
      auto f = out_.open(stem + ".dot");
      write_dot(f, graph, names, tax);
    }
    auto f = out_.open(stem + "_components.csv");
    f << "component,size,variable\n";
    const auto components = connected_components(graph);
    for (std::size_t c = 0; c < components.size(); ++c) {
      for (std::size_t node : components[c]) {
        f << c + 1 << ',' << components[c].size() << ',' << escape(names[node]) << '\n';
      }
    }
  }

  void network_outputs() {
    const auto names = tickers();
    const Vector ns = node_strength(correlation());
    {
      const auto rank = descending_ranks(ns);
      auto f = out_.open("node_strength.csv");
      f << "variable,node_strength,rank\n";
      for (std::size_t i = 0; i < names.size(); ++i) {
        f << escape(names[i]) << ',' << format_double(ns(static_cast<Eigen::Index>(i))) << ','
          << rank[i] << '\n';
      }
    }
    const Matrix te = s21();
    write_in_out("te_node_strength.csv", names, in_out_node_strength(te));
    write_in_out("excess_te_node_strength.csv", names, in_out_node_strength(excess_te(te)));

    write_graph("asset_graph_corr", asset_graph(correlation().values, cfg_.corr_threshold, false));
    write_graph("asset_graph_te", asset_graph(te, cfg_.te_threshold, true));

    if (cfg_.sectors) sector_outputs();
  }

  void write_in_out(const std::string& name, const std::vector<std::string>& names,
                    const InOutStrength& s) {
    auto f = out_.open(name);
    f << "variable,in,out\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      f << escape(names[i]) << ',' << format_double(s.in(k)) << ',' << format_double(s.out(k))
        << '\n';
    }
  }

  void sector_outputs() {
    const ReturnPanel index = sector_index(returns_, taxonomy());
    const auto names = names_of(index.variables());
    {
      auto f = out_.open("sector_index.csv");
      io::write_return_panel_csv(f, index);
    }
    const auto corr = pearson_matrix(index);
    const auto quad = te_matrix_from_returns(index, cfg_.bin_width, threads_);
    const Matrix s21 = quad.quadrant(Quadrant::S21);
    const Matrix excess = excess_te(s21);
    write_matrix("sector_correlation.csv", names, corr.values);
    write_matrix("sector_te_s21.csv", names, s21);
    write_matrix("sector_excess_te.csv", names, excess);
    const Vector ns = node_strength(corr);
    const auto te = in_out_node_strength(s21);
    const auto ex = in_out_node_strength(excess);
    auto f = out_.open("sector_strength.csv");
    f << "sector,node_strength,te_in,te_out,excess_in,excess_out\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      f << escape(names[i]) << ',' << format_double(ns(k)) << ',' << format_double(te.in(k)) << ','
        << format_double(te.out(k)) << ',' << format_double(ex.in(k)) << ','
        << format_double(ex.out(k)) << '\n';
    }
  }

  void write_embedding(const std::string& stem, const Embedding& e, nlohmann::json extra) {
    {
      auto f = out_.open(stem + ".csv");
      f << "variable";
      static const char* kAxes[] = {"x", "y", "z"};
      for (std::size_t a = 0; a < e.dims; ++a) {
        f << ',' << (a < 3 ? std::string(kAxes[a]) : "x" + std::to_string(a + 1));
      }
      f << '\n';
      for (Eigen::Index i = 0; i < e.coords.rows(); ++i) {
        f << escape(e.variables[static_cast<std::size_t>(i)].name());
        for (Eigen::Index a = 0; a < e.coords.cols(); ++a) f << ',' << format_double(e.coords(i, a));
        f << '\n';
      }
    }
    extra["dims"] = e.dims;
    extra["stress"] = e.stress;
    extra["truncated_eigenvalues"] = e.truncated_count;
    extra["truncated_mass"] = e.truncated_mass;
    write_json(stem + ".json", extra);
  }

  void embedding_outputs() {
    const auto corr_embedding = classical_mds(correlation_distance(correlation()), cfg_.dims);
    write_embedding("embedding_corr", corr_embedding, {{"distance", "correlation"}});
    const auto te_dist = te_distance(normalize_te(quad_te()), quad_te().base_variables());
    if (te_dist.clamped > 0) {
      log_ << "tenet: warning: " << te_dist.clamped
           << " normalized TE values above 1 clamped before the distance transform\n";
    }
    write_embedding("embedding_te", classical_mds(te_dist.distance, cfg_.dims),
                    {{"distance", "transfer_entropy"}, {"clamped_values", te_dist.clamped}});
  }

  void window_outputs() {
    const auto corr = rolling_mean_correlation(returns_, cfg_.window, cfg_.step, threads_);
    const auto te = rolling_mean_te(returns_, cfg_.window, cfg_.step, cfg_.bin_width, threads_);
    const Matrix vol = volatility_panel(returns_);
    const auto names = tickers();

    {
      auto f = out_.open("windows_mean.csv");
      f << "anchor_date,statistic,value\n";
      auto series = [&](const WindowSeries& s, const char* stat) {
        for (std::size_t w = 0; w < s.size(); ++w) {
          f << s.anchor_dates[w].iso() << ',' << stat << ','
            << format_double(s.mean(static_cast<Eigen::Index>(w))) << '\n';
        }
      };
      series(corr, "mean_correlation");
      series(te.in, "mean_te_in");
      series(te.out, "mean_te_out");
      for (std::size_t t = 0; t < returns_.rows(); ++t) {
        f << returns_.dates()[t].iso() << ",mean_volatility,"
          << format_double(vol.row(static_cast<Eigen::Index>(t)).mean()) << '\n';
      }
    }
    {
      auto f = out_.open("windows_per_stock.csv");
      f << "anchor_date,variable,statistic,value\n";
      auto series = [&](const WindowSeries& s, const char* stat) {
        for (std::size_t w = 0; w < s.size(); ++w) {
          for (std::size_t i = 0; i < names.size(); ++i) {
            f << s.anchor_dates[w].iso() << ',' << escape(names[i]) << ',' << stat << ','
              << format_double(s.per_variable(static_cast<Eigen::Index>(w),
                                              static_cast<Eigen::Index>(i)))
              << '\n';
          }
        }
      };
      series(corr, "node_strength");
      series(te.in, "te_in");
      series(te.out, "te_out");
      for (std::size_t t = 0; t < returns_.rows(); ++t) {
        for (std::size_t i = 0; i < names.size(); ++i) {
          f << returns_.dates()[t].iso() << ',' << escape(names[i]) << ",volatility,"
            << format_double(vol(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)))
            << '\n';
        }
      }
    }

    std::vector<std::pair<std::string, WindowSkip>> skips;
    for (const auto& s : corr.skipped) skips.push_back({"correlation", s});
    for (const auto& s : te.in.skipped) skips.push_back({"transfer_entropy", s});

    if (cfg_.semesters) {
      const auto semesters = semester_slices(returns_.dates());
      const auto scorr = mean_correlation_series(returns_, semesters, threads_);
      const auto ste = mean_te_series(returns_, semesters, cfg_.semester_bin_width, threads_);
      auto f = out_.open("semesters.csv");
      f << "semester,anchor_date,statistic,value\n";
      auto series = [&](const WindowSeries& s, const char* stat) {
        for (std::size_t w = 0; w < s.size(); ++w) {
          f << s.labels[w] << ',' << s.anchor_dates[w].iso() << ',' << stat << ','
            << format_double(s.mean(static_cast<Eigen::Index>(w))) << '\n';
        }
      };
      series(scorr, "mean_correlation");
      series(ste.in, "mean_te_in");
      series(ste.out, "mean_te_out");
      for (const auto& s : scorr.skipped) skips.push_back({"semester_correlation", s});
      for (const auto& s : ste.in.skipped) skips.push_back({"semester_transfer_entropy", s});
    }

    auto f = out_.open("windows_skipped.csv");
    f << "anchor_date,statistic,variable,reason\n";
    for (const auto& [stat, s] : skips) {
      f << s.anchor.iso() << ',' << stat << ',' << escape(s.variable) << ',' << escape(s.reason)
        << '\n';
      log_ << "tenet: skipped " << stat << " window ending " << s.anchor.iso()
           << (s.variable.empty() ? "" : " (" + s.variable + ")") << ": " << s.reason << '\n';
    }
  }

  void shock_outputs() {
    const auto mte = build_propagation_matrix(quad_te());
    const auto names = tickers();
    const double single = cfg_.magnitude.value_or(kSingleShockMagnitude);
    {
      const Vector strength = shock_propagation_strength(mte, single, cfg_.peak_day, threads_);
      const auto rank = descending_ranks(strength);
      auto f = out_.open("shock_strength.csv");
      f << "variable,strength,rank\n";
      for (std::size_t i = 0; i < names.size(); ++i) {
        f << escape(names[i]) << ',' << format_double(strength(static_cast<Eigen::Index>(i)))
          << ',' << rank[i] << '\n';
      }
    }

    std::optional<ShockTrajectory> trajectory;
    if (!cfg_.stock.empty()) {
      const auto it = std::find(names.begin(), names.end(), cfg_.stock);
      if (it == names.end()) {
        throw DataError("stock " + cfg_.stock + " is not in the analyzed panel");
      }
      trajectory = single_stock_shock(mte, static_cast<std::size_t>(it - names.begin()), single,
                                      cfg_.horizon);
    } else if (!cfg_.sector.empty() || cfg_.systemic) {
      std::vector<std::size_t> members;
      if (cfg_.systemic) {
        for (std::size_t i = 0; i < names.size(); ++i) members.push_back(i);
      } else {
        const auto& tax = taxonomy();
        for (std::size_t i = 0; i < names.size(); ++i) {
          if (tax.at(names[i]).sector == cfg_.sector) members.push_back(i);
        }
        if (members.empty()) throw DataError("sector '" + cfg_.sector + "' has no analyzed stocks");
      }
      trajectory = group_shock(mte, members, cfg_.magnitude.value_or(kGroupShockMagnitude),
                               cfg_.horizon);
      if (!cfg_.sector.empty()) trajectory->origin = "sector " + cfg_.sector;
    }
    if (trajectory) {
      auto f = out_.open("shock_trajectory.csv");
      f << "t,variable,volatility\n";
      for (Eigen::Index t = 0; t < trajectory->volatilities.rows(); ++t) {
        for (std::size_t i = 0; i < names.size(); ++i) {
          f << t << ',' << escape(names[i]) << ','
            << format_double(trajectory->volatilities(t, static_cast<Eigen::Index>(i))) << '\n';
        }
      }
    }
  }

  const RunConfig& cfg_;
  unsigned threads_;
  Outputs& out_;
  std::ostream& log_;

  PricePanel raw_prices_;
  PricePanel prices_;
  ReturnPanel returns_;
  std::optional<SectorTaxonomy> taxonomy_;
  std::optional<CorrelationMatrix> corr_;
  std::optional<QuadTEMatrix> te_;
};

void write_manifest(const RunConfig& cfg, const Outputs& outputs) {
  nlohmann::json inputs = nlohmann::json::array();
  inputs.push_back({{"role", "prices"},
                    {"path", cfg.prices.string()},
                    {"sha256", io::sha256_file(cfg.prices)}});
  if (!cfg.taxonomy.empty()) {
    inputs.push_back({{"role", "taxonomy"},
                      {"path", cfg.taxonomy.string()},
                      {"sha256", io::sha256_file(cfg.taxonomy)}});
  }
  nlohmann::json files = nlohmann::json::array();
  for (const auto& name : outputs.files()) {
    files.push_back({{"file", name}, {"sha256", io::sha256_file(outputs.dir() / name)}});
  }
  nlohmann::json manifest{{"tool", "tenet"},
                          {"command", cfg.command},
                          {"seed", cfg.seed},
                          {"config", to_json(cfg)},
                          {"inputs", inputs},
                          {"outputs", files}};
  std::ofstream out(outputs.dir() / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write manifest");
  out << manifest.dump(2) << '\n';
}

}  // namespace

int run(const RunConfig& config, std::ostream& err) {
  const auto diagnostics = validate(config);
  if (!diagnostics.empty()) {
    for (const auto& d : diagnostics) err << "tenet: --" << d.field << ": " << d.message << '\n';
    return kUsage;
  }
  Outputs outputs(config.out_dir);
  try {
    Pipeline pipeline(config, config.threads, outputs, err);
    pipeline.execute();
    write_manifest(config, outputs);
    return kOk;
  } catch (const UsageError& e) {
    outputs.remove_all();
    err << "tenet: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    outputs.remove_all();
    err << "tenet: data error: " << e.what() << '\n';
    return kDataError;
  } catch (const NumericError& e) {
    outputs.remove_all();
    err << "tenet: numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    outputs.remove_all();
    err << "tenet: data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    outputs.remove_all();
    err << "tenet: numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
}

}  // namespace tenet::app
