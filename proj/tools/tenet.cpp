// tenet: correlation and transfer-entropy networks of daily stock returns.
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "tenet/app.hpp"

int main(int argc, char** argv) {
  using tenet::app::RunConfig;
  RunConfig cfg;
  std::optional<unsigned> threads;
  double magnitude = -1.0;
  std::string prices, taxonomy, out_dir = cfg.out_dir.string();

  CLI::App app{"Correlation and transfer-entropy networks over daily stock returns"};
  app.set_config("--config", "", "Key-value configuration file (flags override it)");
  app.require_subcommand(1, 1);

  app.add_option("--prices", prices, "Price CSV (date,ticker,close)");
  app.add_option("--taxonomy", taxonomy, "Sector taxonomy CSV (ticker,sector,industry,subindustry)");
  app.add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed for shuffle nulls")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (default: $TENET_THREADS or all cores)");
  app.add_option("--liquidity", cfg.liquidity, "Minimum fraction of trading days present")
      ->capture_default_str();
  app.add_option("--bin", cfg.bin_width, "Transfer entropy bin width")->capture_default_str();
  app.add_option("--semester-bin", cfg.semester_bin_width, "Bin width for semester TE")
      ->capture_default_str();
  app.add_option("--quadrant", cfg.quadrant, "TE quadrant to write: s11, s21, s12, s22, all")
      ->capture_default_str();
  app.add_option("--histogram-bins", cfg.histogram_bins, "Correlation histogram bins")
      ->capture_default_str();
  app.add_option("--corr-sims", cfg.corr_sims, "Correlation shuffle replicas (0: skip)")
      ->capture_default_str();
  app.add_option("--te-sims", cfg.te_sims, "TE shuffle replicas (0: skip)")->capture_default_str();
  app.add_option("--corr-threshold", cfg.corr_threshold, "Correlation asset-graph threshold")
      ->capture_default_str();
  app.add_option("--te-threshold", cfg.te_threshold, "TE asset-graph threshold")
      ->capture_default_str();
  app.add_flag("--sectors", cfg.sectors, "Add sector-index aggregate analysis");
  app.add_option("--dims", cfg.dims, "Embedding dimensions")->capture_default_str();
  app.add_option("--window", cfg.window, "Rolling window width in days")->capture_default_str();
  app.add_option("--step", cfg.step, "Rolling window step in days")->capture_default_str();
  app.add_flag("!--no-semesters", cfg.semesters, "Skip semester snapshots");
  app.add_option("--stock", cfg.stock, "Shock a single stock (ticker)");
  app.add_option("--sector", cfg.sector, "Shock every stock of a sector");
  app.add_flag("--systemic", cfg.systemic, "Shock every stock");
  app.add_option("--magnitude", magnitude, "Shock size (default 0.3 single, 0.1 group)");
  app.add_option("--horizon", cfg.horizon, "Days to simulate")->capture_default_str();
  app.add_option("--peak-day", cfg.peak_day, "Day scored by the shock strength")
      ->capture_default_str();

  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"ingest", "Align prices, filter illiquid tickers, write log-returns"},
           {"corr", "Correlation matrix, histogram and shuffle null"},
           {"te", "Lag-expanded transfer entropy matrix, normalization, excess TE, null"},
           {"net", "Node strengths, asset graphs, components, sector indices"},
           {"embed", "Classical MDS maps from correlation and TE distances"},
           {"windows", "Rolling-window and semester dynamics"},
           {"shock", "Shock propagation trajectories and strength ranking"},
           {"report", "Every analysis above"}}) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tenet::app::kUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.prices = prices;
  cfg.taxonomy = taxonomy;
  cfg.out_dir = out_dir;
  if (app.count("--magnitude") > 0) cfg.magnitude = magnitude;
  cfg.threads = tenet::app::resolve_thread_setting(threads);
  return tenet::app::run(cfg, std::cerr);
}
