#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "tenet/app.hpp"

namespace tenet::app {

namespace {

bool is_file(const std::filesystem::path& p) {
  std::error_code ec;
  return std::filesystem::is_regular_file(p, ec);
}

}  // namespace

std::vector<Diagnostic> validate(const RunConfig& c) {
  std::vector<Diagnostic> out;
  auto fail = [&](std::string field, std::string message) {
    out.push_back(Diagnostic{std::move(field), std::move(message)});
  };

  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    fail("command", "unknown command '" + c.command + "'");
  }
  if (c.prices.empty()) {
    fail("prices", "a price file is required");
  } else if (!is_file(c.prices)) {
    fail("prices", "price file '" + c.prices.string() + "' not found");
  }
  if (!c.taxonomy.empty() && !is_file(c.taxonomy)) {
    fail("taxonomy", "taxonomy file '" + c.taxonomy.string() + "' not found");
  }
  if (c.out_dir.empty()) fail("out-dir", "output directory must be set");

  if (!(c.liquidity >= 0.0 && c.liquidity <= 1.0)) fail("liquidity", "must lie in [0, 1]");
  if (!(c.bin_width > 0.0) || !std::isfinite(c.bin_width)) fail("bin", "must be positive");
  if (!(c.semester_bin_width > 0.0) || !std::isfinite(c.semester_bin_width)) {
    fail("semester-bin", "must be positive");
  }
  static const std::vector<std::string> kQuadrants = {"all", "s11", "s21", "s12", "s22"};
  if (std::find(kQuadrants.begin(), kQuadrants.end(), c.quadrant) == kQuadrants.end()) {
    fail("quadrant", "must be one of all, s11, s21, s12, s22");
  }
  if (c.histogram_bins < 1) fail("histogram-bins", "must be at least 1");
  if (!std::isfinite(c.corr_threshold)) fail("corr-threshold", "must be finite");
  if (!std::isfinite(c.te_threshold)) fail("te-threshold", "must be finite");
  if (c.dims < 1) fail("dims", "must be at least 1");
  if (c.window < 3) fail("window", "must be at least 3");
  if (c.step < 1) fail("step", "must be at least 1");
  if (c.peak_day < 1) fail("peak-day", "must be at least 1");
  if (c.magnitude && !(*c.magnitude >= 0.0 && std::isfinite(*c.magnitude))) {
    fail("magnitude", "must be a non-negative number");
  }

  const int origins = (c.stock.empty() ? 0 : 1) + (c.sector.empty() ? 0 : 1) + (c.systemic ? 1 : 0);
  if (origins > 1) fail("stock", "choose at most one of --stock, --sector, --systemic");
  if (c.command != "shock" && c.command != "report" && origins > 0) {
    fail("stock", "shock origins only apply to the shock and report commands");
  }
  const bool needs_taxonomy = c.sectors || !c.sector.empty();
  if (needs_taxonomy && c.taxonomy.empty()) {
    fail("taxonomy", "sector analysis requested but no taxonomy file given");
  }
  return out;
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["prices"] = c.prices.string();
  j["taxonomy"] = c.taxonomy.string();
  j["liquidity"] = c.liquidity;
  j["bin_width"] = c.bin_width;
  j["semester_bin_width"] = c.semester_bin_width;
  j["quadrant"] = c.quadrant;
  j["histogram_bins"] = c.histogram_bins;
  j["corr_sims"] = c.corr_sims;
  j["te_sims"] = c.te_sims;
  j["corr_threshold"] = c.corr_threshold;
  j["te_threshold"] = c.te_threshold;
  j["sectors"] = c.sectors;
  j["dims"] = c.dims;
  j["window"] = c.window;
  j["step"] = c.step;
  j["semesters"] = c.semesters;
  j["stock"] = c.stock;
  j["sector"] = c.sector;
  j["systemic"] = c.systemic;
  j["magnitude"] = c.magnitude ? nlohmann::json(*c.magnitude) : nlohmann::json(nullptr);
  j["horizon"] = c.horizon;
  j["peak_day"] = c.peak_day;
  j["seed"] = c.seed;
  return j;
}

unsigned resolve_thread_setting(std::optional<unsigned> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TENET_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value >= 0) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

}  // namespace tenet::app
