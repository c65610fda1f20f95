#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace tenet::app {

inline const std::vector<std::string> kCommands = {"ingest", "corr",    "te",    "net",
                                                   "embed",  "windows", "shock", "report"};

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kNumericFailure = 3 };

struct RunConfig {
  std::string command;
  std::filesystem::path prices;
  std::filesystem::path taxonomy;  // optional unless a sector analysis is requested
  std::filesystem::path out_dir = "out";

  double liquidity = 0.80;
  double bin_width = 0.02;
  double semester_bin_width = 0.1;
  std::string quadrant = "all";  // te output: s11, s21, s12, s22 or all
  std::size_t histogram_bins = 50;
  std::size_t corr_sims = 1000;
  std::size_t te_sims = 10;

  double corr_threshold = 0.8;
  double te_threshold = 0.7;
  bool sectors = false;  // sector-index aggregate analysis (needs taxonomy)
  std::size_t dims = 2;

  std::size_t window = 100;
  std::size_t step = 1;
  bool semesters = true;

  std::string stock;             // shock origin ticker
  std::string sector;            // shock origin sector
  bool systemic = false;         // shock every stock
  std::optional<double> magnitude;
  std::size_t horizon = 10;
  std::size_t peak_day = 4;

  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Diagnostic {
  std::string field;
  std::string message;
};

// Every violated range or missing path; empty iff the run may start.
std::vector<Diagnostic> validate(const RunConfig& config);

// Parameters recorded in the run manifest (output location excluded, so runs
// into different directories produce identical manifests).
nlohmann::json to_json(const RunConfig& config);

// Executes the configured command. Errors are reported on `err`, partial
// outputs are removed, and the exit code reflects the error class.
int run(const RunConfig& config, std::ostream& err);

// Worker count from the flag, else TENET_THREADS, else 0 (hardware).
unsigned resolve_thread_setting(std::optional<unsigned> flag);

}  // namespace tenet::app
