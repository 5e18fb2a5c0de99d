#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "tumorsim/diagnostics.hpp"
#include "tumorsim/run_config.hpp"

namespace tumorsim {

inline constexpr const char* kVersion = "0.1.0";

struct RunOutcome {
  enum class Status { Completed, BlowUp };
  Status status = Status::Completed;
  std::string message;
  std::size_t steps = 0;
  double t_final = 0.0;
  std::vector<DiagnosticsRecord> records;
};

/// Runs one configuration and writes diagnostics.csv, snap_NNNNNN.csv,
/// snapshots_index.csv, manifest.json and plot.py into out_dir. A blow-up
/// still writes every record up to the failing step.
RunOutcome execute_run(const RunConfig& cfg, const std::filesystem::path& out_dir,
                       const std::string& config_text = {});

/// Writes one coefficient snapshot (k,re,im for k = 0..K_max).
void write_snapshot(const std::filesystem::path& path, const SpectralField& g);

/// Exit codes of the command-line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;

}  // namespace tumorsim
