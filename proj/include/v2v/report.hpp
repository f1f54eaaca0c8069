// Parameter sweeps and result files.
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "v2v/config.hpp"
#include "v2v/engine.hpp"

namespace v2v {

struct RunResult {
  int vue_pairs = 0;
  int rbs = 0;
  std::uint64_t seed = 0;
  std::vector<SchemeSummary> summaries;
  std::vector<SlotSample> samples;  // measured (non warm-up) samples only
  std::vector<WindowRecord> windows;
  std::vector<MatrixDump> dumps;
};

/// Runs every (K, N, seed) combination in K-major order. `progress`, when set,
/// is called after each run.
std::vector<RunResult> run_sweep(const CliOptions& opts,
                                 const std::function<void(const RunResult&)>& progress = {});

/// Writes summary.csv, summary.json, sinr_cdf.csv, swap_iters.csv and, when
/// present, matrix dumps under `dir` (created if missing).
void write_sweep(const std::filesystem::path& dir, const CliOptions& opts,
                 const std::vector<RunResult>& results);

struct SummaryRow {
  std::string scheme;
  int vue_pairs = 0;
  int rbs = 0;
  std::uint64_t seed = 0;
  SchemeSummary summary;
};

/// Reads back a summary.csv written by write_sweep.
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& file);

/// Shortest round-trip text for a double; "-inf", "inf" and "nan" for
/// non-finite values.
std::string format_double(double v);

} // namespace v2v
