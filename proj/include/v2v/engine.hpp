// Discrete-time simulation loop: per-slot channel and load sampling, windowed
// zone formation and matching, and metric collection for both schemes.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "v2v/allocation.hpp"
#include "v2v/channel.hpp"
#include "v2v/scenario.hpp"

namespace v2v {

enum class Scheme { Proposed, Baseline };
enum class SchemeSelection { Proposed, Baseline, Both };

const char* to_string(Scheme s);

struct SimConfig {
  int num_pairs = 10;
  int num_rbs = 15;
  int window_slots = 10;
  double horizon_s = 60.0;
  double slot_s = 1.0;
  std::uint64_t seed = 1;

  GridConfig grid;
  PlacementConfig placement;
  TurnPolicy turns;
  ChannelParams channel;

  double theta = 0.3;
  double sigma_d = 100.0;
  double epsilon_d = 100.0;
  double alpha = 1.0;
  double beta = 3.0;
  double cost_cap = 1e9;
  int count_max = 500;
  bool vacancy_moves = false;
  int baseline_zones = 3;

  SchemeSelection schemes = SchemeSelection::Both;
  bool dump_matrices = false;

  int total_slots() const;
};

/// A configuration value outside its valid range. `key` names the setting.
class ConfigError : public std::invalid_argument {
public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

/// Throws ConfigError for the first invalid setting.
void validate(const SimConfig& cfg);

struct SlotSample {
  int slot = 0;
  Scheme scheme = Scheme::Proposed;
  int pair = 0;
  int rb = -1; // -1: unserved
  double sinr_db = 0.0;
  double load = 0.0;
  bool satisfied = false;
  bool warmup = false;
};

struct ZoneRecord {
  int zone = 0;
  int size = 0;
  int rbs = 0;
  int accepted_swaps = 0;
  int proposals = 0;
  bool converged = true;
  int satisfied = 0;
  double cost = 0.0;
};

struct WindowRecord {
  int slot = 0;   // slot at whose end the zones were formed
  int window = 0; // 1-based formation index
  Scheme scheme = Scheme::Proposed;
  std::vector<int> labels;
  std::vector<ZoneRecord> zones;
};

struct MatrixDump {
  int window = 0;
  Eigen::MatrixXd distance;
  Eigen::MatrixXd load;
  Eigen::MatrixXd affinity;
  Eigen::VectorXd eigenvalues;
};

struct MetricsLog {
  SimConfig config;
  int formation_events = 0;
  std::vector<SlotSample> samples;
  std::vector<WindowRecord> windows;
  std::vector<MatrixDump> dumps;
};

MetricsLog run(const SimConfig& cfg);

struct SchemeSummary {
  Scheme scheme = Scheme::Proposed;
  std::size_t samples = 0;
  double satisfaction_pct = 0.0;
  double sinr_p25_db = 0.0;
  double sinr_p50_db = 0.0;
  double sinr_p75_db = 0.0;
  double outage_fraction = 0.0;
  double mean_swaps_per_zone = 0.0;
  double mean_zone_count = 0.0;
  int windows = 0;
};

/// Nearest-rank percentile (p in (0, 100]). Throws on empty input.
double percentile(std::vector<double> values, double p);

/// One summary per scheme present in the log, over the non-warm-up samples.
/// Throws std::invalid_argument when the log has no measured samples.
std::vector<SchemeSummary> summarize(const MetricsLog& log);

} // namespace v2v
