#include "v2v/config.hpp"

#include <algorithm>
#include <map>

#include "CLI11.hpp"

namespace v2v {

namespace {

struct RawOptions {
  std::vector<int> vue_pairs{10};
  std::vector<int> rbs{15};
  std::uint64_t seed = 1;
  int seed_count = 1;
  std::string scheme = "both";
  double speed_kmh = 50.0;
  double packet_bytes = 1600.0;
};

void register_options(CLI::App& app, CliOptions& o, RawOptions& raw) {
  SimConfig& s = o.sim;
  app.set_config("--config", "", "Flat key = value file; keys are the long flag names");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("--vue-pairs", raw.vue_pairs, "Number of V-UE pairs K (comma list sweeps)")
      ->delimiter(',');
  app.add_option("--rbs", raw.rbs, "Number of resource blocks N (comma list sweeps)")->delimiter(',');
  app.add_option("--seed", raw.seed, "First random seed");
  app.add_option("--seeds", raw.seed_count, "Number of consecutive seeds per sweep point");
  app.add_option("--scheme", raw.scheme, "proposed, baseline or both")
      ->check(CLI::IsMember({"proposed", "baseline", "both"}));
  app.add_option("--out-dir", o.out_dir, "Directory for result files");
  app.add_flag("--dump-matrices", s.dump_matrices, "Write similarity/affinity matrices per window");
  app.add_flag("--vacancy-moves", s.vacancy_moves, "Allow single-pair moves to less occupied RBs");

  app.add_option("--window-slots", s.window_slots, "Slots between zone formations (T)");
  app.add_option("--horizon", s.horizon_s, "Simulated time in seconds (T_max)");
  app.add_option("--slot-duration", s.slot_s, "Slot length in seconds");

  app.add_option("--blocks-x", s.grid.blocks_x, "Buildings along x");
  app.add_option("--blocks-y", s.grid.blocks_y, "Buildings along y");
  app.add_option("--building-breadth", s.grid.building_breadth, "Building side in meters");
  app.add_option("--lanes-per-road", s.grid.lanes_per_road, "Lanes per road");
  app.add_option("--lane-width", s.grid.lane_width, "Lane width in meters");
  app.add_option("--speed-kmh", raw.speed_kmh, "Vehicle speed in km/h");
  app.add_option("--min-pair-gap", s.placement.min_gap, "Minimum tx-rx distance in meters");
  app.add_option("--max-pair-gap", s.placement.max_gap, "Maximum tx-rx distance in meters");
  app.add_option("--p-straight", s.turns.straight, "Probability of going straight at a crossing");
  app.add_option("--p-left", s.turns.left, "Probability of turning left");
  app.add_option("--p-right", s.turns.right, "Probability of turning right");

  app.add_option("--rb-bandwidth", s.channel.rb_bandwidth_hz, "RB bandwidth in Hz");
  app.add_option("--noise-density", s.channel.noise_density_dbm_hz, "Noise density in dBm/Hz");
  app.add_option("--tx-power", s.channel.tx_power_dbm, "Transmit power in dBm");
  app.add_option("--target-sinr", s.channel.target_sinr_db, "Target SINR in dB");
  app.add_option("--los-loss-100m", s.channel.los_loss_100m_db, "LOS path loss at 100 m in dB");
  app.add_option("--corner-loss", s.channel.corner_loss_db, "NLOS loss per corner in dB");
  app.add_option("--rho-cap", s.channel.rho_cap, "Clamp for time loads");
  app.add_option("--packet-bytes", raw.packet_bytes, "Mean packet size in bytes");
  app.add_option("--arrival-rate-min", s.channel.arrival_rate_min, "Lowest packet rate (packets/s)");
  app.add_option("--arrival-rate-max", s.channel.arrival_rate_max, "Highest packet rate (packets/s)");

  app.add_option("--theta", s.theta, "Load/distance blend weight");
  app.add_option("--sigma-d", s.sigma_d, "Gaussian neighborhood width (m)");
  app.add_option("--epsilon-d", s.epsilon_d, "Neighborhood range (m)");
  app.add_option("--alpha", s.alpha, "Load exponent of the zone cost");
  app.add_option("--beta", s.beta, "Satisfaction exponent of the zone cost");
  app.add_option("--cost-cap", s.cost_cap, "Zone cost when no pair is satisfied");
  app.add_option("--count-max", s.count_max, "Accepted swaps allowed per zone and window");
  app.add_option("--baseline-zones", s.baseline_zones, "Fixed zones of the baseline");
}

CliOptions finish(CliOptions o, const RawOptions& raw) {
  if (raw.vue_pairs.empty()) throw ConfigError("vue-pairs", "needs at least one value");
  if (raw.rbs.empty()) throw ConfigError("rbs", "needs at least one value");
  if (raw.seed_count < 1) throw ConfigError("seeds", "must be at least 1");
  if (!(raw.speed_kmh >= 0.0)) throw ConfigError("speed-kmh", "must be non-negative");
  if (!(raw.packet_bytes > 0.0)) throw ConfigError("packet-bytes", "must be positive");

  o.vue_pairs = raw.vue_pairs;
  o.rbs = raw.rbs;
  o.seeds.clear();
  for (int i = 0; i < raw.seed_count; ++i) o.seeds.push_back(raw.seed + std::uint64_t(i));

  static const std::map<std::string, SchemeSelection> kSchemes{
      {"proposed", SchemeSelection::Proposed},
      {"baseline", SchemeSelection::Baseline},
      {"both", SchemeSelection::Both}};
  o.sim.schemes = kSchemes.at(raw.scheme);
  o.sim.placement.speed_mps = raw.speed_kmh / 3.6;
  o.sim.channel.packet_bits = raw.packet_bytes * 8.0;
  o.sim.num_pairs = o.vue_pairs.front();
  o.sim.num_rbs = o.rbs.front();
  o.sim.seed = o.seeds.front();

  for (int k : o.vue_pairs) {
    if (k < 1) throw ConfigError("vue-pairs", "must be at least 1");
  }
  for (int n : o.rbs) {
    SimConfig probe = o.sim;
    probe.num_rbs = n;
    validate(probe);
  }
  validate(o.sim);
  return o;
}

} // namespace

CliOptions parse_args(const std::vector<std::string>& args) {
  CliOptions o;
  RawOptions raw;
  CLI::App app{"Proximity- and load-aware V2V resource allocation simulator", "v2v_sim"};
  register_options(app, o, raw);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError("config", e.what());
  }
  return finish(std::move(o), raw);
}

CliOptions parse_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::vector<std::string> args;
  if (!path.empty()) {
    args.push_back("--config");
    args.push_back(path);
  }
  args.insert(args.end(), overrides.begin(), overrides.end());
  return parse_args(args);
}

} // namespace v2v
