#include "v2v/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "v2v/baseline.hpp"
#include "v2v/clustering.hpp"

namespace v2v {

const char* to_string(Scheme s) { return s == Scheme::Proposed ? "proposed" : "baseline"; }

int SimConfig::total_slots() const { return int(std::llround(horizon_s / slot_s)); }

void validate(const SimConfig& c) {
  if (c.num_pairs < 1) throw ConfigError("vue-pairs", "must be at least 1");
  if (c.num_rbs < 1) throw ConfigError("rbs", "must be at least 1");
  if (c.window_slots < 1) throw ConfigError("window-slots", "must be at least 1");
  if (!(c.slot_s > 0.0)) throw ConfigError("slot-duration", "must be positive");
  if (!(c.horizon_s >= c.window_slots * c.slot_s)) {
    throw ConfigError("horizon", "must cover at least one window");
  }
  if (!(c.grid.building_breadth > 0.0)) throw ConfigError("building-breadth", "must be positive");
  if (!(c.grid.lane_width > 0.0)) throw ConfigError("lane-width", "must be positive");
  if (c.grid.lanes_per_road < 2) throw ConfigError("lanes-per-road", "must be at least 2");
  if (c.grid.blocks_x < 1) throw ConfigError("blocks-x", "must be at least 1");
  if (c.grid.blocks_y < 1) throw ConfigError("blocks-y", "must be at least 1");
  if (!(c.placement.speed_mps >= 0.0)) throw ConfigError("speed-kmh", "must be non-negative");
  if (!(c.placement.min_gap > 0.0)) throw ConfigError("min-pair-gap", "must be positive");
  if (c.placement.max_gap < c.placement.min_gap || c.placement.max_gap >= c.grid.building_breadth) {
    throw ConfigError("max-pair-gap", "needs min <= max < building breadth");
  }
  const TurnPolicy& t = c.turns;
  if (!(t.straight >= 0.0)) throw ConfigError("p-straight", "must be non-negative");
  if (!(t.left >= 0.0)) throw ConfigError("p-left", "must be non-negative");
  if (!(t.right >= 0.0)) throw ConfigError("p-right", "must be non-negative");
  if (!(t.straight + t.left + t.right > 0.0)) throw ConfigError("p-straight", "turn probabilities sum to zero");
  if (!(c.channel.rb_bandwidth_hz > 0.0)) throw ConfigError("rb-bandwidth", "must be positive");
  if (!(c.channel.rho_cap > 0.0)) throw ConfigError("rho-cap", "must be positive");
  if (!(c.channel.packet_bits > 0.0)) throw ConfigError("packet-bytes", "must be positive");
  if (!(c.channel.arrival_rate_min > 0.0)) throw ConfigError("arrival-rate-min", "must be positive");
  if (!(c.channel.arrival_rate_max >= c.channel.arrival_rate_min)) {
    throw ConfigError("arrival-rate-max", "must not be below arrival-rate-min");
  }
  if (c.theta < 0.0 || c.theta > 1.0) throw ConfigError("theta", "must lie in [0, 1]");
  if (!(c.sigma_d > 0.0)) throw ConfigError("sigma-d", "must be positive");
  if (!(c.epsilon_d > 0.0)) throw ConfigError("epsilon-d", "must be positive");
  if (!(c.alpha > 0.0)) throw ConfigError("alpha", "must be positive");
  if (!(c.beta > c.alpha)) throw ConfigError("beta", "beta must exceed alpha");
  if (!(c.cost_cap > 0.0)) throw ConfigError("cost-cap", "must be positive");
  if (c.count_max < 1) throw ConfigError("count-max", "must be at least 1");
  if (c.baseline_zones < 1) throw ConfigError("baseline-zones", "must be at least 1");
  if (c.schemes != SchemeSelection::Proposed && c.num_rbs < c.baseline_zones) {
    throw ConfigError("rbs", "baseline needs at least one RB per fixed zone");
  }
}

namespace {

enum StreamTag : std::uint32_t {
  kPlacement = 1,
  kMobility,
  kTraffic,
  kProvisional,
  kClustering,
  kMatching,
  kFading,
};

std::mt19937_64 make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0, std::uint64_t b = 0) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(tag),
                    std::uint32_t(a),    std::uint32_t(a >> 32),    std::uint32_t(b),
                    std::uint32_t(b >> 32)};
  return std::mt19937_64(seq);
}

struct PairGeometry {
  std::vector<Vec2> tx;
  std::vector<Vec2> rx;
};

PairGeometry geometry(const std::vector<Vehicle>& vehicles) {
  PairGeometry g;
  for (std::size_t i = 0; i + 1 < vehicles.size(); i += 2) {
    g.tx.push_back(vehicles[i].position);
    g.rx.push_back(vehicles[i + 1].position);
  }
  return g;
}

// Large-scale gain from every transmitter to every receiver, indexed
// [from * K + to].
std::vector<double> pathloss_matrix(const PairGeometry& g, const GridLayout& grid,
                                    const ChannelParams& params) {
  const std::size_t k = g.tx.size();
  std::vector<double> pl(k * k);
  for (std::size_t from = 0; from < k; ++from) {
    for (std::size_t to = 0; to < k; ++to) {
      const Vec2 a = g.tx[from];
      const Vec2 b = a + displacement(a, g.rx[to], grid);
      pl[from * k + to] = pathloss(a, b, is_los(a, b, grid), params);
    }
  }
  return pl;
}

ChannelState faded_channel(const std::vector<double>& pl, const SimConfig& cfg, int slot) {
  const auto k = std::size_t(cfg.num_pairs);
  const auto n_rb = std::size_t(cfg.num_rbs);
  ChannelState ch(k, n_rb, cfg.channel.noise_density_w_hz(),
                  std::vector<double>(k, cfg.channel.tx_power_w()));
  for (std::size_t to = 0; to < k; ++to) {
    // One stream per receiver and slot keeps draws independent of scheme and
    // evaluation order.
    auto rng = make_stream(cfg.seed, kFading, std::uint64_t(slot), to);
    for (std::size_t n = 0; n < n_rb; ++n) {
      for (std::size_t from = 0; from < k; ++from) {
        ch.gain(n, from, to) = pl[from * k + to] * sample_fading(rng);
      }
    }
  }
  return ch;
}

ChannelState mean_channel(const std::vector<double>& pl, const SimConfig& cfg) {
  const auto k = std::size_t(cfg.num_pairs);
  const auto n_rb = std::size_t(cfg.num_rbs);
  ChannelState ch(k, n_rb, cfg.channel.noise_density_w_hz(),
                  std::vector<double>(k, cfg.channel.tx_power_w()));
  for (std::size_t n = 0; n < n_rb; ++n) {
    for (std::size_t from = 0; from < k; ++from) {
      for (std::size_t to = 0; to < k; ++to) ch.gain(n, from, to) = pl[from * k + to];
    }
  }
  return ch;
}

struct SlotOutcome {
  std::vector<double> sinr;
  std::vector<double> slot_load; // rho_k(t)
  std::vector<double> own_load;  // rho on the matched RB
};

SlotOutcome evaluate_slot(const ChannelState& ch, const std::vector<int>& rb_of_pair,
                          const std::vector<double>& influx, const SimConfig& cfg) {
  const int k_count = cfg.num_pairs;
  const int n_rb = cfg.num_rbs;
  std::vector<std::vector<int>> occupants(n_rb);
  for (int k = 0; k < k_count; ++k) {
    if (rb_of_pair[k] >= 0) occupants[rb_of_pair[k]].push_back(k);
  }
  SlotOutcome out;
  out.sinr.resize(k_count);
  out.slot_load.resize(k_count);
  out.own_load.resize(k_count);
  std::vector<double> per_rb(n_rb);
  for (int k = 0; k < k_count; ++k) {
    for (int n = 0; n < n_rb; ++n) {
      const ResourceBlock rb{n, cfg.channel.rb_bandwidth_hz};
      const double g = sinr(std::size_t(k), rb, ch, occupants[n]);
      per_rb[n] = time_load(influx[k], rate(rb, g));
      if (n == rb_of_pair[k]) {
        out.sinr[k] = g;
        out.own_load[k] = per_rb[n];
      }
    }
    if (rb_of_pair[k] < 0) {
      out.sinr[k] = 0.0;
      out.own_load[k] = std::numeric_limits<double>::infinity();
    }
    out.slot_load[k] = slot_time_load(per_rb, cfg.channel.rho_cap);
  }
  return out;
}

struct SchemeState {
  Scheme scheme;
  std::vector<int> rb_of_pair;
  std::vector<std::vector<double>> history; // per pair, current window
};

std::vector<double> draw_influx(const SimConfig& cfg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lambda(cfg.channel.arrival_rate_min, cfg.channel.arrival_rate_max);
  std::vector<double> phi(cfg.num_pairs);
  for (double& p : phi) p = traffic_influx(lambda(rng), cfg.channel.packet_bits);
  return phi;
}

std::vector<double> expected_loads(const SchemeState& s, double cap) {
  std::vector<double> out;
  out.reserve(s.history.size());
  for (const auto& h : s.history) out.push_back(expected_time_load(h, cap));
  return out;
}

std::vector<double> zone_loads(const ZonePartition& p, const std::vector<double>& pair_loads) {
  std::vector<double> out(p.count(), 0.0);
  for (int z = 0; z < p.count(); ++z) {
    for (int k : p.zones[z]) out[z] += pair_loads[k];
  }
  return out;
}

ScoreParams score_params(const SimConfig& cfg) {
  ScoreParams p;
  p.alpha = cfg.alpha;
  p.beta = cfg.beta;
  p.target_sinr = cfg.channel.target_sinr();
  p.rho_cap = cfg.channel.rho_cap;
  p.cost_cap = cfg.cost_cap;
  return p;
}

} // namespace

MetricsLog run(const SimConfig& cfg) {
  validate(cfg);
  MetricsLog log;
  log.config = cfg;

  const GridLayout grid = build_manhattan_grid(cfg.grid);
  const int k_count = cfg.num_pairs;
  const int n_rb = cfg.num_rbs;
  const int window = cfg.window_slots;
  const double target = cfg.channel.target_sinr();

  auto placement_rng = make_stream(cfg.seed, kPlacement);
  auto mobility_rng = make_stream(cfg.seed, kMobility);
  auto traffic_rng = make_stream(cfg.seed, kTraffic);
  auto provisional_rng = make_stream(cfg.seed, kProvisional);
  auto clustering_rng = make_stream(cfg.seed, kClustering);
  auto matching_rng = make_stream(cfg.seed, kMatching);

  std::vector<Vehicle> vehicles;
  for (const VuePair& p : place_pairs(k_count, grid, cfg.placement, placement_rng)) {
    vehicles.push_back(p.tx);
    vehicles.push_back(p.rx);
  }
  std::vector<double> influx = draw_influx(cfg, traffic_rng);

  // Provisional matching until the first load window is complete.
  std::vector<int> provisional(k_count);
  std::uniform_int_distribution<int> any_rb(0, n_rb - 1);
  for (int& rb : provisional) rb = any_rb(provisional_rng);

  std::vector<SchemeState> schemes;
  if (cfg.schemes != SchemeSelection::Baseline) schemes.push_back({Scheme::Proposed, provisional, {}});
  if (cfg.schemes != SchemeSelection::Proposed) schemes.push_back({Scheme::Baseline, provisional, {}});
  for (SchemeState& s : schemes) s.history.assign(k_count, {});

  // Unwrapped transmitter tracks for window-averaged positions.
  std::vector<Vec2> unwrapped = geometry(vehicles).tx;
  std::vector<Vec2> position_sum(k_count);

  const ScoreParams sp = score_params(cfg);
  const SwapOptions swap_opts{cfg.count_max, cfg.vacancy_moves};
  const int slots = cfg.total_slots();

  for (int t = 1; t <= slots; ++t) {
    // Phase I: move, draw channels, measure SINR and loads under the current matching.
    const PairGeometry before = geometry(vehicles);
    vehicles = step_mobility(vehicles, grid, cfg.slot_s, mobility_rng, cfg.turns);
    const PairGeometry now = geometry(vehicles);
    for (int k = 0; k < k_count; ++k) {
      unwrapped[k] = unwrapped[k] + displacement(before.tx[k], now.tx[k], grid);
      position_sum[k] = position_sum[k] + unwrapped[k];
    }

    const std::vector<double> pl = pathloss_matrix(now, grid, cfg.channel);
    const ChannelState ch = faded_channel(pl, cfg, t);
    const bool warmup = log.formation_events == 0;

    for (SchemeState& s : schemes) {
      const SlotOutcome o = evaluate_slot(ch, s.rb_of_pair, influx, cfg);
      for (int k = 0; k < k_count; ++k) {
        SlotSample smp;
        smp.slot = t;
        smp.scheme = s.scheme;
        smp.pair = k;
        smp.rb = s.rb_of_pair[k];
        smp.sinr_db = linear_to_db(o.sinr[k]);
        smp.load = o.own_load[k];
        smp.satisfied = s.rb_of_pair[k] >= 0 && o.sinr[k] >= target;
        smp.warmup = warmup;
        log.samples.push_back(smp);
        s.history[k].push_back(o.slot_load[k]);
      }
    }

    if (t % window != 0) continue;

    // Phases II-IV at the window boundary.
    ++log.formation_events;
    std::vector<Vec2> avg(k_count);
    for (int k = 0; k < k_count; ++k) avg[k] = wrap_position((1.0 / window) * position_sum[k], grid);
    const ChannelState snapshot = mean_channel(pl, cfg);

    for (SchemeState& s : schemes) {
      const std::vector<double> rho_bar = expected_loads(s, cfg.channel.rho_cap);
      WindowRecord rec;
      rec.slot = t;
      rec.window = log.formation_events;
      rec.scheme = s.scheme;

      if (s.scheme == Scheme::Proposed) {
        const Eigen::MatrixXd d = gaussian_distance_similarity(avg, cfg.sigma_d, cfg.epsilon_d, &grid);
        const Eigen::MatrixXd c = cosine_load_similarity(s.history);
        const Eigen::MatrixXd a = affinity(c, d, cfg.theta);
        const int b_max = std::min(k_count / 2, n_rb);
        SpectralResult spec = spectral_zones(a, 2, b_max, clustering_rng);
        ZonePartition part = spec.partition;
        if (part.count() > n_rb) {
          std::vector<int> labels = part.labels;
          for (int& l : labels) l %= n_rb;
          part = partition_from_labels(labels);
        }
        if (cfg.dump_matrices) log.dumps.push_back({log.formation_events, d, c, a, spec.eigenvalues});

        const ZoneAllocation alloc = contiguous_rb_sets(hare_niemeyer(zone_loads(part, rho_bar), n_rb));
        const ZoneEvaluator eval(snapshot, influx, cfg.channel.rb_bandwidth_hz, sp);
        for (int z = 0; z < part.count(); ++z) {
          ZoneMatching init = random_matching(part.zones[z], alloc.rb_sets[z], matching_rng);
          const ZoneSolution sol = solve_zone_matching(std::move(init), eval, swap_opts, matching_rng);
          for (std::size_t i = 0; i < sol.matching.pairs.size(); ++i) {
            s.rb_of_pair[sol.matching.pairs[i]] = sol.matching.assigned[i];
          }
          const ZoneScore score = eval.score(sol.matching);
          rec.zones.push_back({z, int(part.zones[z].size()), int(alloc.rb_sets[z].size()),
                               sol.accepted_swaps, sol.proposals, sol.converged, score.satisfied,
                               score.cost});
        }
        rec.labels = part.labels;
      } else {
        const ZonePartition part = fixed_zone_partition(grid, avg, cfg.baseline_zones);
        const NetworkMatching m = baseline_allocate(part, zone_loads(part, rho_bar), rho_bar, n_rb);
        s.rb_of_pair = m.rb_of_pair;
        for (int z = 0; z < part.count(); ++z) {
          ZoneRecord zr;
          zr.zone = z;
          zr.size = int(part.zones[z].size());
          zr.rbs = int(std::count_if(part.zones[z].begin(), part.zones[z].end(),
                                     [&](int k) { return m.rb_of_pair[k] >= 0; }));
          rec.zones.push_back(zr);
        }
        rec.labels = part.labels;
      }
      log.windows.push_back(std::move(rec));
      for (auto& h : s.history) h.clear();
    }

    influx = draw_influx(cfg, traffic_rng);
    std::fill(position_sum.begin(), position_sum.end(), Vec2{});
  }
  return log;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
  if (!(p > 0.0) || p > 100.0) throw std::invalid_argument("percentile must lie in (0, 100]");
  const auto n = values.size();
  auto rank = std::size_t(std::ceil(p / 100.0 * double(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  auto nth = values.begin() + std::ptrdiff_t(rank - 1);
  std::nth_element(values.begin(), nth, values.end());
  return *nth;
}

std::vector<SchemeSummary> summarize(const MetricsLog& log) {
  std::vector<SchemeSummary> out;
  for (Scheme scheme : {Scheme::Proposed, Scheme::Baseline}) {
    std::vector<double> sinr;
    std::size_t satisfied = 0;
    for (const SlotSample& s : log.samples) {
      if (s.scheme != scheme || s.warmup) continue;
      sinr.push_back(s.sinr_db);
      if (s.satisfied) ++satisfied;
    }
    if (sinr.empty()) continue;
    SchemeSummary sum;
    sum.scheme = scheme;
    sum.samples = sinr.size();
    sum.satisfaction_pct = 100.0 * double(satisfied) / double(sinr.size());
    sum.outage_fraction = 1.0 - double(satisfied) / double(sinr.size());
    sum.sinr_p25_db = percentile(sinr, 25.0);
    sum.sinr_p50_db = percentile(sinr, 50.0);
    sum.sinr_p75_db = percentile(sinr, 75.0);

    std::size_t zones = 0;
    long swaps = 0;
    for (const WindowRecord& w : log.windows) {
      if (w.scheme != scheme) continue;
      ++sum.windows;
      zones += w.zones.size();
      for (const ZoneRecord& z : w.zones) swaps += z.accepted_swaps;
    }
    if (sum.windows > 0) sum.mean_zone_count = double(zones) / sum.windows;
    if (zones > 0) sum.mean_swaps_per_zone = double(swaps) / double(zones);
    out.push_back(sum);
  }
  if (out.empty()) throw std::invalid_argument("log holds no measured samples");
  return out;
}

} // namespace v2v
