#include "v2v/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "json.hpp"

namespace v2v {

namespace {

constexpr const char* kSummaryHeader = "# v2v_sim summary v1";
constexpr const char* kSummaryColumns =
    "scheme,K,N,seed,samples,satisfaction_pct,outage_fraction,sinr_p25_db,sinr_p50_db,"
    "sinr_p75_db,mean_swaps_per_zone,mean_zone_count,windows";

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json config_json(const CliOptions& o) {
  const SimConfig& s = o.sim;
  return {
      {"vue_pairs", o.vue_pairs},
      {"rbs", o.rbs},
      {"seeds", o.seeds},
      {"window_slots", s.window_slots},
      {"horizon_s", s.horizon_s},
      {"slot_s", s.slot_s},
      {"blocks_x", s.grid.blocks_x},
      {"blocks_y", s.grid.blocks_y},
      {"building_breadth", s.grid.building_breadth},
      {"lanes_per_road", s.grid.lanes_per_road},
      {"lane_width", s.grid.lane_width},
      {"speed_mps", s.placement.speed_mps},
      {"min_pair_gap", s.placement.min_gap},
      {"max_pair_gap", s.placement.max_gap},
      {"p_straight", s.turns.straight},
      {"p_left", s.turns.left},
      {"p_right", s.turns.right},
      {"rb_bandwidth_hz", s.channel.rb_bandwidth_hz},
      {"noise_density_dbm_hz", s.channel.noise_density_dbm_hz},
      {"tx_power_dbm", s.channel.tx_power_dbm},
      {"target_sinr_db", s.channel.target_sinr_db},
      {"packet_bits", s.channel.packet_bits},
      {"arrival_rate_min", s.channel.arrival_rate_min},
      {"arrival_rate_max", s.channel.arrival_rate_max},
      {"theta", s.theta},
      {"sigma_d", s.sigma_d},
      {"epsilon_d", s.epsilon_d},
      {"alpha", s.alpha},
      {"beta", s.beta},
      {"count_max", s.count_max},
      {"vacancy_moves", s.vacancy_moves},
      {"baseline_zones", s.baseline_zones},
  };
}

void write_summary_csv(const std::filesystem::path& file, const std::vector<RunResult>& results) {
  auto out = open_out(file);
  out << kSummaryHeader << '\n' << kSummaryColumns << '\n';
  for (const RunResult& r : results) {
    for (const SchemeSummary& s : r.summaries) {
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(s.scheme), r.vue_pairs,
                         r.rbs, r.seed, s.samples, format_double(s.satisfaction_pct),
                         format_double(s.outage_fraction), format_double(s.sinr_p25_db),
                         format_double(s.sinr_p50_db), format_double(s.sinr_p75_db),
                         format_double(s.mean_swaps_per_zone), format_double(s.mean_zone_count),
                         s.windows);
    }
  }
}

void write_summary_json(const std::filesystem::path& file, const CliOptions& opts,
                        const std::vector<RunResult>& results) {
  nlohmann::json runs = nlohmann::json::array();
  for (const RunResult& r : results) {
    for (const SchemeSummary& s : r.summaries) {
      runs.push_back({{"scheme", to_string(s.scheme)},
                      {"K", r.vue_pairs},
                      {"N", r.rbs},
                      {"seed", r.seed},
                      {"samples", s.samples},
                      {"satisfaction_pct", number(s.satisfaction_pct)},
                      {"outage_fraction", number(s.outage_fraction)},
                      {"sinr_p25_db", number(s.sinr_p25_db)},
                      {"sinr_p50_db", number(s.sinr_p50_db)},
                      {"sinr_p75_db", number(s.sinr_p75_db)},
                      {"mean_swaps_per_zone", number(s.mean_swaps_per_zone)},
                      {"mean_zone_count", number(s.mean_zone_count)},
                      {"windows", s.windows}});
    }
  }
  nlohmann::json doc{{"format", "v2v_sim summary v1"}, {"config", config_json(opts)}, {"runs", runs}};
  auto out = open_out(file);
  out << doc.dump(2) << '\n';
}

void write_sinr_cdf(const std::filesystem::path& file, const std::vector<RunResult>& results) {
  // Pooled over seeds per (scheme, K, N).
  std::map<std::tuple<int, int, int>, std::vector<double>> pooled;
  for (const RunResult& r : results) {
    for (const SlotSample& s : r.samples) {
      pooled[{int(s.scheme), r.vue_pairs, r.rbs}].push_back(s.sinr_db);
    }
  }
  auto out = open_out(file);
  out << "scheme,K,N,sinr_db,cdf\n";
  for (auto& [key, values] : pooled) {
    std::sort(values.begin(), values.end());
    const auto [scheme, k, n] = key;
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << fmt::format("{},{},{},{},{}\n", to_string(Scheme(scheme)), k, n, format_double(values[i]),
                         format_double(double(i + 1) / double(values.size())));
    }
  }
}

void write_swap_iters(const std::filesystem::path& file, const std::vector<RunResult>& results) {
  auto out = open_out(file);
  out << "K,N,seed,window,zone,size,rbs,iterations,proposals,converged\n";
  for (const RunResult& r : results) {
    for (const WindowRecord& w : r.windows) {
      if (w.scheme != Scheme::Proposed) continue;
      for (const ZoneRecord& z : w.zones) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.vue_pairs, r.rbs, r.seed, w.window, z.zone,
                           z.size, z.rbs, z.accepted_swaps, z.proposals, z.converged ? 1 : 0);
      }
    }
  }
}

void write_dumps(const std::filesystem::path& dir, const RunResult& r) {
  if (r.dumps.empty()) return;
  nlohmann::json windows = nlohmann::json::array();
  for (const MatrixDump& d : r.dumps) {
    nlohmann::json ev = nlohmann::json::array();
    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) ev.push_back(number(d.eigenvalues(i)));
    windows.push_back({{"window", d.window},
                       {"distance_similarity", matrix_json(d.distance)},
                       {"load_similarity", matrix_json(d.load)},
                       {"affinity", matrix_json(d.affinity)},
                       {"laplacian_eigenvalues", ev}});
  }
  auto out = open_out(dir / fmt::format("matrices_K{}_N{}_seed{}.json", r.vue_pairs, r.rbs, r.seed));
  out << windows.dump() << '\n';
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("bad number in summary: " + s);
  return v;
}

} // namespace

std::string format_double(double v) { return fmt::format("{}", v); }

std::vector<RunResult> run_sweep(const CliOptions& opts,
                                 const std::function<void(const RunResult&)>& progress) {
  // Fail before any work if one combination is invalid.
  for (int k : opts.vue_pairs) {
    for (int n : opts.rbs) {
      SimConfig cfg = opts.sim;
      cfg.num_pairs = k;
      cfg.num_rbs = n;
      validate(cfg);
    }
  }
  std::vector<RunResult> results;
  for (int k : opts.vue_pairs) {
    for (int n : opts.rbs) {
      for (std::uint64_t seed : opts.seeds) {
        SimConfig cfg = opts.sim;
        cfg.num_pairs = k;
        cfg.num_rbs = n;
        cfg.seed = seed;
        MetricsLog log = run(cfg);
        RunResult r;
        r.vue_pairs = k;
        r.rbs = n;
        r.seed = seed;
        r.summaries = summarize(log);
        for (const SlotSample& s : log.samples) {
          if (!s.warmup) r.samples.push_back(s);
        }
        r.windows = std::move(log.windows);
        r.dumps = std::move(log.dumps);
        if (progress) progress(r);
        results.push_back(std::move(r));
      }
    }
  }
  return results;
}

void write_sweep(const std::filesystem::path& dir, const CliOptions& opts,
                 const std::vector<RunResult>& results) {
  std::filesystem::create_directories(dir);
  write_summary_csv(dir / "summary.csv", results);
  write_summary_json(dir / "summary.json", opts, results);
  write_sinr_cdf(dir / "sinr_cdf.csv", results);
  write_swap_iters(dir / "swap_iters.csv", results);
  for (const RunResult& r : results) write_dumps(dir, r);
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader) {
    throw std::runtime_error("not a summary file: " + file.string());
  }
  if (!std::getline(in, line) || line != kSummaryColumns) {
    throw std::runtime_error("unexpected columns in " + file.string());
  }
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 13) throw std::runtime_error("bad summary row: " + line);
    SummaryRow r;
    r.scheme = f[0];
    r.vue_pairs = std::stoi(f[1]);
    r.rbs = std::stoi(f[2]);
    r.seed = std::stoull(f[3]);
    SchemeSummary& s = r.summary;
    s.scheme = r.scheme == "baseline" ? Scheme::Baseline : Scheme::Proposed;
    s.samples = std::stoull(f[4]);
    s.satisfaction_pct = parse_double(f[5]);
    s.outage_fraction = parse_double(f[6]);
    s.sinr_p25_db = parse_double(f[7]);
    s.sinr_p50_db = parse_double(f[8]);
    s.sinr_p75_db = parse_double(f[9]);
    s.mean_swaps_per_zone = parse_double(f[10]);
    s.mean_zone_count = parse_double(f[11]);
    s.windows = std::stoi(f[12]);
    rows.push_back(std::move(r));
  }
  return rows;
}

} // namespace v2v
