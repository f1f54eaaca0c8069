// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails. Set V2V_UPDATE_ARTIFACTS=1 to rewrite the
// regression tables under tests/artifacts instead of comparing against them.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "test_support.hpp"
#include "v2v/allocation.hpp"
#include "v2v/clustering.hpp"
#include "v2v/eigensolver.hpp"
#include "v2v/engine.hpp"
#include "v2v/report.hpp"

using namespace v2v;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---- regression artifacts -------------------------------------------------

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

bool cells_match(const std::string& a, const std::string& b) {
  if (a == b) return true;
  char* ea = nullptr;
  char* eb = nullptr;
  const double x = std::strtod(a.c_str(), &ea);
  const double y = std::strtod(b.c_str(), &eb);
  if (*ea != '\0' || *eb != '\0' || ea == a.c_str() || eb == b.c_str()) return false;
  return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(x));
}

// Compares `text` with the committed artifact cell by cell (numbers to 1e-9
// relative). Returns an empty string on a match.
std::string check_artifact(const std::string& name, const std::string& text) {
  const fs::path committed = fs::path(V2V_ARTIFACT_DIR) / name;
  std::ofstream(fs::path(V2V_OUTPUT_DIR) / name) << text;
  const char* update = std::getenv("V2V_UPDATE_ARTIFACTS");
  if (update && std::string(update) == "1") {
    fs::create_directories(committed.parent_path());
    std::ofstream(committed) << text;
    return "";
  }
  std::ifstream in(committed);
  if (!in) return "committed artifact " + name + " is missing";
  std::stringstream fresh(text);
  std::string a, b;
  int line = 0;
  while (true) {
    const bool ga = bool(std::getline(in, a));
    const bool gb = bool(std::getline(fresh, b));
    ++line;
    if (!ga && !gb) return "";
    if (ga != gb) return fmt::format("{} differs in length at line {}", name, line);
    const auto ca = split(a), cb = split(b);
    bool same = ca.size() == cb.size();
    for (std::size_t i = 0; same && i < ca.size(); ++i) same = cells_match(ca[i], cb[i]);
    if (!same) return fmt::format("{} differs at line {}", name, line);
  }
}

// ---- criterion 1 ------------------------------------------------------------

// Exact largest-remainder reference on integer loads: seats start at
// max(1, floor(q)), the largest remainders (lowest index on ties) fill up,
// over-allocation from the minimum-one rule is taken from the zones furthest
// above their quota (highest index on ties).
std::vector<int> exact_quotas(const std::vector<long>& loads, int total) {
  const int z = int(loads.size());
  const long sum = std::accumulate(loads.begin(), loads.end(), 0L);
  std::vector<long> num(z);
  long den = sum;
  for (int i = 0; i < z; ++i) num[i] = sum > 0 ? long(total) * loads[i] : total;
  if (sum == 0) den = z;
  std::vector<int> seats(z);
  int assigned = 0;
  for (int i = 0; i < z; ++i) {
    seats[i] = int(std::max(1L, num[i] / den));
    assigned += seats[i];
  }
  auto excess = [&](int i) { return num[i] - den * seats[i]; };
  while (assigned < total) {
    int best = 0;
    for (int i = 1; i < z; ++i) {
      if (excess(i) > excess(best)) best = i;
    }
    ++seats[best];
    ++assigned;
  }
  while (assigned > total) {
    int worst = -1;
    for (int i = z - 1; i >= 0; --i) {
      if (seats[i] > 1 && (worst < 0 || excess(i) < excess(worst))) worst = i;
    }
    --seats[worst];
    --assigned;
  }
  return seats;
}

Outcome criterion_quotas() {
  std::mt19937_64 rng(101);
  const auto t0 = Clock::now();
  int mismatches = 0, bad_sum = 0, empty_zone = 0, ties = 0;
  for (int i = 0; i < 10000; ++i) {
    const int total = i % 2 ? 15 : 6;
    const int zones = std::uniform_int_distribution<int>(1, std::min(10, total))(rng);
    // Small integer loads make exact remainder ties common; some vectors are all zero.
    const int hi = i % 7 == 0 ? 0 : (i % 3 == 0 ? 3 : 40);
    std::vector<long> loads(zones);
    for (long& l : loads) l = std::uniform_int_distribution<long>(0, hi)(rng);
    const double scale = std::uniform_real_distribution<double>(0.001, 10.0)(rng);
    std::vector<double> real(zones);
    for (int z = 0; z < zones; ++z) real[z] = double(loads[z]) * scale;

    const std::vector<int> got = hare_niemeyer(real, total);
    const std::vector<int> want = exact_quotas(loads, total);
    if (std::accumulate(got.begin(), got.end(), 0) != total) ++bad_sum;
    if (std::any_of(got.begin(), got.end(), [](int s) { return s < 1; })) ++empty_zone;
    if (got != want) ++mismatches;
    // Count inputs where a remainder tie decided a seat.
    const long sum = std::accumulate(loads.begin(), loads.end(), 0L);
    std::map<long, int> rem;
    for (long l : loads) ++rem[sum > 0 ? (total * l) % sum : 0];
    for (const auto& [r, c] : rem) ties += (r > 0 && c > 1);
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = mismatches == 0 && bad_sum == 0 && empty_zone == 0 && secs < 1.0;
  o.detail = fmt::format("10000 vectors, sum!=N: {}, zone without RB: {}, tie-order mismatches: {} "
                         "({} tied inputs), {:.3f} s (limit 1 s)",
                         bad_sum, empty_zone, mismatches, ties, secs);
  return o;
}

// ---- criteria 2 and 3 -------------------------------------------------------

struct Solved {
  oracle::ZoneInstance zone;
  ZoneSolution solution;
};

Solved solve_instance(int pairs, int rbs, std::mt19937_64& rng, const oracle::Weights& w,
                      const SwapOptions& opts = {}) {
  Solved s{oracle::random_instance(pairs, rbs, 120.0, rng), {}};
  const ChannelState ch = s.zone.channel();
  const ZoneEvaluator eval(ch, s.zone.influx, s.zone.bandwidth, oracle::score_params(w));
  std::vector<int> ids(pairs), pool(rbs);
  std::iota(ids.begin(), ids.end(), 0);
  std::iota(pool.begin(), pool.end(), 0);
  s.solution = solve_zone_matching(random_matching(ids, pool, rng), eval, opts, rng);
  return s;
}

Outcome criterion_convergence() {
  const oracle::Weights w;
  std::mt19937_64 rng(202);
  const auto t0 = Clock::now();
  int unconverged = 0, non_monotone = 0, improvable = 0, four_player_unstable = 0;
  int max_swaps = 0;
  for (int i = 0; i < 1000; ++i) {
    const int pairs = std::uniform_int_distribution<int>(2, 10)(rng);
    const int rbs = std::uniform_int_distribution<int>(1, 5)(rng);
    const Solved s = solve_instance(pairs, rbs, rng, w);
    const ZoneSolution& sol = s.solution;
    if (!sol.converged || sol.accepted_swaps >= 500) ++unconverged;
    max_swaps = std::max(max_swaps, sol.accepted_swaps);
    for (std::size_t t = 1; t < sol.utility_trace.size(); ++t) {
      if (!(sol.utility_trace[t] > sol.utility_trace[t - 1])) ++non_monotone;
    }
    const auto rb_of = oracle::local_assignment(sol.matching, pairs);
    const double wz = oracle::zone_utility(s.zone, rb_of, w);
    bool found = false;
    for (int a = 0; a < pairs && !found; ++a) {
      for (int b = a + 1; b < pairs && !found; ++b) {
        if (rb_of[a] == rb_of[b]) continue;
        auto t = rb_of;
        std::swap(t[a], t[b]);
        found = oracle::zone_utility(s.zone, t, w) > wz + 1e-12 * std::abs(wz);
      }
    }
    improvable += found;
    const ChannelState ch = s.zone.channel();
    const ZoneEvaluator eval(ch, s.zone.influx, s.zone.bandwidth, oracle::score_params(w));
    four_player_unstable += !is_pairwise_stable(sol.matching, eval).stable;
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = unconverged == 0 && non_monotone == 0 && improvable == 0 && four_player_unstable == 0 &&
           secs < 30.0;
  o.detail = fmt::format("1000 zones, unconverged: {}, non-increasing steps: {}, improvable after "
                         "convergence: {}, four-player blocking: {}, max swaps {}, {:.2f} s (limit 30 s)",
                         unconverged, non_monotone, improvable, four_player_unstable, max_swaps, secs);
  return o;
}

// The relative gap is summarized over instances where neither cost is the
// no-satisfied-pair cap; capped instances are counted separately. Swaps keep
// per-RB occupancy, so the gap to the best matching with the converged
// occupancy is reported as well.
Outcome criterion_brute_force() {
  const oracle::Weights w;
  std::mt19937_64 rng(303);
  std::string table =
      "# v2v brute-force gap v1\ninstance,K,N,converged_cost,optimal_cost,gap,same_occupancy_cost,same_occupancy_gap\n";
  std::vector<double> gaps, occ_gaps;
  int unconverged = 0, optimal = 0, capped = 0, capped_optimum = 0;
  for (int i = 0; i < 200; ++i) {
    const int pairs = std::uniform_int_distribution<int>(2, 6)(rng);
    const int rbs = std::uniform_int_distribution<int>(1, 3)(rng);
    const Solved s = solve_instance(pairs, rbs, rng, w);
    unconverged += !s.solution.converged;
    const double got = -oracle::zone_utility(s.zone, oracle::local_assignment(s.solution.matching, pairs), w);
    const double best = -oracle::brute_force_optimum(s.zone, w);
    const double gap = (got - best) / best;
    const auto rb_of = oracle::local_assignment(s.solution.matching, pairs);
    auto occupancy = [&](const std::vector<int>& r) {
      std::vector<int> c(rbs, 0);
      for (int x : r) ++c[x];
      return c;
    };
    const std::vector<int> occ = occupancy(rb_of);
    const double best_occ =
        -oracle::brute_force_optimum(s.zone, w, [&](const std::vector<int>& r) { return occupancy(r) == occ; });
    const double occ_gap = (got - best_occ) / best_occ;
    optimal += gap <= 1e-12;
    if (best >= w.cost_cap) {
      ++capped_optimum;
    } else if (got >= w.cost_cap) {
      ++capped;
    } else {
      gaps.push_back(gap);
      if (best_occ < w.cost_cap) occ_gaps.push_back(occ_gap);
    }
    table += fmt::format("{},{},{},{},{},{},{},{}\n", i, pairs, rbs, format_double(got), format_double(best),
                         format_double(gap), format_double(best_occ), format_double(occ_gap));
  }
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / double(gaps.size());
  const double max = *std::max_element(gaps.begin(), gaps.end());
  const double occ_mean = std::accumulate(occ_gaps.begin(), occ_gaps.end(), 0.0) / double(occ_gaps.size());
  const double occ_max = *std::max_element(occ_gaps.begin(), occ_gaps.end());
  table += fmt::format("# uncapped,{}\n# mean_gap,{}\n# max_gap,{}\n# same_occupancy_mean_gap,{}\n"
                       "# same_occupancy_max_gap,{}\n# optimal,{}\n# capped_converged,{}\n",
                       gaps.size(), format_double(mean), format_double(max), format_double(occ_mean),
                       format_double(occ_max), optimal, capped);
  const std::string diff = check_artifact("brute_force_gap.csv", table);
  Outcome o;
  o.pass = unconverged == 0 && diff.empty();
  o.detail = fmt::format("200 zones, optimal in {}/200; relative cost gap over {} uncapped zones mean {:.4f}, "
                         "max {:.4f} (same occupancy: mean {:.4f}, max {:.4f}); converged at the cost cap with a "
                         "finite optimum: {}; capped optimum: {}; unconverged {}{}",
                         optimal, gaps.size(), mean, max, occ_mean, occ_max, capped, capped_optimum, unconverged,
                         diff.empty() ? ", table matches artifact" : "; " + diff);
  return o;
}

// Same audit with vacancy moves enabled (not the default), for information.
std::string vacancy_gap_info() {
  const oracle::Weights w;
  std::mt19937_64 rng(303);
  SwapOptions opts;
  opts.vacancy_moves = true;
  std::vector<double> gaps;
  int optimal = 0;
  for (int i = 0; i < 200; ++i) {
    const int pairs = std::uniform_int_distribution<int>(2, 6)(rng);
    const int rbs = std::uniform_int_distribution<int>(1, 3)(rng);
    const Solved s = solve_instance(pairs, rbs, rng, w, opts);
    const double got = -oracle::zone_utility(s.zone, oracle::local_assignment(s.solution.matching, pairs), w);
    const double best = -oracle::brute_force_optimum(s.zone, w);
    optimal += (got - best) / best <= 1e-12;
    if (got < w.cost_cap && best < w.cost_cap) gaps.push_back((got - best) / best);
  }
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / double(gaps.size());
  return fmt::format("[INFO] criterion 3 with vacancy moves enabled (not the default): optimal in {}/200, "
                     "mean gap {:.4f}, max {:.4f} over {} uncapped zones\n",
                     optimal, mean, *std::max_element(gaps.begin(), gaps.end()), gaps.size());
}

// ---- criterion 4 ------------------------------------------------------------

Eigen::MatrixXd block_affinity(const std::vector<int>& group, double inside, double across, double noise,
                               std::mt19937_64& rng) {
  const int n = int(group.size());
  std::uniform_real_distribution<double> jitter(-noise, noise);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double base = group[i] == group[j] ? inside : across;
      a(i, j) = a(j, i) = base > 0.0 ? std::max(0.0, base + jitter(rng)) : 0.0;
    }
  }
  return a;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<int, int> fwd, back;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto f = fwd.emplace(a[i], b[i]).first;
    const auto r = back.emplace(b[i], a[i]).first;
    if (f->second != b[i] || r->second != a[i]) return false;
  }
  return true;
}

Outcome criterion_spectral() {
  int recovered = 0, picked_three = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> group;
    for (int i = 0; i < 12; ++i) group.push_back(i % 3);
    std::shuffle(group.begin(), group.end(), rng);
    const Eigen::MatrixXd a = block_affinity(group, 0.9, 0.05, 0.04, rng);
    const SpectralResult r = spectral_zones(a, 2, 6, rng);
    picked_three += r.chosen_b == 3;
    recovered += r.chosen_b == 3 && same_partition(r.partition.labels, group);
  }
  double worst_lambda1 = 0.0;
  int multiplicity_ok = 0, block_cases = 0;
  std::mt19937_64 rng(404);
  for (int comps = 1; comps <= 5; ++comps) {
    for (int rep = 0; rep < 4; ++rep) {
      std::vector<int> group;
      for (int c = 0; c < comps; ++c) {
        const int size = std::uniform_int_distribution<int>(2, 5)(rng);
        for (int i = 0; i < size; ++i) group.push_back(c);
      }
      const SymmetricEigen e = symmetric_eigen(normalized_laplacian(block_affinity(group, 0.7, 0.0, 0.25, rng)));
      worst_lambda1 = std::max(worst_lambda1, std::abs(e.values(0)));
      int zeros = 0;
      for (Eigen::Index i = 0; i < e.values.size(); ++i) zeros += std::abs(e.values(i)) < 1e-8;
      multiplicity_ok += zeros == comps;
      ++block_cases;
    }
  }
  Outcome o;
  o.pass = recovered == 10 && worst_lambda1 < 1e-8 && multiplicity_ok == block_cases;
  o.detail = fmt::format("B=3 on {}/10 seeds, exact recovery {}/10, max |lambda_1| {:.2e} (limit 1e-8), "
                         "zero multiplicity = components in {}/{} block-diagonal inputs",
                         picked_three, recovered, worst_lambda1, multiplicity_ok, block_cases);
  return o;
}

// ---- criteria 5 to 7: seed-averaged sweeps ------------------------------------

struct GridPoint {
  double satisfaction[2] = {0.0, 0.0};
  std::vector<double> sinr[2];
  std::size_t outages[2] = {0, 0};
  std::vector<int> swaps; // accepted swaps per proposed zone and window
};

using Grid = std::map<std::pair<int, int>, GridPoint>; // (K, N)

Grid run_grid(bool vacancy, const std::vector<int>& ks, const std::vector<int>& ns) {
  Grid grid;
  for (int n : ns) {
    for (int k : ks) {
      GridPoint& g = grid[{k, n}];
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SimConfig c;
        c.num_pairs = k;
        c.num_rbs = n;
        c.seed = seed;
        c.vacancy_moves = vacancy;
        const MetricsLog log = run(c);
        for (const SchemeSummary& s : summarize(log)) g.satisfaction[int(s.scheme)] += s.satisfaction_pct / 10.0;
        for (const SlotSample& s : log.samples) {
          if (s.warmup) continue;
          g.sinr[int(s.scheme)].push_back(s.sinr_db);
          g.outages[int(s.scheme)] += !s.satisfied;
        }
        for (const WindowRecord& w : log.windows) {
          if (w.scheme != Scheme::Proposed) continue;
          for (const ZoneRecord& z : w.zones) g.swaps.push_back(z.accepted_swaps);
        }
      }
    }
  }
  return grid;
}

constexpr int kP = int(Scheme::Proposed);
constexpr int kB = int(Scheme::Baseline);

Outcome criterion_satisfaction(const Grid& g, double secs) {
  const double s10 = g.at({10, 15}).satisfaction[kP];
  const double s15 = g.at({15, 15}).satisfaction[kP];
  const double gain6 = g.at({30, 6}).satisfaction[kP] - g.at({30, 6}).satisfaction[kB];
  const double gain15 = g.at({30, 15}).satisfaction[kP] - g.at({30, 15}).satisfaction[kB];
  Outcome o;
  o.pass = s10 >= 95.0 && s15 >= 95.0 && gain6 >= 20.0 && gain15 >= 20.0 && secs < 300.0;
  o.detail = fmt::format("N=15: K=10 {:.2f}% {}, K=15 {:.2f}% {} (need >= 95%); K=30 gain N=6 {:.2f} pp {}, "
                         "N=15 {:.2f} pp {} (need >= 20 pp); {:.1f} s (limit 300 s)",
                         s10, s10 >= 95.0 ? "ok" : "LOW", s15, s15 >= 95.0 ? "ok" : "LOW", gain6,
                         gain6 >= 20.0 ? "ok" : "LOW", gain15, gain15 >= 20.0 ? "ok" : "LOW", secs);
  return o;
}

Outcome criterion_sinr(const Grid& g) {
  const GridPoint& p = g.at({25, 15});
  double q[2][3];
  for (int s : {kP, kB}) {
    for (int i = 0; i < 3; ++i) q[s][i] = percentile(p.sinr[s], 25.0 * (i + 1));
  }
  const double outage = double(p.outages[kP]) / double(p.sinr[kP].size());
  bool above = true;
  std::string parts;
  for (int i = 0; i < 3; ++i) {
    const bool ok = q[kP][i] > q[kB][i];
    above = above && ok;
    parts += fmt::format("p{} {:.2f} vs {:.2f} dB {}; ", 25 * (i + 1), q[kP][i], q[kB][i],
                         ok ? "ok" : "NOT ABOVE");
  }
  Outcome o;
  o.pass = above && outage < 0.15;
  o.detail = fmt::format("K=25 N=15 proposed vs baseline: {}proposed outage {:.4f} (limit 0.15)", parts, outage);
  return o;
}

Outcome criterion_swaps(const Grid& g, const std::vector<int>& ks) {
  bool grows = true;
  int worst = 0;
  std::string means;
  std::string table = "# v2v swap iterations v1\nK,N,zones,mean,p50,p90,max\n";
  for (int n : {6, 15}) {
    double prev = -1.0;
    means += fmt::format("N={}:", n);
    for (int k : ks) {
      std::vector<int> v = g.at({k, n}).swaps;
      const double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
      std::sort(v.begin(), v.end());
      worst = std::max(worst, v.back());
      grows = grows && mean > prev;
      prev = mean;
      means += fmt::format(" {:.2f}", mean);
      auto rank = [&](double pct) { return v[std::size_t(std::ceil(pct / 100.0 * double(v.size()))) - 1]; };
      table += fmt::format("{},{},{},{},{},{},{}\n", k, n, v.size(), format_double(mean), rank(50.0), rank(90.0),
                           v.back());
    }
    means += n == 6 ? "; " : "";
  }
  const std::string diff = check_artifact("swap_iterations.csv", table);
  Outcome o;
  o.pass = grows && worst < 500 && diff.empty();
  o.detail = fmt::format("mean accepted swaps per zone for K=10..30 {} ({}), max {} (limit < 500){}", means,
                         grows ? "increasing" : "NOT increasing", worst,
                         diff.empty() ? ", distribution matches artifact" : "; " + diff);
  return o;
}

// ---- criterion 8 ------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_determinism() {
  const CliOptions opts = parse_args(
      {"--vue-pairs", "10,25", "--rbs", "6,15", "--seeds", "3", "--dump-matrices", "--scheme", "both"});
  const fs::path a = fs::path(V2V_OUTPUT_DIR) / "determinism_a";
  const fs::path b = fs::path(V2V_OUTPUT_DIR) / "determinism_b";
  fs::remove_all(a);
  fs::remove_all(b);
  write_sweep(a, opts, run_sweep(opts));
  write_sweep(b, opts, run_sweep(opts));
  int files = 0, identical = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    identical += slurp(e.path()) == slurp(b / e.path().filename());
  }
  int files_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(b)) ++files_b;
  Outcome o;
  o.pass = files > 0 && identical == files && files_b == files;
  o.detail = fmt::format("two sweeps (K=10,25 x N=6,15 x 3 seeds, with matrix dumps): {}/{} files byte-identical",
                         identical, files);
  return o;
}

} // namespace

int main(int argc, char** argv) {
  fs::create_directories(V2V_OUTPUT_DIR);
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  auto wanted = [&](int c) { return only.empty() || std::find(only.begin(), only.end(), c) != only.end(); };

  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    fmt::print("[{}] criterion {} {}: {}\n", o.pass ? "PASS" : "FAIL", id, name, o.detail);
    std::fflush(stdout);
    failures += !o.pass;
  };

  if (wanted(1)) report(1, "quota conservation", criterion_quotas());
  if (wanted(2)) report(2, "convergence and stability", criterion_convergence());
  if (wanted(3)) {
    report(3, "brute-force audit", criterion_brute_force());
    fmt::print("{}", vacancy_gap_info());
  }
  if (wanted(4)) report(4, "spectral recovery", criterion_spectral());

  if (wanted(5) || wanted(6) || wanted(7)) {
    const std::vector<int> ks{10, 15, 20, 25, 30};
    const auto t0 = Clock::now();
    const Grid grid = run_grid(false, ks, {6, 15});
    const double secs = seconds_since(t0);
    if (wanted(5)) {
      report(5, "satisfaction trend", criterion_satisfaction(grid, secs));
      const Grid vac = run_grid(true, {10, 15}, {15});
      fmt::print("[INFO] criterion 5 with vacancy moves enabled (not the default): N=15 K=10 {:.2f}%, "
                 "K=15 {:.2f}%\n",
                 vac.at({10, 15}).satisfaction[kP], vac.at({15, 15}).satisfaction[kP]);
    }
    if (wanted(6)) report(6, "SINR percentiles", criterion_sinr(grid));
    if (wanted(7)) report(7, "swap-iteration scale", criterion_swaps(grid, ks));
  }
  if (wanted(8)) report(8, "determinism", criterion_determinism());

  fmt::print("{} criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
