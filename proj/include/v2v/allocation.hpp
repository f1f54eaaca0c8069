// RB apportionment across zones and the intra-zone swap-matching game.
#pragma once

#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "v2v/channel.hpp"

namespace v2v {

/// Largest-remainder apportionment of `total` RBs proportional to `loads`.
/// Every zone receives at least one RB; remainder ties go to the lower index.
/// All-zero loads split equally. Throws std::invalid_argument when there are
/// no zones, fewer RBs than zones, or a negative load.
std::vector<int> hare_niemeyer(std::span<const double> loads, int total);

struct ZoneAllocation {
  std::vector<std::vector<int>> rb_sets;
  std::vector<int> quotas;
};

/// Hands out RB ids as contiguous ranges in zone order.
ZoneAllocation contiguous_rb_sets(std::span<const int> quotas);

/// Assignment of one zone's pairs to RBs of the zone's pool.
struct ZoneMatching {
  std::vector<int> pairs;    // global pair ids
  std::vector<int> rbs;      // the zone's RB pool
  std::vector<int> assigned; // RB id per entry of `pairs`

  int index_of(int pair) const;
  int rb_of(int pair) const { return assigned.at(index_of(pair)); }
  friend bool operator==(const ZoneMatching&, const ZoneMatching&) = default;
};

/// Each pair picks a uniformly random RB from `rbs`.
ZoneMatching random_matching(std::vector<int> pairs, std::vector<int> rbs, std::mt19937_64& rng);

/// Exchanges the RBs of pairs `a` and `b`. Throws std::invalid_argument when
/// a == b or either pair is outside the zone.
ZoneMatching swap(const ZoneMatching& m, int a, int b);

/// True when every pair holds one RB from the pool (7d, 7e).
bool is_valid_matching(const ZoneMatching& m);

struct ScoreParams {
  double alpha = 1.0;
  double beta = 3.0;
  double target_sinr = 2.0; // linear
  double rho_cap = 1.0;
  double cost_cap = 1e9;
};

struct ZoneScore {
  double load = 0.0;
  int satisfied = 0;
  int size = 0;
  double cost = 0.0;
  double utility = 0.0;
};

/// Gamma = load^alpha / (satisfied / size)^beta, with `cost_cap` when no pair
/// is satisfied. Utility is -Gamma.
ZoneScore zone_score(double load, int satisfied, int size, const ScoreParams& params);

/// Evaluates utilities of a zone matching against a channel snapshot.
/// Interference comes only from zone members sharing the RB.
class ZoneEvaluator {
public:
  ZoneEvaluator(const ChannelState& snapshot, std::span<const double> influx,
                double rb_bandwidth_hz, ScoreParams params);

  const ScoreParams& params() const { return params_; }

  double sinr_of(const ZoneMatching& m, int pair) const;
  /// -rho of `pair` on its matched RB; -rho_cap when below target SINR.
  double utility_vue(const ZoneMatching& m, int pair) const;
  /// Sum of member utilities on `rb`; zero for an idle RB.
  double utility_rb(const ZoneMatching& m, int rb) const;
  ZoneScore score(const ZoneMatching& m) const;

private:
  struct PairEval {
    double sinr;
    double utility;
  };
  PairEval evaluate_pair(const ZoneMatching& m, int idx) const;

  const ChannelState* snapshot_;
  std::vector<double> influx_;
  double bandwidth_;
  ScoreParams params_;
};

struct StabilityReport {
  bool stable = true;
  std::optional<std::pair<int, int>> witness;
};

/// Pairwise stability: no swap that weakly improves the two pairs and two
/// RBs involved, strictly improves one of them, and raises zone utility.
StabilityReport is_pairwise_stable(const ZoneMatching& m, const ZoneEvaluator& eval);

struct SwapAudit {
  int candidate_swaps = 0;  // swaps between pairs on different RBs
  int utility_improving = 0; // swaps raising zone utility
  int blocking = 0;          // of those, swaps also meeting the four-player conditions
};

/// Exhaustive enumeration over every swap of `m`.
SwapAudit audit_swaps(const ZoneMatching& m, const ZoneEvaluator& eval);

struct SwapOptions {
  int count_max = 500;
  bool vacancy_moves = false;
};

struct ZoneSolution {
  ZoneMatching matching;
  int accepted_swaps = 0;
  int proposals = 0;
  bool converged = false;
  std::vector<double> utility_trace; // zone utility after each accepted move
};

/// Swap matching from `initial`: candidate swaps are visited in shuffled
/// round-robin passes and accepted iff zone utility strictly rises. Stops
/// after a pass without an accepted swap, or after `count_max` accepted swaps
/// (then `converged` is false).
ZoneSolution solve_zone_matching(ZoneMatching initial, const ZoneEvaluator& eval,
                                 const SwapOptions& opts, std::mt19937_64& rng);

} // namespace v2v
