#include "v2v/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace v2v {

namespace {
constexpr double kRemainderTieTol = 1e-12;
}

std::vector<int> hare_niemeyer(std::span<const double> loads, int total) {
  const int zones = int(loads.size());
  if (zones == 0) throw std::invalid_argument("hare_niemeyer: no zones");
  if (total < zones) throw std::invalid_argument("hare_niemeyer: fewer RBs than zones");
  double sum = 0.0;
  for (double l : loads) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw std::invalid_argument("hare_niemeyer: invalid load");
    sum += l;
  }

  std::vector<double> quota(zones);
  std::vector<int> seats(zones);
  for (int z = 0; z < zones; ++z) {
    quota[z] = sum > 0.0 ? total * loads[z] / sum : double(total) / zones;
    seats[z] = std::max(1, int(std::floor(quota[z] + kRemainderTieTol)));
  }
  int assigned = std::accumulate(seats.begin(), seats.end(), 0);

  while (assigned < total) {
    int best = 0;
    for (int z = 1; z < zones; ++z) {
      if (quota[z] - seats[z] > quota[best] - seats[best] + kRemainderTieTol) best = z;
    }
    ++seats[best];
    ++assigned;
  }
  // Minimum-one bumps can overshoot; take back from the most over-served zone,
  // preferring to keep seats at lower indices.
  while (assigned > total) {
    int worst = -1;
    for (int z = zones - 1; z >= 0; --z) {
      if (seats[z] <= 1) continue;
      if (worst < 0 || quota[z] - seats[z] < quota[worst] - seats[worst] - kRemainderTieTol) worst = z;
    }
    --seats[worst];
    --assigned;
  }
  return seats;
}

ZoneAllocation contiguous_rb_sets(std::span<const int> quotas) {
  ZoneAllocation out;
  out.quotas.assign(quotas.begin(), quotas.end());
  int next = 0;
  for (int q : quotas) {
    std::vector<int> set(q);
    std::iota(set.begin(), set.end(), next);
    next += q;
    out.rb_sets.push_back(std::move(set));
  }
  return out;
}

int ZoneMatching::index_of(int pair) const {
  const auto it = std::find(pairs.begin(), pairs.end(), pair);
  if (it == pairs.end()) throw std::invalid_argument("pair is not a member of the zone");
  return int(it - pairs.begin());
}

ZoneMatching random_matching(std::vector<int> pairs, std::vector<int> rbs, std::mt19937_64& rng) {
  if (rbs.empty()) throw std::invalid_argument("zone has no RBs");
  ZoneMatching m;
  m.pairs = std::move(pairs);
  m.rbs = std::move(rbs);
  std::uniform_int_distribution<std::size_t> pick(0, m.rbs.size() - 1);
  m.assigned.reserve(m.pairs.size());
  for (std::size_t i = 0; i < m.pairs.size(); ++i) m.assigned.push_back(m.rbs[pick(rng)]);
  return m;
}

ZoneMatching swap(const ZoneMatching& m, int a, int b) {
  if (a == b) throw std::invalid_argument("swap needs two distinct pairs");
  ZoneMatching out = m;
  const int ia = m.index_of(a);
  const int ib = m.index_of(b);
  std::swap(out.assigned[ia], out.assigned[ib]);
  return out;
}

bool is_valid_matching(const ZoneMatching& m) {
  if (m.assigned.size() != m.pairs.size()) return false;
  return std::all_of(m.assigned.begin(), m.assigned.end(), [&](int rb) {
    return std::find(m.rbs.begin(), m.rbs.end(), rb) != m.rbs.end();
  });
}

ZoneScore zone_score(double load, int satisfied, int size, const ScoreParams& params) {
  if (size < 1) throw std::invalid_argument("zone_score: empty zone");
  ZoneScore s;
  s.load = load;
  s.satisfied = satisfied;
  s.size = size;
  if (satisfied == 0) {
    s.cost = params.cost_cap;
  } else {
    const double ratio = double(satisfied) / double(size);
    s.cost = std::pow(load, params.alpha) / std::pow(ratio, params.beta);
  }
  s.utility = -s.cost;
  return s;
}

ZoneEvaluator::ZoneEvaluator(const ChannelState& snapshot, std::span<const double> influx,
                             double rb_bandwidth_hz, ScoreParams params)
    : snapshot_(&snapshot), influx_(influx.begin(), influx.end()), bandwidth_(rb_bandwidth_hz),
      params_(params) {
  if (influx_.size() != snapshot.num_pairs()) {
    throw std::invalid_argument("one influx value per pair required");
  }
}

double ZoneEvaluator::sinr_of(const ZoneMatching& m, int pair) const {
  const int idx = m.index_of(pair);
  const int rb = m.assigned[idx];
  std::vector<int> cochannel;
  for (std::size_t j = 0; j < m.pairs.size(); ++j) {
    if (int(j) != idx && m.assigned[j] == rb) cochannel.push_back(m.pairs[j]);
  }
  return sinr(std::size_t(pair), ResourceBlock{rb, bandwidth_}, *snapshot_, cochannel);
}

ZoneEvaluator::PairEval ZoneEvaluator::evaluate_pair(const ZoneMatching& m, int idx) const {
  const ChannelState& ch = *snapshot_;
  const auto k = std::size_t(m.pairs[idx]);
  const auto rb = std::size_t(m.assigned[idx]);
  double interference = 0.0;
  for (std::size_t j = 0; j < m.pairs.size(); ++j) {
    if (int(j) == idx || m.assigned[j] != int(rb)) continue;
    const auto other = std::size_t(m.pairs[j]);
    interference += ch.tx_power(other) * ch.gain(rb, other, k);
  }
  const double gamma =
      ch.tx_power(k) * ch.gain(rb, k, k) / (interference + ch.noise_density() * bandwidth_);
  if (gamma < params_.target_sinr) return {gamma, -params_.rho_cap};
  const double rho = time_load(influx_[k], rate(ResourceBlock{int(rb), bandwidth_}, gamma));
  return {gamma, -std::min(rho, params_.rho_cap)};
}

double ZoneEvaluator::utility_vue(const ZoneMatching& m, int pair) const {
  return evaluate_pair(m, m.index_of(pair)).utility;
}

double ZoneEvaluator::utility_rb(const ZoneMatching& m, int rb) const {
  double u = 0.0;
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    if (m.assigned[i] == rb) u += evaluate_pair(m, int(i)).utility;
  }
  return u;
}

ZoneScore ZoneEvaluator::score(const ZoneMatching& m) const {
  double load = 0.0;
  int satisfied = 0;
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    const PairEval e = evaluate_pair(m, int(i));
    load -= e.utility;
    if (e.sinr >= params_.target_sinr) ++satisfied;
  }
  return zone_score(load, satisfied, int(m.pairs.size()), params_);
}

namespace {

struct PlayerCheck {
  bool weak = true;
  bool strict = false;
  void add(double before, double after) {
    if (after < before) weak = false;
    if (after > before) strict = true;
  }
};

bool is_blocking(const ZoneMatching& m, const ZoneMatching& swapped, int i, int j,
                 const ZoneEvaluator& eval) {
  const int a = m.pairs[i];
  const int b = m.pairs[j];
  const int ra = m.assigned[i];
  const int rb = m.assigned[j];
  PlayerCheck c;
  c.add(eval.utility_vue(m, a), eval.utility_vue(swapped, a));
  c.add(eval.utility_vue(m, b), eval.utility_vue(swapped, b));
  c.add(eval.utility_rb(m, ra), eval.utility_rb(swapped, ra));
  c.add(eval.utility_rb(m, rb), eval.utility_rb(swapped, rb));
  return c.weak && c.strict;
}

} // namespace

StabilityReport is_pairwise_stable(const ZoneMatching& m, const ZoneEvaluator& eval) {
  StabilityReport rep;
  const double w = eval.score(m).utility;
  const int n = int(m.pairs.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (m.assigned[i] == m.assigned[j]) continue;
      const ZoneMatching s = swap(m, m.pairs[i], m.pairs[j]);
      if (eval.score(s).utility > w && is_blocking(m, s, i, j, eval)) {
        rep.stable = false;
        rep.witness = std::pair{m.pairs[i], m.pairs[j]};
        return rep;
      }
    }
  }
  return rep;
}

SwapAudit audit_swaps(const ZoneMatching& m, const ZoneEvaluator& eval) {
  SwapAudit audit;
  const double w = eval.score(m).utility;
  const int n = int(m.pairs.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (m.assigned[i] == m.assigned[j]) continue;
      ++audit.candidate_swaps;
      const ZoneMatching s = swap(m, m.pairs[i], m.pairs[j]);
      if (eval.score(s).utility > w) {
        ++audit.utility_improving;
        if (is_blocking(m, s, i, j, eval)) ++audit.blocking;
      }
    }
  }
  return audit;
}

ZoneSolution solve_zone_matching(ZoneMatching initial, const ZoneEvaluator& eval,
                                 const SwapOptions& opts, std::mt19937_64& rng) {
  if (!is_valid_matching(initial)) throw std::invalid_argument("initial matching is invalid");
  ZoneSolution sol;
  sol.matching = std::move(initial);
  ZoneMatching& m = sol.matching;
  const int n = int(m.pairs.size());
  double w = eval.score(m).utility;
  sol.utility_trace.push_back(w);

  std::vector<std::pair<int, int>> candidates;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) candidates.emplace_back(i, j);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  auto accept = [&](double next) {
    w = next;
    sol.utility_trace.push_back(w);
    ++sol.accepted_swaps;
    return sol.accepted_swaps >= opts.count_max;
  };

  while (true) {
    bool improved = false;
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (const auto& [i, j] : candidates) {
      if (m.assigned[i] == m.assigned[j]) continue;
      ++sol.proposals;
      std::swap(m.assigned[i], m.assigned[j]);
      const double next = eval.score(m).utility;
      if (next > w) {
        improved = true;
        if (accept(next)) return sol;
      } else {
        std::swap(m.assigned[i], m.assigned[j]);
      }
    }

    if (opts.vacancy_moves) {
      std::shuffle(order.begin(), order.end(), rng);
      for (int i : order) {
        for (int rb : m.rbs) {
          const auto occupancy = [&](int r) { return std::count(m.assigned.begin(), m.assigned.end(), r); };
          const int current = m.assigned[i];
          if (rb == current || occupancy(rb) >= occupancy(current)) continue;
          ++sol.proposals;
          m.assigned[i] = rb;
          const double next = eval.score(m).utility;
          if (next > w) {
            improved = true;
            if (accept(next)) return sol;
          } else {
            m.assigned[i] = current;
          }
        }
      }
    }

    if (!improved) {
      sol.converged = true;
      return sol;
    }
  }
}

} // namespace v2v
