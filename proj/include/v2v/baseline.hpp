// Reference scheme: fixed equal-area geographic zones, load-proportional RB
// pools and exclusive RB use inside each zone.
#pragma once

#include <span>
#include <vector>

#include "v2v/clustering.hpp"

namespace v2v {

/// Splits the bounds into `zone_count` equal-width vertical strips and assigns
/// each pair by its position. A point on a strip boundary belongs to the lower
/// strip. Empty strips are dropped.
ZonePartition fixed_zone_partition(const GridLayout& grid, std::span<const Vec2> positions,
                                   int zone_count = 3);

/// RB id per pair, -1 for pairs left unserved.
struct NetworkMatching {
  std::vector<int> rb_of_pair;
};

/// Apportions `num_rbs` across zones by `zone_loads`, then gives each RB of a
/// zone to one pair in descending `pair_loads` order (ties by lower id).
NetworkMatching baseline_allocate(const ZonePartition& zones, std::span<const double> zone_loads,
                                  std::span<const double> pair_loads, int num_rbs);

} // namespace v2v
