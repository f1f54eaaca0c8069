#include "v2v/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "v2v/allocation.hpp"

namespace v2v {

ZonePartition fixed_zone_partition(const GridLayout& grid, std::span<const Vec2> positions,
                                   int zone_count) {
  if (zone_count < 1) throw std::invalid_argument("zone_count must be at least 1");
  const double strip = grid.bounds.width() / zone_count;
  std::vector<int> tile(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double x = positions[i].x - grid.bounds.x0;
    const int t = int(std::ceil(x / strip)) - 1;
    tile[i] = std::clamp(t, 0, zone_count - 1);
  }
  // Zones keep tile order; empty tiles vanish.
  std::vector<int> used(zone_count, -1);
  int next = 0;
  for (int t = 0; t < zone_count; ++t) {
    if (std::find(tile.begin(), tile.end(), t) != tile.end()) used[t] = next++;
  }
  ZonePartition p;
  p.zones.resize(next);
  p.labels.resize(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    p.labels[i] = used[tile[i]];
    p.zones[p.labels[i]].push_back(int(i));
  }
  return p;
}

NetworkMatching baseline_allocate(const ZonePartition& zones, std::span<const double> zone_loads,
                                  std::span<const double> pair_loads, int num_rbs) {
  if (int(zone_loads.size()) != zones.count()) throw std::invalid_argument("one load per zone required");
  if (pair_loads.size() != zones.labels.size()) throw std::invalid_argument("one load per pair required");
  const std::vector<int> quotas = hare_niemeyer(zone_loads, num_rbs);
  const ZoneAllocation alloc = contiguous_rb_sets(quotas);

  NetworkMatching out;
  out.rb_of_pair.assign(zones.labels.size(), -1);
  for (int z = 0; z < zones.count(); ++z) {
    std::vector<int> members = zones.zones[z];
    std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
      if (pair_loads[a] != pair_loads[b]) return pair_loads[a] > pair_loads[b];
      return a < b;
    });
    const auto& rbs = alloc.rb_sets[z];
    for (std::size_t i = 0; i < members.size() && i < rbs.size(); ++i) out.rb_of_pair[members[i]] = rbs[i];
  }
  return out;
}

} // namespace v2v
