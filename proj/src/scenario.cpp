#include "v2v/scenario.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace v2v {

namespace {

double wrap_coord(double x, double period) {
  double r = x - period * std::floor(x / period);
  if (r >= period) r = 0.0;
  return r;
}

// Distance travelled from `from` to reach `to` moving in direction `dir` on a
// circle of circumference `period`. Result in [0, period).
double forward_distance(double from, double to, int dir, double period) {
  return wrap_coord(dir * (to - from), period);
}

double lane_length(const Lane& lane, const GridLayout& grid) {
  return lane.axis == Axis::X ? grid.bounds.width() : grid.bounds.height();
}

Vec2 lane_direction(const Lane& lane) {
  return lane.axis == Axis::X ? Vec2{double(lane.dir), 0.0} : Vec2{0.0, double(lane.dir)};
}

Vec2 point_on_lane(const Lane& lane, double pos) {
  return lane.axis == Axis::X ? Vec2{pos, lane.offset} : Vec2{lane.offset, pos};
}

// Segment-rectangle test: true when the open segment passes through the
// rectangle interior. Grazing an edge or a corner does not count.
bool crosses_interior(Vec2 a, Vec2 b, const Rect& r) {
  const Vec2 d = b - a;
  double t0 = 0.0;
  double t1 = 1.0;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x - r.x0, r.x1 - a.x, a.y - r.y0, r.y1 - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return false;
  }
  if (t1 - t0 <= 0.0) return false;
  const double tm = 0.5 * (t0 + t1);
  return r.contains_interior(a + tm * d);
}

Vec2 rotate_left(Vec2 h) { return {-h.y, h.x}; }
Vec2 rotate_right(Vec2 h) { return {h.y, -h.x}; }

Turn draw_turn(const TurnPolicy& policy, std::mt19937_64& rng) {
  const double total = policy.straight + policy.left + policy.right;
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  if (u < policy.straight) return Turn::Straight;
  if (u < policy.straight + policy.left) return Turn::Left;
  return Turn::Right;
}

// Picks the lane of `road` heading along `heading` whose centerline is reached
// first after crossing `entry` while travelling in direction `dir`.
int turn_target_lane(const GridLayout& grid, int road, Vec2 heading, double entry, int dir,
                     double period) {
  int best = -1;
  double best_dist = 0.0;
  for (int i = 0; i < int(grid.lanes.size()); ++i) {
    const Lane& l = grid.lanes[i];
    if (l.road != road) continue;
    if (lane_direction(l) != heading) continue;
    const double dist = forward_distance(entry, l.offset, dir, period);
    if (best < 0 || dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  if (best < 0) throw std::logic_error("road has no lane in the requested direction");
  return best;
}

void set_along(Vehicle& v, const Lane& lane, double pos) { v.position = point_on_lane(lane, pos); }

} // namespace

std::pair<Vec2, Vec2> GridLayout::lane_segment(int lane) const {
  const Lane& l = lanes.at(lane);
  const double len = l.axis == Axis::X ? bounds.width() : bounds.height();
  Vec2 a = point_on_lane(l, 0.0);
  Vec2 b = point_on_lane(l, len);
  if (l.dir < 0) std::swap(a, b);
  return {a, b};
}

GridLayout build_manhattan_grid(const GridConfig& cfg) {
  if (!(cfg.building_breadth > 0.0)) throw std::invalid_argument("building breadth must be positive");
  if (!(cfg.lane_width > 0.0)) throw std::invalid_argument("lane width must be positive");
  if (cfg.blocks_x < 1 || cfg.blocks_y < 1) throw std::invalid_argument("block counts must be positive");
  if (cfg.lanes_per_road < 2) throw std::invalid_argument("a road needs at least two lanes");

  GridLayout g;
  g.building_breadth = cfg.building_breadth;
  g.lane_width = cfg.lane_width;
  const double road_w = cfg.lanes_per_road * cfg.lane_width;
  const double pitch = cfg.building_breadth + road_w;
  g.bounds = {0.0, 0.0, cfg.blocks_x * pitch + road_w, cfg.blocks_y * pitch + road_w};

  for (int j = 0; j < cfg.blocks_y; ++j) {
    for (int i = 0; i < cfg.blocks_x; ++i) {
      const double x0 = road_w + i * pitch;
      const double y0 = road_w + j * pitch;
      g.buildings.push_back({x0, y0, x0 + cfg.building_breadth, y0 + cfg.building_breadth});
    }
  }

  const int half = cfg.lanes_per_road / 2;
  auto add_road = [&](Axis axis, double start) {
    const int road = int(g.roads.size());
    g.roads.push_back({axis, start, road_w});
    for (int l = 0; l < cfg.lanes_per_road; ++l) {
      Lane lane;
      lane.axis = axis;
      lane.road = road;
      lane.offset = start + (l + 0.5) * cfg.lane_width;
      // Right-hand traffic: +x runs on the low-y side, +y on the high-x side.
      if (axis == Axis::X) {
        lane.dir = l < half ? 1 : -1;
      } else {
        lane.dir = l < half ? -1 : 1;
      }
      g.lanes.push_back(lane);
    }
  };
  for (int j = 0; j <= cfg.blocks_y; ++j) add_road(Axis::X, j * pitch);
  for (int i = 0; i <= cfg.blocks_x; ++i) add_road(Axis::Y, i * pitch);
  return g;
}

Vec2 displacement(Vec2 a, Vec2 b, const GridLayout& grid) {
  const double w = grid.bounds.width();
  const double h = grid.bounds.height();
  Vec2 d = b - a;
  d.x -= w * std::round(d.x / w);
  d.y -= h * std::round(d.y / h);
  return d;
}

double torus_distance(Vec2 a, Vec2 b, const GridLayout& grid) {
  return norm(displacement(a, b, grid));
}

Vec2 wrap_position(Vec2 p, const GridLayout& grid) {
  return {grid.bounds.x0 + wrap_coord(p.x - grid.bounds.x0, grid.bounds.width()),
          grid.bounds.y0 + wrap_coord(p.y - grid.bounds.y0, grid.bounds.height())};
}

bool is_los(Vec2 a, Vec2 b, const GridLayout& grid) {
  if (a == b) return true;
  // Canonical order so that is_los(a, b) == is_los(b, a) bit for bit.
  if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
  const double w = grid.bounds.width();
  const double h = grid.bounds.height();
  const double lo_x = std::min(a.x, b.x), hi_x = std::max(a.x, b.x);
  const double lo_y = std::min(a.y, b.y), hi_y = std::max(a.y, b.y);
  for (const Rect& r : grid.buildings) {
    for (int sx = -1; sx <= 1; ++sx) {
      for (int sy = -1; sy <= 1; ++sy) {
        const Rect img{r.x0 + sx * w, r.y0 + sy * h, r.x1 + sx * w, r.y1 + sy * h};
        if (img.x1 <= lo_x || img.x0 >= hi_x || img.y1 <= lo_y || img.y0 >= hi_y) continue;
        if (crosses_interior(a, b, img)) return false;
      }
    }
  }
  return true;
}

double along(const Vehicle& v, const GridLayout& grid) {
  return grid.lanes.at(v.lane).axis == Axis::X ? v.position.x : v.position.y;
}

bool on_lane(const Vehicle& v, const GridLayout& grid, double tol) {
  if (v.lane < 0 || v.lane >= int(grid.lanes.size())) return false;
  const Lane& l = grid.lanes[v.lane];
  const double perp = l.axis == Axis::X ? v.position.y : v.position.x;
  if (std::abs(perp - l.offset) > tol) return false;
  if (!grid.bounds.contains(v.position)) return false;
  if (v.heading != lane_direction(l)) return false;
  return std::none_of(grid.buildings.begin(), grid.buildings.end(),
                      [&](const Rect& r) { return r.contains_interior(v.position); });
}

std::vector<Vehicle> step_mobility(std::span<const Vehicle> vehicles, const GridLayout& grid,
                                   double dt, std::mt19937_64& rng, const TurnPolicy& policy) {
  std::vector<Vehicle> out(vehicles.begin(), vehicles.end());
  if (dt <= 0.0) return out;

  std::unordered_map<int, std::vector<int>> groups;
  for (int i = 0; i < int(out.size()); ++i) {
    if (out[i].group >= 0) groups[out[i].group].push_back(i);
  }

  for (int i = 0; i < int(out.size()); ++i) {
    Vehicle& v = out[i];
    double remaining = v.speed * dt;
    while (remaining > 0.0) {
      const Lane& lane = grid.lanes.at(v.lane);
      const double period = lane_length(lane, grid);
      const double pos = along(v, grid);

      if (v.turn_target) {
        const Lane& target = grid.lanes[*v.turn_target];
        const double d = forward_distance(pos, target.offset, lane.dir, period);
        if (d > remaining) {
          set_along(v, lane, wrap_coord(pos + lane.dir * remaining, period));
          remaining = 0.0;
          break;
        }
        remaining -= d;
        // The crossing point: old centerline meets the target centerline.
        const double new_pos = lane.offset;
        v.lane = *v.turn_target;
        v.turn_target.reset();
        v.heading = lane_direction(target);
        set_along(v, target, new_pos);
        continue;
      }

      int next_road = -1;
      double next_dist = 0.0;
      double next_entry = 0.0;
      for (int r = 0; r < int(grid.roads.size()); ++r) {
        const Road& road = grid.roads[r];
        if (road.axis == lane.axis) continue;
        const double entry = lane.dir > 0 ? road.start : road.start + road.width;
        double d = forward_distance(pos, entry, lane.dir, period);
        if (d == 0.0) d = period; // already handled this crossing
        if (next_road < 0 || d < next_dist) {
          next_road = r;
          next_dist = d;
          next_entry = entry;
        }
      }
      if (next_road < 0 || next_dist > remaining) {
        set_along(v, lane, wrap_coord(pos + lane.dir * remaining, period));
        remaining = 0.0;
        break;
      }
      remaining -= next_dist;
      set_along(v, lane, wrap_coord(next_entry, period));

      Turn turn;
      if (!v.queued_turns.empty()) {
        turn = v.queued_turns.front();
        v.queued_turns.pop_front();
      } else {
        turn = draw_turn(policy, rng);
        if (v.group >= 0) {
          for (int j : groups[v.group]) {
            if (j != i) out[j].queued_turns.push_back(turn);
          }
        }
      }
      if (turn == Turn::Straight) continue;
      const Vec2 heading = turn == Turn::Left ? rotate_left(v.heading) : rotate_right(v.heading);
      v.turn_target = turn_target_lane(grid, next_road, heading, next_entry, lane.dir, period);
    }
  }
  return out;
}

std::vector<VuePair> place_pairs(int count, const GridLayout& grid, const PlacementConfig& cfg,
                                 std::mt19937_64& rng) {
  if (count < 0) throw std::invalid_argument("pair count must be non-negative");
  if (!(cfg.min_gap > 0.0) || cfg.max_gap < cfg.min_gap) {
    throw std::invalid_argument("invalid pair gap range");
  }
  std::vector<VuePair> pairs;
  pairs.reserve(count);
  std::uniform_int_distribution<int> pick_lane(0, int(grid.lanes.size()) - 1);
  std::uniform_int_distribution<int> pick_class(0, int(std::size(kVehicleClasses)) - 1);
  std::uniform_real_distribution<double> pick_gap(cfg.min_gap, cfg.max_gap);

  for (int k = 0; k < count; ++k) {
    const int lane_idx = pick_lane(rng);
    const Lane& lane = grid.lanes[lane_idx];
    // Free stretches between crossings along this lane.
    std::vector<std::pair<double, double>> stretches;
    std::vector<double> starts;
    for (const Road& r : grid.roads) {
      if (r.axis != lane.axis) starts.push_back(r.start);
    }
    std::sort(starts.begin(), starts.end());
    const double road_w = grid.roads.front().width;
    for (std::size_t s = 0; s + 1 < starts.size(); ++s) {
      stretches.emplace_back(starts[s] + road_w, starts[s + 1]);
    }
    const auto [lo, hi] =
        stretches[std::uniform_int_distribution<std::size_t>(0, stretches.size() - 1)(rng)];
    const double gap = std::min(pick_gap(rng), hi - lo);
    const double q = std::uniform_real_distribution<double>(lo, hi - gap)(rng);
    const double tx_pos = lane.dir > 0 ? q : q + gap;
    const double rx_pos = lane.dir > 0 ? q + gap : q;

    VuePair p;
    p.id = k;
    for (Vehicle* v : {&p.tx, &p.rx}) {
      const auto [len, wid] = kVehicleClasses[pick_class(rng)];
      v->length = len;
      v->width = wid;
      v->speed = cfg.speed_mps;
      v->lane = lane_idx;
      v->heading = lane_direction(lane);
      v->group = k;
    }
    p.tx.id = 2 * k;
    p.rx.id = 2 * k + 1;
    p.tx.position = point_on_lane(lane, tx_pos);
    p.rx.position = point_on_lane(lane, rx_pos);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

} // namespace v2v
