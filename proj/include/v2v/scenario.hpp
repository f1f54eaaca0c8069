// Manhattan-grid geometry, vehicle mobility and line-of-sight tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace v2v {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains_interior(Vec2 p) const {
    return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1;
  }
  bool contains(Vec2 p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

enum class Axis { X, Y };

/// A straight road strip. Traffic on it runs along `axis`; the strip covers
/// [start, start + width) in the perpendicular coordinate.
struct Road {
  Axis axis = Axis::X;
  double start = 0.0;
  double width = 0.0;
};

/// A directed lane: travel along `axis` in direction `dir` (+1 or -1), with
/// its centerline at `offset` in the perpendicular coordinate. Lanes span the
/// full grid extent and wrap at the bounds.
struct Lane {
  Axis axis = Axis::X;
  int dir = 1;
  double offset = 0.0;
  int road = 0;
};

struct GridConfig {
  int blocks_x = 2;
  int blocks_y = 2;
  double building_breadth = 100.0;
  int lanes_per_road = 2;
  double lane_width = 3.5;
};

struct GridLayout {
  double building_breadth = 0.0;
  double lane_width = 0.0;
  std::vector<Rect> buildings;
  std::vector<Road> roads;
  std::vector<Lane> lanes;
  Rect bounds;

  Vec2 extent() const { return {bounds.width(), bounds.height()}; }
  // Directed end points of a lane, clipped to the bounds.
  std::pair<Vec2, Vec2> lane_segment(int lane) const;
};

/// Builds a rectangular block pattern with roads on the perimeter and between
/// every pair of adjacent buildings. Throws std::invalid_argument on
/// non-positive dimensions or fewer than two lanes per road.
GridLayout build_manhattan_grid(const GridConfig& cfg);

enum class Turn : std::uint8_t { Straight, Left, Right };

struct TurnPolicy {
  double straight = 0.5;
  double left = 0.25;
  double right = 0.25;
};

struct Vehicle {
  int id = 0;
  Vec2 position;
  Vec2 heading{1.0, 0.0};
  double speed = 0.0;
  double length = 4.5;
  double width = 1.8;
  int lane = 0;
  // Vehicles sharing a group replay the same turn decisions.
  int group = -1;
  // Decisions drawn by a group member that this vehicle has not applied yet.
  std::deque<Turn> queued_turns;
  // Lane the vehicle is currently turning into, once it has entered a crossing.
  std::optional<int> turn_target;
};

/// Minimum-image displacement b - a on the toroidal grid.
Vec2 displacement(Vec2 a, Vec2 b, const GridLayout& grid);
double torus_distance(Vec2 a, Vec2 b, const GridLayout& grid);
Vec2 wrap_position(Vec2 p, const GridLayout& grid);

/// True iff the open segment (a, b) crosses no building interior. Periodic
/// images of the buildings are included, so `b` may be given as a
/// minimum-image point outside the bounds.
bool is_los(Vec2 a, Vec2 b, const GridLayout& grid);

/// Advances every vehicle by speed * dt along its lane, applying turn decisions
/// at crossings. Members of one group draw a decision once and share it.
std::vector<Vehicle> step_mobility(std::span<const Vehicle> vehicles, const GridLayout& grid,
                                   double dt, std::mt19937_64& rng,
                                   const TurnPolicy& policy = {});

struct VuePair {
  int id = 0;
  Vehicle tx;
  Vehicle rx;
  double arrival_rate = 0.0;     // packets/s
  double mean_packet_bits = 0.0; // bits
};

struct PlacementConfig {
  double speed_mps = 50.0 / 3.6;
  double min_gap = 15.0;
  double max_gap = 20.0;
};

/// Vehicle size presets (length, width) in meters.
inline constexpr std::pair<double, double> kVehicleClasses[] = {
    {4.5, 1.8}, {5.5, 2.0}, {7.0, 2.3}, {12.0, 2.5}};

/// Drops `count` co-moving transmitter/receiver pairs uniformly on the lanes.
/// The receiver drives `gap` meters ahead of the transmitter on the same lane.
std::vector<VuePair> place_pairs(int count, const GridLayout& grid, const PlacementConfig& cfg,
                                 std::mt19937_64& rng);

/// Position along the lane's travel axis.
double along(const Vehicle& v, const GridLayout& grid);
/// True when the vehicle sits on its lane centerline inside the bounds and
/// outside every building.
bool on_lane(const Vehicle& v, const GridLayout& grid, double tol = 1e-9);

} // namespace v2v
