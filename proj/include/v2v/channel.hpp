// Path loss, fading, SINR, rate and time-load computations.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "v2v/scenario.hpp"

namespace v2v {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) {
  return lin > 0.0 ? 10.0 * std::log10(lin) : -std::numeric_limits<double>::infinity();
}
inline double dbm_to_watt(double dbm) { return db_to_linear(dbm - 30.0); }

struct ChannelParams {
  double carrier_hz = 800e6;
  double rb_bandwidth_hz = 180e3;
  double noise_density_dbm_hz = -174.0;
  double tx_power_dbm = 10.0;
  double target_sinr_db = 3.0;
  // LOS loss at the 100 m reference distance.
  double los_loss_100m_db = 43.0;
  double corner_loss_db = 15.0;
  double min_distance_m = 1.0;
  double rho_cap = 1.0;
  double packet_bits = 1600.0 * 8.0;
  double arrival_rate_min = 5.0;
  double arrival_rate_max = 25.0;

  double noise_density_w_hz() const { return dbm_to_watt(noise_density_dbm_hz); }
  double tx_power_w() const { return dbm_to_watt(tx_power_dbm); }
  double target_sinr() const { return db_to_linear(target_sinr_db); }
};

struct ResourceBlock {
  int id = 0;
  double bandwidth_hz = 180e3;
};

/// Per-RB link gains between every transmitter and every receiver.
class ChannelState {
public:
  ChannelState() = default;
  ChannelState(std::size_t pairs, std::size_t rbs, double noise_density_w_hz,
               std::vector<double> tx_power_w);

  std::size_t num_pairs() const { return pairs_; }
  std::size_t num_rbs() const { return rbs_; }
  double noise_density() const { return noise_density_; }
  double tx_power(std::size_t pair) const { return tx_power_[pair]; }

  /// Linear power gain from the transmitter of `from` to the receiver of `to` on `rb`.
  double gain(std::size_t rb, std::size_t from, std::size_t to) const {
    return gain_[(rb * pairs_ + from) * pairs_ + to];
  }
  double& gain(std::size_t rb, std::size_t from, std::size_t to) {
    return gain_[(rb * pairs_ + from) * pairs_ + to];
  }

private:
  std::size_t pairs_ = 0;
  std::size_t rbs_ = 0;
  double noise_density_ = 0.0;
  std::vector<double> tx_power_;
  std::vector<double> gain_;
};

double pathloss_db(Vec2 tx, Vec2 rx, bool los, const ChannelParams& params = {});
/// Linear gain 10^(-PL/10). LOS uses the straight-line distance; NLOS routes
/// around one corner (|dx| + |dy|) and adds the corner penalty.
double pathloss(Vec2 tx, Vec2 rx, bool los, const ChannelParams& params = {});

/// Unit-mean exponential power gain (Rayleigh amplitude).
template <class Rng>
double sample_fading(Rng& rng) {
  return std::exponential_distribution<double>(1.0)(rng);
}

double sinr(std::size_t pair, const ResourceBlock& rb, const ChannelState& ch,
            std::span<const int> cochannel);
double rate(const ResourceBlock& rb, double sinr);
double traffic_influx(double arrival_rate, double mean_packet_bits);

/// phi / R; R == 0 yields +infinity.
double time_load(double influx, double rate);

/// Mean of the per-RB loads, each clamped to `rho_cap`.
double slot_time_load(std::span<const double> per_rb_loads, double rho_cap);

/// Window average of per-slot loads, each clamped to `rho_cap`. Throws
/// std::invalid_argument on an empty window.
double expected_time_load(std::span<const double> history, double rho_cap);

} // namespace v2v
