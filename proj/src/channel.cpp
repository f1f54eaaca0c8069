#include "v2v/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace v2v {

ChannelState::ChannelState(std::size_t pairs, std::size_t rbs, double noise_density_w_hz,
                           std::vector<double> tx_power_w)
    : pairs_(pairs), rbs_(rbs), noise_density_(noise_density_w_hz),
      tx_power_(std::move(tx_power_w)), gain_(rbs * pairs * pairs, 0.0) {
  if (tx_power_.size() != pairs) throw std::invalid_argument("one tx power per pair required");
  if (!(noise_density_w_hz > 0.0)) throw std::invalid_argument("noise density must be positive");
}

double pathloss_db(Vec2 tx, Vec2 rx, bool los, const ChannelParams& params) {
  const Vec2 d = rx - tx;
  auto free_space_form = [&](double dist) {
    dist = std::max(dist, params.min_distance_m);
    return params.los_loss_100m_db + 20.0 * std::log10(dist / 100.0);
  };
  if (los) return free_space_form(norm(d));
  return free_space_form(std::abs(d.x) + std::abs(d.y)) + params.corner_loss_db;
}

double pathloss(Vec2 tx, Vec2 rx, bool los, const ChannelParams& params) {
  return db_to_linear(-pathloss_db(tx, rx, los, params));
}

double sinr(std::size_t pair, const ResourceBlock& rb, const ChannelState& ch,
            std::span<const int> cochannel) {
  const auto n = std::size_t(rb.id);
  double interference = 0.0;
  for (int other : cochannel) {
    if (std::size_t(other) == pair) continue;
    interference += ch.tx_power(other) * ch.gain(n, other, pair);
  }
  const double signal = ch.tx_power(pair) * ch.gain(n, pair, pair);
  return signal / (interference + ch.noise_density() * rb.bandwidth_hz);
}

double rate(const ResourceBlock& rb, double sinr) { return rb.bandwidth_hz * std::log2(1.0 + sinr); }

double traffic_influx(double arrival_rate, double mean_packet_bits) {
  return arrival_rate * mean_packet_bits;
}

double time_load(double influx, double rate) {
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return influx / rate;
}

double slot_time_load(std::span<const double> per_rb_loads, double rho_cap) {
  if (per_rb_loads.empty()) throw std::invalid_argument("no resource blocks");
  double sum = 0.0;
  for (double r : per_rb_loads) sum += std::min(r, rho_cap);
  return sum / double(per_rb_loads.size());
}

double expected_time_load(std::span<const double> history, double rho_cap) {
  if (history.empty()) throw std::invalid_argument("empty load window");
  double sum = 0.0;
  for (double r : history) sum += std::min(r, rho_cap);
  return sum / double(history.size());
}

} // namespace v2v
