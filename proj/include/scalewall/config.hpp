#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace scalewall {

enum class MobilityModel { RandomWalk2D, RandomWaypoint, GaussMarkov };
enum class Protocol { LSR, OLSR };

std::string_view to_string(MobilityModel m);
std::string_view to_string(Protocol p);
MobilityModel parse_mobility_model(std::string_view s);
Protocol parse_protocol(std::string_view s);

struct MobilityParams {
  MobilityModel model = MobilityModel::RandomWalk2D;
  double v_min = 2.0;
  double v_max = 4.0;
  double leg_distance = 30.0;  // phi, random walk leg length
  double pause_time = 2.0;     // random waypoint
  double alpha = 0.75;         // Gauss-Markov memory
  double gm_update_interval = 1.0;
  double gm_mean_speed = -1.0;  // < 0 means midpoint of [v_min, v_max]
  double gm_speed_sigma = 0.5;
  double gm_dir_sigma = 0.4;
  double gm_edge_margin = 0.1;  // fraction of the side that triggers wall steering
  double tick = 0.1;            // mobility update step

  double mean_speed() const { return gm_mean_speed >= 0.0 ? gm_mean_speed : 0.5 * (v_min + v_max); }
  void validate() const;
};

struct OlsrParams {
  double hello_interval = 2.0;
  double tc_interval = 5.0;
};

/// Number of ordered pairs tracked by the snapshot instrument.
/// `kAuto` tracks every pair up to 200 nodes and a fixed 20,000-pair sample above.
struct PairSample {
  static constexpr std::int64_t kAll = -1;
  static constexpr std::int64_t kAuto = 0;
  std::int64_t value = kAuto;

  std::int64_t resolve(int node_count) const;
};

/// Full parameterisation of one simulation run.
struct SimConfig {
  int node_count = 100;
  double target_density = 8.0;
  double radio_range = 100.0;
  double area = 0.0;  // square side in meters; <= 0 derives it from density
  double duration = 180.0;
  double warmup = 10.0;
  double snapshot_interval = 0.050;
  MobilityParams mobility;
  double beacon_period = 0.5;
  int miss_threshold = 3;
  double per_hop_delay_min = 0.001;
  double per_hop_delay_max = 0.005;
  double loss_probability = 0.0;
  Protocol protocol = Protocol::LSR;
  OlsrParams olsr;
  double channel_capacity = 2'000'000.0;
  int control_header_bytes = 16;
  int control_bytes_per_id = 4;
  PairSample pair_sample;
  std::uint64_t seed = 1;

  bool trace_intervals = false;
  bool trace_nlo = false;
  bool trace_link_events = false;
  bool trace_mobility = false;

  /// side = sqrt(n * pi * r^2 / rho) unless `area` was set explicitly.
  double side() const;
  /// Link failure estimation time k * B (k * hello for OLSR).
  double failure_estimation_time() const;
  void validate() const;
};

/// Applies one `key = value` assignment; throws std::invalid_argument on unknown keys.
void set_config_value(SimConfig& cfg, std::string_view key, std::string_view value);

SimConfig parse_config(std::istream& in);
SimConfig load_config(const std::string& path);
/// Flat key-value rendering; parse_config(to_text(c)) reproduces c.
std::string to_text(const SimConfig& cfg);

std::vector<std::string> config_keys();

}  // namespace scalewall
