#include "scalewall/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace scalewall {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw std::invalid_argument("config key '" + std::string(key) + "': not a number: '" + std::string(v) + "'");
  }
  return out;
}

std::int64_t to_int(std::string_view key, std::string_view v) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw std::invalid_argument("config key '" + std::string(key) + "': not an integer: '" + std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config key '" + std::string(key) + "': not a boolean: '" + std::string(v) + "'");
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Setter = std::function<void(SimConfig&, std::string_view key, std::string_view value)>;
using Getter = std::function<std::string(const SimConfig&)>;

struct Field {
  Setter set;
  Getter get;
};

template <class T>
Field double_field(T SimConfig::*member) {
  return {[member](SimConfig& c, std::string_view k, std::string_view v) { c.*member = to_double(k, v); },
          [member](const SimConfig& c) { return fmt_double(c.*member); }};
}

Field mobility_double(double MobilityParams::*member) {
  return {[member](SimConfig& c, std::string_view k, std::string_view v) { c.mobility.*member = to_double(k, v); },
          [member](const SimConfig& c) { return fmt_double(c.mobility.*member); }};
}

Field bool_field(bool SimConfig::*member) {
  return {[member](SimConfig& c, std::string_view k, std::string_view v) { c.*member = to_bool(k, v); },
          [member](const SimConfig& c) { return std::string(c.*member ? "true" : "false"); }};
}

// Ordered so that to_text output is stable.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"node_count",
       {[](SimConfig& c, std::string_view k, std::string_view v) { c.node_count = static_cast<int>(to_int(k, v)); },
        [](const SimConfig& c) { return std::to_string(c.node_count); }}},
      {"target_density", double_field(&SimConfig::target_density)},
      {"radio_range", double_field(&SimConfig::radio_range)},
      {"area",
       {[](SimConfig& c, std::string_view k, std::string_view v) { c.area = (v == "auto") ? 0.0 : to_double(k, v); },
        [](const SimConfig& c) { return c.area > 0.0 ? fmt_double(c.area) : std::string("auto"); }}},
      {"duration", double_field(&SimConfig::duration)},
      {"warmup", double_field(&SimConfig::warmup)},
      {"snapshot_interval", double_field(&SimConfig::snapshot_interval)},
      {"mobility.model",
       {[](SimConfig& c, std::string_view, std::string_view v) { c.mobility.model = parse_mobility_model(v); },
        [](const SimConfig& c) { return std::string(to_string(c.mobility.model)); }}},
      {"mobility.v_min", mobility_double(&MobilityParams::v_min)},
      {"mobility.v_max", mobility_double(&MobilityParams::v_max)},
      {"mobility.leg_distance", mobility_double(&MobilityParams::leg_distance)},
      {"mobility.pause_time", mobility_double(&MobilityParams::pause_time)},
      {"mobility.alpha", mobility_double(&MobilityParams::alpha)},
      {"mobility.gm_update_interval", mobility_double(&MobilityParams::gm_update_interval)},
      {"mobility.gm_mean_speed",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          c.mobility.gm_mean_speed = (v == "auto") ? -1.0 : to_double(k, v);
        },
        [](const SimConfig& c) {
          return c.mobility.gm_mean_speed >= 0.0 ? fmt_double(c.mobility.gm_mean_speed) : std::string("auto");
        }}},
      {"mobility.gm_speed_sigma", mobility_double(&MobilityParams::gm_speed_sigma)},
      {"mobility.gm_dir_sigma", mobility_double(&MobilityParams::gm_dir_sigma)},
      {"mobility.gm_edge_margin", mobility_double(&MobilityParams::gm_edge_margin)},
      {"mobility.tick", mobility_double(&MobilityParams::tick)},
      {"beacon_period", double_field(&SimConfig::beacon_period)},
      {"miss_threshold",
       {[](SimConfig& c, std::string_view k, std::string_view v) { c.miss_threshold = static_cast<int>(to_int(k, v)); },
        [](const SimConfig& c) { return std::to_string(c.miss_threshold); }}},
      {"per_hop_delay_min", double_field(&SimConfig::per_hop_delay_min)},
      {"per_hop_delay_max", double_field(&SimConfig::per_hop_delay_max)},
      {"loss_probability", double_field(&SimConfig::loss_probability)},
      {"protocol",
       {[](SimConfig& c, std::string_view, std::string_view v) { c.protocol = parse_protocol(v); },
        [](const SimConfig& c) { return std::string(to_string(c.protocol)); }}},
      {"olsr.hello_interval",
       {[](SimConfig& c, std::string_view k, std::string_view v) { c.olsr.hello_interval = to_double(k, v); },
        [](const SimConfig& c) { return fmt_double(c.olsr.hello_interval); }}},
      {"olsr.tc_interval",
       {[](SimConfig& c, std::string_view k, std::string_view v) { c.olsr.tc_interval = to_double(k, v); },
        [](const SimConfig& c) { return fmt_double(c.olsr.tc_interval); }}},
      {"channel_capacity", double_field(&SimConfig::channel_capacity)},
      {"control_header_bytes",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          c.control_header_bytes = static_cast<int>(to_int(k, v));
        },
        [](const SimConfig& c) { return std::to_string(c.control_header_bytes); }}},
      {"control_bytes_per_id",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          c.control_bytes_per_id = static_cast<int>(to_int(k, v));
        },
        [](const SimConfig& c) { return std::to_string(c.control_bytes_per_id); }}},
      {"pair_sample",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          if (v == "auto") {
            c.pair_sample.value = PairSample::kAuto;
          } else if (v == "all" || v == "ALL") {
            c.pair_sample.value = PairSample::kAll;
          } else {
            c.pair_sample.value = to_int(k, v);
            if (c.pair_sample.value <= 0) throw std::invalid_argument("pair_sample must be positive, 'all' or 'auto'");
          }
        },
        [](const SimConfig& c) {
          if (c.pair_sample.value == PairSample::kAuto) return std::string("auto");
          if (c.pair_sample.value == PairSample::kAll) return std::string("all");
          return std::to_string(c.pair_sample.value);
        }}},
      {"seed",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          std::uint64_t out = 0;
          const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
          if (ec != std::errc{} || ptr != v.data() + v.size()) {
            throw std::invalid_argument("config key '" + std::string(k) + "': not an unsigned integer");
          }
          c.seed = out;
        },
        [](const SimConfig& c) { return std::to_string(c.seed); }}},
      {"trace.intervals", bool_field(&SimConfig::trace_intervals)},
      {"trace.nlo", bool_field(&SimConfig::trace_nlo)},
      {"trace.link_events", bool_field(&SimConfig::trace_link_events)},
      {"trace.mobility", bool_field(&SimConfig::trace_mobility)},
  };
  return table;
}

}  // namespace

std::string_view to_string(MobilityModel m) {
  switch (m) {
    case MobilityModel::RandomWalk2D: return "random_walk";
    case MobilityModel::RandomWaypoint: return "random_waypoint";
    case MobilityModel::GaussMarkov: return "gauss_markov";
  }
  return "?";
}

std::string_view to_string(Protocol p) { return p == Protocol::LSR ? "lsr" : "olsr"; }

MobilityModel parse_mobility_model(std::string_view s) {
  if (s == "random_walk" || s == "RandomWalk2D") return MobilityModel::RandomWalk2D;
  if (s == "random_waypoint" || s == "RandomWaypoint") return MobilityModel::RandomWaypoint;
  if (s == "gauss_markov" || s == "GaussMarkov") return MobilityModel::GaussMarkov;
  throw std::invalid_argument("unknown mobility model '" + std::string(s) + "'");
}

Protocol parse_protocol(std::string_view s) {
  if (s == "lsr" || s == "LSR") return Protocol::LSR;
  if (s == "olsr" || s == "OLSR") return Protocol::OLSR;
  throw std::invalid_argument("unknown protocol '" + std::string(s) + "'");
}

void MobilityParams::validate() const {
  if (!(v_min > 0.0) || !(v_min <= v_max)) throw std::invalid_argument("mobility: require 0 < v_min <= v_max");
  if (!(leg_distance > 0.0)) throw std::invalid_argument("mobility: leg_distance must be > 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("mobility: alpha must lie in [0,1]");
  if (!(pause_time >= 0.0)) throw std::invalid_argument("mobility: pause_time must be >= 0");
  if (!(gm_update_interval > 0.0)) throw std::invalid_argument("mobility: gm_update_interval must be > 0");
  if (!(gm_speed_sigma >= 0.0) || !(gm_dir_sigma >= 0.0)) throw std::invalid_argument("mobility: negative sigma");
  if (!(tick > 0.0)) throw std::invalid_argument("mobility: tick must be > 0");
}

std::int64_t PairSample::resolve(int node_count) const {
  const std::int64_t all = static_cast<std::int64_t>(node_count) * (node_count - 1);
  if (value == kAll) return all;
  if (value == kAuto) return node_count > 200 ? std::min<std::int64_t>(20'000, all) : all;
  return std::min(value, all);
}

double SimConfig::side() const {
  if (area > 0.0) return area;
  return std::sqrt(node_count * std::numbers::pi * radio_range * radio_range / target_density);
}

double SimConfig::failure_estimation_time() const {
  return miss_threshold * (protocol == Protocol::LSR ? beacon_period : olsr.hello_interval);
}

void SimConfig::validate() const {
  if (node_count < 2) throw std::invalid_argument("node_count must be >= 2");
  if (!(target_density > 0.0)) throw std::invalid_argument("target_density must be > 0");
  if (!(radio_range > 0.0)) throw std::invalid_argument("radio_range must be > 0");
  if (!(side() > 0.0)) throw std::invalid_argument("area must be > 0");
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be > 0");
  if (!(warmup >= 0.0)) throw std::invalid_argument("warmup must be >= 0");
  if (!(snapshot_interval > 0.0)) throw std::invalid_argument("snapshot_interval must be > 0");
  if (!(beacon_period > 0.0)) throw std::invalid_argument("beacon_period must be > 0");
  if (miss_threshold < 1) throw std::invalid_argument("miss_threshold must be >= 1");
  if (!(per_hop_delay_min >= 0.0) || !(per_hop_delay_min <= per_hop_delay_max)) {
    throw std::invalid_argument("per_hop_delay: require 0 <= min <= max");
  }
  if (!(loss_probability >= 0.0 && loss_probability < 1.0)) throw std::invalid_argument("loss_probability in [0,1)");
  if (!(olsr.hello_interval > 0.0) || !(olsr.tc_interval > 0.0)) throw std::invalid_argument("olsr intervals > 0");
  if (!(channel_capacity > 0.0)) throw std::invalid_argument("channel_capacity must be > 0");
  if (control_header_bytes < 0 || control_bytes_per_id < 0) throw std::invalid_argument("negative message size");
  mobility.validate();
}

void set_config_value(SimConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "mobility.speed" || key == "speed") {
    // composite "vmin-vmax"
    const auto dash = value.find('-', 1);
    if (dash == std::string_view::npos) throw std::invalid_argument("speed expects 'vmin-vmax', got '" + std::string(value) + "'");
    cfg.mobility.v_min = to_double(key, trim(value.substr(0, dash)));
    cfg.mobility.v_max = to_double(key, trim(value.substr(dash + 1)));
    return;
  }
  if (key == "n") key = "node_count";
  if (key == "B") key = "beacon_period";
  for (const auto& [name, field] : fields()) {
    if (name == key) {
      field.set(cfg, key, value);
      return;
    }
  }
  throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

SimConfig parse_config(std::istream& in) {
  SimConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    set_config_value(cfg, view.substr(0, eq), view.substr(eq + 1));
  }
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string to_text(const SimConfig& cfg) {
  std::ostringstream out;
  for (const auto& [name, field] : fields()) out << name << " = " << field.get(cfg) << '\n';
  return out.str();
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [name, field] : fields()) keys.push_back(name);
  keys.emplace_back("mobility.speed");
  return keys;
}

}  // namespace scalewall
