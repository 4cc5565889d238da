#include "scalewall/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scalewall {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = 1e-12;

// Maps an unfolded coordinate back into [0, w]; `flipped` reports an odd number of reflections.
double fold(double p, double w, bool& flipped) {
  double m = std::fmod(p, 2.0 * w);
  if (m < 0.0) m += 2.0 * w;
  if (m > w) {
    flipped = true;
    return 2.0 * w - m;
  }
  flipped = false;
  return m;
}

Vec2 uniform_point(Area area, Rng& rng) { return {rng.uniform(0.0, area.side), rng.uniform(0.0, area.side)}; }

void new_waypoint(MotionState& s, const MobilityParams& p, Area area, Rng& rng) {
  s.waypoint = uniform_point(area, rng);
  s.speed = rng.uniform(p.v_min, p.v_max);
  s.heading = wrap_angle(std::atan2(s.waypoint.y - s.position.y, s.waypoint.x - s.position.x));
}

// Difference b - a folded into (-pi, pi].
double angle_delta(double a, double b) {
  double d = std::fmod(b - a, kTwoPi);
  if (d > std::numbers::pi) d -= kTwoPi;
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

void gauss_markov_update(MotionState& s, const MobilityParams& p, Area area, Rng& rng) {
  const double a = p.alpha;
  const double memory = std::sqrt(std::max(0.0, 1.0 - a * a));
  const double margin = p.gm_edge_margin * area.side;
  const Vec2 pos = s.position;
  if (pos.x < margin || pos.x > area.side - margin || pos.y < margin || pos.y > area.side - margin) {
    // wall avoidance: steer the mean direction toward the centre
    s.mean_heading = wrap_angle(std::atan2(0.5 * area.side - pos.y, 0.5 * area.side - pos.x));
  }
  const double speed = a * s.speed + (1.0 - a) * p.mean_speed() + memory * rng.normal(0.0, p.gm_speed_sigma);
  s.speed = std::clamp(speed, 0.5 * p.v_min, 1.5 * p.v_max);
  const double target = s.heading + angle_delta(s.heading, s.mean_heading);
  s.heading = wrap_angle(a * s.heading + (1.0 - a) * target + memory * rng.normal(0.0, p.gm_dir_sigma));
}

}  // namespace

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

Vec2 move_reflecting(Vec2 from, double& heading, double dist, Area area) {
  const double vx = std::cos(heading);
  const double vy = std::sin(heading);
  bool fx = false;
  bool fy = false;
  const Vec2 to{fold(from.x + dist * vx, area.side, fx), fold(from.y + dist * vy, area.side, fy)};
  if (fx || fy) heading = wrap_angle(std::atan2(fy ? -vy : vy, fx ? -vx : vx));
  return to;
}

MotionState init_state(Area area, const MobilityParams& p, Rng& rng) {
  MotionState s;
  s.position = uniform_point(area, rng);
  switch (p.model) {
    case MobilityModel::RandomWalk2D:
      s.heading = rng.uniform(0.0, kTwoPi);
      s.speed = rng.uniform(p.v_min, p.v_max);
      s.leg_remaining = p.leg_distance;
      break;
    case MobilityModel::RandomWaypoint:
      new_waypoint(s, p, area, rng);
      break;
    case MobilityModel::GaussMarkov:
      s.heading = rng.uniform(0.0, kTwoPi);
      s.mean_heading = s.heading;
      s.speed = p.mean_speed();
      s.until_update = p.gm_update_interval;
      break;
  }
  return s;
}

std::vector<MotionState> init_positions(int n, Area area, const MobilityParams& p, std::span<Rng> rngs) {
  std::vector<MotionState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(init_state(area, p, rngs[static_cast<std::size_t>(i)]));
  return out;
}

MotionState advance_random_walk(MotionState s, double dt, const MobilityParams& p, Area area, Rng& rng) {
  double remaining = dt;
  while (remaining > 0.0) {
    const double leg_time = s.leg_remaining / s.speed;
    if (leg_time > remaining) {
      const double d = s.speed * remaining;
      s.position = move_reflecting(s.position, s.heading, d, area);
      s.leg_remaining -= d;
      break;
    }
    s.position = move_reflecting(s.position, s.heading, s.leg_remaining, area);
    remaining -= leg_time;
    s.heading = rng.uniform(0.0, kTwoPi);
    s.speed = rng.uniform(p.v_min, p.v_max);
    s.leg_remaining = p.leg_distance;
  }
  return s;
}

MotionState advance_random_waypoint(MotionState s, double dt, const MobilityParams& p, Area area, Rng& rng) {
  double remaining = dt;
  while (remaining > 0.0) {
    if (s.pause_remaining > 0.0) {
      const double step = std::min(s.pause_remaining, remaining);
      s.pause_remaining -= step;
      remaining -= step;
      if (s.pause_remaining <= kEps) {
        s.pause_remaining = 0.0;
        new_waypoint(s, p, area, rng);
      }
      continue;
    }
    const double d = distance(s.position, s.waypoint);
    const double travel = s.speed * remaining;
    if (travel < d) {
      const double f = travel / d;
      s.position.x += f * (s.waypoint.x - s.position.x);
      s.position.y += f * (s.waypoint.y - s.position.y);
      break;
    }
    s.position = s.waypoint;
    remaining -= d / s.speed;
    if (p.pause_time > 0.0) {
      s.pause_remaining = p.pause_time;
    } else {
      new_waypoint(s, p, area, rng);
    }
  }
  return s;
}

MotionState advance_gauss_markov(MotionState s, double dt, const MobilityParams& p, Area area, Rng& rng) {
  double remaining = dt;
  while (remaining > 0.0) {
    const double step = std::min(remaining, s.until_update);
    s.position = move_reflecting(s.position, s.heading, s.speed * step, area);
    s.until_update -= step;
    remaining -= step;
    if (s.until_update <= kEps) {
      gauss_markov_update(s, p, area, rng);
      s.until_update += p.gm_update_interval;
    }
  }
  return s;
}

MotionState advance(MotionState s, double dt, const MobilityParams& p, Area area, Rng& rng) {
  switch (p.model) {
    case MobilityModel::RandomWalk2D: return advance_random_walk(s, dt, p, area, rng);
    case MobilityModel::RandomWaypoint: return advance_random_waypoint(s, dt, p, area, rng);
    case MobilityModel::GaussMarkov: return advance_gauss_markov(s, dt, p, area, rng);
  }
  return s;
}

}  // namespace scalewall
