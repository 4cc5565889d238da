#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "scalewall/config.hpp"
#include "scalewall/random.hpp"

namespace scalewall {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Square deployment area [0, side]^2.
struct Area {
  double side = 0.0;
  bool contains(Vec2 p) const { return p.x >= 0.0 && p.x <= side && p.y >= 0.0 && p.y <= side; }
};

struct MotionState {
  Vec2 position;
  double heading = 0.0;  // radians in [0, 2pi)
  double speed = 0.0;    // m/s
  // RandomWalk2D
  double leg_remaining = 0.0;
  // RandomWaypoint
  Vec2 waypoint;
  double pause_remaining = 0.0;
  // GaussMarkov
  double mean_heading = 0.0;
  double until_update = 0.0;
};

/// Uniform i.i.d. positions; node i draws from rngs[i]. Each state starts a fresh leg/waypoint.
std::vector<MotionState> init_positions(int n, Area area, const MobilityParams& params, std::span<Rng> rngs);
MotionState init_state(Area area, const MobilityParams& params, Rng& rng);

MotionState advance_random_walk(MotionState s, double dt, const MobilityParams& p, Area area, Rng& rng);
MotionState advance_random_waypoint(MotionState s, double dt, const MobilityParams& p, Area area, Rng& rng);
MotionState advance_gauss_markov(MotionState s, double dt, const MobilityParams& p, Area area, Rng& rng);
MotionState advance(MotionState s, double dt, const MobilityParams& p, Area area, Rng& rng);

/// Straight-line motion for `distance` meters with specular reflection at the walls.
/// Returns the final position and updates `heading` for the reflections taken.
Vec2 move_reflecting(Vec2 from, double& heading, double distance, Area area);

double wrap_angle(double a);  // into [0, 2pi)

}  // namespace scalewall
