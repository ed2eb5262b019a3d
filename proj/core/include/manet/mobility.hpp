#pragma once

#include <span>
#include <vector>

#include "manet/config.hpp"
#include "manet/extended.hpp"
#include "manet/rng.hpp"
#include "manet/types.hpp"

namespace manet {

struct NodeState {
  NodeId id = 0;
  Vec2 pos;
  double speed = 0.0;    // m/s
  double heading = 0.0;  // radians in [0, 2*pi)
  Vec2 waypoint;
  Energy battery;
  int activity = 0;  // live routes using this node as an intermediate forwarder

  bool alive() const { return battery > Energy{}; }
};

struct RandomWaypointParams {
  double width = 1000.0;
  double height = 1000.0;
  double v_max = 20.0;
  double min_speed = 0.01;

  static RandomWaypointParams from(const ScenarioConfig& config) {
    return {config.area_width, config.area_height, config.v_max, config.min_speed};
  }
};

// Direction from `from` to `to`, normalized to [0, 2*pi). Zero for coincident points.
double heading_towards(Vec2 from, Vec2 to);

// Uniform initial placement, one waypoint and speed per node. Batteries are
// set to the configured initial charge.
std::vector<NodeState> init_mobility(const ScenarioConfig& config, Rng& rng);

// Moves every node `dt` seconds along its current leg. A node reaching its
// waypoint immediately draws a new waypoint and speed (zero pause) and spends
// the rest of the step on the new leg.
void advance(std::span<NodeState> states, double dt, const RandomWaypointParams& params, Rng& rng);

// Predicted time until nodes i and j, moving at constant velocity, leave each
// other's range r. Infinity when their relative velocity is zero.
// Throws std::invalid_argument when the nodes are not currently in range.
Extended<double> link_expiration_time(const NodeState& i, const NodeState& j, double range);

}  // namespace manet
