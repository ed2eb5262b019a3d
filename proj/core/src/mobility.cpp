#include "manet/mobility.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace manet {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 random_point(const RandomWaypointParams& p, Rng& rng) {
  const double x = rng.uniform(0.0, p.width);
  const double y = rng.uniform(0.0, p.height);
  return {x, y};
}

void retarget(NodeState& node, const RandomWaypointParams& p, Rng& rng) {
  node.waypoint = random_point(p, rng);
  node.speed = rng.uniform_left_open(p.min_speed, p.v_max);
  node.heading = heading_towards(node.pos, node.waypoint);
}

}  // namespace

double heading_towards(Vec2 from, Vec2 to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0) return 0.0;
  double theta = std::atan2(dy, dx);
  if (theta < 0.0) theta += kTwoPi;
  // atan2 of a tiny negative angle can round up to exactly 2*pi.
  if (theta >= kTwoPi) theta = 0.0;
  return theta;
}

std::vector<NodeState> init_mobility(const ScenarioConfig& config, Rng& rng) {
  validate(config);
  const auto params = RandomWaypointParams::from(config);
  std::vector<NodeState> nodes(config.node_count);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto& n = nodes[i];
    n.id = static_cast<NodeId>(i);
    n.pos = random_point(params, rng);
    n.battery = Energy::from_joules(config.initial_battery);
    retarget(n, params, rng);
  }
  return nodes;
}

void advance(std::span<NodeState> states, double dt, const RandomWaypointParams& params, Rng& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("advance: dt must be positive");
  for (auto& n : states) {
    double remaining = dt;
    while (remaining > 0.0) {
      const double to_go = distance(n.pos, n.waypoint);
      const double step = n.speed * remaining;
      if (step < to_go) {
        const double f = step / to_go;
        n.pos.x += (n.waypoint.x - n.pos.x) * f;
        n.pos.y += (n.waypoint.y - n.pos.y) * f;
        break;
      }
      remaining -= to_go / n.speed;
      n.pos = n.waypoint;
      retarget(n, params, rng);
    }
  }
}

Extended<double> link_expiration_time(const NodeState& i, const NodeState& j, double range) {
  const double b = i.pos.x - j.pos.x;
  const double d = i.pos.y - j.pos.y;
  const double r2 = range * range;
  if (b * b + d * d > r2) {
    throw std::invalid_argument("link_expiration_time: nodes are not within range");
  }
  const double a = i.speed * std::cos(i.heading) - j.speed * std::cos(j.heading);
  const double c = i.speed * std::sin(i.heading) - j.speed * std::sin(j.heading);
  const double rel = a * a + c * c;
  if (rel == 0.0) return Extended<double>::infinity();

  const double cross = a * d - b * c;
  double radicand = rel * r2 - cross * cross;
  if (radicand < 0.0) {
    // Analytically non-negative for in-range pairs; allow rounding noise only.
    if (radicand < -1e-9 * rel * r2) {
      throw std::logic_error("link_expiration_time: negative discriminant for in-range pair");
    }
    radicand = 0.0;
  }
  const double let = (-(a * b + c * d) + std::sqrt(radicand)) / rel;
  return let > 0.0 ? let : 0.0;
}

}  // namespace manet
