#include "manet/topology.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace manet {

TopologySnapshot::TopologySnapshot(double time, std::vector<std::vector<Link>> adjacency,
                                   std::vector<bool> alive)
    : time_(time), adjacency_(std::move(adjacency)), alive_(std::move(alive)) {
  if (adjacency_.size() != alive_.size()) {
    throw std::invalid_argument("TopologySnapshot: adjacency/alive size mismatch");
  }
}

const Link* TopologySnapshot::find(NodeId a, NodeId b) const {
  const auto& adj = adjacency_.at(a);
  const auto it = std::lower_bound(adj.begin(), adj.end(), b,
                                   [](const Link& l, NodeId id) { return l.neighbor < id; });
  return (it != adj.end() && it->neighbor == b) ? &*it : nullptr;
}

std::size_t TopologySnapshot::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return twice / 2;
}

double TopologySnapshot::mean_degree() const {
  std::size_t live = 0;
  std::size_t twice = 0;
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    if (!alive_[i]) continue;
    ++live;
    twice += adjacency_[i].size();
  }
  return live == 0 ? 0.0 : static_cast<double>(twice) / static_cast<double>(live);
}

TopologySnapshot snapshot(std::span<const NodeState> states, double range, double time) {
  const std::size_t n = states.size();
  std::vector<std::vector<Link>> adjacency(n);
  std::vector<bool> alive(n);
  const double r2 = range * range;
  for (std::size_t i = 0; i < n; ++i) alive[i] = states[i].alive();

  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!alive[j]) continue;
      const double d2 = distance_squared(states[i].pos, states[j].pos);
      if (d2 > r2) continue;
      const double dist = std::sqrt(d2);
      const auto let = link_expiration_time(states[i], states[j], range);
      adjacency[i].push_back({static_cast<NodeId>(j), dist, let});
      adjacency[j].push_back({static_cast<NodeId>(i), dist, let});
    }
  }
  return TopologySnapshot(time, std::move(adjacency), std::move(alive));
}

int traffic_interference(const TopologySnapshot& snap, std::span<const NodeState> states,
                         NodeId node) {
  if (node >= snap.node_count() || node >= states.size()) {
    throw std::out_of_range(fmt::format("traffic_interference: unknown node {}", node));
  }
  int sum = 0;
  for (const auto& link : snap.links(node)) sum += states[link.neighbor].activity;
  return sum;
}

void write_snapshot_csv(std::ostream& out, const TopologySnapshot& snap) {
  fmt::print(out, "time_s,i,j,dist_m,let_s\n");
  for (NodeId i = 0; i < snap.node_count(); ++i) {
    for (const auto& link : snap.links(i)) {
      if (link.neighbor <= i) continue;
      if (link.let.is_infinite()) {
        fmt::print(out, "{},{},{},{},inf\n", snap.time(), i, link.neighbor, link.distance);
      } else {
        fmt::print(out, "{},{},{},{},{}\n", snap.time(), i, link.neighbor, link.distance,
                   link.let.value());
      }
    }
  }
}

}  // namespace manet
