#pragma once

#include <optional>
#include <span>
#include <vector>

#include "manet/extended.hpp"
#include "manet/mobility.hpp"
#include "manet/path_search.hpp"
#include "manet/topology.hpp"
#include "manet/types.hpp"

namespace manet {

struct Route {
  SessionId session = 0;
  std::vector<NodeId> nodes;  // source first, destination last
  Protocol protocol = Protocol::Forp;
  // FORP: route expiration time (s). LBR: summed activity + interference.
  // MMBCR: bottleneck residual battery (J).
  Extended<double> metric_value = 0.0;
  double discovered_at = 0.0;
  std::optional<double> torn_down_at;

  std::size_t hops() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  NodeId source() const { return nodes.front(); }
  NodeId destination() const { return nodes.back(); }
  bool live() const { return !torn_down_at.has_value(); }
  std::span<const NodeId> intermediates() const {
    return nodes.size() <= 2 ? std::span<const NodeId>{}
                             : std::span<const NodeId>(nodes).subspan(1, nodes.size() - 2);
  }
};

Adjacency adjacency_of(const TopologySnapshot& snap);

// Most stable path: maximizes the minimum link expiration time.
std::optional<Route> select_forp(const TopologySnapshot& snap, NodeId s, NodeId d);

// Least loaded path: minimizes the sum over intermediate nodes of activity
// plus traffic interference.
std::optional<Route> select_lbr(const TopologySnapshot& snap, std::span<const NodeState> states,
                                NodeId s, NodeId d);

// Maximizes the minimum residual battery over intermediate nodes.
std::optional<Route> select_mmbcr(const TopologySnapshot& snap, std::span<const NodeState> states,
                                  NodeId s, NodeId d);

std::optional<Route> select_route(Protocol protocol, const TopologySnapshot& snap,
                                  std::span<const NodeState> states, NodeId s, NodeId d);

// LBR per-node load: activity(m) + traffic_interference(m).
int lbr_node_cost(const TopologySnapshot& snap, std::span<const NodeState> states, NodeId m);

// Recomputes a route's selection metric against `snap`; nullopt if any hop is
// not an edge of the snapshot.
std::optional<Extended<double>> route_metric(Protocol protocol, std::span<const NodeId> nodes,
                                             const TopologySnapshot& snap,
                                             std::span<const NodeState> states);

// True when the route is a simple path whose every hop is a snapshot edge.
bool route_valid(std::span<const NodeId> nodes, const TopologySnapshot& snap);

}  // namespace manet
