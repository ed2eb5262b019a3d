#include "manet/protocols.hpp"

#include <algorithm>
#include <stdexcept>

namespace manet {
namespace {

void check_endpoints(const TopologySnapshot& snap, NodeId s, NodeId d) {
  if (s >= snap.node_count() || d >= snap.node_count()) {
    throw std::out_of_range("route selection: unknown endpoint");
  }
  if (s == d) throw std::invalid_argument("route selection: source equals destination");
  if (!snap.alive(s) || !snap.alive(d)) {
    throw std::invalid_argument("route selection: endpoint is not alive");
  }
}

Route make_route(Protocol protocol, std::vector<NodeId> nodes, Extended<double> metric,
                 double time) {
  Route r;
  r.nodes = std::move(nodes);
  r.protocol = protocol;
  r.metric_value = metric;
  r.discovered_at = time;
  return r;
}

Extended<double> to_joules(const Extended<Energy>& e) {
  return e.is_infinite() ? Extended<double>::infinity() : Extended<double>(e.value().joules());
}

}  // namespace

Adjacency adjacency_of(const TopologySnapshot& snap) {
  Adjacency adj(snap.node_count());
  for (NodeId u = 0; u < snap.node_count(); ++u) {
    adj[u].reserve(snap.degree(u));
    for (const auto& link : snap.links(u)) adj[u].push_back(link.neighbor);
  }
  return adj;
}

std::optional<Route> select_forp(const TopologySnapshot& snap, NodeId s, NodeId d) {
  check_endpoints(snap, s, d);
  const auto adj = adjacency_of(snap);
  auto found = widest_path<double>(adj, s, d, [&](NodeId u, NodeId v) {
    return snap.find(u, v)->let;
  });
  if (!found) return std::nullopt;
  return make_route(Protocol::Forp, std::move(found->nodes), found->bottleneck, snap.time());
}

int lbr_node_cost(const TopologySnapshot& snap, std::span<const NodeState> states, NodeId m) {
  return states[m].activity + traffic_interference(snap, states, m);
}

std::optional<Route> select_lbr(const TopologySnapshot& snap, std::span<const NodeState> states,
                                NodeId s, NodeId d) {
  check_endpoints(snap, s, d);
  const auto adj = adjacency_of(snap);
  std::vector<int> cost(snap.node_count(), 0);
  for (NodeId m = 0; m < snap.node_count(); ++m) {
    if (snap.alive(m)) cost[m] = lbr_node_cost(snap, states, m);
  }
  auto found = least_cost_path(adj, s, d, [&](NodeId v) { return cost[v]; });
  if (!found) return std::nullopt;
  return make_route(Protocol::Lbr, std::move(found->nodes),
                    static_cast<double>(found->cost), snap.time());
}

std::optional<Route> select_mmbcr(const TopologySnapshot& snap, std::span<const NodeState> states,
                                  NodeId s, NodeId d) {
  check_endpoints(snap, s, d);
  const auto adj = adjacency_of(snap);
  auto found = widest_path_over_nodes<Energy>(adj, s, d,
                                              [&](NodeId v) { return states[v].battery; });
  if (!found) return std::nullopt;
  return make_route(Protocol::Mmbcr, std::move(found->nodes), to_joules(found->bottleneck),
                    snap.time());
}

std::optional<Route> select_route(Protocol protocol, const TopologySnapshot& snap,
                                  std::span<const NodeState> states, NodeId s, NodeId d) {
  switch (protocol) {
    case Protocol::Forp: return select_forp(snap, s, d);
    case Protocol::Lbr: return select_lbr(snap, states, s, d);
    case Protocol::Mmbcr: return select_mmbcr(snap, states, s, d);
  }
  return std::nullopt;
}

bool route_valid(std::span<const NodeId> nodes, const TopologySnapshot& snap) {
  if (nodes.size() < 2) return false;
  std::vector<NodeId> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    if (nodes[k] >= snap.node_count() || nodes[k + 1] >= snap.node_count()) return false;
    if (!snap.has_edge(nodes[k], nodes[k + 1])) return false;
  }
  return true;
}

std::optional<Extended<double>> route_metric(Protocol protocol, std::span<const NodeId> nodes,
                                             const TopologySnapshot& snap,
                                             std::span<const NodeState> states) {
  if (!route_valid(nodes, snap)) return std::nullopt;
  const auto inner = nodes.subspan(1, nodes.size() - 2);
  switch (protocol) {
    case Protocol::Forp: {
      auto ret = Extended<double>::infinity();
      for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        ret = min(ret, snap.find(nodes[k], nodes[k + 1])->let);
      }
      return ret;
    }
    case Protocol::Lbr: {
      std::int64_t total = 0;
      for (const NodeId m : inner) total += lbr_node_cost(snap, states, m);
      return Extended<double>(static_cast<double>(total));
    }
    case Protocol::Mmbcr: {
      auto bottleneck = Extended<Energy>::infinity();
      for (const NodeId m : inner) bottleneck = min(bottleneck, Extended<Energy>(states[m].battery));
      return to_joules(bottleneck);
    }
  }
  return std::nullopt;
}

}  // namespace manet
