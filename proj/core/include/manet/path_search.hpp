#pragma once

// Path kernels shared by the route-selection disciplines. Every kernel breaks
// ties by hop count first and then by the lexicographically smallest node
// sequence, so results are fully determined by the graph and its weights.

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "manet/extended.hpp"
#include "manet/types.hpp"

namespace manet {

// Undirected graph; each list sorted ascending, no self-loops.
using Adjacency = std::vector<std::vector<NodeId>>;

template <typename W>
struct WidestPath {
  std::vector<NodeId> nodes;
  Extended<W> bottleneck;
};

struct LeastCostPath {
  std::vector<NodeId> nodes;
  std::int64_t cost = 0;
};

namespace detail {

struct CostLabel {
  std::int64_t cost;
  std::int64_t hops;
  friend auto operator<=>(const CostLabel&, const CostLabel&) = default;
};

// Hop distance to `d` over arcs accepted by `usable(x, y)`; -1 if unreachable.
template <typename Usable>
std::vector<int> hops_to(const Adjacency& adj, NodeId d, Usable usable) {
  std::vector<int> dist(adj.size(), -1);
  std::vector<NodeId> frontier{d};
  dist[d] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId y = frontier[head];
    for (const NodeId x : adj[y]) {
      if (dist[x] >= 0 || !usable(x, y)) continue;
      dist[x] = dist[y] + 1;
      frontier.push_back(x);
    }
  }
  return dist;
}

// Walks from s to d always taking the smallest neighbor that `on_optimal(x, y)`
// accepts as the next step of some optimal path.
template <typename OnOptimal>
std::vector<NodeId> smallest_optimal_walk(const Adjacency& adj, NodeId s, NodeId d,
                                          OnOptimal on_optimal) {
  std::vector<NodeId> path{s};
  NodeId cur = s;
  while (cur != d) {
    bool moved = false;
    for (const NodeId y : adj[cur]) {
      if (on_optimal(cur, y)) {
        path.push_back(y);
        cur = y;
        moved = true;
        break;
      }
    }
    if (!moved || path.size() > adj.size()) return {};
  }
  return path;
}

}  // namespace detail

// Max-bottleneck path from s to d where `arc(u, v)` gives the weight of
// stepping from u to v. Phase one finds the optimal bottleneck with a
// best-first search; phase two restricts to arcs at least that wide and picks
// the lexicographically smallest minimum-hop path among them.
template <typename W, typename ArcWeight>
std::optional<WidestPath<W>> widest_path(const Adjacency& adj, NodeId s, NodeId d, ArcWeight arc) {
  using Value = Extended<W>;
  const std::size_t n = adj.size();
  if (s >= n || d >= n) return std::nullopt;
  if (s == d) return WidestPath<W>{{s}, Value::infinity()};

  std::vector<std::optional<Value>> best(n);
  std::vector<bool> settled(n, false);
  auto less = [](const std::pair<Value, NodeId>& a, const std::pair<Value, NodeId>& b) {
    return a.first < b.first;
  };
  std::priority_queue<std::pair<Value, NodeId>, std::vector<std::pair<Value, NodeId>>,
                      decltype(less)>
      queue(less);
  best[s] = Value::infinity();
  queue.emplace(Value::infinity(), s);
  while (!queue.empty()) {
    const auto [width, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = true;
    if (u == d) break;
    for (const NodeId v : adj[u]) {
      if (settled[v]) continue;
      const Value cand = min(width, Value(arc(u, v)));
      if (!best[v] || *best[v] < cand) {
        best[v] = cand;
        queue.emplace(cand, v);
      }
    }
  }
  if (!best[d]) return std::nullopt;
  const Value bottleneck = *best[d];

  auto wide_enough = [&](NodeId x, NodeId y) { return !(Value(arc(x, y)) < bottleneck); };
  const auto dist = detail::hops_to(adj, d, wide_enough);
  auto path = detail::smallest_optimal_walk(adj, s, d, [&](NodeId x, NodeId y) {
    return dist[y] >= 0 && dist[y] == dist[x] - 1 && wide_enough(x, y);
  });
  if (path.empty()) return std::nullopt;
  return WidestPath<W>{std::move(path), bottleneck};
}

// Link-weighted form: bottleneck is the minimum link weight on the path.
template <typename W, typename LinkWeight>
std::optional<WidestPath<W>> widest_path_over_links(const Adjacency& adj, NodeId s, NodeId d,
                                                    LinkWeight weight) {
  return widest_path<W>(adj, s, d, [&](NodeId u, NodeId v) { return Extended<W>(weight(u, v)); });
}

// Node-weighted form: bottleneck is the minimum weight over the intermediate
// nodes; a direct s-d link has no intermediates and is infinitely wide.
template <typename W, typename NodeWeight>
std::optional<WidestPath<W>> widest_path_over_nodes(const Adjacency& adj, NodeId s, NodeId d,
                                                    NodeWeight weight) {
  return widest_path<W>(adj, s, d, [&](NodeId, NodeId v) {
    return v == d ? Extended<W>::infinity() : Extended<W>(weight(v));
  });
}

// Minimum total cost over intermediate nodes (non-negative integer costs).
// Costs-to-go are computed by a reverse best-first search on (cost, hops)
// labels; the path is then the smallest walk that stays on an optimal label.
template <typename NodeCost>
std::optional<LeastCostPath> least_cost_path(const Adjacency& adj, NodeId s, NodeId d,
                                             NodeCost node_cost) {
  const std::size_t n = adj.size();
  if (s >= n || d >= n) return std::nullopt;
  if (s == d) return LeastCostPath{{s}, 0};

  using Label = detail::CostLabel;
  auto entry_cost = [&](NodeId v) -> std::int64_t {
    return v == d ? 0 : static_cast<std::int64_t>(node_cost(v));
  };

  std::vector<std::optional<Label>> to_go(n);
  std::vector<bool> settled(n, false);
  using Item = std::pair<Label, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  to_go[d] = Label{0, 0};
  queue.emplace(Label{0, 0}, d);
  while (!queue.empty()) {
    const auto [label, y] = queue.top();
    queue.pop();
    if (settled[y]) continue;
    settled[y] = true;
    if (y == s) break;
    const Label via{label.cost + entry_cost(y), label.hops + 1};
    for (const NodeId x : adj[y]) {
      if (settled[x]) continue;
      if (!to_go[x] || via < *to_go[x]) {
        to_go[x] = via;
        queue.emplace(via, x);
      }
    }
  }
  if (!to_go[s] || !settled[s]) return std::nullopt;

  auto path = detail::smallest_optimal_walk(adj, s, d, [&](NodeId x, NodeId y) {
    if (!to_go[y] || !settled[y]) return false;
    const Label through{to_go[y]->cost + entry_cost(y), to_go[y]->hops + 1};
    return through == *to_go[x];
  });
  if (path.empty()) return std::nullopt;
  return LeastCostPath{std::move(path), to_go[s]->cost};
}

}  // namespace manet
