#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "manet/extended.hpp"
#include "manet/mobility.hpp"
#include "manet/types.hpp"

namespace manet {

struct Link {
  NodeId neighbor = 0;
  double distance = 0.0;
  Extended<double> let = Extended<double>::infinity();
};

// Immutable unit-disk graph of the live nodes at one instant. Adjacency lists
// are sorted by neighbor id; dead nodes have no links.
class TopologySnapshot {
 public:
  TopologySnapshot() = default;
  TopologySnapshot(double time, std::vector<std::vector<Link>> adjacency, std::vector<bool> alive);

  double time() const { return time_; }
  std::size_t node_count() const { return adjacency_.size(); }
  bool alive(NodeId n) const { return alive_.at(n); }

  std::span<const Link> links(NodeId n) const { return adjacency_.at(n); }
  std::size_t degree(NodeId n) const { return adjacency_.at(n).size(); }
  const Link* find(NodeId a, NodeId b) const;
  bool has_edge(NodeId a, NodeId b) const { return find(a, b) != nullptr; }

  std::size_t edge_count() const;
  // Mean degree over live nodes.
  double mean_degree() const;

 private:
  double time_ = 0.0;
  std::vector<std::vector<Link>> adjacency_;
  std::vector<bool> alive_;
};

// Edge (i, j) iff both nodes are alive and |pos_i - pos_j| <= range.
TopologySnapshot snapshot(std::span<const NodeState> states, double range, double time);

// Sum of the activities of the node's neighbors. Throws std::out_of_range for
// an unknown node id.
int traffic_interference(const TopologySnapshot& snap, std::span<const NodeState> states,
                         NodeId node);

// Debug dump: time_s,i,j,dist_m,let_s with one row per undirected edge (i < j).
void write_snapshot_csv(std::ostream& out, const TopologySnapshot& snap);

}  // namespace manet
