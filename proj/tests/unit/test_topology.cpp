#include <doctest.h>

#include <random>
#include <sstream>

#include "manet/topology.hpp"

using namespace manet;

namespace {

NodeState at(NodeId id, double x, double y) {
  NodeState n;
  n.id = id;
  n.pos = {x, y};
  n.battery = Energy::from_joules(10.0);
  return n;
}

double mean_degree_over_seeds(std::size_t nodes, int seeds) {
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) {
    ScenarioConfig c;
    c.node_count = nodes;
    Rng rng(static_cast<std::uint64_t>(1000 + s));
    const auto states = init_mobility(c, rng);
    sum += snapshot(states, 250.0, 0.0).mean_degree();
  }
  return sum / seeds;
}

}  // namespace

TEST_CASE("range boundary is inclusive") {
  std::vector<NodeState> on{at(0, 0, 0), at(1, 0, 250)};
  const auto snap = snapshot(on, 250.0, 0.0);
  REQUIRE(snap.has_edge(0, 1));
  CHECK(snap.find(0, 1)->distance == 250.0);

  std::vector<NodeState> off{at(0, 0, 0), at(1, 0, 250.01)};
  CHECK_FALSE(snapshot(off, 250.0, 0.0).has_edge(0, 1));
}

TEST_CASE("dead nodes are excluded from the snapshot") {
  std::vector<NodeState> s{at(0, 0, 0), at(1, 10, 0), at(2, 20, 0)};
  s[1].battery = Energy{};
  const auto snap = snapshot(s, 250.0, 0.0);
  CHECK_FALSE(snap.alive(1));
  CHECK(snap.degree(1) == 0);
  CHECK_FALSE(snap.has_edge(0, 1));
  CHECK(snap.has_edge(0, 2));
}

TEST_CASE("snapshots are symmetric, loop-free and within range") {
  ScenarioConfig c;
  c.node_count = 80;
  Rng rng(17);
  auto states = init_mobility(c, rng);
  for (int tick = 0; tick < 50; ++tick) {
    advance(states, 0.1, RandomWaypointParams::from(c), rng);
    const auto snap = snapshot(states, c.range, tick * 0.1);
    for (NodeId i = 0; i < snap.node_count(); ++i) {
      for (const auto& link : snap.links(i)) {
        CHECK(link.neighbor != i);
        CHECK(link.distance <= c.range);
        const Link* back = snap.find(link.neighbor, i);
        REQUIRE(back != nullptr);
        CHECK(back->distance == link.distance);
        CHECK(back->let == link.let);
      }
    }
  }
}

TEST_CASE("50 uniform nodes have about 10 neighbors each") {
  const double mean = mean_degree_over_seeds(50, 20);
  CHECK(mean >= 7.0);
  CHECK(mean <= 13.0);
}

TEST_CASE("doubling the node count does not decrease mean degree") {
  CHECK(mean_degree_over_seeds(100, 20) >= mean_degree_over_seeds(50, 20));
}

TEST_CASE("traffic interference sums neighbor activities") {
  std::vector<NodeState> s{at(0, 0, 0), at(1, 100, 0), at(2, 0, 100), at(3, 100, 100),
                           at(4, 900, 900)};
  s[1].activity = 2;
  s[2].activity = 0;
  s[3].activity = 3;
  s[4].activity = 7;
  const auto snap = snapshot(s, 250.0, 0.0);
  CHECK(traffic_interference(snap, s, 0) == 5);
  CHECK(traffic_interference(snap, s, 4) == 0);
  CHECK_THROWS_AS(traffic_interference(snap, s, 99), std::out_of_range);
}

TEST_CASE("traffic interference matches a recount from the route table") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coord(0, 400);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<NodeState> s;
    for (NodeId i = 0; i < 8; ++i) s.push_back(at(i, coord(rng), coord(rng)));
    // Random "live routes": intermediate lists only matter for activity.
    std::vector<std::vector<NodeId>> routes;
    std::uniform_int_distribution<int> len(2, 6);
    std::uniform_int_distribution<NodeId> pick(0, 7);
    for (int r = 0; r < 4; ++r) {
      std::vector<NodeId> nodes;
      for (int k = len(rng); k > 0; --k) {
        const NodeId n = pick(rng);
        if (std::find(nodes.begin(), nodes.end(), n) == nodes.end()) nodes.push_back(n);
      }
      if (nodes.size() >= 2) routes.push_back(nodes);
    }
    for (const auto& r : routes)
      for (std::size_t k = 1; k + 1 < r.size(); ++k) ++s[r[k]].activity;

    const auto snap = snapshot(s, 250.0, 0.0);
    for (NodeId node = 0; node < 8; ++node) {
      int expected = 0;
      for (NodeId other = 0; other < 8; ++other) {
        if (other == node) continue;
        if (distance(s[node].pos, s[other].pos) > 250.0) continue;
        for (const auto& r : routes)
          for (std::size_t k = 1; k + 1 < r.size(); ++k)
            if (r[k] == other) ++expected;
      }
      CHECK(traffic_interference(snap, s, node) == expected);
    }
  }
}

TEST_CASE("snapshot edge-list dump") {
  std::vector<NodeState> s{at(0, 0, 0), at(1, 3, 4)};
  std::ostringstream out;
  write_snapshot_csv(out, snapshot(s, 250.0, 1.5));
  CHECK(out.str() == "time_s,i,j,dist_m,let_s\n1.5,0,1,5,inf\n");
}
