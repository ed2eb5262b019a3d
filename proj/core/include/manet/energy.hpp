#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "manet/config.hpp"
#include "manet/mobility.hpp"
#include "manet/topology.hpp"
#include "manet/types.hpp"

namespace manet {

struct Route;

struct PacketSizes {
  std::size_t data = 512;
  std::size_t rts = 20;
  std::size_t cts = 14;
  std::size_t ack = 14;
  std::size_t beacon = 32;
  std::size_t rreq_base = 64;
  std::size_t rreq_per_hop = 8;
  std::size_t rrep = 64;
};

struct PowerModel {
  bool tpc_enabled = false;
  double fixed_tx_power = 1.4;     // W
  double rx_power = 0.967;         // W
  double circuit_power = 1.1182;   // W
  double distance_coeff = 7.2e-11; // W / m^4
  double bitrate = 2e6;            // bit/s
  double range = 250.0;            // m
  PacketSizes sizes;

  static PowerModel from(const ScenarioConfig& config);
};

// Transmit power for a hop of length d. Throws std::domain_error when d is
// negative or beyond the transmission range.
double tx_power(double d, const PowerModel& model);

// Power used for broadcasts, which must reach every neighbor.
double broadcast_power(const PowerModel& model);

// Seconds on air. Throws std::invalid_argument for zero bytes.
double airtime(std::size_t bytes, const PowerModel& model);

enum class EnergyCategory : std::size_t { DataTx = 0, DataRx, Mac, Beacon, Discovery };
inline constexpr std::size_t kEnergyCategoryCount = 5;

// Per-node cumulative consumption by category. Every debit is clamped to the
// node's remaining charge, so initial - residual == total(node) exactly.
class EnergyLedger {
 public:
  EnergyLedger() = default;
  explicit EnergyLedger(std::size_t node_count) : entries_(node_count) {}

  std::size_t node_count() const { return entries_.size(); }
  Energy get(NodeId node, EnergyCategory category) const {
    return entries_.at(node)[static_cast<std::size_t>(category)];
  }
  Energy total(NodeId node) const;
  Energy category_total(EnergyCategory category) const;
  Energy grand_total() const;

  // Takes min(joules, battery) from the node. Returns false if the node was
  // already dead; otherwise true.
  bool debit(NodeState& node, EnergyCategory category, double joules);

  // Nodes whose battery reached zero, in the order it happened.
  const std::vector<NodeId>& exhausted() const { return exhausted_; }

 private:
  std::vector<std::array<Energy, kEnergyCategoryCount>> entries_;
  std::vector<NodeId> exhausted_;
};

enum class Payload { Data, Discovery };

enum class HopOutcome { Delivered, NodeFailed };

// One unicast exchange RTS/CTS/payload/ACK between sender and receiver at hop
// distance d. Sender transmits RTS and payload and receives CTS and ACK; the
// receiver does the converse. Transmissions use tx_power(d). For Data the
// payload is booked under DataTx/DataRx and control frames under Mac; for
// Discovery everything is booked under Discovery.
HopOutcome charge_unicast_hop(EnergyLedger& ledger, std::span<NodeState> nodes, NodeId sender,
                              NodeId receiver, double d, std::size_t bytes,
                              const PowerModel& model, Payload payload = Payload::Data);

// Sender transmits once at broadcast power; every live listed neighbor
// receives. No RTS/CTS.
void charge_broadcast(EnergyLedger& ledger, std::span<NodeState> nodes, NodeId sender,
                      std::span<const Link> neighbors, std::size_t bytes, EnergyCategory category,
                      const PowerModel& model);

// RREQ flood from `source`: every node reached rebroadcasts once with a
// request carrying its hop depth; then, if a route was found, the RREP is
// unicast along the reverse route.
void charge_route_discovery(EnergyLedger& ledger, std::span<NodeState> nodes,
                            const TopologySnapshot& snap, NodeId source, const Route* route,
                            const PowerModel& model);

// Hop depth from `source` for every node reachable in `snap` (-1 otherwise).
std::vector<int> flood_depths(const TopologySnapshot& snap, NodeId source);

}  // namespace manet
