#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "manet/config.hpp"
#include "manet/energy.hpp"
#include "manet/mobility.hpp"
#include "manet/protocols.hpp"
#include "manet/rng.hpp"
#include "manet/topology.hpp"

namespace manet {

struct Session {
  SessionId id = 0;
  NodeId source = 0;
  NodeId destination = 0;
  double start = 0.0;
  double rate = 4.0;
  std::size_t packet_size = 512;
};

struct PacketRecord {
  SessionId session = 0;
  std::uint64_t sequence = 0;
  double created_at = 0.0;
  std::optional<double> delivered_at;  // empty when dropped or never sent
  std::size_t hops = 0;                // hops traversed
  double buffering = 0.0;              // waiting for a route
  double transmission = 0.0;           // queuing + transmission, all hops
  double propagation = 0.0;
  std::optional<std::size_t> route_index;

  bool delivered() const { return delivered_at.has_value(); }
  double service() const { return transmission + propagation; }
  double delay() const { return buffering + service(); }
};

struct DelayModel {
  double kappa = 0.5;                  // contention coefficient
  double forwarding_overhead = 1e-3;   // per-hop RREQ processing, s
  double propagation_speed = 299792458.0;

  static DelayModel from(const ScenarioConfig& config) {
    return {config.kappa, config.forwarding_overhead, 299792458.0};
  }
};

struct DelayBreakdown {
  double buffering = 0.0;
  double transmission = 0.0;
  double propagation = 0.0;

  double total() const { return buffering + transmission + propagation; }
};

// Distinct ordered (source, destination) pairs with start times uniform in
// the configured window.
std::vector<Session> generate_sessions(const ScenarioConfig& config, Rng& rng);

// Number of active transmitters, other than the hop's own endpoints, within
// `radius` of either endpoint.
std::size_t contention_count(std::span<const NodeState> states, NodeId sender, NodeId receiver,
                             double radius, std::span<const NodeId> active_transmitters);

// End-to-end delay of one data packet over `route`. Each hop costs the airtime
// of RTS + CTS + DATA + ACK inflated by (1 + kappa * C), where C counts the
// active transmitters within the contention radius (the transmission range,
// or the hop length under power control), plus propagation time.
DelayBreakdown packet_delay(std::span<const NodeId> route, const TopologySnapshot& snap,
                            std::span<const NodeState> states,
                            std::span<const NodeId> active_transmitters, double discovery_wait,
                            const PowerModel& power, const DelayModel& delay);

// Flood out and RREP back along a route of `hops` hops.
double discovery_latency(std::size_t hops, const PowerModel& power, const DelayModel& delay);

struct RunResult {
  ScenarioConfig config;
  std::vector<Session> sessions;
  std::vector<Route> routes;  // discovery order
  std::vector<PacketRecord> packets;
  EnergyLedger ledger;
  std::vector<NodeState> final_states;
  std::optional<double> first_failure_time;
  std::optional<NodeId> first_failed_node;
  double end_time = 0.0;
  std::size_t discovery_floods = 0;  // including failed discoveries
};

// State visible to an observer at the end of each tick.
struct TickView {
  double time;
  const TopologySnapshot& snapshot;
  std::span<const NodeState> states;
  std::span<const Route> routes;
  const EnergyLedger& ledger;
};

struct RunOptions {
  std::istream* trace_in = nullptr;   // replay mobility from this trace
  std::ostream* trace_out = nullptr;  // record mobility as it is simulated
  std::function<void(const TickView&)> observer;
};

// Runs one scenario to its stop condition. Throws ConfigError before any event
// if the configuration is invalid.
RunResult run(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace manet
