#pragma once

#include <iosfwd>
#include <span>

#include "manet/config.hpp"
#include "manet/engine.hpp"
#include "manet/metrics.hpp"

namespace manet {

// Run outputs. All floating-point values are written in shortest round-trip
// form; absent values are empty cells.

void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const ScenarioConfig& config, const MetricsReport& report);

// node_id,data_tx_J,data_rx_J,mac_J,beacon_J,discovery_J,total_J,residual_J
void write_ledger_csv(std::ostream& out, const EnergyLedger& ledger,
                      std::span<const NodeState> final_states);

// session,seq,created_s,delivered_s,hops,buffering_s,service_s
void write_packets_csv(std::ostream& out, std::span<const PacketRecord> packets);

// session,discovered_s,torn_down_s,hops,metric_value,node_list
// node_list is space-separated; an open route has an empty torn_down_s.
void write_routes_csv(std::ostream& out, std::span<const Route> routes);

struct CellKey {
  Protocol protocol = Protocol::Forp;
  std::size_t nodes = 0;
  std::size_t sessions = 0;
  double v_max = 0.0;
  bool tpc = false;
};

// Tidy comparison table: protocol,nodes,sessions,v_max,tpc,metric,mean,stddev,n_reps
void write_comparison_header(std::ostream& out);
void write_comparison_rows(std::ostream& out, const CellKey& key, const AggregateReport& report);

}  // namespace manet
