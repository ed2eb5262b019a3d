#include "manet/csv.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include <ostream>
#include <string>

namespace manet {
namespace {

std::string cell(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); }

std::string cell(const Extended<double>& v) {
  return v.is_infinite() ? std::string("inf") : fmt::format("{}", v.value());
}

}  // namespace

void write_metrics_header(std::ostream& out) {
  fmt::print(out,
             "protocol,nodes,sessions,v_max,tpc,seed,traffic_seed,route_transitions,hop_count,"
             "delay_per_packet_s,energy_per_packet_J,fairness_stddev_J,first_failure_time_s,"
             "delivered,dropped\n");
}

void write_metrics_row(std::ostream& out, const ScenarioConfig& c, const MetricsReport& r) {
  fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(c.protocol),
             c.node_count, c.session_count, c.v_max, c.tpc ? "on" : "off", c.seed,
             c.effective_traffic_seed(), r.route_transitions, cell(r.hop_count),
             cell(r.delay_per_packet), cell(r.energy_per_packet), r.fairness_stddev,
             cell(r.first_failure_time), r.delivered, r.dropped);
}

void write_ledger_csv(std::ostream& out, const EnergyLedger& ledger,
                      std::span<const NodeState> final_states) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf),
                 "node_id,data_tx_J,data_rx_J,mac_J,beacon_J,discovery_J,total_J,residual_J\n");
  for (NodeId n = 0; n < ledger.node_count(); ++n) {
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{}\n", n,
                   ledger.get(n, EnergyCategory::DataTx).joules(),
                   ledger.get(n, EnergyCategory::DataRx).joules(),
                   ledger.get(n, EnergyCategory::Mac).joules(),
                   ledger.get(n, EnergyCategory::Beacon).joules(),
                   ledger.get(n, EnergyCategory::Discovery).joules(), ledger.total(n).joules(),
                   final_states[n].battery.joules());
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_packets_csv(std::ostream& out, std::span<const PacketRecord> packets) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf),
                 "session,seq,created_s,delivered_s,hops,buffering_s,service_s\n");
  for (const auto& p : packets) {
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{}\n", p.session, p.sequence,
                   p.created_at, cell(p.delivered_at), p.hops, p.buffering, p.service());
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_routes_csv(std::ostream& out, std::span<const Route> routes) {
  fmt::print(out, "session,discovered_s,torn_down_s,hops,metric_value,node_list\n");
  for (const auto& r : routes) {
    fmt::print(out, "{},{},{},{},{},{}\n", r.session, r.discovered_at, cell(r.torn_down_at),
               r.hops(), cell(r.metric_value), fmt::join(r.nodes, " "));
  }
}

void write_comparison_header(std::ostream& out) {
  fmt::print(out, "protocol,nodes,sessions,v_max,tpc,metric,mean,stddev,n_reps\n");
}

void write_comparison_rows(std::ostream& out, const CellKey& key, const AggregateReport& report) {
  for (std::size_t m = 0; m < std::size(kMetricNames); ++m) {
    const auto& s = metric_summary(report, m);
    if (s.n == 0) {
      fmt::print(out, "{},{},{},{},{},{},,,0\n", to_string(key.protocol), key.nodes, key.sessions,
                 key.v_max, key.tpc ? "on" : "off", kMetricNames[m]);
      continue;
    }
    fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", to_string(key.protocol), key.nodes,
               key.sessions, key.v_max, key.tpc ? "on" : "off", kMetricNames[m], s.mean, s.stddev,
               s.n);
  }
}

}  // namespace manet
