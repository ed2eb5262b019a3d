#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "manet/energy.hpp"
#include "manet/engine.hpp"
#include "manet/protocols.hpp"

namespace manet {

struct MetricsReport {
  double route_transitions = 0.0;          // discoveries per session
  std::optional<double> hop_count;         // time-averaged hops per path
  std::optional<double> delay_per_packet;  // s
  std::optional<double> energy_per_packet; // J
  double fairness_stddev = 0.0;            // J
  std::optional<double> first_failure_time;
  std::size_t delivered = 0;
  std::size_t dropped = 0;
  // Delay decomposition over delivered packets.
  std::optional<double> mean_buffering;
  std::optional<double> mean_service;
};

// Mean over sessions of the number of routes each session discovered.
double route_transitions(std::span<const Route> routes, std::size_t session_count);

// Per session sum(hops * lifetime) / sum(lifetime), then the mean over
// sessions with positive total lifetime. Open routes end at `end_time`.
std::optional<double> time_averaged_hop_count(std::span<const Route> routes, double end_time);

std::optional<double> delay_per_packet(std::span<const PacketRecord> packets);

// (data tx + data rx + MAC + discovery) over all nodes per delivered packet.
// Beacon energy is excluded. Empty when nothing was delivered.
std::optional<double> energy_per_packet(const EnergyLedger& ledger, std::size_t delivered);

// Population standard deviation of total energy consumed per node.
double fairness_stddev(const EnergyLedger& ledger);
double population_stddev(std::span<const double> values);

MetricsReport compute_report(const RunResult& run);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 with a single value
  std::size_t n = 0;
};

struct AggregateReport {
  Summary route_transitions;
  Summary hop_count;
  Summary delay_per_packet;
  Summary energy_per_packet;
  Summary fairness_stddev;
  Summary first_failure_time;
};

// Field-wise mean and sample standard deviation across replications. Fields
// that are absent in a report are skipped for that field. Throws
// std::invalid_argument for an empty list.
AggregateReport aggregate(std::span<const MetricsReport> reports);

Summary summarize(std::span<const double> values);

// Metric names used in tidy CSV output, in output order.
inline constexpr std::string_view kMetricNames[] = {
    "route_transitions", "hop_count", "delay_per_packet_s",
    "energy_per_packet_J", "fairness_stddev_J", "first_failure_time_s"};

const Summary& metric_summary(const AggregateReport& report, std::size_t metric_index);

}  // namespace manet
