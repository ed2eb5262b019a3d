#include "manet/metrics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace manet {

double route_transitions(std::span<const Route> routes, std::size_t session_count) {
  if (session_count == 0) return 0.0;
  return static_cast<double>(routes.size()) / static_cast<double>(session_count);
}

std::optional<double> time_averaged_hop_count(std::span<const Route> routes, double end_time) {
  struct Acc {
    double weighted = 0.0;
    double lifetime = 0.0;
  };
  std::map<SessionId, Acc> per_session;
  for (const auto& r : routes) {
    const double life = r.torn_down_at.value_or(end_time) - r.discovered_at;
    auto& acc = per_session[r.session];
    acc.weighted += static_cast<double>(r.hops()) * life;
    acc.lifetime += life;
  }
  double sum = 0.0;
  std::size_t counted = 0;
  for (const auto& [id, acc] : per_session) {
    if (acc.lifetime <= 0.0) continue;
    sum += acc.weighted / acc.lifetime;
    ++counted;
  }
  if (counted == 0) return std::nullopt;
  return sum / static_cast<double>(counted);
}

std::optional<double> delay_per_packet(std::span<const PacketRecord> packets) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : packets) {
    if (!p.delivered()) continue;
    sum += p.delay();
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> energy_per_packet(const EnergyLedger& ledger, std::size_t delivered) {
  if (delivered == 0) return std::nullopt;
  const Energy spent = ledger.category_total(EnergyCategory::DataTx) +
                       ledger.category_total(EnergyCategory::DataRx) +
                       ledger.category_total(EnergyCategory::Mac) +
                       ledger.category_total(EnergyCategory::Discovery);
  return spent.joules() / static_cast<double>(delivered);
}

double population_stddev(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double sq = 0.0;
  for (const double v : values) sq += (v - mean) * (v - mean);
  return std::sqrt(sq / static_cast<double>(values.size()));
}

double fairness_stddev(const EnergyLedger& ledger) {
  std::vector<double> consumed(ledger.node_count());
  for (NodeId n = 0; n < ledger.node_count(); ++n) consumed[n] = ledger.total(n).joules();
  return population_stddev(consumed);
}

MetricsReport compute_report(const RunResult& run) {
  MetricsReport r;
  r.route_transitions = route_transitions(run.routes, run.sessions.size());
  r.hop_count = time_averaged_hop_count(run.routes, run.end_time);
  r.delay_per_packet = delay_per_packet(run.packets);
  double buffering = 0.0;
  double service = 0.0;
  for (const auto& p : run.packets) {
    if (p.delivered()) {
      ++r.delivered;
      buffering += p.buffering;
      service += p.service();
    } else {
      ++r.dropped;
    }
  }
  if (r.delivered > 0) {
    r.mean_buffering = buffering / static_cast<double>(r.delivered);
    r.mean_service = service / static_cast<double>(r.delivered);
  }
  r.energy_per_packet = energy_per_packet(run.ledger, r.delivered);
  r.fairness_stddev = fairness_stddev(run.ledger);
  r.first_failure_time = run.first_failure_time;
  return r;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.n = values.size();
  if (values.empty()) return s;
  for (const double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (const double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

AggregateReport aggregate(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw std::invalid_argument("aggregate: no reports");
  std::vector<double> values;
  auto collect = [&](auto field) {
    values.clear();
    for (const auto& r : reports) {
      const auto v = field(r);
      if (v) values.push_back(*v);
    }
    return summarize(values);
  };
  AggregateReport out;
  out.route_transitions =
      collect([](const MetricsReport& r) { return std::optional<double>(r.route_transitions); });
  out.hop_count = collect([](const MetricsReport& r) { return r.hop_count; });
  out.delay_per_packet = collect([](const MetricsReport& r) { return r.delay_per_packet; });
  out.energy_per_packet = collect([](const MetricsReport& r) { return r.energy_per_packet; });
  out.fairness_stddev =
      collect([](const MetricsReport& r) { return std::optional<double>(r.fairness_stddev); });
  out.first_failure_time = collect([](const MetricsReport& r) { return r.first_failure_time; });
  return out;
}

const Summary& metric_summary(const AggregateReport& report, std::size_t metric_index) {
  switch (metric_index) {
    case 0: return report.route_transitions;
    case 1: return report.hop_count;
    case 2: return report.delay_per_packet;
    case 3: return report.energy_per_packet;
    case 4: return report.fairness_stddev;
    case 5: return report.first_failure_time;
  }
  throw std::out_of_range("metric_summary: bad metric index");
}

}  // namespace manet
