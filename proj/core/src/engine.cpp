#include "manet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <set>
#include <utility>

#include "manet/trace.hpp"

namespace manet {

std::vector<Session> generate_sessions(const ScenarioConfig& config, Rng& rng) {
  validate(config);
  std::vector<Session> sessions;
  std::set<std::pair<NodeId, NodeId>> used;
  const auto n = static_cast<std::uint64_t>(config.node_count);
  while (sessions.size() < config.session_count) {
    const auto s = static_cast<NodeId>(rng.below(n));
    auto d = static_cast<NodeId>(rng.below(n - 1));
    if (d >= s) ++d;
    if (!used.emplace(s, d).second) continue;
    Session session;
    session.id = static_cast<SessionId>(sessions.size());
    session.source = s;
    session.destination = d;
    session.start = rng.uniform(config.session_start_min, config.session_start_max);
    session.rate = config.cbr_rate;
    session.packet_size = config.packet_size;
    sessions.push_back(session);
  }
  return sessions;
}

std::size_t contention_count(std::span<const NodeState> states, NodeId sender, NodeId receiver,
                             double radius, std::span<const NodeId> active_transmitters) {
  const double r2 = radius * radius;
  const Vec2 a = states[sender].pos;
  const Vec2 b = states[receiver].pos;
  std::size_t count = 0;
  for (const NodeId x : active_transmitters) {
    if (x == sender || x == receiver || !states[x].alive()) continue;
    if (distance_squared(states[x].pos, a) <= r2 || distance_squared(states[x].pos, b) <= r2) {
      ++count;
    }
  }
  return count;
}

DelayBreakdown packet_delay(std::span<const NodeId> route, const TopologySnapshot& snap,
                            std::span<const NodeState> states,
                            std::span<const NodeId> active_transmitters, double discovery_wait,
                            const PowerModel& power, const DelayModel& delay) {
  const auto& sz = power.sizes;
  const double exchange = airtime(sz.data + sz.rts + sz.cts + sz.ack, power);
  DelayBreakdown out;
  out.buffering = discovery_wait;
  for (std::size_t k = 0; k + 1 < route.size(); ++k) {
    const Link* link = snap.find(route[k], route[k + 1]);
    const double d = link != nullptr ? link->distance : distance(states[route[k]].pos,
                                                                  states[route[k + 1]].pos);
    const double radius = power.tpc_enabled ? d : power.range;
    const auto c = contention_count(states, route[k], route[k + 1], radius, active_transmitters);
    out.transmission += exchange * (1.0 + delay.kappa * static_cast<double>(c));
    out.propagation += d / delay.propagation_speed;
  }
  return out;
}

double discovery_latency(std::size_t hops, const PowerModel& power, const DelayModel& delay) {
  return 2.0 * static_cast<double>(hops) *
         (airtime(power.sizes.rreq_base, power) + delay.forwarding_overhead);
}

namespace {

struct Pending {
  std::uint64_t sequence;
  double created_at;
};

struct SessionState {
  std::optional<std::size_t> route;  // index into RunResult::routes
  double ready_at = 0.0;
  double next_attempt = 0.0;
  double backoff = 0.0;
  std::uint64_t next_sequence = 0;
  std::deque<Pending> buffer;
  std::vector<std::size_t> in_flight;  // packet indices still airborne at tick end
};

class Simulation {
 public:
  Simulation(const ScenarioConfig& config, const RunOptions& options)
      : config_(config),
        options_(options),
        power_(PowerModel::from(config)),
        delay_(DelayModel::from(config)) {}

  RunResult execute();

 private:
  void emit_beacons();
  void maintain_routes(double t);
  void discover_routes(double t);
  void send_traffic(double t);
  void tear_down(SessionState& ss, double t);
  void note_failures(double when);
  bool route_usable(const Route& route) const;

  const ScenarioConfig& config_;
  const RunOptions& options_;
  PowerModel power_;
  DelayModel delay_;

  RunResult result_;
  std::vector<NodeState> states_;
  TopologySnapshot snap_;
  std::vector<SessionState> session_state_;
};

RunResult Simulation::execute() {
  validate(config_);
  result_.config = config_;

  std::unique_ptr<MobilitySource> mobility;
  if (options_.trace_in != nullptr) {
    mobility = std::make_unique<TraceReplaySource>(config_, *options_.trace_in);
  } else {
    mobility = std::make_unique<RandomWaypointSource>(config_);
  }
  std::optional<TraceWriter> trace_writer;
  if (options_.trace_out != nullptr) trace_writer.emplace(*options_.trace_out);

  Rng traffic_rng = make_rng(config_.effective_traffic_seed(), RngStream::Traffic);
  result_.sessions = generate_sessions(config_, traffic_rng);
  session_state_.resize(result_.sessions.size());
  for (std::size_t i = 0; i < session_state_.size(); ++i) {
    session_state_[i].backoff = config_.tick;
  }

  states_ = mobility->initial_states();
  result_.ledger = EnergyLedger(states_.size());

  const auto total_ticks = static_cast<std::int64_t>(std::llround(config_.horizon() / config_.tick));
  const auto beacon_every =
      std::max<std::int64_t>(1, std::llround(config_.beacon_interval / config_.tick));
  result_.end_time = static_cast<double>(total_ticks) * config_.tick;

  for (std::int64_t k = 0; k < total_ticks; ++k) {
    const double t = static_cast<double>(k) * config_.tick;
    if (k > 0) mobility->step(states_, config_.tick, t);
    if (trace_writer) trace_writer->write_tick(t, states_);
    snap_ = snapshot(states_, config_.range, t);

    if (k % beacon_every == 0) {
      emit_beacons();
      note_failures(t);
    }
    maintain_routes(t);
    discover_routes(t);
    note_failures(t);
    send_traffic(t);

    if (options_.observer) {
      options_.observer(TickView{t, snap_, states_, result_.routes, result_.ledger});
    }
    if (config_.stop == StopCondition::FirstNodeFailure && result_.first_failure_time) {
      result_.end_time = *result_.first_failure_time;
      break;
    }
  }

  // Whatever is still buffered was never sent.
  for (std::size_t i = 0; i < session_state_.size(); ++i) {
    for (const auto& p : session_state_[i].buffer) {
      PacketRecord rec;
      rec.session = result_.sessions[i].id;
      rec.sequence = p.sequence;
      rec.created_at = p.created_at;
      result_.packets.push_back(rec);
    }
  }
  result_.final_states = std::move(states_);
  return std::move(result_);
}

void Simulation::note_failures(double when) {
  if (result_.first_failure_time || result_.ledger.exhausted().empty()) return;
  result_.first_failure_time = when;
  result_.first_failed_node = result_.ledger.exhausted().front();
}

void Simulation::emit_beacons() {
  for (NodeId n = 0; n < states_.size(); ++n) {
    if (!states_[n].alive()) continue;
    charge_broadcast(result_.ledger, states_, n, snap_.links(n), power_.sizes.beacon,
                     EnergyCategory::Beacon, power_);
  }
}

bool Simulation::route_usable(const Route& route) const {
  for (const NodeId n : route.nodes) {
    if (!states_[n].alive()) return false;
  }
  for (std::size_t k = 0; k + 1 < route.nodes.size(); ++k) {
    if (!snap_.has_edge(route.nodes[k], route.nodes[k + 1])) return false;
  }
  return true;
}

void Simulation::tear_down(SessionState& ss, double t) {
  auto& route = result_.routes[*ss.route];
  route.torn_down_at = t;
  for (const NodeId m : route.intermediates()) --states_[m].activity;
  for (const std::size_t idx : ss.in_flight) {
    auto& rec = result_.packets[idx];
    if (rec.delivered_at && *rec.delivered_at > t) rec.delivered_at.reset();
  }
  ss.route.reset();
}

void Simulation::maintain_routes(double t) {
  for (auto& ss : session_state_) {
    if (ss.route && !route_usable(result_.routes[*ss.route])) tear_down(ss, t);
    ss.in_flight.clear();
  }
}

void Simulation::discover_routes(double t) {
  for (std::size_t i = 0; i < session_state_.size(); ++i) {
    auto& ss = session_state_[i];
    const auto& session = result_.sessions[i];
    if (ss.route || session.start >= t + config_.tick || t < ss.next_attempt) continue;
    if (!states_[session.source].alive() || !states_[session.destination].alive()) continue;

    auto found = select_route(config_.protocol, snap_, states_, session.source,
                              session.destination);
    ++result_.discovery_floods;
    charge_route_discovery(result_.ledger, states_, snap_, session.source,
                           found ? &*found : nullptr, power_);
    if (!found) {
      ss.next_attempt = t + ss.backoff;
      ss.backoff = std::min(2.0 * ss.backoff, config_.retry_backoff_max);
      continue;
    }
    found->session = session.id;
    for (const NodeId m : found->intermediates()) ++states_[m].activity;
    ss.ready_at = t + discovery_latency(found->hops(), power_, delay_);
    ss.backoff = config_.tick;
    ss.next_attempt = t;
    ss.route = result_.routes.size();
    result_.routes.push_back(std::move(*found));
  }
}

void Simulation::send_traffic(double t) {
  const double tick_end = t + config_.tick;

  std::vector<NodeId> transmitters;
  for (const auto& ss : session_state_) {
    if (!ss.route) continue;
    const auto& nodes = result_.routes[*ss.route].nodes;
    transmitters.insert(transmitters.end(), nodes.begin(), nodes.end() - 1);
  }
  std::sort(transmitters.begin(), transmitters.end());
  transmitters.erase(std::unique(transmitters.begin(), transmitters.end()), transmitters.end());

  for (std::size_t i = 0; i < session_state_.size(); ++i) {
    auto& ss = session_state_[i];
    const auto& session = result_.sessions[i];

    // CBR arrivals in [t, t + tick).
    for (;;) {
      const double created =
          session.start + static_cast<double>(ss.next_sequence) / session.rate;
      if (created >= tick_end) break;
      ss.buffer.push_back({ss.next_sequence++, created});
      if (ss.buffer.size() > config_.buffer_capacity) {
        PacketRecord dropped;
        dropped.session = session.id;
        dropped.sequence = ss.buffer.front().sequence;
        dropped.created_at = ss.buffer.front().created_at;
        result_.packets.push_back(dropped);
        ss.buffer.pop_front();
      }
    }
    if (!ss.route || ss.buffer.empty()) continue;

    const std::size_t route_index = *ss.route;
    const auto nodes = result_.routes[route_index].nodes;  // copy; routes may grow
    const auto service =
        packet_delay(nodes, snap_, states_, transmitters, 0.0, power_, delay_);

    while (!ss.buffer.empty()) {
      const auto pending = ss.buffer.front();
      const double send_at = std::max(pending.created_at, ss.ready_at);
      if (send_at >= tick_end) break;
      ss.buffer.pop_front();

      PacketRecord rec;
      rec.session = session.id;
      rec.sequence = pending.sequence;
      rec.created_at = pending.created_at;
      rec.route_index = route_index;
      bool ok = true;
      for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const Link* link = snap_.find(nodes[k], nodes[k + 1]);
        const auto outcome = charge_unicast_hop(result_.ledger, states_, nodes[k], nodes[k + 1],
                                                link->distance, session.packet_size, power_);
        note_failures(send_at);
        if (outcome == HopOutcome::NodeFailed) {
          ok = false;
          break;
        }
        ++rec.hops;
      }
      if (ok) {
        rec.buffering = send_at - pending.created_at;
        rec.transmission = service.transmission;
        rec.propagation = service.propagation;
        rec.delivered_at = send_at + service.transmission + service.propagation;
        if (*rec.delivered_at > tick_end) ss.in_flight.push_back(result_.packets.size());
      }
      result_.packets.push_back(rec);
    }
  }
}

}  // namespace

RunResult run(const ScenarioConfig& config, const RunOptions& options) {
  Simulation sim(config, options);
  return sim.execute();
}

}  // namespace manet
