#include "manet/energy.hpp"

#include <stdexcept>

#include "manet/protocols.hpp"

namespace manet {

PowerModel PowerModel::from(const ScenarioConfig& config) {
  PowerModel m;
  m.tpc_enabled = config.tpc;
  m.bitrate = config.bitrate;
  m.range = config.range;
  m.sizes.data = config.packet_size;
  return m;
}

double tx_power(double d, const PowerModel& model) {
  if (!(d >= 0.0) || d > model.range) {
    throw std::domain_error("tx_power: hop distance outside [0, range]");
  }
  if (!model.tpc_enabled) return model.fixed_tx_power;
  const double d2 = d * d;
  return model.circuit_power + model.distance_coeff * d2 * d2;
}

double broadcast_power(const PowerModel& model) {
  return model.tpc_enabled ? tx_power(model.range, model) : model.fixed_tx_power;
}

double airtime(std::size_t bytes, const PowerModel& model) {
  if (bytes == 0) throw std::invalid_argument("airtime: zero-length packet");
  return 8.0 * static_cast<double>(bytes) / model.bitrate;
}

Energy EnergyLedger::total(NodeId node) const {
  Energy sum;
  for (const auto e : entries_.at(node)) sum += e;
  return sum;
}

Energy EnergyLedger::category_total(EnergyCategory category) const {
  Energy sum;
  for (const auto& row : entries_) sum += row[static_cast<std::size_t>(category)];
  return sum;
}

Energy EnergyLedger::grand_total() const {
  Energy sum;
  for (NodeId n = 0; n < entries_.size(); ++n) sum += total(n);
  return sum;
}

bool EnergyLedger::debit(NodeState& node, EnergyCategory category, double joules) {
  if (!node.alive()) return false;
  Energy amount = Energy::from_joules(joules);
  if (amount > node.battery) amount = node.battery;
  node.battery -= amount;
  entries_.at(node.id)[static_cast<std::size_t>(category)] += amount;
  if (!node.alive()) exhausted_.push_back(node.id);
  return true;
}

HopOutcome charge_unicast_hop(EnergyLedger& ledger, std::span<NodeState> nodes, NodeId sender,
                              NodeId receiver, double d, std::size_t bytes,
                              const PowerModel& model, Payload payload) {
  auto& tx = nodes[sender];
  auto& rx = nodes[receiver];
  if (!tx.alive() || !rx.alive()) return HopOutcome::NodeFailed;

  const double p_tx = tx_power(d, model);
  const double p_rx = model.rx_power;
  const auto& sz = model.sizes;
  const bool data = payload == Payload::Data;
  const auto payload_tx = data ? EnergyCategory::DataTx : EnergyCategory::Discovery;
  const auto payload_rx = data ? EnergyCategory::DataRx : EnergyCategory::Discovery;
  const auto control = data ? EnergyCategory::Mac : EnergyCategory::Discovery;

  // RTS, CTS, payload, ACK in exchange order.
  ledger.debit(tx, control, p_tx * airtime(sz.rts, model));
  ledger.debit(rx, control, p_rx * airtime(sz.rts, model));
  ledger.debit(rx, control, p_tx * airtime(sz.cts, model));
  ledger.debit(tx, control, p_rx * airtime(sz.cts, model));
  ledger.debit(tx, payload_tx, p_tx * airtime(bytes, model));
  ledger.debit(rx, payload_rx, p_rx * airtime(bytes, model));
  ledger.debit(rx, control, p_tx * airtime(sz.ack, model));
  ledger.debit(tx, control, p_rx * airtime(sz.ack, model));

  return tx.alive() && rx.alive() ? HopOutcome::Delivered : HopOutcome::NodeFailed;
}

void charge_broadcast(EnergyLedger& ledger, std::span<NodeState> nodes, NodeId sender,
                      std::span<const Link> neighbors, std::size_t bytes, EnergyCategory category,
                      const PowerModel& model) {
  if (!nodes[sender].alive()) return;
  const double t = airtime(bytes, model);
  ledger.debit(nodes[sender], category, broadcast_power(model) * t);
  const double rx = model.rx_power * t;
  for (const auto& link : neighbors) ledger.debit(nodes[link.neighbor], category, rx);
}

std::vector<int> flood_depths(const TopologySnapshot& snap, NodeId source) {
  std::vector<int> depth(snap.node_count(), -1);
  if (!snap.alive(source)) return depth;
  std::vector<NodeId> order{source};
  depth[source] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId u = order[head];
    for (const auto& link : snap.links(u)) {
      if (depth[link.neighbor] >= 0) continue;
      depth[link.neighbor] = depth[u] + 1;
      order.push_back(link.neighbor);
    }
  }
  return depth;
}

void charge_route_discovery(EnergyLedger& ledger, std::span<NodeState> nodes,
                            const TopologySnapshot& snap, NodeId source, const Route* route,
                            const PowerModel& model) {
  const auto depth = flood_depths(snap, source);
  for (NodeId n = 0; n < snap.node_count(); ++n) {
    if (depth[n] < 0) continue;
    const std::size_t bytes =
        model.sizes.rreq_base + model.sizes.rreq_per_hop * static_cast<std::size_t>(depth[n]);
    charge_broadcast(ledger, nodes, n, snap.links(n), bytes, EnergyCategory::Discovery, model);
  }
  if (route == nullptr) return;
  const auto& path = route->nodes;
  for (std::size_t k = path.size() - 1; k > 0; --k) {
    const Link* link = snap.find(path[k], path[k - 1]);
    if (link == nullptr) throw std::invalid_argument("charge_route_discovery: route not in snapshot");
    charge_unicast_hop(ledger, nodes, path[k], path[k - 1], link->distance, model.sizes.rrep, model,
                       Payload::Discovery);
  }
}

}  // namespace manet
