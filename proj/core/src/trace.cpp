#include "manet/trace.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace manet {
namespace {

constexpr std::string_view kHeader = "time_s,node_id,x_m,y_m,speed_mps,heading_rad";

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

template <typename T>
T parse_field(std::string_view field, std::size_t line_no) {
  T out{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw TraceError(fmt::format("trace line {}: bad field '{}'", line_no, field));
  }
  return out;
}

}  // namespace

TraceWriter::TraceWriter(std::ostream& out) : out_(out) { out_ << kHeader << '\n'; }

void TraceWriter::write_tick(double time, std::span<const NodeState> states) {
  fmt::memory_buffer buf;
  for (const auto& n : states) {
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{}\n", time, n.id, n.pos.x, n.pos.y,
                   n.speed, n.heading);
  }
  out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

TraceReader::TraceReader(std::istream& in) : in_(in) {
  std::string header;
  if (!std::getline(in_, header) || header != kHeader) {
    throw TraceError("trace: missing or unexpected header");
  }
}

void TraceReader::read_tick(double time, std::span<NodeState> states) {
  std::string line;
  for (std::size_t k = 0; k < states.size(); ++k) {
    ++line_no_;
    if (!std::getline(in_, line)) {
      throw TraceError(fmt::format("trace ended before t = {}", time));
    }
    std::string_view rest(line);
    std::string_view fields[6];
    for (int f = 0; f < 6; ++f) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (f == 5)) {
        throw TraceError(fmt::format("trace line {}: expected 6 fields", line_no_));
      }
      fields[f] = rest.substr(0, comma);
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    const auto t = parse_field<double>(fields[0], line_no_);
    const auto id = parse_field<NodeId>(fields[1], line_no_);
    if (!same_time(t, time) || id != states[k].id) {
      throw TraceError(fmt::format("trace line {}: expected node {} at t = {}, found node {} at {}",
                                   line_no_, states[k].id, time, id, t));
    }
    auto& n = states[k];
    n.pos = {parse_field<double>(fields[2], line_no_), parse_field<double>(fields[3], line_no_)};
    n.speed = parse_field<double>(fields[4], line_no_);
    n.heading = parse_field<double>(fields[5], line_no_);
    n.waypoint = n.pos;
  }
}

RandomWaypointSource::RandomWaypointSource(const ScenarioConfig& config)
    : config_(config), rng_(make_rng(config.seed, RngStream::Mobility)) {}

std::vector<NodeState> RandomWaypointSource::initial_states() {
  return init_mobility(config_, rng_);
}

void RandomWaypointSource::step(std::span<NodeState> states, double dt, double /*time*/) {
  advance(states, dt, RandomWaypointParams::from(config_), rng_);
}

TraceReplaySource::TraceReplaySource(const ScenarioConfig& config, std::istream& in)
    : config_(config), reader_(in) {}

std::vector<NodeState> TraceReplaySource::initial_states() {
  validate(config_);
  std::vector<NodeState> nodes(config_.node_count);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nodes[i].id = static_cast<NodeId>(i);
    nodes[i].battery = Energy::from_joules(config_.initial_battery);
  }
  reader_.read_tick(0.0, nodes);
  return nodes;
}

void TraceReplaySource::step(std::span<NodeState> states, double /*dt*/, double time) {
  reader_.read_tick(time, states);
}

void generate_trace(const ScenarioConfig& config, std::ostream& out) {
  generate_trace(config, config.horizon(), out);
}

void generate_trace(const ScenarioConfig& config, double until, std::ostream& out) {
  RandomWaypointSource source(config);
  auto states = source.initial_states();
  TraceWriter writer(out);
  writer.write_tick(0.0, states);
  const auto ticks = static_cast<std::size_t>(std::llround(until / config.tick));
  for (std::size_t k = 1; k <= ticks; ++k) {
    const double t = static_cast<double>(k) * config.tick;
    source.step(states, config.tick, t);
    writer.write_tick(t, states);
  }
}

}  // namespace manet
