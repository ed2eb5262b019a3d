#include "manet/config.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace manet {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, value));
  }
  return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(fmt::format("{}: expected a non-negative integer, got '{}'", key, value));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string v = lower(value);
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(fmt::format("{}: expected on/off, got '{}'", key, value));
}

}  // namespace

ScenarioConfig preset_config(Preset preset) {
  ScenarioConfig c;
  switch (preset) {
    case Preset::Set1:
      c.initial_battery = 1500.0;
      c.stop = StopCondition::FixedDuration;
      c.duration = 1000.0;
      break;
    case Preset::Set2:
      c.initial_battery = 100.0;
      c.stop = StopCondition::FirstNodeFailure;
      break;
    case Preset::Custom:
      break;
  }
  return c;
}

Preset parse_preset(std::string_view name) {
  const std::string n = lower(name);
  if (n == "set1") return Preset::Set1;
  if (n == "set2") return Preset::Set2;
  if (n == "custom") return Preset::Custom;
  throw ConfigError(fmt::format("unknown preset '{}' (expected set1, set2 or custom)", name));
}

Protocol parse_protocol(std::string_view name) {
  const std::string n = lower(name);
  if (n == "forp") return Protocol::Forp;
  if (n == "lbr") return Protocol::Lbr;
  if (n == "mmbcr") return Protocol::Mmbcr;
  throw ConfigError(fmt::format("unknown protocol '{}' (expected FORP, LBR or MMBCR)", name));
}

void validate(const ScenarioConfig& c) {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw ConfigError(std::string(what));
  };
  require(c.area_width > 0 && c.area_height > 0, "area must have positive width and height");
  require(c.node_count >= 2, "node_count must be at least 2");
  require(c.range > 0, "range must be positive");
  require(c.v_max > 0, "v_max must be positive");
  require(c.min_speed > 0 && c.min_speed < c.v_max, "min_speed must lie in (0, v_max)");
  require(c.cbr_rate > 0, "cbr_rate must be positive");
  require(c.packet_size > 0, "packet_size must be positive");
  require(c.session_start_min >= 0 && c.session_start_min <= c.session_start_max,
          "session start window is empty");
  require(c.buffer_capacity > 0, "buffer_capacity must be positive");
  require(c.initial_battery > 0, "initial_battery must be positive");
  require(c.bitrate > 0, "bitrate must be positive");
  require(c.beacon_interval > 0, "beacon_interval must be positive");
  require(c.tick > 0, "tick must be positive");
  require(c.stop != StopCondition::FixedDuration || c.duration > 0, "duration must be positive");
  require(c.stop != StopCondition::FirstNodeFailure || c.max_time > 0,
          "max_time must be positive");
  require(c.kappa >= 0, "kappa must be non-negative");
  require(c.forwarding_overhead >= 0, "forwarding_overhead must be non-negative");
  require(c.retry_backoff_max >= c.tick, "retry_backoff_max must be at least one tick");
  // Sessions are distinct ordered pairs.
  require(c.session_count <= c.node_count * (c.node_count - 1),
          "session_count exceeds the number of distinct source-destination pairs");
}

void apply_setting(ScenarioConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const std::string k = lower(key);
  if (k == "area_width") c.area_width = parse_double(k, value);
  else if (k == "area_height") c.area_height = parse_double(k, value);
  else if (k == "nodes" || k == "node_count") c.node_count = parse_uint(k, value);
  else if (k == "range") c.range = parse_double(k, value);
  else if (k == "vmax" || k == "v_max") c.v_max = parse_double(k, value);
  else if (k == "min_speed") c.min_speed = parse_double(k, value);
  else if (k == "sessions" || k == "session_count") c.session_count = parse_uint(k, value);
  else if (k == "cbr_rate") c.cbr_rate = parse_double(k, value);
  else if (k == "packet_size") c.packet_size = parse_uint(k, value);
  else if (k == "session_start_min") c.session_start_min = parse_double(k, value);
  else if (k == "session_start_max") c.session_start_max = parse_double(k, value);
  else if (k == "buffer_capacity") c.buffer_capacity = parse_uint(k, value);
  else if (k == "battery" || k == "initial_battery") c.initial_battery = parse_double(k, value);
  else if (k == "tpc") c.tpc = parse_bool(k, value);
  else if (k == "bitrate") c.bitrate = parse_double(k, value);
  else if (k == "beacon_interval") c.beacon_interval = parse_double(k, value);
  else if (k == "duration") {
    if (lower(value) == "until-failure" || lower(value) == "until-first-failure") {
      c.stop = StopCondition::FirstNodeFailure;
    } else {
      c.stop = StopCondition::FixedDuration;
      c.duration = parse_double(k, value);
    }
  } else if (k == "max_time") c.max_time = parse_double(k, value);
  else if (k == "tick") c.tick = parse_double(k, value);
  else if (k == "protocol") {
    try {
      c.protocol = parse_protocol(value);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("protocol: {}", e.what()));
    }
  } else if (k == "seed") c.seed = parse_uint(k, value);
  else if (k == "traffic_seed") {
    if (lower(value) == "none" || value.empty()) c.traffic_seed.reset();
    else c.traffic_seed = parse_uint(k, value);
  } else if (k == "kappa") c.kappa = parse_double(k, value);
  else if (k == "forwarding_overhead") c.forwarding_overhead = parse_double(k, value);
  else if (k == "retry_backoff_max") c.retry_backoff_max = parse_double(k, value);
  else throw ConfigError(fmt::format("unknown configuration key '{}'", key));
}

ScenarioConfig parse_config(std::istream& in, ScenarioConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    }
    try {
      apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return base;
}

ScenarioConfig load_config(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  return parse_config(in, std::move(base));
}

void write_config(std::ostream& out, const ScenarioConfig& c) {
  fmt::print(out, "# manetsim scenario\n");
  fmt::print(out, "area_width = {}\narea_height = {}\n", c.area_width, c.area_height);
  fmt::print(out, "nodes = {}\nrange = {}\n", c.node_count, c.range);
  fmt::print(out, "vmax = {}\nmin_speed = {}\n", c.v_max, c.min_speed);
  fmt::print(out, "sessions = {}\ncbr_rate = {}\npacket_size = {}\n", c.session_count, c.cbr_rate,
             c.packet_size);
  fmt::print(out, "session_start_min = {}\nsession_start_max = {}\n", c.session_start_min,
             c.session_start_max);
  fmt::print(out, "buffer_capacity = {}\n", c.buffer_capacity);
  fmt::print(out, "battery = {}\ntpc = {}\nbitrate = {}\nbeacon_interval = {}\n",
             c.initial_battery, c.tpc ? "on" : "off", c.bitrate, c.beacon_interval);
  if (c.stop == StopCondition::FixedDuration) {
    fmt::print(out, "duration = {}\n", c.duration);
  } else {
    fmt::print(out, "duration = until-failure\n");
  }
  fmt::print(out, "max_time = {}\ntick = {}\n", c.max_time, c.tick);
  fmt::print(out, "protocol = {}\nseed = {}\n", to_string(c.protocol), c.seed);
  if (c.traffic_seed) fmt::print(out, "traffic_seed = {}\n", *c.traffic_seed);
  fmt::print(out, "kappa = {}\nforwarding_overhead = {}\nretry_backoff_max = {}\n", c.kappa,
             c.forwarding_overhead, c.retry_backoff_max);
}

}  // namespace manet
