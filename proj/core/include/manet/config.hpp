#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "manet/types.hpp"

namespace manet {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StopCondition {
  FixedDuration,      // stop at `duration`
  FirstNodeFailure,   // stop when the first battery is exhausted (capped at `max_time`)
};

// Full parameterization of one simulation run.
struct ScenarioConfig {
  // Geometry and radio.
  double area_width = 1000.0;
  double area_height = 1000.0;
  std::size_t node_count = 50;
  double range = 250.0;

  // Random waypoint.
  double v_max = 20.0;
  double min_speed = 0.01;

  // Traffic.
  std::size_t session_count = 15;
  double cbr_rate = 4.0;
  std::size_t packet_size = 512;
  double session_start_min = 1.0;
  double session_start_max = 40.0;
  std::size_t buffer_capacity = 64;

  // Energy.
  double initial_battery = 1500.0;
  bool tpc = false;
  double bitrate = 2e6;
  double beacon_interval = 1.0;

  // Run control.
  StopCondition stop = StopCondition::FixedDuration;
  double duration = 1000.0;
  double max_time = 20000.0;
  double tick = 0.1;
  Protocol protocol = Protocol::Forp;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> traffic_seed;  // defaults to `seed`

  // Delay model calibration.
  double kappa = 0.5;
  double forwarding_overhead = 1e-3;
  double retry_backoff_max = 1.0;

  std::uint64_t effective_traffic_seed() const { return traffic_seed.value_or(seed); }

  // Time at which the run is forced to end regardless of stop condition.
  double horizon() const { return stop == StopCondition::FixedDuration ? duration : max_time; }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

enum class Preset { Set1, Set2, Custom };

// Set 1: 1500 J per node, 1000 s. Set 2: 100 J per node, until the first node
// failure. Custom returns the defaults unchanged.
ScenarioConfig preset_config(Preset preset);

Preset parse_preset(std::string_view name);
Protocol parse_protocol(std::string_view name);

// Throws ConfigError describing the first violated constraint.
void validate(const ScenarioConfig& config);

// Plain-text `key = value` format, one entry per line, `#` starts a comment.
// Keys not present keep the values already in `base`.
ScenarioConfig parse_config(std::istream& in, ScenarioConfig base = {});
ScenarioConfig load_config(const std::string& path, ScenarioConfig base = {});

// Applies a single key/value pair; used by the file parser and the CLI.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

void write_config(std::ostream& out, const ScenarioConfig& config);

}  // namespace manet
