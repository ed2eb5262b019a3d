#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "manet/config.hpp"
#include "manet/mobility.hpp"
#include "manet/rng.hpp"

namespace manet {

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mobility trace CSV: time_s,node_id,x_m,y_m,speed_mps,heading_rad with one
// row per node per tick. Numbers are written in shortest round-trip form so a
// replayed trace reproduces the generating run bit for bit.
class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& out);
  void write_tick(double time, std::span<const NodeState> states);

 private:
  std::ostream& out_;
};

class TraceReader {
 public:
  explicit TraceReader(std::istream& in);

  // Overwrites position, speed and heading of every node with the rows for
  // `time`. Throws TraceError on malformed input, time mismatch, or when the
  // trace ends before `time`.
  void read_tick(double time, std::span<NodeState> states);

 private:
  std::istream& in_;
  std::size_t line_no_ = 1;
};

// Where node motion comes from during a run.
class MobilitySource {
 public:
  virtual ~MobilitySource() = default;
  virtual std::vector<NodeState> initial_states() = 0;
  // Moves `states` to time `time`, which is one tick after the previous call.
  virtual void step(std::span<NodeState> states, double dt, double time) = 0;
};

class RandomWaypointSource final : public MobilitySource {
 public:
  explicit RandomWaypointSource(const ScenarioConfig& config);
  std::vector<NodeState> initial_states() override;
  void step(std::span<NodeState> states, double dt, double time) override;

 private:
  ScenarioConfig config_;
  Rng rng_;
};

class TraceReplaySource final : public MobilitySource {
 public:
  TraceReplaySource(const ScenarioConfig& config, std::istream& in);
  std::vector<NodeState> initial_states() override;
  void step(std::span<NodeState> states, double dt, double time) override;

 private:
  ScenarioConfig config_;
  TraceReader reader_;
};

// Writes the mobility-only trace for `config` from t = 0 through its horizon.
void generate_trace(const ScenarioConfig& config, std::ostream& out);
void generate_trace(const ScenarioConfig& config, double until, std::ostream& out);

}  // namespace manet
