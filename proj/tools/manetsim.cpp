// manetsim: run single scenarios or the full comparison matrix.

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "manet/config.hpp"
#include "manet/csv.hpp"
#include "manet/engine.hpp"
#include "manet/matrix.hpp"
#include "manet/metrics.hpp"
#include "manet/topology.hpp"
#include "manet/trace.hpp"

namespace {

namespace fs = std::filesystem;
using namespace manet;

enum ExitCode : int { kOk = 0, kFailure = 1, kConfig = 2, kIo = 3, kTrace = 4 };

struct ScenarioFlags {
  std::string preset = "custom";
  std::string config_file;
  std::optional<std::string> protocol;
  std::optional<std::size_t> nodes;
  std::optional<double> vmax;
  std::optional<std::size_t> sessions;
  std::optional<std::string> tpc;
  std::optional<double> battery;
  std::optional<std::string> duration;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> traffic_seed;
  std::optional<double> kappa;
  std::vector<std::string> settings;

  void attach(CLI::App& app) {
    app.add_option("--preset", preset, "set1 | set2 | custom")->capture_default_str();
    app.add_option("--config", config_file, "key = value scenario file");
    app.add_option("--protocol", protocol, "FORP | LBR | MMBCR");
    app.add_option("--nodes", nodes, "number of nodes");
    app.add_option("--vmax", vmax, "maximum node speed (m/s)");
    app.add_option("--sessions", sessions, "number of CBR sessions");
    app.add_option("--tpc", tpc, "transmission power control on|off");
    app.add_option("--battery", battery, "initial battery per node (J)");
    app.add_option("--duration", duration, "seconds, or until-failure");
    app.add_option("--seed", seed, "mobility seed (also traffic unless --traffic-seed)");
    app.add_option("--traffic-seed", traffic_seed, "traffic seed");
    app.add_option("--kappa", kappa, "contention coefficient");
    app.add_option("--set", settings, "extra key=value overrides");
  }

  ScenarioConfig resolve() const {
    ScenarioConfig c = preset_config(parse_preset(preset));
    if (!config_file.empty()) c = load_config(config_file, c);
    if (protocol) apply_setting(c, "protocol", *protocol);
    if (nodes) c.node_count = *nodes;
    if (vmax) c.v_max = *vmax;
    if (sessions) c.session_count = *sessions;
    if (tpc) apply_setting(c, "tpc", *tpc);
    if (battery) c.initial_battery = *battery;
    if (duration) apply_setting(c, "duration", *duration);
    if (seed) c.seed = *seed;
    if (traffic_seed) c.traffic_seed = *traffic_seed;
    if (kappa) c.kappa = *kappa;
    for (const auto& kv : settings) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError(fmt::format("--set expects key=value, got '{}'", kv));
      apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    validate(c);
    return c;
  }
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError(fmt::format("cannot create output directory '{}'", dir.string()));
  }
  std::ofstream probe(dir / ".manetsim_write_probe");
  if (!probe) throw IoError(fmt::format("output directory '{}' is not writable", dir.string()));
  probe.close();
  fs::remove(dir / ".manetsim_write_probe", ec);
}

std::string show(const std::optional<double>& v) { return v ? fmt::format("{:.6g}", *v) : "n/a"; }

int cmd_run(const ScenarioFlags& flags, const std::string& out_dir, const std::string& trace_in,
            const std::string& trace_out, bool emit_packets, bool emit_routes) {
  const ScenarioConfig config = flags.resolve();
  prepare_dir(out_dir);

  std::ifstream in;
  std::ofstream trace_stream;
  RunOptions options;
  if (!trace_in.empty()) {
    in.open(trace_in);
    if (!in) throw IoError(fmt::format("cannot read trace '{}'", trace_in));
    options.trace_in = &in;
  }
  if (!trace_out.empty()) {
    trace_stream = open_out(trace_out);
    options.trace_out = &trace_stream;
  }

  const RunResult result = run(config, options);
  const MetricsReport report = compute_report(result);

  {
    auto out = open_out(fs::path(out_dir) / "config.txt");
    write_config(out, config);
  }
  {
    auto out = open_out(fs::path(out_dir) / "metrics.csv");
    write_metrics_header(out);
    write_metrics_row(out, config, report);
  }
  {
    auto out = open_out(fs::path(out_dir) / "ledger.csv");
    write_ledger_csv(out, result.ledger, result.final_states);
  }
  if (emit_packets) {
    auto out = open_out(fs::path(out_dir) / "packets.csv");
    write_packets_csv(out, result.packets);
  }
  if (emit_routes) {
    auto out = open_out(fs::path(out_dir) / "routes.csv");
    write_routes_csv(out, result.routes);
  }

  fmt::print("protocol            {}\n", to_string(config.protocol));
  fmt::print("simulated           {:.1f} s\n", result.end_time);
  fmt::print("route transitions   {:.6g}\n", report.route_transitions);
  fmt::print("hop count           {}\n", show(report.hop_count));
  fmt::print("delay per packet    {} s\n", show(report.delay_per_packet));
  fmt::print("energy per packet   {} J\n", show(report.energy_per_packet));
  fmt::print("fairness stddev     {:.6g} J\n", report.fairness_stddev);
  fmt::print("first node failure  {}\n", show(report.first_failure_time));
  fmt::print("delivered/dropped   {}/{}\n", report.delivered, report.dropped);
  return kOk;
}

template <typename T>
void restrict(std::vector<T>& axis, const std::vector<T>& chosen) {
  if (!chosen.empty()) axis = chosen;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event MANET routing simulator (FORP, LBR, MMBCR)"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one scenario");
  ScenarioFlags run_flags;
  run_flags.attach(*run_cmd);
  std::string run_out = "out";
  std::string trace_in;
  std::string trace_out;
  bool emit_packets = false;
  bool emit_routes = false;
  run_cmd->add_option("--out-dir", run_out, "output directory")->capture_default_str();
  run_cmd->add_option("--trace-in", trace_in, "replay mobility from a trace CSV");
  run_cmd->add_option("--trace-out", trace_out, "record mobility to a trace CSV");
  run_cmd->add_flag("--emit-packets", emit_packets, "write packets.csv");
  run_cmd->add_flag("--emit-routes", emit_routes, "write routes.csv");

  // matrix
  auto* matrix_cmd = app.add_subcommand("matrix", "Run the protocol comparison matrix");
  ScenarioFlags matrix_flags;
  matrix_flags.preset = "set1";
  matrix_cmd->add_option("--preset", matrix_flags.preset, "set1 | set2 | custom")->capture_default_str();
  matrix_cmd->add_option("--config", matrix_flags.config_file, "base scenario file");
  std::size_t reps = 1;
  std::size_t session_sets = 1;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string matrix_out = "matrix_out";
  bool trace_files = false;
  std::vector<std::string> m_protocols;
  std::vector<std::size_t> m_nodes;
  std::vector<double> m_vmax;
  std::vector<std::size_t> m_sessions;
  std::vector<std::string> m_tpc;
  std::optional<std::uint64_t> m_seed;
  std::optional<double> m_kappa;
  matrix_cmd->add_option("--reps", reps, "mobility traces per cell")->capture_default_str();
  matrix_cmd->add_option("--session-sets", session_sets, "traffic draws per trace")->capture_default_str();
  matrix_cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  matrix_cmd->add_option("--out-dir", matrix_out, "output directory")->capture_default_str();
  matrix_cmd->add_flag("--trace-files", trace_files, "write traces and replay them for every protocol");
  matrix_cmd->add_option("--protocol", m_protocols, "restrict protocols");
  matrix_cmd->add_option("--nodes", m_nodes, "restrict densities");
  matrix_cmd->add_option("--vmax", m_vmax, "restrict maximum speeds");
  matrix_cmd->add_option("--sessions", m_sessions, "restrict session counts");
  matrix_cmd->add_option("--tpc", m_tpc, "restrict tpc settings (on/off)");
  matrix_cmd->add_option("--seed", m_seed, "base seed");
  matrix_cmd->add_option("--kappa", m_kappa, "contention coefficient");
  std::vector<std::string> m_settings;
  matrix_cmd->add_option("--set", m_settings, "base key=value overrides");

  // trace
  auto* trace_cmd = app.add_subcommand("trace", "Write a mobility-only trace");
  ScenarioFlags trace_flags;
  trace_flags.attach(*trace_cmd);
  std::string trace_file;
  std::optional<double> trace_until;
  trace_cmd->add_option("--out", trace_file, "trace CSV path")->required();
  trace_cmd->add_option("--until", trace_until, "last time written (default: scenario horizon)");

  // topology
  auto* topo_cmd = app.add_subcommand("topology", "Dump the topology snapshot at a time");
  ScenarioFlags topo_flags;
  topo_flags.attach(*topo_cmd);
  double topo_at = 0.0;
  std::string topo_out;
  topo_cmd->add_option("--at", topo_at, "simulation time (s)")->capture_default_str();
  topo_cmd->add_option("--out", topo_out, "edge-list CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      return cmd_run(run_flags, run_out, trace_in, trace_out, emit_packets, emit_routes);
    }
    if (*matrix_cmd) {
      ScenarioConfig base = preset_config(parse_preset(matrix_flags.preset));
      if (!matrix_flags.config_file.empty()) base = load_config(matrix_flags.config_file, base);
      if (m_seed) base.seed = *m_seed;
      if (m_kappa) base.kappa = *m_kappa;
      for (const auto& kv : m_settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError(fmt::format("--set expects key=value, got '{}'", kv));
        apply_setting(base, kv.substr(0, eq), kv.substr(eq + 1));
      }
      MatrixSpec spec = preset_matrix(parse_preset(matrix_flags.preset), base);
      std::vector<Protocol> protocols;
      for (const auto& p : m_protocols) protocols.push_back(parse_protocol(p));
      std::vector<bool> tpcs;
      for (const auto& t : m_tpc) {
        ScenarioConfig tmp;
        apply_setting(tmp, "tpc", t);
        tpcs.push_back(tmp.tpc);
      }
      restrict(spec.protocols, protocols);
      restrict(spec.node_counts, m_nodes);
      restrict(spec.v_max_values, m_vmax);
      restrict(spec.session_counts, m_sessions);
      restrict(spec.tpc_values, tpcs);
      spec.replications = reps;
      spec.session_sets = session_sets;

      MatrixOptions options;
      options.out_dir = matrix_out;
      options.jobs = jobs;
      options.trace_files = trace_files;
      options.progress = [](std::size_t done, std::size_t total) {
        fmt::print(std::cerr, "\r{}/{} runs", done, total);
        if (done == total) fmt::print(std::cerr, "\n");
      };
      fmt::print("{} cells x {} runs\n", spec.cell_count(), spec.runs_per_cell());
      run_matrix(spec, options);
      fmt::print("wrote {}/comparison.csv and {}/runs.csv\n", matrix_out, matrix_out);
      return kOk;
    }
    if (*trace_cmd) {
      const ScenarioConfig config = trace_flags.resolve();
      auto out = open_out(trace_file);
      if (trace_until) {
        generate_trace(config, *trace_until, out);
      } else {
        generate_trace(config, out);
      }
      return kOk;
    }
    if (*topo_cmd) {
      const ScenarioConfig config = topo_flags.resolve();
      RandomWaypointSource source(config);
      auto states = source.initial_states();
      const auto ticks = static_cast<long long>(std::llround(topo_at / config.tick));
      for (long long k = 1; k <= ticks; ++k) {
        source.step(states, config.tick, static_cast<double>(k) * config.tick);
      }
      const auto snap = snapshot(states, config.range, static_cast<double>(ticks) * config.tick);
      if (topo_out.empty()) {
        write_snapshot_csv(std::cout, snap);
      } else {
        auto out = open_out(topo_out);
        write_snapshot_csv(out, snap);
      }
      return kOk;
    }
  } catch (const ConfigError& e) {
    fmt::print(std::cerr, "config error: {}\n", e.what());
    return kConfig;
  } catch (const IoError& e) {
    fmt::print(std::cerr, "i/o error: {}\n", e.what());
    return kIo;
  } catch (const TraceError& e) {
    fmt::print(std::cerr, "trace error: {}\n", e.what());
    return kTrace;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kFailure;
  }
  return kFailure;
}
