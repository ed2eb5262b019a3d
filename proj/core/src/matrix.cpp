#include "manet/matrix.hpp"

#include <fmt/format.h>

#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include "manet/engine.hpp"
#include "manet/trace.hpp"

namespace manet {

MatrixSpec preset_matrix(Preset preset, const ScenarioConfig& base) {
  MatrixSpec spec;
  spec.base = base;
  if (preset == Preset::Custom) {
    spec.protocols = {base.protocol};
    spec.node_counts = {base.node_count};
    spec.v_max_values = {base.v_max};
    spec.session_counts = {base.session_count};
    spec.tpc_values = {base.tpc};
    return spec;
  }
  const ScenarioConfig p = preset_config(preset);
  spec.base.initial_battery = p.initial_battery;
  spec.base.stop = p.stop;
  spec.base.duration = p.duration;
  return spec;
}

std::vector<CellKey> matrix_cells(const MatrixSpec& spec) {
  std::vector<CellKey> cells;
  cells.reserve(spec.cell_count());
  for (const auto protocol : spec.protocols)
    for (const auto nodes : spec.node_counts)
      for (const auto v_max : spec.v_max_values)
        for (const auto sessions : spec.session_counts)
          for (const bool tpc : spec.tpc_values)
            cells.push_back({protocol, nodes, sessions, v_max, tpc});
  return cells;
}

ScenarioConfig replication_config(const MatrixSpec& spec, const CellKey& key, std::size_t trace,
                                  std::size_t session_set) {
  ScenarioConfig c = spec.base;
  c.protocol = key.protocol;
  c.node_count = key.nodes;
  c.session_count = key.sessions;
  c.v_max = key.v_max;
  c.tpc = key.tpc;
  c.seed = spec.base.seed + trace;
  if (spec.session_sets > 1) {
    c.traffic_seed = spec.base.seed + 1'000'003ULL * (session_set + 1);
  } else {
    c.traffic_seed.reset();
  }
  return c;
}

std::filesystem::path trace_path(const std::filesystem::path& out_dir, std::size_t nodes,
                                 double v_max, std::size_t trace) {
  return out_dir / "traces" / fmt::format("trace_n{}_v{}_r{}.csv", nodes, v_max, trace);
}

namespace {

void ensure_writable(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
  const auto probe = dir / ".manetsim_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError(fmt::format("output directory '{}' is not writable", dir.string()));
  }
  std::filesystem::remove(probe, ec);
}

template <typename Task>
void run_pool(std::size_t count, std::size_t jobs, Task task) {
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<CellResult> run_matrix(const MatrixSpec& spec, const MatrixOptions& options) {
  if (spec.replications == 0 || spec.session_sets == 0) {
    throw ConfigError("matrix needs at least one replication and one session set");
  }
  const bool write = !options.out_dir.empty();
  if (write) ensure_writable(options.out_dir);
  if (options.trace_files && !write) throw ConfigError("trace files need an output directory");

  const auto cells = matrix_cells(spec);
  std::vector<CellResult> results(cells.size());
  struct RunTask {
    std::size_t cell;
    std::size_t slot;
    std::size_t trace;
  };
  std::vector<RunTask> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    results[c].key = cells[c];
    for (std::size_t r = 0; r < spec.replications; ++r) {
      for (std::size_t q = 0; q < spec.session_sets; ++q) {
        results[c].configs.push_back(replication_config(spec, cells[c], r, q));
        tasks.push_back({c, results[c].configs.size() - 1, r});
      }
    }
    results[c].reports.resize(results[c].configs.size());
  }
  for (const auto& cell : results) {
    for (const auto& cfg : cell.configs) validate(cfg);
  }

  if (options.trace_files) {
    std::filesystem::create_directories(options.out_dir / "traces");
    struct TraceTask {
      std::size_t nodes;
      double v_max;
      std::size_t trace;
    };
    std::vector<TraceTask> traces;
    for (const auto nodes : spec.node_counts)
      for (const auto v_max : spec.v_max_values)
        for (std::size_t r = 0; r < spec.replications; ++r) traces.push_back({nodes, v_max, r});
    run_pool(traces.size(), options.jobs, [&](std::size_t i) {
      const auto& t = traces[i];
      CellKey key{spec.protocols.front(), t.nodes, spec.session_counts.front(), t.v_max, false};
      const auto cfg = replication_config(spec, key, t.trace, 0);
      std::ofstream out(trace_path(options.out_dir, t.nodes, t.v_max, t.trace));
      if (!out) throw IoError("cannot write trace file");
      generate_trace(cfg, out);
    });
  }

  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  run_pool(tasks.size(), options.jobs, [&](std::size_t i) {
    const auto& task = tasks[i];
    auto& cell = results[task.cell];
    const auto& cfg = cell.configs[task.slot];
    RunOptions run_options;
    std::ifstream trace_in;
    if (options.trace_files) {
      trace_in.open(trace_path(options.out_dir, cell.key.nodes, cell.key.v_max, task.trace));
      if (!trace_in) throw IoError("cannot read trace file");
      run_options.trace_in = &trace_in;
    }
    cell.reports[task.slot] = compute_report(run(cfg, run_options));
    const std::size_t finished = ++done;
    if (options.progress) {
      std::lock_guard lock(progress_mutex);
      options.progress(finished, tasks.size());
    }
  });

  for (auto& cell : results) cell.summary = aggregate(cell.reports);

  if (write) {
    std::ofstream runs(options.out_dir / "runs.csv");
    std::ofstream comparison(options.out_dir / "comparison.csv");
    if (!runs || !comparison) throw IoError("cannot write matrix outputs");
    write_metrics_header(runs);
    write_comparison_header(comparison);
    for (const auto& cell : results) {
      for (std::size_t k = 0; k < cell.reports.size(); ++k) {
        write_metrics_row(runs, cell.configs[k], cell.reports[k]);
      }
      write_comparison_rows(comparison, cell.key, cell.summary);
    }
  }
  return results;
}

}  // namespace manet
