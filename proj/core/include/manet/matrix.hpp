#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <vector>

#include "manet/config.hpp"
#include "manet/csv.hpp"
#include "manet/metrics.hpp"

namespace manet {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Experiment grid: every combination of protocol x density x v_max x load x
// tpc, each run over `replications` mobility traces times `session_sets`
// traffic draws.
struct MatrixSpec {
  ScenarioConfig base;
  std::vector<Protocol> protocols{Protocol::Forp, Protocol::Lbr, Protocol::Mmbcr};
  std::vector<std::size_t> node_counts{50, 100};
  std::vector<double> v_max_values{5, 10, 20, 30, 40, 50};
  std::vector<std::size_t> session_counts{15, 30};
  std::vector<bool> tpc_values{false, true};
  std::size_t replications = 1;
  std::size_t session_sets = 1;

  std::size_t cell_count() const {
    return protocols.size() * node_counts.size() * v_max_values.size() * session_counts.size() *
           tpc_values.size();
  }
  std::size_t runs_per_cell() const { return replications * session_sets; }
};

// Full grid for set1/set2; for Custom a single cell built from `base`.
MatrixSpec preset_matrix(Preset preset, const ScenarioConfig& base = {});

// Scenario for one replication of one cell. Mobility seed is base.seed + trace;
// traffic seed is shared by all traces of a session set when session_sets > 1
// and follows the mobility seed otherwise.
ScenarioConfig replication_config(const MatrixSpec& spec, const CellKey& key, std::size_t trace,
                                  std::size_t session_set);

std::vector<CellKey> matrix_cells(const MatrixSpec& spec);

struct MatrixOptions {
  std::filesystem::path out_dir;
  std::size_t jobs = 1;
  // Write one mobility trace per (density, v_max, trace) and replay it for
  // every protocol and tpc setting of that group.
  bool trace_files = false;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct CellResult {
  CellKey key;
  std::vector<ScenarioConfig> configs;
  std::vector<MetricsReport> reports;
  AggregateReport summary;
};

// Runs every cell, writes runs.csv and comparison.csv to out_dir (if set), and
// returns results in cell order independent of completion order. Throws
// IoError before any run if out_dir cannot be written.
std::vector<CellResult> run_matrix(const MatrixSpec& spec, const MatrixOptions& options);

std::filesystem::path trace_path(const std::filesystem::path& out_dir, std::size_t nodes,
                                 double v_max, std::size_t trace);

}  // namespace manet
