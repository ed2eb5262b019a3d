// Acceptance suite. Prints one PASS/FAIL line per criterion after a detail
// section. Exit status reflects the hard criteria (1-7) only; soft criteria
// are reported but do not fail the process.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "manet/csv.hpp"
#include "manet/engine.hpp"
#include "manet/metrics.hpp"
#include "manet/protocols.hpp"
#include "oracles.hpp"

using namespace manet;

namespace {

constexpr std::array kProtocols{Protocol::Forp, Protocol::Lbr, Protocol::Mmbcr};
constexpr std::array kSets{1, 2};
constexpr std::array kVmax{5.0, 50.0};
constexpr std::array kKappa{0.1, 0.5, 1.0};
constexpr int kSeeds = 5;
constexpr int kSeedsRequired = 4;

struct Verdict {
  bool pass = true;
  std::string note;
};

std::vector<std::string> details;

void note_detail(const std::string& line) { details.push_back("  " + line); }

template <typename... Args>
std::string fmt(const char* format, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  const std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
}

// ---------------------------------------------------------------- hard

Verdict let_oracle() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> coord(0.0, 1000.0), speed(0.01, 50.0),
      angle(0.0, 2 * std::numbers::pi), offset(-250.0, 250.0);
  int checked = 0, bad = 0;
  double worst = 0.0;
  while (checked < 1000) {
    NodeState i, j;
    i.pos = {coord(rng), coord(rng)};
    j.pos = {i.pos.x + offset(rng), i.pos.y + offset(rng)};
    if (distance(i.pos, j.pos) > 250.0) continue;
    i.speed = speed(rng);
    j.speed = speed(rng);
    i.heading = angle(rng);
    j.heading = angle(rng);
    const double rvx = i.speed * std::cos(i.heading) - j.speed * std::cos(j.heading);
    const double rvy = i.speed * std::sin(i.heading) - j.speed * std::sin(j.heading);
    // Bounded relative speed keeps the stepping horizon finite.
    if (std::hypot(rvx, rvy) < 0.5) continue;
    ++checked;
    const auto closed = link_expiration_time(i, j, 250.0);
    const auto stepped = oracle::let_by_stepping(i, j, 250.0, 1e-3, 1100.0);
    if (closed.is_infinite() || !stepped) {
      ++bad;
      continue;
    }
    const double err = std::abs(closed.value() - *stepped);
    worst = std::max(worst, err);
    if (err > 0.01) ++bad;
  }
  return {bad == 0, fmt("%d pairs, %d disagreements, worst %.4g s", checked, bad, worst)};
}

Verdict path_oracles() {
  std::mt19937_64 rng(777);
  int bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
    const auto adj = oracle::random_connected_graph(rng, n, 0.35);
    std::uniform_int_distribution<int> small(1, 6);
    std::map<std::pair<NodeId, NodeId>, double> let;
    for (NodeId u = 0; u < n; ++u)
      for (const NodeId v : adj[u])
        if (u < v) let[{u, v}] = small(rng) == 6 ? oracle::kInf : small(rng);
    const auto snap = oracle::snapshot_from(adj, [&](NodeId u, NodeId v) { return let.at({u, v}); });
    std::vector<NodeState> states(n);
    for (NodeId k = 0; k < n; ++k) {
      states[k].id = k;
      states[k].battery = Energy::from_joules(small(rng));
      states[k].activity = small(rng) % 3;
    }
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    const NodeId s = pick(rng);
    NodeId d = pick(rng);
    if (s == d) d = (d + 1) % static_cast<NodeId>(n);
    const auto paths = oracle::all_simple_paths(adj, s, d);

    const auto forp = oracle::best_path(paths, [&](const oracle::Path& p) {
      double b = oracle::kInf;
      for (std::size_t k = 0; k + 1 < p.size(); ++k) b = std::min(b, let.at({std::min(p[k], p[k + 1]), std::max(p[k], p[k + 1])}));
      return b;
    });
    const auto mmbcr = oracle::best_path(paths, [&](const oracle::Path& p) {
      double b = oracle::kInf;
      for (std::size_t k = 1; k + 1 < p.size(); ++k) b = std::min(b, states[p[k]].battery.joules());
      return b;
    });
    const auto lbr = oracle::best_path(paths, [&](const oracle::Path& p) {
      double c = 0;
      for (std::size_t k = 1; k + 1 < p.size(); ++k) {
        c += states[p[k]].activity;
        for (const NodeId x : adj[p[k]]) c += states[x].activity;
      }
      return -c;
    });

    const auto f = select_forp(snap, s, d);
    const auto m = select_mmbcr(snap, states, s, d);
    const auto l = select_lbr(snap, states, s, d);
    const bool ok = f && m && l && f->nodes == forp->first &&
                    f->metric_value.value_or(oracle::kInf) == forp->second &&
                    m->nodes == mmbcr->first &&
                    m->metric_value.value_or(oracle::kInf) == mmbcr->second &&
                    l->nodes == lbr->first && l->metric_value.value_or(oracle::kInf) == -lbr->second;
    if (!ok) ++bad;
  }
  return {bad == 0, fmt("500 graphs, %d mismatches", bad)};
}

Verdict power_constants() {
  PowerModel tpc;
  tpc.tpc_enabled = true;
  const double p250 = tx_power(250.0, tpc);
  const double fixed = tx_power(250.0, PowerModel{});
  const bool ok = std::abs(p250 - 1.39945) <= 1e-6 && fixed == 1.4 && tx_power(17.0, PowerModel{}) == 1.4;
  return {ok, fmt("tx_power(250) = %.8f W, fixed = %.4f W", p250, fixed)};
}

// ---------------------------------------------------------------- scenarios

struct RunKey {
  int set;
  double v_max;
  bool tpc;
  double kappa;
  Protocol protocol;
  int seed;
};

ScenarioConfig scenario(const RunKey& k) {
  ScenarioConfig c = preset_config(k.set == 1 ? Preset::Set1 : Preset::Set2);
  c.node_count = 50;
  c.session_count = 15;
  c.v_max = k.v_max;
  c.tpc = k.tpc;
  c.kappa = k.kappa;
  c.protocol = k.protocol;
  c.seed = static_cast<std::uint64_t>(k.seed);
  return c;
}

struct RunSummary {
  MetricsReport report;
  Energy total;
  bool conserved = false;
  bool formulas_ok = false;
  std::string formula_note;
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

bool near(double a, double b) {
  return a == b || std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

// Recomputes hop count and fairness from the exported CSVs alone.
std::pair<bool, std::string> recompute_from_csv(const RunResult& r, const MetricsReport& rep) {
  std::ostringstream routes_csv, ledger_csv;
  write_routes_csv(routes_csv, r.routes);
  write_ledger_csv(ledger_csv, r.ledger, r.final_states);

  std::map<std::string, std::pair<double, double>> per_session;  // weighted, lifetime
  std::istringstream routes(routes_csv.str());
  std::string line;
  std::getline(routes, line);
  while (std::getline(routes, line)) {
    const auto f = split(line, ',');
    const double from = std::stod(f[1]);
    const double to = f[2].empty() ? r.end_time : std::stod(f[2]);
    const double hops = static_cast<double>(split(f[5], ' ').size() - 1);
    auto& acc = per_session[f[0]];
    acc.first += hops * (to - from);
    acc.second += to - from;
  }
  double sum = 0.0;
  int n = 0;
  for (const auto& [id, acc] : per_session) {
    if (acc.second <= 0) continue;
    sum += acc.first / acc.second;
    ++n;
  }
  const bool hop_ok = n == 0 ? !rep.hop_count.has_value()
                             : rep.hop_count.has_value() && near(*rep.hop_count, sum / n);

  std::vector<double> totals;
  std::istringstream ledger(ledger_csv.str());
  std::getline(ledger, line);
  while (std::getline(ledger, line)) totals.push_back(std::stod(split(line, ',')[6]));
  double mean = 0.0;
  for (const double t : totals) mean += t;
  mean /= static_cast<double>(totals.size());
  double sq = 0.0;
  for (const double t : totals) sq += (t - mean) * (t - mean);
  const double fairness = std::sqrt(sq / static_cast<double>(totals.size()));
  const bool fair_ok = near(rep.fairness_stddev, fairness);

  std::string note;
  if (!hop_ok) note += fmt("hop %.12g vs %.12g ", rep.hop_count.value_or(-1), n ? sum / n : -1.0);
  if (!fair_ok) note += fmt("fairness %.12g vs %.12g", rep.fairness_stddev, fairness);
  return {hop_ok && fair_ok, note};
}

RunSummary execute(const RunKey& k) {
  const auto config = scenario(k);
  const RunResult r = run(config);
  RunSummary s;
  s.report = compute_report(r);
  s.total = r.ledger.grand_total();
  s.conserved = true;
  const Energy initial = Energy::from_joules(config.initial_battery);
  for (const auto& st : r.final_states)
    s.conserved = s.conserved && initial - st.battery == r.ledger.total(st.id);
  std::tie(s.formulas_ok, s.formula_note) = recompute_from_csv(r, s.report);
  return s;
}

std::string all_csv(const RunResult& r) {
  std::ostringstream out;
  write_metrics_header(out);
  write_metrics_row(out, r.config, compute_report(r));
  write_ledger_csv(out, r.ledger, r.final_states);
  write_packets_csv(out, r.packets);
  write_routes_csv(out, r.routes);
  return out.str();
}

Verdict determinism() {
  std::vector<RunKey> keys;
  for (const int set : kSets)
    for (const bool tpc : {false, true})
      for (const auto p : kProtocols) keys.push_back({set, 50.0, tpc, 0.5, p, 3});
  std::vector<int> same(keys.size(), 0);
  parallel_for(keys.size(), [&](std::size_t i) {
    const auto c = scenario(keys[i]);
    same[i] = all_csv(run(c)) == all_csv(run(c));
  });
  const auto n = std::count(same.begin(), same.end(), 1);
  return {n == static_cast<long>(keys.size()), fmt("%ld/%zu cells byte-identical on rerun", n, keys.size())};
}

// ---------------------------------------------------------------- soft

struct Grid {
  std::map<std::tuple<int, double, bool, double, Protocol, int>, RunSummary> runs;

  const RunSummary& at(int set, double v, bool tpc, double kappa, Protocol p, int seed) const {
    return runs.at({set, v, tpc, kappa, p, seed});
  }
};

double val(const std::optional<double>& v) { return v.value_or(std::nan("")); }

// Evaluates `holds(set, v, kappa, seed)` for each cell and seed.
Verdict soft(const char* tag, const std::vector<int>& sets,
             const std::function<bool(int, double, double, int, std::string&)>& holds) {
  Verdict v;
  int cells = 0, good_cells = 0;
  for (const int set : sets) {
    for (const double vmax : kVmax) {
      for (const double kappa : kKappa) {
        int ok = 0;
        std::string seeds;
        for (int seed = 1; seed <= kSeeds; ++seed) {
          std::string info;
          const bool h = holds(set, vmax, kappa, seed, info);
          ok += h;
          seeds += fmt(" %s%s", h ? "" : "!", info.c_str());
        }
        ++cells;
        const bool cell_ok = ok >= kSeedsRequired;
        good_cells += cell_ok;
        v.pass = v.pass && cell_ok;
        note_detail(fmt("[%s] set%d v_max=%g kappa=%.1f: %d/%d%s |%s", tag, set, vmax, kappa, ok, kSeeds,
                   cell_ok ? "" : " FAIL", seeds.c_str()));
      }
    }
  }
  v.note = fmt("%d/%d cells hold in >= %d of %d seeds", good_cells, cells, kSeedsRequired, kSeeds);
  return v;
}

}  // namespace

int main() {
  const auto started = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, Verdict>> results;

  results.push_back({"1 link expiration time vs stepping oracle", let_oracle()});
  results.push_back({"2 FORP/MMBCR/LBR vs exhaustive path enumeration", path_oracles()});

  // Full scenario grid.
  std::vector<RunKey> keys;
  for (const int set : kSets)
    for (const double v : kVmax)
      for (const bool tpc : {false, true})
        for (const double kappa : kKappa)
          for (const auto p : kProtocols)
            for (int seed = 1; seed <= kSeeds; ++seed) keys.push_back({set, v, tpc, kappa, p, seed});
  std::vector<RunSummary> summaries(keys.size());
  std::atomic<std::size_t> done{0};
  std::mutex print_mutex;
  parallel_for(keys.size(), [&](std::size_t i) {
    summaries[i] = execute(keys[i]);
    const auto n = ++done;
    if (n % 60 == 0) {
      std::lock_guard lock(print_mutex);
      std::fprintf(stderr, "%zu/%zu runs\n", n, keys.size());
    }
  });
  Grid grid;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& k = keys[i];
    grid.runs.emplace(std::make_tuple(k.set, k.v_max, k.tpc, k.kappa, k.protocol, k.seed), summaries[i]);
  }

  {
    std::size_t ok = 0;
    for (const auto& s : summaries) ok += s.conserved;
    results.push_back({"3 per-node energy conservation",
                       {ok == summaries.size(), fmt("%zu/%zu runs exact", ok, summaries.size())}});
  }
  {
    // Fixed-duration runs: same trace, protocol and horizon with and without TPC.
    int pairs = 0, ok = 0;
    for (const double v : kVmax)
      for (const double kappa : kKappa)
        for (const auto p : kProtocols)
          for (int seed = 1; seed <= kSeeds; ++seed) {
            ++pairs;
            const auto& on = grid.at(1, v, true, kappa, p, seed);
            const auto& off = grid.at(1, v, false, kappa, p, seed);
            if (on.total <= off.total) {
              ++ok;
            } else {
              note_detail(fmt("[4] %s v_max=%g kappa=%.1f seed %d: %.6f J with TPC > %.6f J without",
                         std::string(to_string(p)).c_str(), v, kappa, seed, on.total.joules(),
                         off.total.joules()));
            }
          }
    results.push_back({"4 TPC total energy <= paired run without TPC",
                       {ok == pairs, fmt("%d/%d paired 1000 s runs", ok, pairs)}});
  }
  results.push_back({"5 byte-identical CSVs for identical seeds", determinism()});
  results.push_back({"6 tx_power(250) and fixed transmit power", power_constants()});
  {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < summaries.size(); ++i) {
      ok += summaries[i].formulas_ok;
      if (!summaries[i].formulas_ok) note_detail("[7] " + summaries[i].formula_note);
    }
    results.push_back({"7 hop count and fairness recomputed from CSV",
                       {ok == summaries.size(), fmt("%zu/%zu runs within 1e-9", ok, summaries.size())}});
  }

  constexpr auto F = Protocol::Forp;
  constexpr auto L = Protocol::Lbr;
  constexpr auto M = Protocol::Mmbcr;
  const std::vector<int> both{1, 2};

  results.push_back({"8 route transitions FORP < LBR <= MMBCR, MMBCR/LBR in [1.0, 1.5]",
                     soft("8", both, [&](int set, double v, double k, int seed, std::string& info) {
                       const double f = grid.at(set, v, false, k, F, seed).report.route_transitions;
                       const double l = grid.at(set, v, false, k, L, seed).report.route_transitions;
                       const double m = grid.at(set, v, false, k, M, seed).report.route_transitions;
                       info = fmt("%.3g/%.3g/%.3g", f, l, m);
                       return f < l && l <= m && m / l >= 1.0 && m / l <= 1.5;
                     })});
  results.push_back({"9 hop count LBR <= MMBCR < FORP",
                     soft("9", both, [&](int set, double v, double k, int seed, std::string& info) {
                       const double f = val(grid.at(set, v, false, k, F, seed).report.hop_count);
                       const double l = val(grid.at(set, v, false, k, L, seed).report.hop_count);
                       const double m = val(grid.at(set, v, false, k, M, seed).report.hop_count);
                       info = fmt("%.3g/%.3g/%.3g", f, l, m);
                       return l <= m && m < f;
                     })});
  results.push_back({"10 delay per packet lowest for LBR",
                     soft("10", both, [&](int set, double v, double k, int seed, std::string& info) {
                       const double f = val(grid.at(set, v, false, k, F, seed).report.delay_per_packet);
                       const double l = val(grid.at(set, v, false, k, L, seed).report.delay_per_packet);
                       const double m = val(grid.at(set, v, false, k, M, seed).report.delay_per_packet);
                       info = fmt("%.3g/%.3g/%.3g", f * 1e3, l * 1e3, m * 1e3);
                       return l < f && l < m;
                     })});
  results.push_back({"11 energy per packet without TPC LBR < MMBCR < FORP",
                     soft("11", both, [&](int set, double v, double k, int seed, std::string& info) {
                       const double f = val(grid.at(set, v, false, k, F, seed).report.energy_per_packet);
                       const double l = val(grid.at(set, v, false, k, L, seed).report.energy_per_packet);
                       const double m = val(grid.at(set, v, false, k, M, seed).report.energy_per_packet);
                       info = fmt("%.3g/%.3g/%.3g", f * 1e3, l * 1e3, m * 1e3);
                       return l < m && m < f;
                     })});
  results.push_back({"12 TPC energy ratio FORP < MMBCR < LBR, FORP in [0.40, 0.65], LBR in [0.70, 0.95]",
                     soft("12", both, [&](int set, double v, double k, int seed, std::string& info) {
                       auto ratio = [&](Protocol p) {
                         return val(grid.at(set, v, true, k, p, seed).report.energy_per_packet) /
                                val(grid.at(set, v, false, k, p, seed).report.energy_per_packet);
                       };
                       const double f = ratio(F), l = ratio(L), m = ratio(M);
                       info = fmt("%.3f/%.3f/%.3f", f, l, m);
                       return f < m && m < l && f >= 0.40 && f <= 0.65 && l >= 0.70 && l <= 0.95;
                     })});
  results.push_back({"13 fairness stddev MMBCR < LBR < FORP",
                     soft("13", both, [&](int set, double v, double k, int seed, std::string& info) {
                       const double f = grid.at(set, v, false, k, F, seed).report.fairness_stddev;
                       const double l = grid.at(set, v, false, k, L, seed).report.fairness_stddev;
                       const double m = grid.at(set, v, false, k, M, seed).report.fairness_stddev;
                       info = fmt("%.3g/%.3g/%.3g", f, l, m);
                       return m < l && l < f;
                     })});
  results.push_back({"14 first failure FORP earliest, FORP/MMBCR in [0.35, 0.75], TPC factor in [1.1, 1.8]",
                     soft("14", {2}, [&](int set, double v, double k, int seed, std::string& info) {
                       auto fft = [&](Protocol p, bool tpc) {
                         return val(grid.at(set, v, tpc, k, p, seed).report.first_failure_time);
                       };
                       const double f = fft(F, false), l = fft(L, false), m = fft(M, false);
                       bool tpc_ok = true;
                       std::string factors;
                       for (const auto p : kProtocols) {
                         const double g = fft(p, true) / fft(p, false);
                         tpc_ok = tpc_ok && g >= 1.1 && g <= 1.8;
                         factors += fmt("/%.2f", g);
                       }
                       info = fmt("%.0f/%.0f/%.0f x%s", f, l, m, factors.c_str() + 1);
                       return f < l && f < m && f / m >= 0.35 && f / m <= 0.75 && tpc_ok;
                     })});

  std::printf("Detail (values listed FORP/LBR/MMBCR per seed; ! marks a seed that fails)\n");
  for (const auto& d : details) std::printf("%s\n", d.c_str());
  std::printf("\nCriteria\n");
  bool hard_ok = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [name, verdict] = results[i];
    if (i < 7) hard_ok = hard_ok && verdict.pass;
    std::printf("%s %-4s %s: %s\n", verdict.pass ? "PASS" : "FAIL", i < 7 ? "hard" : "soft",
                name.c_str(), verdict.note.c_str());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::printf("\n%zu scenario runs in %.0f s; hard criteria %s\n", keys.size(), secs,
              hard_ok ? "all pass" : "FAILED");
  return hard_ok ? 0 : 1;
}
