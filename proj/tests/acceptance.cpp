// Copyright 2026 The Covernet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Usage: acceptance --cli <covernet binary> --tmp <dir>
// [--only N[,N...]].

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "covernet/clustering.hpp"
#include "covernet/communities.hpp"
#include "covernet/datasets.hpp"
#include "covernet/eval.hpp"
#include "covernet/metrics.hpp"
#include "covernet/network.hpp"
#include "covernet/pipeline.hpp"
#include "covernet/prototype.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace covernet {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Context {
  std::string cli;
  fs::path tmp;
};

// 1. Oracle equivalence on small instances.
Outcome oracle_equivalence(const Context&) {
  const auto start = Clock::now();
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 10;
    const Network g = testing::random_graph(n, 0.05 + 0.05 * (t % 7), t % 3 != 0, 1000 + t);
    if (!oracle::components_agree(g, connected_components(g), strong_components(g))) {
      ++failures;
    }
  }
  int trees = 0;
  for (uint64_t seed = 1; trees < 50; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    const Network g = testing::random_graph(n, 0.7, false, 5000 + seed);
    if (connected_components(g).group_count() != 1) continue;
    ++trees;
    const auto ref = oracle::enumerate_spanning_trees(g);
    const Network mst = minimum_spanning_tree(g);
    double total = 0;
    for (const Edge& e : mst.edges()) total += e.weight;
    if (total != ref.best ||
        std::find(ref.optimal.begin(), ref.optimal.end(), mst.edges()) == ref.optimal.end()) {
      ++failures;
    }
  }
  // Triangle objective: every graph on up to six nodes, and random graphs on
  // seven and eight nodes, each checked at every ordered pair.
  auto check_pairs = [&](const oracle::Adjacency& a, double alpha) {
    const Network g = oracle::to_network(a);
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto t = triangle_objective(g, i, j, alpha);
        if (t.with_edge - t.without_edge != oracle::triangle_gain(a, i, j, alpha)) ++failures;
      }
  };
  int graphs = 0;
  for (int n = 2; n <= 6; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      oracle::Adjacency a(n, std::vector<char>(n, 0));
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if (mask >> bit & 1) a[i][j] = a[j][i] = 1;
      check_pairs(a, mask % 2 ? 0.5 : 1.0);
      ++graphs;
    }
  }
  for (int t = 0; t < 400; ++t) {
    const int n = 7 + t % 2;
    const Network g = testing::random_graph(n, 0.15 + 0.1 * (t % 7), false, 4000 + t);
    oracle::Adjacency a(n, std::vector<char>(n, 0));
    for (const Edge& e : g.edges()) a[e.source][e.target] = a[e.target][e.source] = 1;
    check_pairs(a, t % 3 == 0 ? 0.25 : 2.0);
    ++graphs;
  }
  for (int t = 0; t < 20; ++t) {
    const int n = 5 + 3 * t;
    const auto pred = testing::random_partition(n, 1 + t % 7, 100 + t);
    const auto truth = testing::random_partition(n, 2 + t % 5, 200 + t);
    const auto r = per_song_f(pred, truth);
    const auto o = oracle::per_song_f(pred, truth);
    if (r.mean_precision != o.mean_precision || r.mean_recall != o.mean_recall || r.f != o.f) {
      ++failures;
    }
  }
  for (int t = 0; t < 20; ++t) {
    const int n = 6 + t;
    const auto m = testing::random_matrix(n, 300 + t, 4);
    const auto truth = testing::random_partition(n, 2 + t % 3, 400 + t);
    const auto sizes = truth.group_sizes();
    for (int q = 0; q < n; ++q) {
      if (sizes[truth.group_of(q)] < 2) continue;
      const auto ranking = ranking_for(m, q);
      std::vector<char> rel;
      for (int j : ranking) rel.push_back(truth.group_of(j) == truth.group_of(q));
      if (average_precision(ranking, rel, sizes[truth.group_of(q)]) !=
          oracle::average_precision(m, truth, q)) {
        ++failures;
      }
    }
  }
  for (int t = 0; t < 20; ++t) {
    const int n = 6 + 2 * t;
    const auto m = testing::random_matrix(n, 500 + t, t % 2 ? 3 : 0);
    const auto truth = testing::random_partition(n, 2 + t % 4, 600 + t);
    if (map_score(m, truth) != oracle::mean_average_precision(m, truth)) ++failures;
  }
  const double secs = seconds_since(start);
  return {failures == 0 && secs < 60.0,
          fmt("%d mismatches; 200 component graphs, 50 spanning-tree graphs, %d "
              "triangle graphs, 20 instances each of F/AP/MAP; %.1f s (limit 60 s)",
              failures, graphs, secs)};
}

DissimilarityMatrix first_items(const DissimilarityMatrix& m, int count) {
  std::vector<int> items(std::min(count, m.size()));
  std::iota(items.begin(), items.end(), 0);
  return m.submatrix(items);
}

// 2. PM3 reductions.
Outcome pm3_reductions(const Context&) {
  int mismatches = 0;
  int largest = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorParams gp;
    const Dataset d = generate_collection(gp, 10 + seed % 15, 300 + seed);
    const auto m = first_items(symmetrize(d.matrix), 100);
    largest = std::max(largest, m.size());
    CommunityConfig cfg;
    cfg.w_th = 0.35 + 0.02 * (seed % 10);
    cfg.r_th = 1 + seed % 4;
    cfg.alpha = seed % 3 == 0 ? 0.5 : 1.0;
    cfg.margin = 0.0;
    if (!(detect_pm3(m, cfg) == detect_pm1(m, cfg))) ++mismatches;
    cfg.margin = std::numeric_limits<double>::infinity();
    if (!(detect_pm3(m, cfg) == detect_pm2(m, cfg))) ++mismatches;
  }
  return {mismatches == 0,
          fmt("%d partition mismatches over 50 instances (n <= %d)", mismatches, largest)};
}

// 3. Rank invariance of the refined matrix.
Outcome rank_invariance(const Context&) {
  int differing = 0;
  for (int t = 0; t < 20; ++t) {
    const int n = 20 + 5 * t;
    const auto m = testing::random_matrix(n, 700 + t, t % 3 ? 0 : 6, true);
    const auto p = testing::random_partition(n, 3 + t % 9, 800 + t);
    const auto base = refine_matrix(m, p, 1.5);
    for (double c : {2.0, 10.0}) {
      const auto other = refine_matrix(m, p, c);
      for (int q = 0; q < n; ++q) differing += ranking_for(other, q) != ranking_for(base, q);
    }
  }
  return {differing == 0,
          fmt("%d queries with differing rankings across c in {1.5, 2, 10}, 20 instances",
              differing)};
}

// 4. Exact recovery on zero-variance planted matrices.
Outcome separable_recovery(const Context&) {
  GeneratorParams gp;
  gp.intra_sd = 0;
  gp.inter_sd = 0;
  gp.asymmetry_jitter = 0;
  gp.hard_rate = 0;
  gp.hub_sd = 0;
  const double lo = gp.intra_mean;
  const double hi = gp.inter_mean;
  int failures = 0;
  int runs = 0;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset d = generate_collection(gp, 40, 900 + seed);
    const auto sym = symmetrize(d.matrix);
    const auto truth = d.collection.truth();
    for (double frac : {0.01, 0.25, 0.5, 0.75, 0.99}) {
      const double th = lo + frac * (hi - lo);
      DetectorConfig cfg;
      cfg.community.w_th = th;
      cfg.d_th = th;
      for (Algorithm a : {Algorithm::kPM1, Algorithm::kMO, Algorithm::kSL, Algorithm::kUPGMA}) {
        ++runs;
        if (per_song_f(detect(a, sym, cfg), truth).f != 1.0) ++failures;
      }
    }
  }
  return {failures == 0,
          fmt("%d of %d runs below F = 1 (PM1, MO, SL, UPGMA; thresholds strictly "
              "between %.2f and %.2f)",
              failures, runs, lo, hi)};
}

// Shared by criteria 5 and 6: one universe, one in-sample grid search.
struct RegimeRun {
  bool ready = false;
  RunSettings settings;
  Dataset universe;
  GridResult grid;
  double grid_seconds = 0;
};

RegimeRun& regime() {
  static RegimeRun run;
  if (run.ready) return run;
  run.settings.seed = 20260101;
  run.settings.trials = 20;
  run.settings.algorithms = {Algorithm::kKM,    Algorithm::kSL, Algorithm::kCL,
                             Algorithm::kUPGMA, Algorithm::kWPGMA, Algorithm::kMO,
                             Algorithm::kPM1};
  run.universe = load_universe(run.settings,
                               groups_needed({"1.1", "1.2", "1.3", "1.4", "2.1", "2.2",
                                              "2.3", "2.4"}));
  RunSettings grid = run.settings;
  grid.setups = grid_default_setups();
  const auto start = Clock::now();
  run.grid = run_grid(run.universe, grid);
  run.grid_seconds = seconds_since(start);
  run.ready = true;
  return run;
}

// 5. Table 2 regime.
Outcome f_regime(const Context&) {
  RegimeRun& r = regime();
  RunSettings s = r.settings;
  s.setups = {"2.1", "2.2"};
  apply_grid_best(s, r.grid, Objective::kF);
  const auto start = Clock::now();
  const auto rows = run_detect_eval(r.universe, s);
  const double secs = seconds_since(start);
  bool pass = secs < 300.0;
  std::string detail;
  for (const std::string setup : {"2.1", "2.2"}) {
    double best = 0;
    double km = 0;
    double weakest = 1;
    std::string weakest_name;
    for (const auto& row : rows) {
      if (row.setup != setup) continue;
      if (row.algorithm == Algorithm::kKM) {
        km = row.f;
        continue;
      }
      best = std::max(best, row.f);
      if (row.f < weakest) {
        weakest = row.f;
        weakest_name = algorithm_name(row.algorithm);
      }
    }
    pass = pass && weakest >= 0.75 && best - km >= 0.05;
    detail += fmt("setup %s: min F %.3f (%s), best %.3f, KM %.3f (gap %.3f); ",
                  setup.c_str(), weakest, weakest_name.c_str(), best, km, best - km);
  }
  detail += "F per method:";
  for (const auto& row : rows) {
    detail += fmt(" %s/%s=%.3f", algorithm_name(row.algorithm).c_str(), row.setup.c_str(),
                  row.f);
  }
  detail += fmt("; evaluation %.0f s (limit 300 s), grid %.0f s", secs, r.grid_seconds);
  return {pass, detail};
}

// 6. Table 3 regime.
Outcome delta_regime(const Context&) {
  RegimeRun& r = regime();
  RunSettings s = r.settings;
  s.setups = {"2.1", "2.2", "2.3", "2.4"};
  s.algorithms = {Algorithm::kMO, Algorithm::kPM1};
  apply_grid_best(s, r.grid, Objective::kMap);
  const auto start = Clock::now();
  const auto rows = run_detect_eval(r.universe, s);
  const double secs = seconds_since(start) + r.grid_seconds;
  bool pass = secs < 600.0;
  std::string detail;
  for (const auto& row : rows) {
    const bool ok = row.delta >= 2.0 && row.delta_positive_fraction >= 0.9;
    pass = pass && ok;
    detail += fmt("%s/%s mean delta %.2f%% positive in %.0f%%%s; ",
                  algorithm_name(row.algorithm).c_str(), row.setup.c_str(), row.delta,
                  100 * row.delta_positive_fraction, ok ? "" : " [short]");
  }
  detail += fmt("grid + evaluation %.0f s (limit 600 s)", secs);
  return {pass, detail};
}

// 7. Threshold sweep against the random-graph baseline.
Outcome sweep_regime(const Context&) {
  const auto start = Clock::now();
  RunSettings s;
  s.seed = 77;
  s.n_groups = 531;
  const Dataset d = load_universe(s, 0);
  std::vector<double> thresholds;
  for (double t = 0.2; t < 0.91; t += 0.05) thresholds.push_back(std::round(t * 100) / 100);
  const int trials = 10;
  const auto rows = threshold_sweep(d.matrix, thresholds, trials, s.seed);
  int best_len = 0, len = 0, best_end = -1;
  std::string detail = fmt("n = %d; ", d.matrix.size());
  for (size_t k = 0; k < rows.size(); ++k) {
    const auto& o = rows[k].observed;
    const auto& b = rows[k].baseline;
    const double se = b.standard_error(b.stddev.clustering_coefficient);
    const bool cc = o.clustering_coefficient - b.mean.clustering_coefficient >= 3 * se;
    const bool iso = o.isolated_count < b.mean.isolated_count;
    len = cc && iso ? len + 1 : 0;
    if (len > best_len) {
      best_len = len;
      best_end = static_cast<int>(k);
    }
    detail += fmt("t=%.2f C %.3f vs %.3f, isolated %.0f vs %.1f%s; ", o.threshold,
                  o.clustering_coefficient, b.mean.clustering_coefficient, o.isolated_count,
                  b.mean.isolated_count, cc && iso ? "" : " [no]");
  }
  const double secs = seconds_since(start);
  // A band needs at least three consecutive thresholds.
  const bool pass = best_len >= 3 && secs < 600.0;
  if (best_len > 0) {
    detail += fmt("band %.2f..%.2f (%d thresholds); ",
                  rows[best_end - best_len + 1].observed.threshold,
                  rows[best_end].observed.threshold, best_len);
  }
  detail += fmt("%d baseline trials, %.0f s (limit 600 s)", trials, secs);
  return {pass, detail};
}

// 8. Prototype detection against the uniform null.
Outcome prototype_regime(const Context&) {
  std::string detail;
  bool pass = true;
  GeneratorParams gp;
  gp.cardinality_weights = {1, 1, 1, 1, 1, 1};  // sizes 2..7
  gp.prototype_pull = 0.3;
  {
    const Dataset d = generate_collection(gp, 480, 81);
    const auto rows =
        run_prototype_experiment(d.collection, d.matrix, PrototypeMethod::kCloseness, 81, 3, 6);
    detail += "pull 0.3:";
    for (const auto& r : rows) {
      const bool ok = r.trials >= 50 && r.p_value < 0.01;
      pass = pass && ok;
      detail += fmt(" C=%d %d/%d p=%.2g%s", r.cardinality, r.hits, r.trials, r.p_value,
                    ok ? "" : " [no]");
    }
    pass = pass && rows.size() == 4;
  }
  gp.prototype_pull = 0.0;
  int null_ok = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset d = generate_collection(gp, 480, 1000 + seed);
    const auto rows = run_prototype_experiment(d.collection, d.matrix,
                                               PrototypeMethod::kCloseness, seed, 3, 6);
    bool all = true;
    for (const auto& r : rows) all = all && r.p_value > 0.01;
    null_ok += all;
  }
  pass = pass && null_ok >= 18;
  detail += fmt("; pull 0: %d of 20 seeds with every p > 0.01", null_ok);
  {
    GeneratorParams pairs;
    pairs.cardinality_weights = {1};
    const Dataset d = generate_collection(pairs, 500, 82);
    const auto rows =
        run_prototype_experiment(d.collection, d.matrix, PrototypeMethod::kMst, 82, 2, 2);
    const auto& r = rows.at(0);
    // Every pair ties, and a tie resolves to the first position of a
    // shuffled order, so the expected hit rate is exactly one half.
    const double expected = r.ties == r.trials ? 0.5 : -1.0;
    const bool ok = r.trials >= 400 && expected == 0.5 && std::abs(r.hit_rate - 0.5) <= 0.05;
    pass = pass && ok;
    detail += fmt("; MST C=2: %d/%d tied, expected rate %.2f, observed %.3f over %d", r.ties,
                  r.trials, expected, r.hit_rate, r.trials);
  }
  return {pass, detail};
}

// 9. Spot value of the dissimilarity transform.
Outcome qmax_spot(const Context&) {
  const auto m = from_qmax({2, {0, 46.6, 46.6, 0}, {100, 100}});
  const double expect = std::sqrt(100.0) / 46.6;
  const bool pass = std::abs(m(0, 1) - expect) <= 1e-12 && std::abs(m(0, 1) - 0.2146) < 5e-5;
  return {pass, fmt("w = %.15f, expected %.15f", m(0, 1), expect)};
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// 10. Byte-identical CLI output for a repeated seed.
Outcome determinism(const Context& ctx) {
  if (ctx.cli.empty()) return {false, "no --cli binary given"};
  const std::string common =
      " --seed 1234 --set n_groups=160 --trials 2 --setup 1.3 --set sweep_count=4"
      " --set grid.w_th=0.4,0.5,0.6 --set grid.d_th=0.4,0.5 --set grid.r_th=2,3"
      " --set grid.alpha=1 --set grid.margin=0.05";
  int compared = 0;
  int differing = 0;
  std::string failed;
  for (const char* cmd : {"generate", "sweep", "detect-eval", "grid", "prototype"}) {
    const fs::path a = ctx.tmp / (std::string(cmd) + "_a");
    const fs::path b = ctx.tmp / (std::string(cmd) + "_b");
    for (const auto& dir : {a, b}) {
      fs::remove_all(dir);
      fs::create_directories(dir);
      if (run_cli(ctx.cli, std::string(cmd) + common + " --out " + dir.string()) != 0) {
        failed += std::string(" ") + cmd;
      }
    }
    for (const auto& entry : fs::directory_iterator(a)) {
      ++compared;
      differing += slurp(entry.path()) != slurp(b / entry.path().filename());
    }
  }
  return {failed.empty() && differing == 0 && compared >= 7,
          fmt("%d files compared, %d differ%s%s", compared, differing,
              failed.empty() ? "" : "; failed commands:", failed.c_str())};
}

// 11. Runtime at full collection scale.
Outcome scale_runtime(const Context&) {
  GeneratorParams gp;
  const Dataset d = generate_collection(gp, 560, 111);
  const auto full = first_items(symmetrize(d.matrix), 2125);
  const auto small = first_items(full, 500);
  DetectorConfig cfg;
  auto timed = [&](Algorithm a, const DissimilarityMatrix& m) {
    const auto start = Clock::now();
    const Partition p = detect(a, m, cfg);
    (void)p;
    return seconds_since(start);
  };
  const double pm1 = timed(Algorithm::kPM1, full);
  const double mo = timed(Algorithm::kMO, full);
  const double pm2 = timed(Algorithm::kPM2, small);
  const bool pass = full.size() == 2125 && pm1 < 10 && mo < 10 && pm2 < 10;
  return {pass, fmt("PM1 %.2f s and MO %.2f s at n = %d; PM2 %.2f s at n = %d (limit 10 s)",
                    pm1, mo, full.size(), pm2, small.size())};
}

}  // namespace
}  // namespace covernet

int main(int argc, char** argv) {
  using namespace covernet;
  Context ctx;
  ctx.tmp = std::filesystem::temp_directory_path() / "covernet_acceptance";
  std::set<int> only;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") {
      ctx.cli = argv[i + 1];
    } else if (flag == "--tmp") {
      ctx.tmp = argv[i + 1];
    } else if (flag == "--only") {
      std::stringstream ss(argv[i + 1]);
      std::string item;
      while (std::getline(ss, item, ',')) only.insert(std::stoi(item));
    }
  }
  std::filesystem::create_directories(ctx.tmp);
  const std::vector<std::pair<const char*, std::function<Outcome(const Context&)>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"PM3 reductions", pm3_reductions},
      {"refined-matrix rank invariance", rank_invariance},
      {"separable recovery", separable_recovery},
      {"F regime at setup 2.1/2.2 scale", f_regime},
      {"MAP increase regime out of sample", delta_regime},
      {"threshold sweep versus random baseline", sweep_regime},
      {"prototype detection", prototype_regime},
      {"Q_max spot value", qmax_spot},
      {"CLI determinism", determinism},
      {"runtime at scale", scale_runtime},
  };
  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2d %s: %s (%.1f s) - %s\n", id, criteria[k].first,
                o.pass ? "PASS" : "FAIL", seconds_since(start), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
