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

#include "covernet/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "covernet/error.hpp"
#include "covernet/eval.hpp"
#include "covernet/rng.hpp"

namespace covernet {

namespace {

constexpr uint64_t kSetupSeedStream = 0x5e7;
constexpr uint64_t kDetectorSeedStream = 0xde7;

uint64_t derive_seed(uint64_t seed, uint64_t stream, uint64_t index) {
  return make_rng(seed, stream, index)();
}

// FNV-1a, so a setup's samples do not depend on which other setups run.
uint64_t name_hash(const std::string& name) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SetupSpec seeded_setup(const std::string& name, uint64_t seed, int trials) {
  SetupSpec spec = setup_preset(name);
  spec.seed = derive_seed(seed, kSetupSeedStream, name_hash(name));
  if (trials > 0) spec.n_t = trials;
  return spec;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  fail(ErrorCode::kParse, "invalid value '" + value + "' for setting '" + key + "'");
}

double parse_real(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() ||
      !std::isfinite(out)) {
    bad_value(key, value);
  }
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, value);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = lower(trim(value));
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, value);
}

std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_real(key, item));
  if (out.empty()) fail(ErrorCode::kInvalidInput, "empty grid for '" + key + "'");
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const auto& item : split_list(value)) {
    out.push_back(static_cast<int>(parse_int(key, item)));
  }
  if (out.empty()) fail(ErrorCode::kInvalidInput, "empty grid for '" + key + "'");
  return out;
}

std::vector<double> linspace(double lo, double hi, double step) {
  std::vector<double> out;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  // Rounded so grid values print as written (0.3, not 0.30000000000000004).
  for (int k = 0; k < count; ++k) out.push_back(std::round((lo + step * k) * 1e9) / 1e9);
  return out;
}

using Setter = std::function<void(RunSettings&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"seed", [](RunSettings& s, auto& k, auto& v) {
         s.seed = static_cast<uint64_t>(parse_int(k, v));
       }},
      {"n_groups", [](RunSettings& s, auto& k, auto& v) {
         s.n_groups = static_cast<int>(parse_int(k, v));
       }},
      {"matrix", [](RunSettings& s, auto&, auto& v) { s.matrix_path = trim(v); }},
      {"durations", [](RunSettings& s, auto&, auto& v) { s.durations_path = trim(v); }},
      {"labels", [](RunSettings& s, auto&, auto& v) { s.labels_path = trim(v); }},
      {"intra_mean", [](RunSettings& s, auto& k, auto& v) {
         s.generator.intra_mean = parse_real(k, v);
       }},
      {"intra_sd", [](RunSettings& s, auto& k, auto& v) {
         s.generator.intra_sd = parse_real(k, v);
       }},
      {"inter_mean", [](RunSettings& s, auto& k, auto& v) {
         s.generator.inter_mean = parse_real(k, v);
       }},
      {"inter_sd", [](RunSettings& s, auto& k, auto& v) {
         s.generator.inter_sd = parse_real(k, v);
       }},
      {"prototype_pull", [](RunSettings& s, auto& k, auto& v) {
         s.generator.prototype_pull = parse_real(k, v);
       }},
      {"asymmetry_jitter", [](RunSettings& s, auto& k, auto& v) {
         s.generator.asymmetry_jitter = parse_real(k, v);
       }},
      {"hard_rate", [](RunSettings& s, auto& k, auto& v) {
         s.generator.hard_rate = parse_real(k, v);
       }},
      {"hard_mean", [](RunSettings& s, auto& k, auto& v) {
         s.generator.hard_mean = parse_real(k, v);
       }},
      {"hub_sd", [](RunSettings& s, auto& k, auto& v) {
         s.generator.hub_sd = parse_real(k, v);
       }},
      {"cardinality_weights", [](RunSettings& s, auto& k, auto& v) {
         s.generator.cardinality_weights = parse_real_list(k, v);
       }},
      {"duration_min", [](RunSettings& s, auto& k, auto& v) {
         s.generator.duration_min = parse_real(k, v);
       }},
      {"duration_max", [](RunSettings& s, auto& k, auto& v) {
         s.generator.duration_max = parse_real(k, v);
       }},
      {"w_th", [](RunSettings& s, auto& k, auto& v) {
         s.detector.community.w_th = parse_real(k, v);
       }},
      {"r_th", [](RunSettings& s, auto& k, auto& v) {
         s.detector.community.r_th = static_cast<int>(parse_int(k, v));
       }},
      {"alpha", [](RunSettings& s, auto& k, auto& v) {
         s.detector.community.alpha = parse_real(k, v);
       }},
      {"margin", [](RunSettings& s, auto& k, auto& v) {
         s.detector.community.margin = parse_real(k, v);
       }},
      {"knn_rule", [](RunSettings& s, auto& k, auto& v) {
         const std::string x = lower(trim(v));
         if (x == "union") {
           s.detector.community.knn_rule = KnnRule::kUnion;
         } else if (x == "intersection") {
           s.detector.community.knn_rule = KnnRule::kIntersection;
         } else {
           bad_value(k, v);
         }
       }},
      {"mo_weighting", [](RunSettings& s, auto& k, auto& v) {
         const std::string x = lower(trim(v));
         if (x == "linear") {
           s.detector.community.mo_weighting = MoWeighting::kLinear;
         } else if (x == "inverse") {
           s.detector.community.mo_weighting = MoWeighting::kInverse;
         } else if (x == "unweighted") {
           s.detector.community.mo_weighting = MoWeighting::kUnweighted;
         } else {
           bad_value(k, v);
         }
       }},
      {"pm2_fixpoint", [](RunSettings& s, auto& k, auto& v) {
         s.detector.community.pm2_fixpoint = parse_bool(k, v);
       }},
      {"d_th", [](RunSettings& s, auto& k, auto& v) { s.detector.d_th = parse_real(k, v); }},
      {"hierarchical_cut", [](RunSettings& s, auto& k, auto& v) {
         const std::string x = lower(trim(v));
         if (x == "distance") {
           s.detector.cut = HierarchicalCut::kDistance;
         } else if (x == "inconsistent") {
           s.detector.cut = HierarchicalCut::kInconsistent;
         } else {
           bad_value(k, v);
         }
       }},
      {"inconsistency_depth", [](RunSettings& s, auto& k, auto& v) {
         s.detector.inconsistency_depth = static_cast<int>(parse_int(k, v));
       }},
      {"inconsistency_t", [](RunSettings& s, auto& k, auto& v) {
         s.detector.inconsistency_t = parse_real(k, v);
       }},
      {"km_k_min", [](RunSettings& s, auto& k, auto& v) {
         s.detector.km_k_min = static_cast<int>(parse_int(k, v));
       }},
      {"km_k_max", [](RunSettings& s, auto& k, auto& v) {
         s.detector.km_k_max = static_cast<int>(parse_int(k, v));
       }},
      {"km_k_count", [](RunSettings& s, auto& k, auto& v) {
         s.detector.km_k_count = static_cast<int>(parse_int(k, v));
       }},
      {"algorithm", [](RunSettings& s, auto&, auto& v) {
         s.algorithms.clear();
         for (const auto& name : split_list(v)) s.algorithms.push_back(parse_algorithm(name));
       }},
      {"setup", [](RunSettings& s, auto&, auto& v) {
         s.setups.clear();
         for (const auto& name : split_list(v)) {
           setup_preset(name);  // validates
           s.setups.push_back(name);
         }
       }},
      {"trials", [](RunSettings& s, auto& k, auto& v) {
         s.trials = static_cast<int>(parse_int(k, v));
       }},
      {"refine_c", [](RunSettings& s, auto& k, auto& v) { s.refine_c = parse_real(k, v); }},
      {"sweep_min", [](RunSettings& s, auto& k, auto& v) { s.sweep.t_min = parse_real(k, v); }},
      {"sweep_max", [](RunSettings& s, auto& k, auto& v) { s.sweep.t_max = parse_real(k, v); }},
      {"sweep_count", [](RunSettings& s, auto& k, auto& v) {
         s.sweep.count = static_cast<int>(parse_int(k, v));
       }},
      {"sweep_distance", [](RunSettings& s, auto& k, auto& v) {
         const std::string x = lower(trim(v));
         if (x == "hops") {
           s.sweep.distance = EfficiencyDistance::kHops;
         } else if (x == "weighted") {
           s.sweep.distance = EfficiencyDistance::kWeighted;
         } else {
           bad_value(k, v);
         }
       }},
      {"grid.w_th", [](RunSettings& s, auto& k, auto& v) { s.grid.w_th = parse_real_list(k, v); }},
      {"grid.r_th", [](RunSettings& s, auto& k, auto& v) { s.grid.r_th = parse_int_list(k, v); }},
      {"grid.alpha", [](RunSettings& s, auto& k, auto& v) { s.grid.alpha = parse_real_list(k, v); }},
      {"grid.margin", [](RunSettings& s, auto& k, auto& v) { s.grid.margin = parse_real_list(k, v); }},
      {"grid.d_th", [](RunSettings& s, auto& k, auto& v) { s.grid.d_th = parse_real_list(k, v); }},
      {"prototype_c_min", [](RunSettings& s, auto& k, auto& v) {
         s.prototype_c_min = static_cast<int>(parse_int(k, v));
       }},
      {"prototype_c_max", [](RunSettings& s, auto& k, auto& v) {
         s.prototype_c_max = static_cast<int>(parse_int(k, v));
       }},
  };
  return table;
}

std::vector<int> km_candidates(int n, const DetectorConfig& cfg) {
  const int lo = std::clamp(cfg.km_k_min > 0 ? cfg.km_k_min : n / 10, 1, n);
  const int hi = std::clamp(cfg.km_k_max > 0 ? cfg.km_k_max : n / 2, lo, n);
  const int count = std::max(1, cfg.km_k_count);
  std::vector<int> ks;
  for (int i = 0; i < count; ++i) {
    const int k = count == 1 ? lo
                             : lo + static_cast<int>(std::lround(
                                        static_cast<double>(i) * (hi - lo) / (count - 1)));
    if (ks.empty() || ks.back() != k) ks.push_back(k);
  }
  return ks;
}

struct Sample {
  DissimilarityMatrix symmetric;
  Partition truth;
};

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kKM: return "KM";
    case Algorithm::kSL: return "SL";
    case Algorithm::kCL: return "CL";
    case Algorithm::kUPGMA: return "UPGMA";
    case Algorithm::kWPGMA: return "WPGMA";
    case Algorithm::kMO: return "MO";
    case Algorithm::kPM1: return "PM1";
    case Algorithm::kPM2: return "PM2";
    case Algorithm::kPM3: return "PM3";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  const std::string upper = [&] {
    std::string u = trim(name);
    std::transform(u.begin(), u.end(), u.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return u;
  }();
  for (Algorithm a : all_algorithms()) {
    if (algorithm_name(a) == upper) return a;
  }
  fail(ErrorCode::kInvalidInput,
       "unknown algorithm '" + name + "' (expected KM, SL, CL, UPGMA, WPGMA, MO, PM1, PM2 or PM3)");
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::kKM,  Algorithm::kSL,  Algorithm::kCL,
          Algorithm::kUPGMA, Algorithm::kWPGMA, Algorithm::kMO,
          Algorithm::kPM1, Algorithm::kPM2, Algorithm::kPM3};
}

Partition detect(Algorithm a, const DissimilarityMatrix& m,
                 const DetectorConfig& cfg, PairPassStats* stats) {
  const auto hierarchical = [&](Linkage method) {
    const Dendrogram d = linkage(m, method);
    return cfg.cut == HierarchicalCut::kDistance
               ? cut_dendrogram(d, cfg.d_th)
               : cut_inconsistent(d, cfg.inconsistency_depth, cfg.inconsistency_t);
  };
  switch (a) {
    case Algorithm::kKM: {
      if (m.size() == 0) return Partition::singletons(0);
      const auto ks = km_candidates(m.size(), cfg);
      const int k = ks.size() == 1 ? ks.front() : select_k(m, ks, cfg.community.seed).k;
      return kmedoids(m, k, cfg.community.seed).partition;
    }
    case Algorithm::kSL: return hierarchical(Linkage::kSingle);
    case Algorithm::kCL: return hierarchical(Linkage::kComplete);
    case Algorithm::kUPGMA: return hierarchical(Linkage::kAverage);
    case Algorithm::kWPGMA: return hierarchical(Linkage::kWeighted);
    case Algorithm::kMO: return detect_mo(m, cfg.community);
    case Algorithm::kPM1: return detect_pm1(m, cfg.community);
    case Algorithm::kPM2: return detect_pm2(m, cfg.community, stats);
    case Algorithm::kPM3: return detect_pm3(m, cfg.community, stats);
  }
  fail(ErrorCode::kInvalidInput, "unknown algorithm");
}

const DetectorConfig& RunSettings::config_for(Algorithm a) const {
  auto it = tuned.find(a);
  return it == tuned.end() ? detector : it->second;
}

bool RunSettings::has_files() const {
  return !matrix_path.empty() || !durations_path.empty() || !labels_path.empty();
}

void apply_setting(RunSettings& s, const std::string& key, const std::string& value) {
  const auto& table = setters();
  auto it = table.find(trim(key));
  if (it == table.end()) {
    fail(ErrorCode::kInvalidInput, "unknown setting '" + trim(key) + "'");
  }
  it->second(s, trim(key), value);
}

void apply_config_text(RunSettings& s, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::kParse, "config line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    try {
      apply_setting(s, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      fail(e.code(), "config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

int groups_needed(const std::vector<std::string>& setups) {
  int need = 0;
  for (const auto& name : setups) {
    const SetupSpec spec = setup_preset(name);
    need = std::max(need, spec.n_c + spec.n_n);
  }
  return need;
}

Dataset load_universe(const RunSettings& s, int min_groups) {
  if (s.has_files()) {
    if (s.matrix_path.empty() || s.durations_path.empty() || s.labels_path.empty()) {
      fail(ErrorCode::kInvalidInput,
           "file input needs matrix, durations and labels paths together");
    }
    return load_collection(s.matrix_path, s.durations_path, s.labels_path);
  }
  const int groups = s.n_groups > 0 ? s.n_groups : std::max(523, min_groups);
  return generate_collection(s.generator, groups, s.seed);
}

std::vector<double> sweep_thresholds(const SweepSettings& s) {
  require(s.count >= 1, "sweep needs at least one threshold");
  require(s.t_min > 0.0 && (s.count == 1 || s.t_min < s.t_max),
          "sweep range must be positive and increasing");
  std::vector<double> out;
  for (int k = 0; k < s.count; ++k) {
    out.push_back(s.count == 1 ? s.t_min
                               : s.t_min + (s.t_max - s.t_min) * k / (s.count - 1));
  }
  if (s.count > 1) out.back() = s.t_max;  // no rounding drift at the end
  return out;
}

std::string run_sweep(const Dataset& universe, const RunSettings& s) {
  const auto thresholds = sweep_thresholds(s.sweep);
  const int trials = s.trials > 0 ? s.trials : s.sweep.trials;
  if (s.setups.empty()) {
    return sweep_to_csv(threshold_sweep(universe.matrix, thresholds, trials,
                                        s.seed, s.sweep.distance));
  }
  const Dataset d = sample_setup(universe, seeded_setup(s.setups.front(), s.seed, 0), 0);
  return sweep_to_csv(threshold_sweep(d.matrix, thresholds, trials, s.seed,
                                      s.sweep.distance));
}

std::vector<std::string> detect_eval_default_setups() {
  return {"2.1", "2.2", "2.3", "2.4"};
}

std::vector<DetectEvalRow> run_detect_eval(const Dataset& universe,
                                           const RunSettings& s) {
  const auto setups = s.setups.empty() ? detect_eval_default_setups() : s.setups;
  const auto algorithms = s.algorithms.empty() ? all_algorithms() : s.algorithms;
  const size_t n_alg = algorithms.size();
  std::vector<DetectEvalRow> rows(n_alg * setups.size());
  for (size_t si = 0; si < setups.size(); ++si) {
    const SetupSpec spec = seeded_setup(setups[si], s.seed, s.trials);
    for (int t = 0; t < spec.n_t; ++t) {
      const Dataset d = sample_setup(universe, spec, t);
      const DissimilarityMatrix sym = symmetrize(d.matrix);
      const Partition truth = d.collection.truth();
      const double original = map_score(sym, truth);
      for (size_t ai = 0; ai < n_alg; ++ai) {
        DetectorConfig cfg = s.config_for(algorithms[ai]);
        cfg.community.seed = derive_seed(spec.seed, kDetectorSeedStream, t);
        const auto start = std::chrono::steady_clock::now();
        const Partition p = detect(algorithms[ai], sym, cfg);
        const std::chrono::duration<double> spent =
            std::chrono::steady_clock::now() - start;
        const EvalReport f = per_song_f(p, truth);
        const double refined = map_score(refine_matrix(sym, p, s.refine_c), truth);
        const double delta = relative_map_increase(refined, original);

        DetectEvalRow& row = rows[ai * setups.size() + si];
        row.f += f.f;
        row.map += refined;
        row.original_map += original;
        row.delta += delta;
        row.delta_positive_fraction += delta > 0.0;
        row.groups += p.group_count();
        row.seconds += spent.count();
        row.trial_f.push_back(f.f);
        row.trial_delta.push_back(delta);
      }
    }
    for (size_t ai = 0; ai < n_alg; ++ai) {
      DetectEvalRow& row = rows[ai * setups.size() + si];
      row.algorithm = algorithms[ai];
      row.setup = setups[si];
      row.trials = spec.n_t;
      const double nt = spec.n_t;
      row.f /= nt;
      row.map /= nt;
      row.original_map /= nt;
      row.delta /= nt;
      row.delta_positive_fraction /= nt;
      row.groups /= nt;
    }
  }
  return rows;
}

std::string detect_eval_to_csv(const std::vector<DetectEvalRow>& rows) {
  std::string out =
      "algorithm,setup,trials,f,map,original_map,delta,delta_positive_fraction,groups\n";
  for (const auto& r : rows) {
    out += algorithm_name(r.algorithm) + "," + r.setup + "," + std::to_string(r.trials) +
           "," + format_double(r.f) + "," + format_double(r.map) + "," +
           format_double(r.original_map) + "," + format_double(r.delta) + "," +
           format_double(r.delta_positive_fraction) + "," + format_double(r.groups) + "\n";
  }
  return out;
}

std::string timing_report(const std::vector<DetectEvalRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s setup %s: %.3f s over %d trials\n",
                  algorithm_name(r.algorithm).c_str(), r.setup.c_str(), r.seconds,
                  r.trials);
    out += buf;
  }
  return out;
}

std::vector<std::string> grid_default_setups() { return {"1.1", "1.2", "1.3", "1.4"}; }

GridResult run_grid(const Dataset& universe, const RunSettings& s) {
  const auto setups = s.setups.empty() ? grid_default_setups() : s.setups;
  const auto algorithms = s.algorithms.empty() ? all_algorithms() : s.algorithms;
  const GridSpec& g = s.grid;
  const auto w_grid = g.w_th.empty() ? linspace(0.20, 1.00, 0.05) : g.w_th;
  const auto r_grid = g.r_th.empty() ? std::vector<int>{1, 2, 3, 4, 6, 8} : g.r_th;
  const auto a_grid = g.alpha.empty() ? std::vector<double>{0.25, 0.5, 1.0, 2.0} : g.alpha;
  const auto m_grid = g.margin.empty() ? std::vector<double>{0.02, 0.05, 0.1} : g.margin;
  const auto d_grid = g.d_th.empty() ? linspace(0.20, 1.00, 0.05) : g.d_th;

  std::vector<Sample> samples;
  std::vector<uint64_t> sample_seeds;
  for (const auto& name : setups) {
    const SetupSpec spec = seeded_setup(name, s.seed, s.trials);
    for (int t = 0; t < spec.n_t; ++t) {
      const Dataset d = sample_setup(universe, spec, t);
      samples.push_back({symmetrize(d.matrix), d.collection.truth()});
      sample_seeds.push_back(derive_seed(spec.seed, kDetectorSeedStream, t));
    }
  }

  GridResult result;
  for (Algorithm a : algorithms) {
    std::vector<DetectorConfig> configs;
    const DetectorConfig& base = s.config_for(a);
    switch (a) {
      case Algorithm::kKM:
        configs.push_back(base);
        break;
      case Algorithm::kSL:
      case Algorithm::kCL:
      case Algorithm::kUPGMA:
      case Algorithm::kWPGMA:
        for (double d : d_grid) {
          DetectorConfig c = base;
          c.d_th = d;
          configs.push_back(c);
        }
        break;
      case Algorithm::kMO:
        for (double w : w_grid) {
          DetectorConfig c = base;
          c.community.w_th = w;
          configs.push_back(c);
        }
        break;
      case Algorithm::kPM1:
      case Algorithm::kPM2:
      case Algorithm::kPM3: {
        const std::vector<double> alphas =
            a == Algorithm::kPM1 ? std::vector<double>{base.community.alpha} : a_grid;
        const std::vector<double> margins =
            a == Algorithm::kPM3 ? m_grid : std::vector<double>{base.community.margin};
        for (double w : w_grid) {
          for (int r : r_grid) {
            for (double al : alphas) {
              for (double mg : margins) {
                DetectorConfig c = base;
                c.community.w_th = w;
                c.community.r_th = r;
                c.community.alpha = al;
                c.community.margin = mg;
                configs.push_back(c);
              }
            }
          }
        }
        break;
      }
    }
    GridPoint best_f;
    GridPoint best_map;
    bool first = true;
    for (const DetectorConfig& c : configs) {
      GridPoint point{a, c, 0.0, 0.0};
      for (size_t k = 0; k < samples.size(); ++k) {
        DetectorConfig seeded = c;
        seeded.community.seed = sample_seeds[k];
        const Partition p = detect(a, samples[k].symmetric, seeded);
        point.f += per_song_f(p, samples[k].truth).f;
        point.map += map_score(refine_matrix(samples[k].symmetric, p, s.refine_c),
                               samples[k].truth);
      }
      point.f /= static_cast<double>(samples.size());
      point.map /= static_cast<double>(samples.size());
      result.points.push_back(point);
      if (first || point.f > best_f.f) best_f = point;
      if (first || point.map > best_map.map) best_map = point;
      first = false;
    }
    result.best_f.push_back(best_f);
    result.best_map.push_back(best_map);
  }
  return result;
}

namespace {

std::string grid_params(const GridPoint& p) {
  const CommunityConfig& c = p.config.community;
  return algorithm_name(p.algorithm) + "," + format_double(c.w_th) + "," +
         std::to_string(c.r_th) + "," + format_double(c.alpha) + "," +
         format_double(c.margin) + "," + format_double(p.config.d_th) + "," +
         format_double(p.f) + "," + format_double(p.map);
}

}  // namespace

std::string grid_to_csv(const std::vector<GridPoint>& points) {
  std::string out = "algorithm,w_th,r_th,alpha,margin,d_th,f,map\n";
  for (const auto& p : points) out += grid_params(p) + "\n";
  return out;
}

std::string grid_best_to_csv(const GridResult& r) {
  std::string out = "objective,algorithm,w_th,r_th,alpha,margin,d_th,f,map\n";
  for (const auto& p : r.best_f) out += "f," + grid_params(p) + "\n";
  for (const auto& p : r.best_map) out += "map," + grid_params(p) + "\n";
  return out;
}

void apply_grid_best(RunSettings& s, const GridResult& r, Objective objective) {
  for (const auto& p : objective == Objective::kF ? r.best_f : r.best_map) {
    s.tuned[p.algorithm] = p.config;
  }
}

void apply_grid_best(RunSettings& s, const std::string& csv, Objective objective) {
  std::istringstream is(csv);
  std::string line;
  int line_no = 0;
  const std::string wanted = objective == Objective::kF ? "f" : "map";
  while (std::getline(is, line)) {
    ++line_no;
    if (line_no == 1 || trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(trim(cell));
    if (cells.size() != 9) {
      fail(ErrorCode::kParse, "grid best line " + std::to_string(line_no) +
                                  ": expected 9 columns");
    }
    if (cells[0] != wanted) continue;
    try {
      DetectorConfig c = s.detector;
      c.community.w_th = parse_real("w_th", cells[2]);
      c.community.r_th = static_cast<int>(parse_int("r_th", cells[3]));
      c.community.alpha = parse_real("alpha", cells[4]);
      c.community.margin = parse_real("margin", cells[5]);
      c.d_th = parse_real("d_th", cells[6]);
      s.tuned[parse_algorithm(cells[1])] = c;
    } catch (const Error& e) {
      fail(ErrorCode::kParse,
           "grid best line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string run_prototype(const Dataset& universe, const RunSettings& s) {
  const auto& flags = universe.collection.is_original;
  if (std::find(flags.begin(), flags.end(), 1) == flags.end()) {
    fail(ErrorCode::kInsufficientData, "no originals present in the collection");
  }
  std::vector<PrototypeRow> rows;
  for (PrototypeMethod method : {PrototypeMethod::kCloseness, PrototypeMethod::kMst}) {
    auto part = run_prototype_experiment(universe.collection, universe.matrix, method,
                                         s.seed, s.prototype_c_min, s.prototype_c_max);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return prototype_to_csv(rows);
}

}  // namespace covernet
