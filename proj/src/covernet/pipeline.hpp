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

#ifndef COVERNET_PIPELINE_HPP_
#define COVERNET_PIPELINE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "covernet/clustering.hpp"
#include "covernet/communities.hpp"
#include "covernet/datasets.hpp"
#include "covernet/metrics.hpp"
#include "covernet/partition.hpp"
#include "covernet/prototype.hpp"

namespace covernet {

enum class Algorithm { kKM, kSL, kCL, kUPGMA, kWPGMA, kMO, kPM1, kPM2, kPM3 };

std::string algorithm_name(Algorithm a);
// Case-insensitive; throws Error(kInvalidInput) naming the unknown value.
Algorithm parse_algorithm(const std::string& name);
std::vector<Algorithm> all_algorithms();

enum class HierarchicalCut { kDistance, kInconsistent };

struct DetectorConfig {
  CommunityConfig community;
  double d_th = 0.5;
  HierarchicalCut cut = HierarchicalCut::kDistance;
  int inconsistency_depth = 2;
  double inconsistency_t = 1.0;
  // KM scans km_k_count values of k spread over [km_k_min, km_k_max]; zero
  // bounds become n/10 and n/2.
  int km_k_min = 0;
  int km_k_max = 0;
  int km_k_count = 20;
};

// Runs one detector on a symmetric matrix.
Partition detect(Algorithm a, const DissimilarityMatrix& symmetric,
                 const DetectorConfig& cfg, PairPassStats* stats = nullptr);

struct SweepSettings {
  double t_min = 0.05;
  double t_max = 1.0;
  int count = 20;
  int trials = 100;
  EfficiencyDistance distance = EfficiencyDistance::kHops;
};

// Candidate values per parameter. Lists left unset use built-in defaults.
struct GridSpec {
  std::vector<double> w_th;
  std::vector<int> r_th;
  std::vector<double> alpha;
  std::vector<double> margin;
  std::vector<double> d_th;
};

struct RunSettings {
  uint64_t seed = 0;
  GeneratorParams generator;
  int n_groups = 0;  // 0 sizes the universe from the requested setups
  std::string matrix_path;
  std::string durations_path;
  std::string labels_path;
  DetectorConfig detector;
  // Per-algorithm overrides, typically loaded from a grid search.
  std::map<Algorithm, DetectorConfig> tuned;
  std::vector<Algorithm> algorithms;  // empty selects all nine
  std::vector<std::string> setups;    // empty selects the command default
  int trials = 0;                     // 0 keeps each setup's trial count
  double refine_c = 2.0;
  SweepSettings sweep;
  GridSpec grid;
  int prototype_c_min = 2;
  int prototype_c_max = 7;

  const DetectorConfig& config_for(Algorithm a) const;
  bool has_files() const;
};

// Applies one `key=value` setting. Throws Error(kInvalidInput) for unknown
// keys and Error(kParse) for malformed values.
void apply_setting(RunSettings& s, const std::string& key,
                   const std::string& value);

// Parses flat `key=value` lines; '#' starts a comment.
void apply_config_text(RunSettings& s, const std::string& text);

// Loads the files when given, otherwise generates a collection large enough
// for `min_groups` groups.
Dataset load_universe(const RunSettings& s, int min_groups);

// Groups needed to sample each of the named setups.
int groups_needed(const std::vector<std::string>& setups);

std::vector<double> sweep_thresholds(const SweepSettings& s);
std::string run_sweep(const Dataset& universe, const RunSettings& s);

struct DetectEvalRow {
  Algorithm algorithm = Algorithm::kPM1;
  std::string setup;
  int trials = 0;
  double f = 0.0;
  double map = 0.0;
  double original_map = 0.0;
  double delta = 0.0;
  double delta_positive_fraction = 0.0;
  double groups = 0.0;   // mean detected group count
  double seconds = 0.0;  // total detection wall time, not written to CSV
  std::vector<double> trial_f;
  std::vector<double> trial_delta;
};

std::vector<std::string> detect_eval_default_setups();
std::vector<DetectEvalRow> run_detect_eval(const Dataset& universe,
                                           const RunSettings& s);
std::string detect_eval_to_csv(const std::vector<DetectEvalRow>& rows);
std::string timing_report(const std::vector<DetectEvalRow>& rows);

struct GridPoint {
  Algorithm algorithm = Algorithm::kPM1;
  DetectorConfig config;
  double f = 0.0;
  double map = 0.0;
};

struct GridResult {
  std::vector<GridPoint> points;
  std::vector<GridPoint> best_f;    // one per algorithm
  std::vector<GridPoint> best_map;  // one per algorithm
};

std::vector<std::string> grid_default_setups();
GridResult run_grid(const Dataset& universe, const RunSettings& s);
std::string grid_to_csv(const std::vector<GridPoint>& points);
std::string grid_best_to_csv(const GridResult& r);

enum class Objective { kF, kMap };
// Reads grid_best_to_csv output into per-algorithm overrides.
void apply_grid_best(RunSettings& s, const std::string& csv, Objective objective);
void apply_grid_best(RunSettings& s, const GridResult& r, Objective objective);

std::string run_prototype(const Dataset& universe, const RunSettings& s);

}  // namespace covernet

#endif  // COVERNET_PIPELINE_HPP_
