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

#ifndef COVERNET_METRICS_HPP_
#define COVERNET_METRICS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "covernet/matrix.hpp"
#include "covernet/network.hpp"

namespace covernet {

// Whole-network statistics at one threshold. Counts are stored as doubles so
// that Monte Carlo means share the type.
struct MetricsRow {
  double threshold = 0.0;
  double density = 0.0;
  double component_count = 0.0;
  double giant_strong_size = 0.0;
  double isolated_count = 0.0;
  double efficiency = 0.0;
  double clustering_coefficient = 0.0;
};

enum class EfficiencyDistance {
  kHops,      // unweighted shortest paths
  kWeighted,  // shortest paths over edge weights, normalised by direct weights
};

// Density counts directed links (an undirected edge counts twice).
// Efficiency is the mean of 1/d over ordered pairs, unreachable pairs giving 0.
// In weighted mode the harmonic sum is divided by the sum of 1/m(i,j) over all
// pairs and clamped to [0, 1]. Clustering is the mean local coefficient of the
// undirected, unweighted projection; nodes of degree < 2 contribute 0.
MetricsRow compute_metrics(const Network& g, const DissimilarityMatrix& m,
                           EfficiencyDistance distance = EfficiencyDistance::kHops);

struct BaselineStats {
  MetricsRow mean;
  MetricsRow stddev;  // per-trial sample standard deviation
  int trials = 0;

  // Standard error of the mean for one metric's stddev value.
  double standard_error(double sd) const;
};

// Metrics averaged over `trials` uniform random directed graphs with exactly
// `links` distinct edges. Trial t draws from a generator seeded by
// (seed, stream, t), so results do not depend on evaluation order.
BaselineStats er_baseline(int n, int64_t links, int trials, uint64_t seed,
                          EfficiencyDistance distance = EfficiencyDistance::kHops,
                          uint64_t stream = 0);

// Uniform directed graph with n nodes and exactly `links` edges.
Network random_directed_graph(int n, int64_t links, uint64_t seed,
                              uint64_t stream, uint64_t trial);

struct SweepRow {
  MetricsRow observed;
  BaselineStats baseline;
};

// Thresholds must be strictly increasing. Graphs are directed over m as given.
std::vector<SweepRow> threshold_sweep(
    const DissimilarityMatrix& m, std::span<const double> thresholds,
    int trials, uint64_t seed,
    EfficiencyDistance distance = EfficiencyDistance::kHops);

// Header plus one row per threshold: threshold, six observed metrics, six
// baseline means.
std::string sweep_to_csv(std::span<const SweepRow> rows);

}  // namespace covernet

#endif  // COVERNET_METRICS_HPP_
