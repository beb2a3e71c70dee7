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

#ifndef COVERNET_EVAL_HPP_
#define COVERNET_EVAL_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "covernet/matrix.hpp"
#include "covernet/partition.hpp"

namespace covernet {

struct CountsPerSong {
  int true_pos = 0;
  int false_pos = 0;
  int false_neg = 0;
};

struct QueryPrecision {
  int query = 0;
  double average_precision = 0.0;
};

struct EvalReport {
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double f = 0.0;
  double map = 0.0;
  double delta = 0.0;  // percent
  std::vector<QueryPrecision> per_query;
};

// Counts for one item against the ground truth.
CountsPerSong song_counts(const Partition& predicted, const Partition& truth,
                          int item);

// Per-item precision and recall averaged over all items, combined into F.
// A zero denominator scores 1 (nothing could have been got wrong).
EvalReport per_song_f(const Partition& predicted, const Partition& truth);

// w'(i,j) / max(w') plus c for pairs in different predicted groups.
DissimilarityMatrix refine_matrix(const DissimilarityMatrix& m,
                                  const Partition& p, double c = 2.0);

// `relevant` marks which ranked entries are covers of the query; `group_size`
// is the query's ground-truth group size C (>= 2).
double average_precision(std::span<const int> ranking,
                         std::span<const char> relevant, int group_size);

// Items other than the query sorted by row dissimilarity, ties by index.
std::vector<int> ranking_for(const DissimilarityMatrix& m, int query);

// Mean average precision over queries whose ground-truth group has at least
// two members. Per-query values are returned in query order.
double map_score(const DissimilarityMatrix& m, const Partition& truth,
                 std::vector<QueryPrecision>* per_query = nullptr);

// 100 * (refined / original - 1).
double relative_map_increase(double map_refined, double map_original);

// P[X >= hits] for X ~ Binomial(trials, p_null), by exact summation.
double binomial_pvalue(int hits, int trials, double p_null);

// Full evaluation of a detected partition: F against the truth, MAP of the
// refined and original matrices, and their relative increase.
EvalReport evaluate(const DissimilarityMatrix& symmetric,
                    const Partition& predicted, const Partition& truth,
                    double c = 2.0);

// Header plus one summary row; per-query rows follow when requested.
std::string eval_report_to_csv(const EvalReport& r, bool include_queries);

}  // namespace covernet

#endif  // COVERNET_EVAL_HPP_
