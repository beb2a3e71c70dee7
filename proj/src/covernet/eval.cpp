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

#include "covernet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "covernet/error.hpp"

namespace covernet {

CountsPerSong song_counts(const Partition& predicted, const Partition& truth,
                          int item) {
  CountsPerSong c;
  const int pg = predicted.group_of(item);
  const int tg = truth.group_of(item);
  for (int j = 0; j < predicted.size(); ++j) {
    if (j == item) continue;
    const bool same_pred = predicted.group_of(j) == pg;
    const bool same_truth = truth.group_of(j) == tg;
    if (same_pred && same_truth) ++c.true_pos;
    if (same_pred && !same_truth) ++c.false_pos;
    if (!same_pred && same_truth) ++c.false_neg;
  }
  return c;
}

EvalReport per_song_f(const Partition& predicted, const Partition& truth) {
  require(predicted.size() == truth.size(),
          "predicted and truth partitions differ in size");
  const int n = predicted.size();
  EvalReport report;
  if (n == 0) return report;
  // Counts from group-size tables instead of per-item scans.
  const auto pred_sizes = predicted.group_sizes();
  const auto truth_sizes = truth.group_sizes();
  std::map<std::pair<int, int>, int> overlap;
  for (int i = 0; i < n; ++i) ++overlap[{predicted.group_of(i), truth.group_of(i)}];
  double p_sum = 0.0;
  double r_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const int pg = predicted.group_of(i);
    const int tg = truth.group_of(i);
    const int tp = overlap[{pg, tg}] - 1;
    const int fp = pred_sizes[pg] - 1 - tp;
    const int fn = truth_sizes[tg] - 1 - tp;
    p_sum += (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 1.0;
    r_sum += (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 1.0;
  }
  report.mean_precision = p_sum / n;
  report.mean_recall = r_sum / n;
  const double denom = report.mean_precision + report.mean_recall;
  report.f = denom > 0.0
                 ? 2.0 * report.mean_precision * report.mean_recall / denom
                 : 0.0;
  return report;
}

DissimilarityMatrix refine_matrix(const DissimilarityMatrix& m,
                                  const Partition& p, double c) {
  require(p.size() == m.size(), "partition and matrix sizes differ");
  require(c > 1.0, "block offset c must exceed 1");
  const double max_w = m.max_weight();
  require(max_w > 0.0, "refinement needs a non-zero maximum weight");
  const int n = m.size();
  std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double beta = p.group_of(i) == p.group_of(j) ? 0.0 : c;
      w[static_cast<size_t>(i) * n + j] = m(i, j) / max_w + beta;
    }
  }
  return DissimilarityMatrix(n, std::move(w), m.durations());
}

double average_precision(std::span<const int> ranking,
                         std::span<const char> relevant, int group_size) {
  require(group_size >= 2, "average precision needs a group of at least two");
  require(relevant.size() == ranking.size(),
          "relevance flags must match the ranking length");
  double sum = 0.0;
  int hits = 0;
  for (size_t r = 0; r < ranking.size(); ++r) {
    if (relevant[r]) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(r + 1);
    }
  }
  return sum / (group_size - 1);
}

std::vector<int> ranking_for(const DissimilarityMatrix& m, int query) {
  std::vector<int> order;
  order.reserve(m.size() > 0 ? m.size() - 1 : 0);
  for (int j = 0; j < m.size(); ++j) {
    if (j != query) order.push_back(j);
  }
  auto row = m.row(query);
  std::stable_sort(order.begin(), order.end(),
                   [&row](int a, int b) { return row[a] < row[b]; });
  return order;
}

double map_score(const DissimilarityMatrix& m, const Partition& truth,
                 std::vector<QueryPrecision>* per_query) {
  require(truth.size() == m.size(), "truth and matrix sizes differ");
  const int n = m.size();
  const auto groups = truth.groups();
  double sum = 0.0;
  int queries = 0;
  std::vector<int> ranks;
  for (int q = 0; q < n; ++q) {
    const auto& members = groups[truth.group_of(q)];
    const int c = static_cast<int>(members.size());
    if (c < 2) continue;
    auto row = m.row(q);
    // Rank of each cover: items strictly ahead in (weight, index) order, + 1.
    ranks.clear();
    for (int r : members) {
      if (r == q) continue;
      int ahead = 0;
      for (int j = 0; j < n; ++j) {
        if (j == q || j == r) continue;
        if (row[j] < row[r] || (row[j] == row[r] && j < r)) ++ahead;
      }
      ranks.push_back(ahead + 1);
    }
    std::sort(ranks.begin(), ranks.end());
    double ap = 0.0;
    for (size_t k = 0; k < ranks.size(); ++k) {
      ap += static_cast<double>(k + 1) / ranks[k];
    }
    ap /= (c - 1);
    if (per_query) per_query->push_back({q, ap});
    sum += ap;
    ++queries;
  }
  if (queries == 0) {
    fail(ErrorCode::kInvalidInput, "no query has a cover to retrieve");
  }
  return sum / queries;
}

double relative_map_increase(double map_refined, double map_original) {
  require(map_original > 0.0, "original MAP must be positive");
  return 100.0 * (map_refined / map_original - 1.0);
}

double binomial_pvalue(int hits, int trials, double p_null) {
  require(hits >= 0 && hits <= trials, "hits must lie in [0, trials]");
  require(p_null > 0.0 && p_null < 1.0, "null probability must lie in (0, 1)");
  if (hits == 0) return 1.0;
  const double log_p = std::log(p_null);
  const double log_q = std::log1p(-p_null);
  const double log_n = std::lgamma(trials + 1.0);
  double tail = 0.0;
  for (int k = hits; k <= trials; ++k) {
    const double log_term = log_n - std::lgamma(k + 1.0) -
                            std::lgamma(trials - k + 1.0) + k * log_p +
                            (trials - k) * log_q;
    tail += std::exp(log_term);
  }
  return std::min(tail, 1.0);
}

EvalReport evaluate(const DissimilarityMatrix& symmetric,
                    const Partition& predicted, const Partition& truth,
                    double c) {
  EvalReport report = per_song_f(predicted, truth);
  const double original = map_score(symmetric, truth);
  const DissimilarityMatrix refined = refine_matrix(symmetric, predicted, c);
  report.map = map_score(refined, truth, &report.per_query);
  report.delta = relative_map_increase(report.map, original);
  return report;
}

std::string eval_report_to_csv(const EvalReport& r, bool include_queries) {
  std::string out = "mean_precision,mean_recall,f,map,delta\n";
  out += format_double(r.mean_precision) + "," + format_double(r.mean_recall) +
         "," + format_double(r.f) + "," + format_double(r.map) + "," +
         format_double(r.delta) + "\n";
  if (include_queries) {
    out += "query,average_precision\n";
    for (const auto& q : r.per_query) {
      out += std::to_string(q.query) + "," + format_double(q.average_precision) + "\n";
    }
  }
  return out;
}

}  // namespace covernet
