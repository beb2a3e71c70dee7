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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "covernet/error.hpp"
#include "covernet/eval.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace covernet {
namespace {

using testing::random_matrix;
using testing::random_partition;

TEST(PerSongF, MatchesDirectOracle) {
  for (int t = 0; t < 20; ++t) {
    const int n = 5 + t * 3;
    const auto pred = random_partition(n, 1 + t % 7, 100 + t);
    const auto truth = random_partition(n, 2 + t % 5, 200 + t);
    const auto r = per_song_f(pred, truth);
    const auto o = oracle::per_song_f(pred, truth);
    EXPECT_EQ(r.mean_precision, o.mean_precision) << t;
    EXPECT_EQ(r.mean_recall, o.mean_recall) << t;
    EXPECT_EQ(r.f, o.f) << t;
  }
}

TEST(PerSongF, CountsAndExtremes) {
  const std::vector<int> t{0, 0, 0, 1};
  const std::vector<int> p{0, 0, 1, 1};
  const auto c = song_counts(Partition::from_labels(p), Partition::from_labels(t), 0);
  EXPECT_EQ(c.true_pos, 1);
  EXPECT_EQ(c.false_pos, 0);
  EXPECT_EQ(c.false_neg, 1);
  const auto truth = Partition::from_labels(t);
  EXPECT_EQ(per_song_f(truth, truth).f, 1.0);
  // All singletons: precision 1 everywhere, recall 0 for grouped items.
  const auto s = per_song_f(Partition::singletons(4), truth);
  EXPECT_EQ(s.mean_precision, 1.0);
  EXPECT_EQ(s.mean_recall, 0.25);
  EXPECT_THROW(per_song_f(Partition::singletons(3), truth), Error);
}

TEST(AveragePrecision, MatchesDirectOracle) {
  for (int t = 0; t < 20; ++t) {
    const int n = 6 + t;
    // Few weight levels so that ties exercise the index rule.
    const auto m = random_matrix(n, 300 + t, 4);
    const auto truth = random_partition(n, 2 + t % 3, 400 + t);
    const auto sizes = truth.group_sizes();
    for (int q = 0; q < n; ++q) {
      const int c = sizes[truth.group_of(q)];
      if (c < 2) continue;
      const auto ranking = ranking_for(m, q);
      std::vector<char> rel;
      for (int j : ranking) rel.push_back(truth.group_of(j) == truth.group_of(q));
      EXPECT_EQ(average_precision(ranking, rel, c), oracle::average_precision(m, truth, q));
    }
  }
}

TEST(Map, MatchesDirectOracle) {
  for (int t = 0; t < 20; ++t) {
    const int n = 6 + 2 * t;
    const auto m = random_matrix(n, 500 + t, t % 2 ? 3 : 0);
    const auto truth = random_partition(n, 2 + t % 4, 600 + t);
    std::vector<QueryPrecision> per_query;
    EXPECT_EQ(map_score(m, truth, &per_query), oracle::mean_average_precision(m, truth)) << t;
    for (const auto& qp : per_query) {
      EXPECT_EQ(qp.average_precision, oracle::average_precision(m, truth, qp.query));
    }
  }
}

TEST(Map, PerfectAndWorstRankings) {
  // Two pairs; covers ranked first, then last.
  const DissimilarityMatrix good(4, {0, .1, .9, .9, .1, 0, .9, .9, .9, .9, 0, .1, .9, .9, .1, 0},
                                 {1, 1, 1, 1});
  const std::vector<int> labels{0, 0, 1, 1};
  const auto truth = Partition::from_labels(labels);
  EXPECT_EQ(map_score(good, truth), 1.0);
  const DissimilarityMatrix bad(4, {0, .9, .1, .1, .9, 0, .1, .1, .1, .1, 0, .9, .1, .1, .9, 0},
                                {1, 1, 1, 1});
  EXPECT_EQ(map_score(bad, truth), 1.0 / 3.0);
  EXPECT_THROW(map_score(good, Partition::singletons(4)), Error);
}

TEST(Refine, BlockOffsetAndScaling) {
  const auto m = random_matrix(6, 7, 0, true);
  const auto p = random_partition(6, 2, 8);
  const auto r = refine_matrix(m, p, 2.0);
  const double mx = m.max_weight();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (i == j) {
        EXPECT_EQ(r(i, j), 0.0);
        continue;
      }
      const double expect = m(i, j) / mx + (p.group_of(i) == p.group_of(j) ? 0.0 : 2.0);
      EXPECT_EQ(r(i, j), expect);
    }
  EXPECT_THROW(refine_matrix(m, p, 1.0), Error);
}

TEST(Refine, RankingsInvariantToOffset) {
  for (int t = 0; t < 20; ++t) {
    const int n = 10 + t;
    const auto m = random_matrix(n, 700 + t, t % 3 ? 0 : 5, true);
    const auto p = random_partition(n, 3 + t % 4, 800 + t);
    const auto base = refine_matrix(m, p, 2.0);
    for (double c : {1.5, 10.0}) {
      const auto other = refine_matrix(m, p, c);
      for (int q = 0; q < n; ++q) EXPECT_EQ(ranking_for(other, q), ranking_for(base, q));
    }
  }
}

TEST(Refine, PerfectPartitionGivesPerfectMap) {
  const auto m = random_matrix(12, 5, 0, true);
  const auto truth = random_partition(12, 3, 6);
  const auto r = evaluate(m, truth, truth);
  EXPECT_EQ(r.f, 1.0);
  EXPECT_EQ(r.map, 1.0);
  EXPECT_DOUBLE_EQ(r.delta, 100.0 * (1.0 / map_score(m, truth) - 1.0));
}

TEST(Delta, Formula) {
  EXPECT_NEAR(relative_map_increase(0.66, 0.6), 10.0, 1e-12);
  EXPECT_THROW(relative_map_increase(0.5, 0.0), Error);
}

double binomial_tail_oracle(int k, int n, double p) {
  double tail = 0;
  for (int j = k; j <= n; ++j) {
    double c = 1;
    for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    tail += c * std::pow(p, j) * std::pow(1 - p, n - j);
  }
  return tail;
}

TEST(Binomial, TailMatchesDirectSum) {
  for (int n : {1, 5, 20, 60})
    for (int k = 0; k <= n; k += 1 + n / 7)
      for (double p : {0.5, 1.0 / 3, 0.2})
        EXPECT_NEAR(binomial_pvalue(k, n, p), binomial_tail_oracle(k, n, p), 1e-12);
  EXPECT_EQ(binomial_pvalue(0, 10, 0.5), 1.0);
  EXPECT_NEAR(binomial_pvalue(10, 10, 0.5), std::pow(0.5, 10), 1e-15);
  EXPECT_THROW(binomial_pvalue(11, 10, 0.5), Error);
}

TEST(EvalCsv, HeaderAndQueries) {
  EvalReport r;
  r.f = 0.5;
  r.per_query = {{0, 1.0}, {2, 0.5}};
  const auto csv = eval_report_to_csv(r, true);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "mean_precision,mean_recall,f,map,delta");
  EXPECT_NE(csv.find("2,0.5\n"), std::string::npos);
  EXPECT_EQ(eval_report_to_csv(r, false).find("query"), std::string::npos);
}

}  // namespace
}  // namespace covernet
