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

#ifndef COVERNET_COMMUNITIES_HPP_
#define COVERNET_COMMUNITIES_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "covernet/matrix.hpp"
#include "covernet/network.hpp"
#include "covernet/partition.hpp"

namespace covernet {

// Edge weights handed to modularity optimisation, derived from a surviving
// dissimilarity w' <= w_th.
enum class MoWeighting {
  kLinear,      // w_th - w'
  kInverse,     // 1 / w'
  kUnweighted,  // 1
};

struct CommunityConfig {
  double w_th = 0.5;    // dissimilarity threshold
  int r_th = 2;         // nearest-neighbour cap per node
  double alpha = 1.0;   // wedge penalty in the triangle objective
  double margin = 0.05; // band around w_th visited by the restricted pass
  uint64_t seed = 0;
  KnnRule knn_rule = KnnRule::kUnion;
  MoWeighting mo_weighting = MoWeighting::kLinear;
  bool pm2_fixpoint = false;  // repeat the pair pass until stable (max 10)
};

// Newman-Girvan weighted modularity of an undirected graph. Throws when the
// total edge weight is zero.
double modularity(const Network& g, const Partition& p);

// Multi-level Louvain: local moves in node-index order accepted only on a
// strictly positive gain (ties to the lowest community id), then
// aggregation, until a level makes no move.
Partition louvain(const Network& g);

// Thresholded similarity graph used by detect_mo.
Network modularity_graph(const DissimilarityMatrix& m,
                         const CommunityConfig& cfg);

Partition detect_mo(const DissimilarityMatrix& m, const CommunityConfig& cfg);

// Threshold at w_th, then keep r_th nearest neighbours per node.
Network pruned_graph(const DissimilarityMatrix& m, const CommunityConfig& cfg);

// Connected components of pruned_graph.
Partition detect_pm1(const DissimilarityMatrix& m, const CommunityConfig& cfg);

struct TriangleObjective {
  double with_edge = 0.0;
  double without_edge = 0.0;
};

// Local change of (complete triangles - alpha * wedges) around the pair.
// With the edge: common neighbours close triangles and every neighbour of
// exactly one endpoint opens a wedge. Without it: each common neighbour is
// the centre of a wedge.
TriangleObjective triangle_objective(const Network& g, int i, int j,
                                     double alpha);

struct PairPassStats {
  int64_t pairs_visited = 0;
  int64_t edges_added = 0;
  int64_t edges_removed = 0;
  int passes = 0;
  // When set, receives every visited pair in visiting order.
  std::vector<std::pair<int, int>>* visited = nullptr;
};

// Pair pass over the pruned graph in lexicographic pair order: each pair
// takes the edge state with the larger objective, ties keeping the current
// state. Groups are the connected components of the result.
Partition detect_pm2(const DissimilarityMatrix& m, const CommunityConfig& cfg,
                     PairPassStats* stats = nullptr);

// As detect_pm2, visiting only pairs with |w'(i,j) - w_th| <= margin. A zero
// margin visits nothing.
Partition detect_pm3(const DissimilarityMatrix& m, const CommunityConfig& cfg,
                     PairPassStats* stats = nullptr);

}  // namespace covernet

#endif  // COVERNET_COMMUNITIES_HPP_
