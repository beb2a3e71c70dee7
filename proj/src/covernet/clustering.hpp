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

#ifndef COVERNET_CLUSTERING_HPP_
#define COVERNET_CLUSTERING_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "covernet/matrix.hpp"
#include "covernet/partition.hpp"

namespace covernet {

struct KMedoidsResult {
  Partition partition;
  std::vector<int> medoids;  // medoid of group g is medoids[g]
  double objective = 0.0;    // sum of item-to-medoid dissimilarities
  int iterations = 0;
  // Objective after every assign/re-elect round, first entry after the
  // initial assignment.
  std::vector<double> trace;
};

// PAM-style alternation on a symmetric matrix. Initial medoids: one drawn
// from `seed`, then greedy farthest-point picks (ties by lowest index).
// Re-election keeps the current medoid on ties, which guarantees termination.
KMedoidsResult kmedoids(const DissimilarityMatrix& m, int k, uint64_t seed);

// Mean silhouette; singleton groups score 0 and a single group scores 0.
double silhouette(const DissimilarityMatrix& m, const Partition& p);

struct KSelection {
  int k = 0;
  double score = 0.0;
};

// k in [k_min, k_max] maximising the silhouette of kmedoids; ties take the
// smallest k.
KSelection select_k(const DissimilarityMatrix& m, int k_min, int k_max,
                    uint64_t seed);

// Same rule over an explicit, ascending list of candidate k values.
KSelection select_k(const DissimilarityMatrix& m, std::span<const int> candidates,
                    uint64_t seed);

enum class Linkage {
  kSingle,    // SL
  kComplete,  // CL
  kAverage,   // UPGMA
  kWeighted,  // WPGMA
};

// One agglomeration step. Leaves are clusters 0..n-1; merge k creates cluster
// n + k.
struct Merge {
  int left = 0;
  int right = 0;
  double distance = 0.0;
  int size = 0;
};

struct Dendrogram {
  int n = 0;
  std::vector<Merge> merges;
  bool monotonic = true;
};

// Lance-Williams agglomeration. At each step the closest pair is merged; ties
// go to the pair whose lowest member indices are smallest.
Dendrogram linkage(const DissimilarityMatrix& m, Linkage method);

// Flat clusters are the maximal subtrees whose merges all lie at or below
// `d_th`. For monotone dendrograms this is plain height cutting.
Partition cut_dendrogram(const Dendrogram& d, double d_th);

// Inconsistency of each merge: its height minus the mean of the descendant
// merge heights within `depth` levels below it, over their sample standard
// deviation (0 with fewer than two descendants or zero spread).
std::vector<double> inconsistency(const Dendrogram& d, int depth);

// Flat clusters are the maximal subtrees whose inconsistencies are all <= t.
Partition cut_inconsistent(const Dendrogram& d, int depth, double t);

}  // namespace covernet

#endif  // COVERNET_CLUSTERING_HPP_
