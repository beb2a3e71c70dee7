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

#ifndef COVERNET_NETWORK_HPP_
#define COVERNET_NETWORK_HPP_

#include <compare>
#include <span>
#include <vector>

#include "covernet/matrix.hpp"
#include "covernet/partition.hpp"

namespace covernet {

struct Edge {
  int source = 0;
  int target = 0;
  double weight = 0.0;

  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  int node = 0;
  double weight = 0.0;
};

// Sparse weighted graph. Edges are kept sorted by (source, target); an
// undirected edge is stored once with source < target. Adjacency is indexed
// in CSR form at construction.
class Network {
 public:
  Network() = default;
  // Undirected edges given with source > target are flipped. Self-loops and
  // duplicate pairs throw Error(kInvalidInput).
  Network(int n, bool directed, std::vector<Edge> edges);

  int size() const { return n_; }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges() const { return edges_; }
  size_t edge_count() const { return edges_.size(); }

  // Out-neighbours (directed) or all neighbours (undirected), ascending.
  std::span<const Neighbor> neighbors(int v) const {
    return {out_adj_.data() + out_offsets_[v],
            out_offsets_[v + 1] - out_offsets_[v]};
  }
  // In-neighbours; same as neighbors() when undirected.
  std::span<const Neighbor> in_neighbors(int v) const;

  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(int u, int v) const;

  // Undirected graph with an edge wherever either direction exists; the
  // weight is the smaller of the two directions.
  Network undirected_projection() const;

  bool operator==(const Network& other) const {
    return n_ == other.n_ && directed_ == other.directed_ &&
           edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
  std::vector<size_t> out_offsets_{0};
  std::vector<Neighbor> out_adj_;
  std::vector<size_t> in_offsets_{0};
  std::vector<Neighbor> in_adj_;
};

// Edge (i, j) present iff m(i, j) <= t. Undirected mode requires a symmetric
// matrix.
Network threshold_graph(const DissimilarityMatrix& m, double t, bool directed);

enum class KnnRule {
  kUnion,         // edge survives if either endpoint selects it
  kIntersection,  // edge survives only if both endpoints select it
};

// Each node keeps its r lowest-weight neighbours in g (ties by lowest index),
// weights read from m. The result is undirected with weight
// (m(i,j) + m(j,i)) / 2.
Network knn_prune(const Network& g, const DissimilarityMatrix& m, int r,
                  KnnRule rule = KnnRule::kUnion);

// Weakly connected components; directed edges are treated as undirected.
Partition connected_components(const Network& g);

Partition strong_components(const Network& g);

// Kruskal with ties broken by (weight, source, target). Throws on directed or
// disconnected input.
Network minimum_spanning_tree(const Network& g);

}  // namespace covernet

#endif  // COVERNET_NETWORK_HPP_
