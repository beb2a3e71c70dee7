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

#include "covernet/network.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "covernet/error.hpp"

namespace covernet {

namespace {

void build_csr(int n, const std::vector<std::pair<int, Neighbor>>& entries,
               std::vector<size_t>& offsets, std::vector<Neighbor>& adj) {
  offsets.assign(n + 1, 0);
  for (const auto& e : entries) ++offsets[e.first + 1];
  for (int v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  adj.resize(entries.size());
  std::vector<size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& e : entries) adj[cursor[e.first]++] = e.second;
  for (int v = 0; v < n; ++v) {
    std::sort(adj.begin() + offsets[v], adj.begin() + offsets[v + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Network::Network(int n, bool directed, std::vector<Edge> edges)
    : n_(n), directed_(directed), edges_(std::move(edges)) {
  require(n >= 0, "network size must be non-negative");
  for (Edge& e : edges_) {
    require(e.source >= 0 && e.source < n && e.target >= 0 && e.target < n,
            "edge endpoint out of range");
    require(e.source != e.target, "self-loops are not allowed");
    if (!directed_ && e.source > e.target) std::swap(e.source, e.target);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  for (size_t k = 1; k < edges_.size(); ++k) {
    require(edges_[k].source != edges_[k - 1].source ||
                edges_[k].target != edges_[k - 1].target,
            "duplicate edge (" + std::to_string(edges_[k].source) + "," +
                std::to_string(edges_[k].target) + ")");
  }

  std::vector<std::pair<int, Neighbor>> out;
  std::vector<std::pair<int, Neighbor>> in;
  out.reserve(edges_.size() * (directed_ ? 1 : 2));
  for (const Edge& e : edges_) {
    out.push_back({e.source, {e.target, e.weight}});
    if (directed_) {
      in.push_back({e.target, {e.source, e.weight}});
    } else {
      out.push_back({e.target, {e.source, e.weight}});
    }
  }
  build_csr(n_, out, out_offsets_, out_adj_);
  if (directed_) build_csr(n_, in, in_offsets_, in_adj_);
}

std::span<const Neighbor> Network::in_neighbors(int v) const {
  if (!directed_) return neighbors(v);
  return {in_adj_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

bool Network::has_edge(int u, int v) const {
  if (!directed_ && u > v) std::swap(u, v);
  auto nb = neighbors(u);
  auto it = std::lower_bound(
      nb.begin(), nb.end(), v,
      [](const Neighbor& a, int node) { return a.node < node; });
  return it != nb.end() && it->node == v;
}

Network Network::undirected_projection() const {
  if (!directed_) return *this;
  std::vector<Edge> merged;
  merged.reserve(edges_.size());
  for (const Edge& e : edges_) {
    merged.push_back({std::min(e.source, e.target),
                      std::max(e.source, e.target), e.weight});
  }
  std::sort(merged.begin(), merged.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.source, a.target, a.weight) <
           std::tie(b.source, b.target, b.weight);
  });
  // The first entry of each (source, target) run carries the smaller weight.
  merged.erase(std::unique(merged.begin(), merged.end(),
                           [](const Edge& a, const Edge& b) {
                             return a.source == b.source &&
                                    a.target == b.target;
                           }),
               merged.end());
  return Network(n_, false, std::move(merged));
}

Network threshold_graph(const DissimilarityMatrix& m, double t, bool directed) {
  require(t > 0.0, "threshold must be positive");
  if (!directed) {
    require(m.is_symmetric(),
            "undirected thresholding requires a symmetric matrix");
  }
  const int n = m.size();
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    auto row = m.row(i);
    for (int j = directed ? 0 : i + 1; j < n; ++j) {
      if (i != j && row[j] <= t) edges.push_back({i, j, row[j]});
    }
  }
  return Network(n, directed, std::move(edges));
}

Network knn_prune(const Network& g, const DissimilarityMatrix& m, int r,
                  KnnRule rule) {
  require(r >= 1, "neighbour cap must be at least 1");
  require(g.size() == m.size(), "graph and matrix sizes differ");
  const int n = g.size();
  // selected[i] holds the targets node i keeps, ascending.
  std::vector<std::vector<int>> selected(n);
  std::vector<std::pair<double, int>> candidates;
  for (int i = 0; i < n; ++i) {
    candidates.clear();
    for (const Neighbor& nb : g.neighbors(i)) {
      candidates.push_back({m(i, nb.node), nb.node});
    }
    const size_t keep = std::min<size_t>(r, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + keep,
                      candidates.end());
    for (size_t k = 0; k < keep; ++k) selected[i].push_back(candidates[k].second);
    std::sort(selected[i].begin(), selected[i].end());
  }
  auto picks = [&](int a, int b) {
    return std::binary_search(selected[a].begin(), selected[a].end(), b);
  };
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j : selected[i]) {
      const int lo = std::min(i, j);
      const int hi = std::max(i, j);
      const bool other = picks(j, i);
      bool keep = false;
      if (rule == KnnRule::kUnion) {
        // Emit once: from the lower endpoint, or from the higher one when the
        // lower endpoint did not pick this edge.
        keep = (i == lo) || !other;
      } else {
        keep = (i == lo) && other;
      }
      if (keep) edges.push_back({lo, hi, (m(lo, hi) + m(hi, lo)) / 2.0});
    }
  }
  return Network(n, false, std::move(edges));
}

Partition connected_components(const Network& g) {
  DisjointSets sets(g.size());
  for (const Edge& e : g.edges()) sets.unite(e.source, e.target);
  std::vector<int> labels(g.size());
  for (int v = 0; v < g.size(); ++v) labels[v] = sets.find(v);
  return Partition::from_labels(labels);
}

Partition strong_components(const Network& g) {
  if (!g.directed()) return connected_components(g);
  // Iterative Tarjan.
  const int n = g.size();
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<int> label(n, -1);
  std::vector<std::pair<int, size_t>> call;  // (node, next neighbour offset)
  int counter = 0;
  int components = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      auto nb = g.neighbors(v);
      if (next < nb.size()) {
        const int w = nb[next++].node;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          label[w] = components;
        } while (w != v);
        ++components;
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        int parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return Partition::from_labels(label);
}

Network minimum_spanning_tree(const Network& g) {
  require(!g.directed(), "minimum spanning tree needs an undirected graph");
  const int n = g.size();
  std::vector<Edge> order = g.edges();
  std::sort(order.begin(), order.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.weight, a.source, a.target) <
           std::tie(b.weight, b.source, b.target);
  });
  DisjointSets sets(n);
  std::vector<Edge> tree;
  tree.reserve(n > 0 ? n - 1 : 0);
  for (const Edge& e : order) {
    if (sets.unite(e.source, e.target)) tree.push_back(e);
  }
  if (n > 0 && static_cast<int>(tree.size()) != n - 1) {
    fail(ErrorCode::kInvalidInput,
         "minimum spanning tree needs a connected graph");
  }
  return Network(n, false, std::move(tree));
}

}  // namespace covernet
