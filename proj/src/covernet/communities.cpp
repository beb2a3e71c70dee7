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

#include "covernet/communities.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "covernet/error.hpp"

namespace covernet {

double modularity(const Network& g, const Partition& p) {
  require(!g.directed(), "modularity needs an undirected graph");
  require(p.size() == g.size(), "partition and graph sizes differ");
  double two_m = 0.0;
  std::vector<double> inner(p.group_count(), 0.0);
  std::vector<double> total(p.group_count(), 0.0);
  for (const Edge& e : g.edges()) {
    two_m += 2.0 * e.weight;
    total[p.group_of(e.source)] += e.weight;
    total[p.group_of(e.target)] += e.weight;
    if (p.group_of(e.source) == p.group_of(e.target)) {
      inner[p.group_of(e.source)] += 2.0 * e.weight;
    }
  }
  if (!(two_m > 0.0)) {
    fail(ErrorCode::kInvalidInput, "modularity undefined for zero total weight");
  }
  double q = 0.0;
  for (int c = 0; c < p.group_count(); ++c) {
    q += inner[c] / two_m - (total[c] / two_m) * (total[c] / two_m);
  }
  return q;
}

namespace {

// Weighted graph with self-loops used between Louvain levels. self[i] is A_ii
// and already counts both ends of internal edges.
struct LevelGraph {
  std::vector<std::vector<std::pair<int, double>>> adj;
  std::vector<double> self;

  int size() const { return static_cast<int>(adj.size()); }
};

// Returns the community of each node; `moved` reports whether any node left
// its starting singleton community.
std::vector<int> local_moves(const LevelGraph& g, bool& moved) {
  const int n = g.size();
  std::vector<double> strength(n, 0.0);
  double two_m = 0.0;
  for (int i = 0; i < n; ++i) {
    strength[i] = g.self[i];
    for (auto [j, w] : g.adj[i]) strength[i] += w;
    two_m += strength[i];
  }
  std::vector<int> community(n);
  for (int i = 0; i < n; ++i) community[i] = i;
  std::vector<double> tot(strength);
  moved = false;
  if (!(two_m > 0.0)) return community;

  const double eps = 1e-12 * two_m;
  std::vector<double> link(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<int> touched;
  constexpr int kMaxSweeps = 1000;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool any = false;
    for (int i = 0; i < n; ++i) {
      const int own = community[i];
      touched.clear();
      for (auto [j, w] : g.adj[i]) {
        const int c = community[j];
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        link[c] += w;
      }
      tot[own] -= strength[i];
      const double k = strength[i];
      double best_gain = link[own] - tot[own] * k / two_m;
      int best = own;
      std::sort(touched.begin(), touched.end());
      for (int c : touched) {
        if (c == own) continue;
        const double gain = link[c] - tot[c] * k / two_m;
        if (gain > best_gain + eps) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += strength[i];
      community[i] = best;
      if (best != own) {
        any = true;
        moved = true;
      }
      for (int c : touched) {
        link[c] = 0.0;
        seen[c] = 0;
      }
    }
    if (!any) break;
  }
  return community;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<int>& community,
                     int count) {
  LevelGraph out;
  out.adj.resize(count);
  out.self.assign(count, 0.0);
  std::vector<std::map<int, double>> acc(count);
  for (int i = 0; i < g.size(); ++i) {
    const int ci = community[i];
    out.self[ci] += g.self[i];
    for (auto [j, w] : g.adj[i]) {
      const int cj = community[j];
      if (ci == cj) {
        out.self[ci] += w;  // seen from both ends, so A_cc counts it twice
      } else {
        acc[ci][cj] += w;
      }
    }
  }
  for (int c = 0; c < count; ++c) {
    out.adj[c].assign(acc[c].begin(), acc[c].end());
  }
  return out;
}

}  // namespace

Partition louvain(const Network& g) {
  require(!g.directed(), "louvain needs an undirected graph");
  const int n = g.size();
  LevelGraph level;
  level.adj.resize(n);
  level.self.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    for (const Neighbor& nb : g.neighbors(v)) level.adj[v].push_back({nb.node, nb.weight});
  }
  std::vector<int> membership(n);
  for (int v = 0; v < n; ++v) membership[v] = v;
  while (true) {
    bool moved = false;
    const auto community = local_moves(level, moved);
    if (!moved) break;
    const Partition canon = Partition::from_labels(community);
    for (int v = 0; v < n; ++v) membership[v] = canon.group_of(membership[v]);
    level = aggregate(level, canon.assignment(), canon.group_count());
  }
  return Partition::from_labels(membership);
}

Network modularity_graph(const DissimilarityMatrix& m,
                         const CommunityConfig& cfg) {
  const Network thresholded = threshold_graph(m, cfg.w_th, false);
  std::vector<Edge> edges = thresholded.edges();
  for (Edge& e : edges) {
    switch (cfg.mo_weighting) {
      case MoWeighting::kLinear:
        e.weight = cfg.w_th - e.weight;
        break;
      case MoWeighting::kInverse:
        e.weight = 1.0 / std::max(e.weight, 1e-12);
        break;
      case MoWeighting::kUnweighted:
        e.weight = 1.0;
        break;
    }
  }
  return Network(m.size(), false, std::move(edges));
}

Partition detect_mo(const DissimilarityMatrix& m, const CommunityConfig& cfg) {
  return louvain(modularity_graph(m, cfg));
}

Network pruned_graph(const DissimilarityMatrix& m, const CommunityConfig& cfg) {
  require(cfg.r_th >= 1, "neighbour cap must be at least 1");
  const Network thresholded = threshold_graph(m, cfg.w_th, false);
  return knn_prune(thresholded, m, cfg.r_th, cfg.knn_rule);
}

Partition detect_pm1(const DissimilarityMatrix& m, const CommunityConfig& cfg) {
  return connected_components(pruned_graph(m, cfg));
}

TriangleObjective triangle_objective(const Network& g, int i, int j,
                                     double alpha) {
  require(i != j, "pair endpoints must differ");
  const Network u = g.undirected_projection();
  auto ni = u.neighbors(i);
  auto nj = u.neighbors(j);
  int common = 0;
  int exclusive = 0;
  size_t a = 0;
  size_t b = 0;
  while (a < ni.size() || b < nj.size()) {
    if (b == nj.size() || (a < ni.size() && ni[a].node < nj[b].node)) {
      if (ni[a].node != j) ++exclusive;
      ++a;
    } else if (a == ni.size() || nj[b].node < ni[a].node) {
      if (nj[b].node != i) ++exclusive;
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  return {common - alpha * exclusive, -alpha * common};
}

namespace {

// Mutable undirected graph for the pair pass.
class WorkingGraph {
 public:
  explicit WorkingGraph(const Network& g)
      : n_(g.size()), adj_(static_cast<size_t>(n_) * n_, 0), lists_(n_) {
    for (const Edge& e : g.edges()) add(e.source, e.target);
  }

  bool has(int i, int j) const { return adj_[static_cast<size_t>(i) * n_ + j]; }
  int degree(int i) const { return static_cast<int>(lists_[i].size()); }

  int common(int i, int j) const {
    const auto& small = lists_[i].size() <= lists_[j].size() ? lists_[i] : lists_[j];
    const int other = &small == &lists_[i] ? j : i;
    int count = 0;
    for (int k : small) count += has(other, k);
    return count;
  }

  void add(int i, int j) {
    adj_[static_cast<size_t>(i) * n_ + j] = adj_[static_cast<size_t>(j) * n_ + i] = 1;
    lists_[i].push_back(j);
    lists_[j].push_back(i);
  }

  void remove(int i, int j) {
    adj_[static_cast<size_t>(i) * n_ + j] = adj_[static_cast<size_t>(j) * n_ + i] = 0;
    erase(lists_[i], j);
    erase(lists_[j], i);
  }

  Network to_network() const {
    std::vector<Edge> edges;
    for (int i = 0; i < n_; ++i) {
      for (int j : lists_[i]) {
        if (i < j) edges.push_back({i, j, 1.0});
      }
    }
    return Network(n_, false, std::move(edges));
  }

 private:
  static void erase(std::vector<int>& v, int x) {
    auto it = std::find(v.begin(), v.end(), x);
    *it = v.back();
    v.pop_back();
  }

  int n_;
  std::vector<char> adj_;
  std::vector<std::vector<int>> lists_;
};

// One pass; returns the number of toggled edges.
template <typename Visit>
int64_t pair_pass(WorkingGraph& g, int n, double alpha, Visit visit,
                  PairPassStats& stats) {
  int64_t toggles = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!visit(i, j)) continue;
      ++stats.pairs_visited;
      if (stats.visited) stats.visited->push_back({i, j});
      const bool present = g.has(i, j);
      const int common = g.common(i, j);
      // Absent pair without common neighbours: adding only opens wedges.
      if (!present && common == 0) continue;
      const int exclusive =
          g.degree(i) + g.degree(j) - 2 * common - (present ? 2 : 0);
      const double with_edge = common - alpha * exclusive;
      const double without_edge = -alpha * common;
      if (!present && with_edge > without_edge) {
        g.add(i, j);
        ++stats.edges_added;
        ++toggles;
      } else if (present && without_edge > with_edge) {
        g.remove(i, j);
        ++stats.edges_removed;
        ++toggles;
      }
    }
  }
  return toggles;
}

template <typename Visit>
Partition triangle_refinement(const DissimilarityMatrix& m,
                              const CommunityConfig& cfg, Visit visit,
                              PairPassStats* stats) {
  require(cfg.alpha >= 0.0, "alpha must be non-negative");
  PairPassStats local;
  PairPassStats& s = stats ? *stats : local;
  WorkingGraph g(pruned_graph(m, cfg));
  const int max_passes = cfg.pm2_fixpoint ? 10 : 1;
  for (int pass = 0; pass < max_passes; ++pass) {
    ++s.passes;
    if (pair_pass(g, m.size(), cfg.alpha, visit, s) == 0) break;
  }
  return connected_components(g.to_network());
}

}  // namespace

Partition detect_pm2(const DissimilarityMatrix& m, const CommunityConfig& cfg,
                     PairPassStats* stats) {
  return triangle_refinement(m, cfg, [](int, int) { return true; }, stats);
}

Partition detect_pm3(const DissimilarityMatrix& m, const CommunityConfig& cfg,
                     PairPassStats* stats) {
  require(cfg.margin >= 0.0, "margin must be non-negative");
  const double w_th = cfg.w_th;
  const double margin = cfg.margin;
  auto near_threshold = [&m, w_th, margin](int i, int j) {
    return margin > 0.0 && std::abs(m(i, j) - w_th) <= margin;
  };
  return triangle_refinement(m, cfg, near_threshold, stats);
}

}  // namespace covernet
