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

#include "covernet/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "covernet/error.hpp"
#include "covernet/rng.hpp"

namespace covernet {

namespace {

constexpr int kMaxPamIterations = 200;

std::vector<int> initial_medoids(const DissimilarityMatrix& m, int k,
                                 uint64_t seed) {
  const int n = m.size();
  auto rng = make_rng(seed, 0x6b6d);
  std::uniform_int_distribution<int> first(0, n - 1);
  std::vector<int> medoids{first(rng)};
  std::vector<char> chosen(n, 0);
  chosen[medoids[0]] = 1;
  std::vector<double> nearest(n);
  for (int i = 0; i < n; ++i) nearest[i] = m(i, medoids[0]);
  while (static_cast<int>(medoids.size()) < k) {
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      if (best < 0 || nearest[i] > nearest[best]) best = i;
    }
    medoids.push_back(best);
    chosen[best] = 1;
    for (int i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], m(i, best));
  }
  return medoids;
}

// Nearest medoid per item, ties to the lowest medoid position. Medoids are
// pinned to their own group.
double assign(const DissimilarityMatrix& m, const std::vector<int>& medoids,
              std::vector<int>& group) {
  const int n = m.size();
  const int k = static_cast<int>(medoids.size());
  std::vector<int> pinned(n, -1);
  for (int g = 0; g < k; ++g) pinned[medoids[g]] = g;
  double objective = 0.0;
  for (int i = 0; i < n; ++i) {
    if (pinned[i] >= 0) {
      group[i] = pinned[i];
      continue;
    }
    int best = 0;
    for (int g = 1; g < k; ++g) {
      if (m(i, medoids[g]) < m(i, medoids[best])) best = g;
    }
    group[i] = best;
    objective += m(i, medoids[best]);
  }
  return objective;
}

}  // namespace

KMedoidsResult kmedoids(const DissimilarityMatrix& m, int k, uint64_t seed) {
  const int n = m.size();
  require(k >= 1 && k <= n, "k must lie in [1, n]");
  require(m.is_symmetric(), "k-medoids requires a symmetric matrix");
  KMedoidsResult result;
  result.medoids = initial_medoids(m, k, seed);
  std::vector<int> group(n, 0);
  double objective = assign(m, result.medoids, group);
  result.trace.push_back(objective);
  for (int it = 0; it < kMaxPamIterations; ++it) {
    ++result.iterations;
    std::vector<std::vector<int>> members(k);
    for (int i = 0; i < n; ++i) members[group[i]].push_back(i);
    bool changed = false;
    for (int g = 0; g < k; ++g) {
      int best = result.medoids[g];
      double best_cost = 0.0;
      for (int j : members[g]) best_cost += m(best, j);
      for (int c : members[g]) {
        double cost = 0.0;
        for (int j : members[g]) cost += m(c, j);
        if (cost < best_cost || (cost == best_cost && c < best &&
                                 best != result.medoids[g])) {
          best = c;
          best_cost = cost;
        }
      }
      if (best != result.medoids[g]) {
        result.medoids[g] = best;
        changed = true;
      }
    }
    if (!changed) break;
    objective = assign(m, result.medoids, group);
    result.trace.push_back(objective);
  }
  result.objective = objective;
  // Group ids follow medoid order; canonicalise and reorder medoids to match.
  result.partition = Partition::from_labels(group);
  std::vector<int> reordered(k);
  for (int g = 0; g < k; ++g) {
    reordered[result.partition.group_of(result.medoids[g])] = result.medoids[g];
  }
  result.medoids = std::move(reordered);
  return result;
}

double silhouette(const DissimilarityMatrix& m, const Partition& p) {
  const int n = m.size();
  require(p.size() == n, "partition and matrix sizes differ");
  const int groups = p.group_count();
  if (groups < 2) return 0.0;
  const auto sizes = p.group_sizes();
  std::vector<double> sums(groups);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int own = p.group_of(i);
    if (sizes[own] < 2) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    auto row = m.row(i);
    for (int j = 0; j < n; ++j) sums[p.group_of(j)] += row[j];
    const double a = sums[own] / (sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int g = 0; g < groups; ++g) {
      if (g != own) b = std::min(b, sums[g] / sizes[g]);
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / n;
}

KSelection select_k(const DissimilarityMatrix& m, int k_min, int k_max,
                    uint64_t seed) {
  require(k_min >= 1 && k_min <= k_max && k_max <= m.size(),
          "k range must lie within [1, n]");
  KSelection best{k_min, -std::numeric_limits<double>::infinity()};
  for (int k = k_min; k <= k_max; ++k) {
    const double s = silhouette(m, kmedoids(m, k, seed).partition);
    if (s > best.score) best = {k, s};
  }
  return best;
}

KSelection select_k(const DissimilarityMatrix& m, std::span<const int> candidates,
                    uint64_t seed) {
  require(!candidates.empty(), "no candidate k values");
  require(std::is_sorted(candidates.begin(), candidates.end()),
          "candidate k values must be ascending");
  require(candidates.front() >= 1 && candidates.back() <= m.size(),
          "k range must lie within [1, n]");
  KSelection best{candidates.front(), -std::numeric_limits<double>::infinity()};
  for (int k : candidates) {
    const double s = silhouette(m, kmedoids(m, k, seed).partition);
    if (s > best.score) best = {k, s};
  }
  return best;
}

Dendrogram linkage(const DissimilarityMatrix& m, Linkage method) {
  require(m.is_symmetric(), "linkage requires a symmetric matrix");
  const int n = m.size();
  Dendrogram d;
  d.n = n;
  if (n < 2) return d;
  // Slot i holds the cluster whose lowest member is i.
  std::vector<double> dist(m.weights());
  auto at = [&](int i, int j) -> double& {
    return dist[static_cast<size_t>(i) * n + j];
  };
  std::vector<char> active(n, 1);
  std::vector<int> cluster_id(n);
  std::iota(cluster_id.begin(), cluster_id.end(), 0);
  std::vector<int> size(n, 1);
  std::vector<int> nn(n, -1);
  std::vector<double> nn_dist(n, std::numeric_limits<double>::infinity());

  auto rescan = [&](int i) {
    nn[i] = -1;
    nn_dist[i] = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j == i || !active[j]) continue;
      if (at(i, j) < nn_dist[i]) {
        nn_dist[i] = at(i, j);
        nn[i] = j;
      }
    }
  };
  for (int i = 0; i < n; ++i) rescan(i);

  for (int step = 0; step < n - 1; ++step) {
    int a = -1;
    for (int i = 0; i < n; ++i) {
      if (active[i] && nn[i] >= 0 && (a < 0 || nn_dist[i] < nn_dist[a])) a = i;
    }
    int b = nn[a];
    const double height = nn_dist[a];
    if (b < a) std::swap(a, b);
    d.merges.push_back({cluster_id[a], cluster_id[b], height, size[a] + size[b]});

    for (int k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      const double da = at(a, k);
      const double db = at(b, k);
      double v = 0.0;
      switch (method) {
        case Linkage::kSingle:
          v = std::min(da, db);
          break;
        case Linkage::kComplete:
          v = std::max(da, db);
          break;
        case Linkage::kAverage:
          v = (size[a] * da + size[b] * db) / (size[a] + size[b]);
          break;
        case Linkage::kWeighted:
          v = (da + db) / 2.0;
          break;
      }
      at(a, k) = v;
      at(k, a) = v;
    }
    active[b] = 0;
    size[a] += size[b];
    cluster_id[a] = n + step;

    rescan(a);
    for (int k = 0; k < n; ++k) {
      if (!active[k] || k == a) continue;
      if (nn[k] == a || nn[k] == b) {
        rescan(k);
      } else if (at(k, a) < nn_dist[k] ||
                 (at(k, a) == nn_dist[k] && a < nn[k])) {
        nn_dist[k] = at(k, a);
        nn[k] = a;
      }
    }
  }
  for (size_t k = 1; k < d.merges.size(); ++k) {
    if (d.merges[k].distance < d.merges[k - 1].distance) d.monotonic = false;
  }
  return d;
}

namespace {

// Unites the leaves under every merge accepted by `keep(k)`. `keep` must be
// closed under descent: an accepted merge has accepted children.
template <typename Keep>
Partition flatten(const Dendrogram& d, Keep keep) {
  const int n = d.n;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> leaf_of(n + d.merges.size());
  std::iota(leaf_of.begin(), leaf_of.begin() + n, 0);
  for (size_t k = 0; k < d.merges.size(); ++k) {
    const Merge& mg = d.merges[k];
    leaf_of[n + k] = leaf_of[mg.left];
    if (keep(k)) {
      const int ra = find(leaf_of[mg.left]);
      const int rb = find(leaf_of[mg.right]);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = find(i);
  return Partition::from_labels(labels);
}

// Per merge, the maximum of `value` over the merge and its merge descendants.
std::vector<double> subtree_max(const Dendrogram& d,
                                const std::vector<double>& value) {
  std::vector<double> out(value);
  for (size_t k = 0; k < d.merges.size(); ++k) {
    for (int child : {d.merges[k].left, d.merges[k].right}) {
      if (child >= d.n) out[k] = std::max(out[k], out[child - d.n]);
    }
  }
  return out;
}

}  // namespace

Partition cut_dendrogram(const Dendrogram& d, double d_th) {
  require(d_th >= 0.0, "distance threshold must be non-negative");
  std::vector<double> heights(d.merges.size());
  for (size_t k = 0; k < d.merges.size(); ++k) heights[k] = d.merges[k].distance;
  const auto top = subtree_max(d, heights);
  return flatten(d, [&](size_t k) { return top[k] <= d_th; });
}

std::vector<double> inconsistency(const Dendrogram& d, int depth) {
  require(depth >= 1, "depth must be at least 1");
  std::vector<double> coef(d.merges.size(), 0.0);
  std::vector<double> heights;
  std::vector<std::pair<int, int>> stack;  // (cluster id, level)
  for (size_t k = 0; k < d.merges.size(); ++k) {
    heights.clear();
    stack.clear();
    stack.push_back({d.merges[k].left, 1});
    stack.push_back({d.merges[k].right, 1});
    while (!stack.empty()) {
      auto [id, level] = stack.back();
      stack.pop_back();
      if (id < d.n || level > depth) continue;
      const Merge& child = d.merges[id - d.n];
      heights.push_back(child.distance);
      stack.push_back({child.left, level + 1});
      stack.push_back({child.right, level + 1});
    }
    if (heights.size() < 2) continue;
    const double mean =
        std::accumulate(heights.begin(), heights.end(), 0.0) / heights.size();
    double ss = 0.0;
    for (double h : heights) ss += (h - mean) * (h - mean);
    const double sd = std::sqrt(ss / (heights.size() - 1));
    if (sd > 0.0) coef[k] = (d.merges[k].distance - mean) / sd;
  }
  return coef;
}

Partition cut_inconsistent(const Dendrogram& d, int depth, double t) {
  const auto top = subtree_max(d, inconsistency(d, depth));
  return flatten(d, [&](size_t k) { return top[k] <= t; });
}

}  // namespace covernet
