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

#include "covernet/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

#include "covernet/error.hpp"
#include "covernet/rng.hpp"

namespace covernet {

namespace {

constexpr double kMinWeight = 1e-12;

class BitMatrix {
 public:
  explicit BitMatrix(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<size_t>(n) * words_, 0) {}
  void set(int r, int c) { row(r)[c >> 6] |= uint64_t{1} << (c & 63); }
  uint64_t* row(int r) { return bits_.data() + static_cast<size_t>(r) * words_; }
  const uint64_t* row(int r) const { return bits_.data() + static_cast<size_t>(r) * words_; }
  int words() const { return words_; }

 private:
  int n_;
  int words_;
  std::vector<uint64_t> bits_;
};

// Sum over ordered pairs of 1/hops; CSR breadth-first search per source.
double harmonic_hops_sparse(const Network& g) {
  const int n = g.size();
  std::vector<int> stamp(n, -1);
  std::vector<int> frontier;
  std::vector<int> next;
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    stamp[s] = s;
    frontier.assign(1, s);
    int depth = 0;
    while (!frontier.empty()) {
      ++depth;
      next.clear();
      for (int v : frontier) {
        for (const Neighbor& nb : g.neighbors(v)) {
          if (stamp[nb.node] != s) {
            stamp[nb.node] = s;
            next.push_back(nb.node);
          }
        }
      }
      total += static_cast<double>(next.size()) / depth;
      frontier.swap(next);
    }
  }
  return total;
}

// Same quantity with word-parallel frontier expansion; cheaper on dense graphs.
double harmonic_hops_dense(const Network& g) {
  const int n = g.size();
  BitMatrix adj(n);
  for (int v = 0; v < n; ++v) {
    for (const Neighbor& nb : g.neighbors(v)) adj.set(v, nb.node);
  }
  const int words = adj.words();
  std::vector<uint64_t> visited(words);
  std::vector<uint64_t> frontier(words);
  std::vector<uint64_t> next(words);
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    std::fill(visited.begin(), visited.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    visited[s >> 6] |= uint64_t{1} << (s & 63);
    frontier[s >> 6] |= uint64_t{1} << (s & 63);
    for (int depth = 1;; ++depth) {
      std::fill(next.begin(), next.end(), 0);
      for (int w = 0; w < words; ++w) {
        uint64_t bits = frontier[w];
        while (bits) {
          const int v = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          const uint64_t* r = adj.row(v);
          for (int k = 0; k < words; ++k) next[k] |= r[k];
        }
      }
      int reached = 0;
      for (int k = 0; k < words; ++k) {
        next[k] &= ~visited[k];
        visited[k] |= next[k];
        reached += std::popcount(next[k]);
      }
      if (reached == 0) break;
      total += static_cast<double>(reached) / depth;
      frontier.swap(next);
    }
  }
  return total;
}

double harmonic_weighted(const Network& g) {
  const int n = g.size();
  std::vector<double> dist(n);
  using Item = std::pair<double, int>;
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      if (v != s) total += 1.0 / std::max(d, kMinWeight);
      for (const Neighbor& nb : g.neighbors(v)) {
        const double nd = d + nb.weight;
        if (nd < dist[nb.node]) {
          dist[nb.node] = nd;
          heap.push({nd, nb.node});
        }
      }
    }
  }
  return total;
}

double mean_local_clustering(const Network& g) {
  const Network u = g.undirected_projection();
  const int n = u.size();
  if (n == 0) return 0.0;
  BitMatrix adj(n);
  for (const Edge& e : u.edges()) {
    adj.set(e.source, e.target);
    adj.set(e.target, e.source);
  }
  const int words = adj.words();
  double sum = 0.0;
  for (int v = 0; v < n; ++v) {
    const int k = u.degree(v);
    if (k < 2) continue;
    int64_t links = 0;
    const uint64_t* rv = adj.row(v);
    for (const Neighbor& nb : u.neighbors(v)) {
      const uint64_t* ru = adj.row(nb.node);
      for (int w = 0; w < words; ++w) links += std::popcount(rv[w] & ru[w]);
    }
    // Each neighbour-neighbour link was counted from both ends.
    sum += static_cast<double>(links) / (static_cast<double>(k) * (k - 1));
  }
  return sum / n;
}

void accumulate(MetricsRow& acc, const MetricsRow& r, double scale) {
  acc.density += scale * r.density;
  acc.component_count += scale * r.component_count;
  acc.giant_strong_size += scale * r.giant_strong_size;
  acc.isolated_count += scale * r.isolated_count;
  acc.efficiency += scale * r.efficiency;
  acc.clustering_coefficient += scale * r.clustering_coefficient;
}

std::vector<double> fields(const MetricsRow& r) {
  return {r.density,        r.component_count, r.giant_strong_size,
          r.isolated_count, r.efficiency,      r.clustering_coefficient};
}

}  // namespace

MetricsRow compute_metrics(const Network& g, const DissimilarityMatrix& m,
                           EfficiencyDistance distance) {
  const int n = g.size();
  require(m.size() == n, "graph and matrix sizes differ");
  MetricsRow row;
  if (n == 0) return row;
  const double ordered_pairs = static_cast<double>(n) * (n - 1);
  const double links = static_cast<double>(g.edge_count()) * (g.directed() ? 1 : 2);
  row.density = ordered_pairs > 0 ? links / ordered_pairs : 0.0;
  row.component_count = connected_components(g).group_count();
  const auto strong = strong_components(g).group_sizes();
  row.giant_strong_size = *std::max_element(strong.begin(), strong.end());
  int isolated = 0;
  for (int v = 0; v < n; ++v) {
    if (g.neighbors(v).empty() && g.in_neighbors(v).empty()) ++isolated;
  }
  row.isolated_count = isolated;

  if (ordered_pairs > 0) {
    if (distance == EfficiencyDistance::kHops) {
      const int words = (n + 63) / 64;
      const bool dense = static_cast<double>(links) > static_cast<double>(n) * words;
      const double h = dense ? harmonic_hops_dense(g) : harmonic_hops_sparse(g);
      row.efficiency = h / ordered_pairs;
    } else {
      double ideal = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i != j) ideal += 1.0 / std::max(m(i, j), kMinWeight);
        }
      }
      row.efficiency = std::clamp(harmonic_weighted(g) / ideal, 0.0, 1.0);
    }
  }
  row.clustering_coefficient = mean_local_clustering(g);
  return row;
}

double BaselineStats::standard_error(double sd) const {
  return trials > 0 ? sd / std::sqrt(static_cast<double>(trials)) : 0.0;
}

Network random_directed_graph(int n, int64_t links, uint64_t seed,
                              uint64_t stream, uint64_t trial) {
  const int64_t slots = static_cast<int64_t>(n) * (n - 1);
  require(links >= 0 && links <= std::max<int64_t>(slots, 0),
          "link count out of range");
  auto rng = make_rng(seed, stream, trial);
  // Rejection sampling on a slot bitmap; past half occupancy, sample the
  // complement instead.
  const bool complement = links > slots / 2;
  const int64_t draws = complement ? slots - links : links;
  std::vector<char> chosen(static_cast<size_t>(std::max<int64_t>(slots, 0)), 0);
  std::uniform_int_distribution<int64_t> pick(0, std::max<int64_t>(slots - 1, 0));
  for (int64_t k = 0; k < draws;) {
    const int64_t s = pick(rng);
    if (!chosen[s]) {
      chosen[s] = 1;
      ++k;
    }
  }
  std::vector<Edge> edges;
  edges.reserve(links);
  for (int64_t s = 0; s < slots; ++s) {
    if (static_cast<bool>(chosen[s]) == complement) continue;
    const int i = static_cast<int>(s / (n - 1));
    int j = static_cast<int>(s % (n - 1));
    if (j >= i) ++j;
    edges.push_back({i, j, 1.0});
  }
  return Network(n, true, std::move(edges));
}

BaselineStats er_baseline(int n, int64_t links, int trials, uint64_t seed,
                          EfficiencyDistance distance, uint64_t stream) {
  require(trials >= 1, "trials must be at least 1");
  require(n >= 0, "node count must be non-negative");
  // Unit-weight graphs: the weighted efficiency of the baseline reduces to
  // the hop form.
  std::vector<double> unit(static_cast<size_t>(n) * n, 1.0);
  for (int i = 0; i < n; ++i) unit[static_cast<size_t>(i) * n + i] = 0.0;
  const DissimilarityMatrix unit_matrix(n, std::move(unit),
                                        std::vector<double>(n, 1.0));
  std::vector<MetricsRow> samples;
  samples.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    Network g = random_directed_graph(n, links, seed, stream, t);
    samples.push_back(compute_metrics(g, unit_matrix, distance));
  }
  BaselineStats stats;
  stats.trials = trials;
  for (const auto& s : samples) accumulate(stats.mean, s, 1.0 / trials);
  if (trials > 1) {
    const auto mean = fields(stats.mean);
    std::vector<double> ss(mean.size(), 0.0);
    for (const auto& s : samples) {
      const auto f = fields(s);
      for (size_t k = 0; k < f.size(); ++k) ss[k] += (f[k] - mean[k]) * (f[k] - mean[k]);
    }
    for (double& v : ss) v = std::sqrt(v / (trials - 1));
    stats.stddev = {0.0, ss[0], ss[1], ss[2], ss[3], ss[4], ss[5]};
  }
  return stats;
}

std::vector<SweepRow> threshold_sweep(const DissimilarityMatrix& m,
                                      std::span<const double> thresholds,
                                      int trials, uint64_t seed,
                                      EfficiencyDistance distance) {
  for (size_t k = 1; k < thresholds.size(); ++k) {
    require(thresholds[k] > thresholds[k - 1],
            "thresholds must be strictly increasing");
  }
  std::vector<SweepRow> rows;
  rows.reserve(thresholds.size());
  for (size_t k = 0; k < thresholds.size(); ++k) {
    const Network g = threshold_graph(m, thresholds[k], true);
    SweepRow row;
    row.observed = compute_metrics(g, m, distance);
    row.observed.threshold = thresholds[k];
    row.baseline = er_baseline(m.size(), static_cast<int64_t>(g.edge_count()),
                               trials, seed, distance, k);
    row.baseline.mean.threshold = thresholds[k];
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_to_csv(std::span<const SweepRow> rows) {
  std::string out =
      "threshold,density,component_count,giant_strong_size,isolated_count,"
      "efficiency,clustering_coefficient,er_density,er_component_count,"
      "er_giant_strong_size,er_isolated_count,er_efficiency,"
      "er_clustering_coefficient\n";
  for (const SweepRow& r : rows) {
    out += format_double(r.observed.threshold);
    for (double v : fields(r.observed)) out += "," + format_double(v);
    for (double v : fields(r.baseline.mean)) out += "," + format_double(v);
    out += '\n';
  }
  return out;
}

}  // namespace covernet
