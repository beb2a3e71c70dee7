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

#include "covernet/prototype.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "covernet/error.hpp"
#include "covernet/network.hpp"
#include "covernet/rng.hpp"
#include "covernet/eval.hpp"

namespace covernet {

namespace {

constexpr uint64_t kPrototypeStream = 0x70726f;

struct ArgMin {
  int position = 0;
  bool tied = false;
};

ArgMin argmin(const std::vector<double>& v) {
  ArgMin r;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (v[i] < v[r.position]) r.position = i;
  }
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    if (i != r.position && v[i] == v[r.position]) r.tied = true;
  }
  return r;
}

std::vector<double> closeness_sums(const CommunitySubnet& s) {
  const int c = s.cardinality();
  std::vector<double> sums(c, 0.0);
  for (int a = 0; a < c; ++a) {
    for (int b = 0; b < c; ++b) {
      if (a != b) sums[a] += s.at(a, b);
    }
  }
  return sums;
}

std::vector<double> mst_sums(const CommunitySubnet& s) {
  const int c = s.cardinality();
  std::vector<Edge> edges;
  for (int a = 0; a < c; ++a) {
    for (int b = a + 1; b < c; ++b) {
      edges.push_back({a, b, (s.at(a, b) + s.at(b, a)) / 2.0});
    }
  }
  const Network tree = minimum_spanning_tree(Network(c, false, std::move(edges)));
  // Root at position 0 and record DFS entry/exit times and subtree sizes.
  std::vector<int> parent(c, -1);
  std::vector<int> enter(c, 0);
  std::vector<int> leave(c, 0);
  std::vector<int> stack{0};
  std::vector<char> seen(c, 0);
  seen[0] = 1;
  int clock = 0;
  std::vector<size_t> next(c, 0);
  enter[0] = clock++;
  while (!stack.empty()) {
    const int v = stack.back();
    const auto nbs = tree.neighbors(v);
    if (next[v] < nbs.size()) {
      const int u = nbs[next[v]++].node;
      if (!seen[u]) {
        seen[u] = 1;
        parent[u] = v;
        enter[u] = clock++;
        stack.push_back(u);
      }
    } else {
      leave[v] = clock;
      stack.pop_back();
    }
  }
  // A tree edge of weight w separating k nodes from v adds k * w to v's path
  // sum. Accumulating edge by edge in a fixed order makes members whose
  // multiplicities coincide (the two ends of an edge that halves the tree)
  // tie exactly instead of by rounding luck.
  std::vector<double> sums(c, 0.0);
  for (const Edge& e : tree.edges()) {
    const int child = parent[e.target] == e.source ? e.target : e.source;
    const int inside = (leave[child] - enter[child]);
    for (int v = 0; v < c; ++v) {
      const bool below = enter[v] >= enter[child] && enter[v] < leave[child];
      sums[v] += e.weight * (below ? c - inside : inside);
    }
  }
  return sums;
}

void require_community(const CommunitySubnet& s) {
  require(s.cardinality() >= 2, "a community needs at least two members");
  require(s.weights.size() ==
              static_cast<size_t>(s.cardinality()) * s.cardinality(),
          "sub-matrix size does not match the member count");
}

}  // namespace

CommunitySubnet make_subnet(const DissimilarityMatrix& m,
                            std::vector<int> members) {
  CommunitySubnet s;
  const size_t c = members.size();
  s.weights.resize(c * c);
  for (size_t a = 0; a < c; ++a) {
    require(members[a] >= 0 && members[a] < m.size(), "member id out of range");
    for (size_t b = 0; b < a; ++b) {
      require(members[b] != members[a], "duplicate member id");
    }
    for (size_t b = 0; b < c; ++b) {
      s.weights[a * c + b] = a == b ? 0.0 : m(members[a], members[b]);
    }
  }
  s.members = std::move(members);
  return s;
}

int closeness_prototype(const CommunitySubnet& s) {
  require_community(s);
  return s.members[argmin(closeness_sums(s)).position];
}

int mst_prototype(const CommunitySubnet& s) {
  require_community(s);
  return s.members[argmin(mst_sums(s)).position];
}

std::string prototype_method_name(PrototypeMethod method) {
  return method == PrototypeMethod::kCloseness ? "closeness" : "mst";
}

std::vector<PrototypeRow> run_prototype_experiment(
    const Collection& c, const DissimilarityMatrix& m, PrototypeMethod method,
    uint64_t seed, int c_min, int c_max) {
  require(c.size() == m.size(), "collection and matrix sizes differ");
  require(c_min >= 2 && c_min <= c_max, "cardinality range must start at 2 or more");
  const auto groups = c.truth().groups();
  std::vector<PrototypeRow> rows(c_max - c_min + 1);
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    const int size = static_cast<int>(groups[g].size());
    if (size < c_min || size > c_max) continue;
    int original = -1;
    for (int i : groups[g]) {
      if (c.is_original[i]) original = i;
    }
    if (original < 0) continue;
    std::vector<int> members = groups[g];
    auto rng = make_rng(seed, kPrototypeStream, static_cast<uint64_t>(g));
    std::shuffle(members.begin(), members.end(), rng);
    const CommunitySubnet s = make_subnet(m, std::move(members));
    const auto sums =
        method == PrototypeMethod::kCloseness ? closeness_sums(s) : mst_sums(s);
    const ArgMin best = argmin(sums);
    PrototypeRow& row = rows[size - c_min];
    ++row.trials;
    row.ties += best.tied;
    row.hits += s.members[best.position] == original;
  }
  std::vector<PrototypeRow> out;
  for (int k = 0; k < static_cast<int>(rows.size()); ++k) {
    PrototypeRow row = rows[k];
    if (row.trials == 0) continue;
    row.method = method;
    row.cardinality = c_min + k;
    row.hit_rate = static_cast<double>(row.hits) / row.trials;
    row.p_value = binomial_pvalue(row.hits, row.trials, 1.0 / row.cardinality);
    out.push_back(row);
  }
  return out;
}

std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

std::string prototype_to_csv(const std::vector<PrototypeRow>& rows) {
  std::string out =
      "method,C,hits,trials,hit_rate_percent,p_value,significance_stars,ties\n";
  for (const auto& r : rows) {
    out += prototype_method_name(r.method) + "," + std::to_string(r.cardinality) +
           "," + std::to_string(r.hits) + "," + std::to_string(r.trials) + "," +
           format_double(100.0 * r.hit_rate) + "," + format_double(r.p_value) +
           "," + significance_stars(r.p_value) + "," + std::to_string(r.ties) + "\n";
  }
  return out;
}

}  // namespace covernet
