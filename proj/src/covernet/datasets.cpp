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

#include "covernet/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "covernet/error.hpp"
#include "covernet/rng.hpp"

namespace covernet {

namespace {

constexpr uint64_t kGeneratorStream = 0x67656e;
constexpr uint64_t kSetupStream = 0x736574;
constexpr double kMinGeneratedWeight = 1e-6;

}  // namespace

void Collection::validate() const {
  const int n = size();
  require(is_original.size() == static_cast<size_t>(n),
          "original flags must match the item count");
  require(durations.size() == static_cast<size_t>(n),
          "durations must match the item count");
  std::map<int, int> original_of;
  for (int i = 0; i < n; ++i) {
    require(durations[i] > 0.0 && std::isfinite(durations[i]),
            "duration " + std::to_string(i) + " must be strictly positive");
    if (!is_original[i]) continue;
    auto [it, inserted] = original_of.try_emplace(group_of[i], i);
    if (!inserted) {
      fail(ErrorCode::kInvalidInput,
           "group " + std::to_string(group_of[i]) + " has two originals (items " +
               std::to_string(it->second) + " and " + std::to_string(i) + ")");
    }
  }
}

void GeneratorParams::validate() const {
  require(intra_mean < inter_mean, "intra_mean must be below inter_mean");
  require(intra_mean > 0.0, "intra_mean must be positive");
  require(intra_sd >= 0.0 && inter_sd >= 0.0, "standard deviations must be >= 0");
  require(prototype_pull >= 0.0 && prototype_pull <= 1.0,
          "prototype_pull must lie in [0, 1]");
  require(asymmetry_jitter >= 0.0, "asymmetry_jitter must be >= 0");
  require(hard_rate >= 0.0 && hard_rate <= 1.0, "hard_rate must lie in [0, 1]");
  require(hard_mean >= intra_mean, "hard_mean must be at least intra_mean");
  require(hub_sd >= 0.0, "hub_sd must be >= 0");
  require(duration_min > 0.0 && duration_min <= duration_max,
          "duration range must be positive and ordered");
  for (double w : cardinality_weights) {
    require(w >= 0.0 && std::isfinite(w), "cardinality weights must be >= 0");
  }
}

std::vector<double> truncated_geometric_weights(double mean, int max_size) {
  require(max_size >= 2, "max size must be at least 2");
  require(mean > 2.0 && mean < (2.0 + max_size) / 2.0,
          "mean must lie strictly between 2 and the uniform mean");
  auto weights_for = [max_size](double q) {
    std::vector<double> w;
    double v = 1.0;
    for (int s = 2; s <= max_size; ++s, v *= q) w.push_back(v);
    return w;
  };
  auto mean_for = [&](double q) {
    const auto w = weights_for(q);
    double num = 0.0;
    double den = 0.0;
    for (size_t k = 0; k < w.size(); ++k) {
      num += (k + 2) * w[k];
      den += w[k];
    }
    return num / den;
  };
  // The mean increases with q on (0, 1).
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2.0;
    (mean_for(mid) < mean ? lo : hi) = mid;
  }
  auto w = weights_for((lo + hi) / 2.0);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return w;
}

Dataset generate_collection(const GeneratorParams& params, int n_groups,
                            uint64_t seed) {
  params.validate();
  require(n_groups >= 1, "at least one group is required");
  auto rng = make_rng(seed, kGeneratorStream);
  const std::vector<double> card = params.cardinality_weights.empty()
                                       ? truncated_geometric_weights(4.0)
                                       : params.cardinality_weights;
  std::discrete_distribution<int> size_dist(card.begin(), card.end());
  std::bernoulli_distribution has_original(kOriginalRate);

  // Items group by group, then shuffled.
  std::vector<int> group;
  std::vector<char> original;
  for (int g = 0; g < n_groups; ++g) {
    const int size = 2 + size_dist(rng);
    int orig = -1;
    if (has_original(rng)) {
      orig = std::uniform_int_distribution<int>(0, size - 1)(rng);
    }
    for (int k = 0; k < size; ++k) {
      group.push_back(g);
      original.push_back(k == orig);
    }
  }
  const int n = static_cast<int>(group.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  Collection c;
  c.group_of.resize(n);
  c.is_original.resize(n);
  c.durations.resize(n);
  std::uniform_real_distribution<double> duration(params.duration_min,
                                                  params.duration_max);
  for (int i = 0; i < n; ++i) {
    c.group_of[i] = group[order[i]];
    c.is_original[i] = original[order[i]];
    c.durations[i] = duration(rng);
  }

  std::normal_distribution<double> intra(params.intra_mean, params.intra_sd);
  std::normal_distribution<double> inter(params.inter_mean, params.inter_sd);
  std::normal_distribution<double> jitter(0.0, 1.0);
  // Zero marks an ordinary item.
  std::vector<double> hard_level(n, 0.0);
  if (params.hard_rate > 0.0) {
    std::bernoulli_distribution hard_item(params.hard_rate);
    std::uniform_real_distribution<double> level(params.intra_mean, params.hard_mean);
    for (int i = 0; i < n; ++i) {
      if (hard_item(rng)) hard_level[i] = level(rng);
    }
  }
  std::vector<double> hub(n, 0.0);
  if (params.hub_sd > 0.0) {
    for (double& h : hub) h = params.hub_sd * jitter(rng);
  }
  const double pull = params.prototype_pull * params.intra_mean;
  std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same = c.group_of[i] == c.group_of[j];
      const double level = std::max(hard_level[i], hard_level[j]);
      double base = 0.0;
      if (!same) {
        base = inter(rng);
      } else if (level > 0.0) {
        base = level + params.inter_sd * jitter(rng);
      } else {
        base = intra(rng);
      }
      base += hub[i] + hub[j];
      double wij = base + params.asymmetry_jitter * jitter(rng);
      double wji = base + params.asymmetry_jitter * jitter(rng);
      if (same && c.is_original[i]) wij -= pull;
      if (same && c.is_original[j]) wji -= pull;
      w[static_cast<size_t>(i) * n + j] = std::max(wij, kMinGeneratedWeight);
      w[static_cast<size_t>(j) * n + i] = std::max(wji, kMinGeneratedWeight);
    }
  }
  c.group_of = Partition::from_labels(c.group_of).assignment();
  DissimilarityMatrix m(n, std::move(w), c.durations);
  return {std::move(c), std::move(m)};
}

SetupSpec setup_preset(const std::string& name) {
  static const std::map<std::string, SetupSpec> presets = {
      {"1.1", {"1.1", 25, 4, 0, 20, 0}},
      {"1.2", {"1.2", 25, 0, 0, 20, 0}},
      {"1.3", {"1.3", 25, 4, 100, 20, 0}},
      {"1.4", {"1.4", 25, 0, 100, 20, 0}},
      {"2.1", {"2.1", 125, 4, 0, 20, 0}},
      {"2.2", {"2.2", 125, 0, 0, 20, 0}},
      {"2.3", {"2.3", 125, 4, 400, 20, 0}},
      {"2.4", {"2.4", 125, 0, 400, 20, 0}},
      {"3", {"3", 523, 0, 0, 1, 0}},
  };
  auto it = presets.find(name);
  if (it == presets.end()) {
    fail(ErrorCode::kInvalidInput, "unknown setup '" + name + "'");
  }
  return it->second;
}

std::vector<std::string> setup_names() {
  return {"1.1", "1.2", "1.3", "1.4", "2.1", "2.2", "2.3", "2.4", "3"};
}

Dataset sample_setup(const Dataset& universe, const SetupSpec& spec, int trial) {
  require(spec.n_c >= 1 && spec.n_t >= 1, "setup needs n_c >= 1 and n_t >= 1");
  require(spec.cardinality == 0 || spec.cardinality >= 2,
          "fixed cardinality must be at least 2");
  require(spec.n_n >= 0, "noise count must be non-negative");
  const Collection& u = universe.collection;
  auto rng = make_rng(spec.seed, kSetupStream, static_cast<uint64_t>(trial));
  const auto groups = u.truth().groups();

  std::vector<int> eligible;
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    const int size = static_cast<int>(groups[g].size());
    if (size >= 2 && (spec.cardinality == 0 || size >= spec.cardinality)) {
      eligible.push_back(g);
    }
  }
  if (static_cast<int>(eligible.size()) < spec.n_c) {
    fail(ErrorCode::kInsufficientData,
         "setup " + spec.name + " needs " + std::to_string(spec.n_c) +
             " groups, only " + std::to_string(eligible.size()) + " qualify");
  }
  std::shuffle(eligible.begin(), eligible.end(), rng);
  std::vector<char> used(groups.size(), 0);
  std::vector<int> items;
  std::vector<int> label;
  for (int k = 0; k < spec.n_c; ++k) {
    const int g = eligible[k];
    used[g] = 1;
    std::vector<int> members = groups[g];
    if (spec.cardinality > 0) {
      std::shuffle(members.begin(), members.end(), rng);
      members.resize(spec.cardinality);
      std::sort(members.begin(), members.end());
    }
    for (int i : members) {
      items.push_back(i);
      label.push_back(k);
    }
  }

  std::vector<int> rest;
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    if (!used[g]) rest.push_back(g);
  }
  if (static_cast<int>(rest.size()) < spec.n_n) {
    fail(ErrorCode::kInsufficientData,
         "setup " + spec.name + " needs " + std::to_string(spec.n_n) +
             " noise items from distinct unselected groups, only " +
             std::to_string(rest.size()) + " remain");
  }
  std::shuffle(rest.begin(), rest.end(), rng);
  for (int k = 0; k < spec.n_n; ++k) {
    const auto& members = groups[rest[k]];
    const int pick = std::uniform_int_distribution<int>(
        0, static_cast<int>(members.size()) - 1)(rng);
    items.push_back(members[pick]);
    label.push_back(spec.n_c + k);
  }

  std::vector<int> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> picked(items.size());
  Collection c;
  for (size_t k = 0; k < order.size(); ++k) {
    const int src = items[order[k]];
    picked[k] = src;
    c.group_of.push_back(label[order[k]]);
    // A noise item is alone in its group, so it is never an original.
    c.is_original.push_back(label[order[k]] < spec.n_c && u.is_original[src]);
    c.durations.push_back(u.durations[src]);
  }
  c.group_of = Partition::from_labels(c.group_of).assignment();
  DissimilarityMatrix m = universe.matrix.submatrix(picked);
  return {std::move(c), std::move(m)};
}

std::string labels_to_text(const Collection& c) {
  std::string out;
  for (int i = 0; i < c.size(); ++i) {
    out += std::to_string(c.group_of[i]) + " " + (c.is_original[i] ? "1" : "0") + "\n";
  }
  return out;
}

Dataset parse_collection(const std::string& matrix_text,
                         const std::string& durations_text,
                         const std::string& labels_text) {
  int n = 0;
  std::vector<double> weights = parse_matrix_text(matrix_text, &n);
  std::vector<double> durations = parse_durations_text(durations_text);
  if (static_cast<int>(durations.size()) != n) {
    fail(ErrorCode::kParse, "durations: expected " + std::to_string(n) +
                                " values, got " + std::to_string(durations.size()));
  }
  Collection c;
  std::map<int, int> original_line;
  std::istringstream is(labels_text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long group = -1;
    int flag = -1;
    std::string extra;
    if (!(ls >> group >> flag) || group < 0 || (flag != 0 && flag != 1) ||
        (ls >> extra)) {
      fail(ErrorCode::kParse, "labels line " + std::to_string(line_no) +
                                  ": expected '<group_id> <0|1>'");
    }
    if (flag == 1) {
      auto [it, inserted] = original_line.try_emplace(static_cast<int>(group), line_no);
      if (!inserted) {
        fail(ErrorCode::kParse,
             "labels line " + std::to_string(line_no) + ": group " +
                 std::to_string(group) + " already has an original on line " +
                 std::to_string(it->second));
      }
    }
    c.group_of.push_back(static_cast<int>(group));
    c.is_original.push_back(static_cast<char>(flag));
  }
  if (c.size() != n) {
    fail(ErrorCode::kParse, "labels: expected " + std::to_string(n) +
                                " lines, got " + std::to_string(c.size()));
  }
  c.durations = durations;
  c.validate();
  DissimilarityMatrix m(n, std::move(weights), std::move(durations));
  return {std::move(c), std::move(m)};
}

Dataset load_collection(const std::string& matrix_path,
                        const std::string& durations_path,
                        const std::string& labels_path) {
  // Read in order so the first missing file is the one reported.
  const std::string matrix = read_file(matrix_path);
  const std::string durations = read_file(durations_path);
  const std::string labels = read_file(labels_path);
  return parse_collection(matrix, durations, labels);
}

void save_collection(const Dataset& d, const std::string& matrix_path,
                     const std::string& durations_path,
                     const std::string& labels_path) {
  write_file(matrix_path, matrix_to_text(d.matrix));
  write_file(durations_path, durations_to_text(d.collection.durations));
  write_file(labels_path, labels_to_text(d.collection));
}

}  // namespace covernet
