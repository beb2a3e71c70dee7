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

#ifndef COVERNET_PROTOTYPE_HPP_
#define COVERNET_PROTOTYPE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "covernet/datasets.hpp"
#include "covernet/matrix.hpp"

namespace covernet {

// One community restricted from the asymmetric matrix. `weights` is row-major
// over positions in `members`; ties between candidates resolve to the lower
// position, so callers control the tie rule through member order.
struct CommunitySubnet {
  std::vector<int> members;
  std::vector<double> weights;

  int cardinality() const { return static_cast<int>(members.size()); }
  double at(int a, int b) const {
    return weights[static_cast<size_t>(a) * members.size() + b];
  }
};

CommunitySubnet make_subnet(const DissimilarityMatrix& m,
                            std::vector<int> members);

// Member id with the smallest sum of outgoing weights.
int closeness_prototype(const CommunitySubnet& s);

// Member id with the smallest sum of path lengths over the minimum spanning
// tree of the averaged sub-matrix.
int mst_prototype(const CommunitySubnet& s);

enum class PrototypeMethod { kCloseness, kMst };

std::string prototype_method_name(PrototypeMethod method);

struct PrototypeRow {
  PrototypeMethod method = PrototypeMethod::kCloseness;
  int cardinality = 0;
  int hits = 0;
  int trials = 0;
  int ties = 0;  // communities whose minimum was shared by several members
  double hit_rate = 0.0;
  double p_value = 1.0;
};

// Ground-truth groups of size c_min..c_max that contain an original. Member
// order is shuffled per group from (seed, group) before prediction.
std::vector<PrototypeRow> run_prototype_experiment(
    const Collection& c, const DissimilarityMatrix& m, PrototypeMethod method,
    uint64_t seed, int c_min = 2, int c_max = 7);

// "*" for p < 0.05, "**" for p < 0.01, "***" for p < 0.001.
std::string significance_stars(double p);

std::string prototype_to_csv(const std::vector<PrototypeRow>& rows);

}  // namespace covernet

#endif  // COVERNET_PROTOTYPE_HPP_
