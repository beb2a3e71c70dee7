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

#ifndef COVERNET_PARTITION_HPP_
#define COVERNET_PARTITION_HPP_

#include <span>
#include <string>
#include <vector>

namespace covernet {

// Assignment of every item to exactly one group. Group ids are canonical:
// dense from 0 and numbered in order of first appearance, so two partitions
// describing the same grouping compare equal regardless of input labels.
class Partition {
 public:
  Partition() = default;

  static Partition from_labels(std::span<const int> labels);
  static Partition singletons(int n);
  static Partition single_group(int n);

  int size() const { return static_cast<int>(assignment_.size()); }
  int group_count() const { return group_count_; }
  int group_of(int item) const { return assignment_[item]; }
  const std::vector<int>& assignment() const { return assignment_; }

  std::vector<int> group_sizes() const;
  // Members of each group, ascending.
  std::vector<std::vector<int>> groups() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> assignment_;
  int group_count_ = 0;
};

// "item_index group_id" per line.
std::string partition_to_text(const Partition& p);
Partition partition_from_text(const std::string& text);

}  // namespace covernet

#endif  // COVERNET_PARTITION_HPP_
