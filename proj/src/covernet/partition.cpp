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

#include "covernet/partition.hpp"

#include <sstream>
#include <unordered_map>

#include "covernet/error.hpp"

namespace covernet {

Partition Partition::from_labels(std::span<const int> labels) {
  Partition p;
  p.assignment_.resize(labels.size());
  std::unordered_map<int, int> remap;
  for (size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels[i], p.group_count_);
    if (inserted) ++p.group_count_;
    p.assignment_[i] = it->second;
  }
  return p;
}

Partition Partition::singletons(int n) {
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i;
  return from_labels(labels);
}

Partition Partition::single_group(int n) {
  std::vector<int> labels(n, 0);
  return from_labels(labels);
}

std::vector<int> Partition::group_sizes() const {
  std::vector<int> sizes(group_count_, 0);
  for (int g : assignment_) ++sizes[g];
  return sizes;
}

std::vector<std::vector<int>> Partition::groups() const {
  std::vector<std::vector<int>> out(group_count_);
  for (int i = 0; i < size(); ++i) out[assignment_[i]].push_back(i);
  return out;
}

std::string partition_to_text(const Partition& p) {
  std::ostringstream os;
  for (int i = 0; i < p.size(); ++i) os << i << ' ' << p.group_of(i) << '\n';
  return os.str();
}

Partition partition_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<int> labels;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long item = -1;
    long group = -1;
    if (!(ls >> item >> group) || item != static_cast<long>(labels.size()) ||
        group < 0) {
      fail(ErrorCode::kParse,
           "partition line " + std::to_string(line_no) +
               ": expected '<item_index> <group_id>' with consecutive items");
    }
    labels.push_back(static_cast<int>(group));
  }
  return Partition::from_labels(labels);
}

}  // namespace covernet
