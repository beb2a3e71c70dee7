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

#ifndef COVERNET_MATRIX_HPP_
#define COVERNET_MATRIX_HPP_

#include <span>
#include <string>
#include <vector>

namespace covernet {

// Dense n x n matrix of non-negative pairwise dissimilarities plus per-item
// durations. Row i holds the dissimilarities from item i to every other item;
// the matrix is allowed to be asymmetric.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;
  // Throws Error(kInvalidInput) unless weights are finite, non-negative, with
  // a zero diagonal, and durations are finite and strictly positive.
  DissimilarityMatrix(int n, std::vector<double> weights,
                      std::vector<double> durations);

  int size() const { return n_; }
  double operator()(int i, int j) const {
    return weights_[static_cast<size_t>(i) * n_ + j];
  }
  std::span<const double> row(int i) const {
    return {weights_.data() + static_cast<size_t>(i) * n_,
            static_cast<size_t>(n_)};
  }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& durations() const { return durations_; }

  bool is_symmetric() const;
  double max_weight() const;

  // Rows and columns restricted to `items`, in the given order.
  DissimilarityMatrix submatrix(std::span<const int> items) const;

  bool operator==(const DissimilarityMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> weights_;
  std::vector<double> durations_;
};

// Raw recurrence-based similarity scores, higher meaning more similar.
struct SimilarityInput {
  int n = 0;
  std::vector<double> qmax;  // n x n row-major, off-diagonal entries >= 1
  std::vector<double> durations;
};

// w[i][j] = sqrt(duration[j]) / qmax[i][j]. Asymmetric unless durations are
// equal.
DissimilarityMatrix from_qmax(const SimilarityInput& input);

// (w[i][j] + w[j][i]) / 2.
DissimilarityMatrix symmetrize(const DissimilarityMatrix& m);

// Text formats: matrix file is a header line `n` followed by n rows of n
// space-separated decimals; durations file holds n decimals.
std::string matrix_to_text(const DissimilarityMatrix& m);
std::string durations_to_text(std::span<const double> durations);
// Parse errors name the offending line.
std::vector<double> parse_matrix_text(const std::string& text, int* n_out);
std::vector<double> parse_durations_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Decimal rendering used by every text and CSV writer: shortest form that
// round-trips exactly.
std::string format_double(double v);

}  // namespace covernet

#endif  // COVERNET_MATRIX_HPP_
