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

#include "covernet/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "covernet/error.hpp"

namespace covernet {

DissimilarityMatrix::DissimilarityMatrix(int n, std::vector<double> weights,
                                         std::vector<double> durations)
    : n_(n), weights_(std::move(weights)), durations_(std::move(durations)) {
  require(n >= 0, "matrix size must be non-negative");
  require(weights_.size() == static_cast<size_t>(n) * n,
          "weights must hold n*n entries");
  require(durations_.size() == static_cast<size_t>(n),
          "durations must hold n entries");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double w = (*this)(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        fail(ErrorCode::kInvalidInput,
             "weight (" + std::to_string(i) + "," + std::to_string(j) +
                 ") must be finite and non-negative");
      }
    }
    if ((*this)(i, i) != 0.0) {
      fail(ErrorCode::kInvalidInput,
           "diagonal entry " + std::to_string(i) + " must be zero");
    }
    if (!std::isfinite(durations_[i]) || durations_[i] <= 0.0) {
      fail(ErrorCode::kInvalidInput,
           "duration " + std::to_string(i) + " must be strictly positive");
    }
  }
}

bool DissimilarityMatrix::is_symmetric() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

double DissimilarityMatrix::max_weight() const {
  if (weights_.empty()) return 0.0;
  return *std::max_element(weights_.begin(), weights_.end());
}

DissimilarityMatrix DissimilarityMatrix::submatrix(
    std::span<const int> items) const {
  const int k = static_cast<int>(items.size());
  std::vector<double> w(static_cast<size_t>(k) * k);
  std::vector<double> d(k);
  for (int a = 0; a < k; ++a) {
    require(items[a] >= 0 && items[a] < n_, "submatrix index out of range");
    d[a] = durations_[items[a]];
    for (int b = 0; b < k; ++b) {
      w[static_cast<size_t>(a) * k + b] = (*this)(items[a], items[b]);
    }
  }
  return DissimilarityMatrix(k, std::move(w), std::move(d));
}

DissimilarityMatrix from_qmax(const SimilarityInput& input) {
  const int n = input.n;
  require(n >= 0, "item count must be non-negative");
  require(input.qmax.size() == static_cast<size_t>(n) * n,
          "qmax must hold n*n entries");
  require(input.durations.size() == static_cast<size_t>(n),
          "durations must hold n entries");
  for (int j = 0; j < n; ++j) {
    if (!(input.durations[j] > 0.0) || !std::isfinite(input.durations[j])) {
      fail(ErrorCode::kInvalidInput,
           "duration " + std::to_string(j) + " must be strictly positive");
    }
  }
  std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double q = input.qmax[static_cast<size_t>(i) * n + j];
      if (!(q >= 1.0) || !std::isfinite(q)) {
        fail(ErrorCode::kInvalidInput,
             "qmax (" + std::to_string(i) + "," + std::to_string(j) +
                 ") must be >= 1");
      }
      w[static_cast<size_t>(i) * n + j] = std::sqrt(input.durations[j]) / q;
    }
  }
  return DissimilarityMatrix(n, std::move(w), input.durations);
}

DissimilarityMatrix symmetrize(const DissimilarityMatrix& m) {
  const int n = m.size();
  std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = (m(i, j) + m(j, i)) / 2.0;
      w[static_cast<size_t>(i) * n + j] = v;
      w[static_cast<size_t>(j) * n + i] = v;
    }
  }
  return DissimilarityMatrix(n, std::move(w), m.durations());
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string matrix_to_text(const DissimilarityMatrix& m) {
  std::string out = std::to_string(m.size()) + "\n";
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (j) out += ' ';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string durations_to_text(std::span<const double> durations) {
  std::string out;
  for (double d : durations) {
    out += format_double(d);
    out += '\n';
  }
  return out;
}

namespace {

// Splits on whitespace and parses each token; NaN, infinities and negative
// values are rejected.
std::vector<double> parse_values(const std::string& line, int line_no,
                                 const char* what) {
  std::vector<double> values;
  size_t pos = 0;
  while (true) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string::npos) break;
    size_t end = line.find_first_of(" \t\r", pos);
    if (end == std::string::npos) end = line.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, v);
    if (ec != std::errc() || ptr != line.data() + end || !std::isfinite(v) ||
        v < 0.0) {
      fail(ErrorCode::kParse, std::string(what) + " line " +
                                  std::to_string(line_no) +
                                  ": invalid value '" +
                                  line.substr(pos, end - pos) + "'");
    }
    values.push_back(v);
    pos = end;
  }
  return values;
}

}  // namespace

std::vector<double> parse_matrix_text(const std::string& text, int* n_out) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  long n = -1;
  while (n < 0 && std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream hs(line);
    std::string rest;
    if (!(hs >> n) || n < 0 || (hs >> rest)) {
      fail(ErrorCode::kParse, "matrix line " + std::to_string(line_no) +
                                  ": expected item count header");
    }
  }
  if (n < 0) fail(ErrorCode::kParse, "matrix: missing item count header");
  std::vector<double> weights;
  weights.reserve(static_cast<size_t>(n) * n);
  long row = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (row >= n) {
      fail(ErrorCode::kParse, "matrix line " + std::to_string(line_no) +
                                  ": more than " + std::to_string(n) +
                                  " rows");
    }
    auto values = parse_values(line, line_no, "matrix");
    if (static_cast<long>(values.size()) != n) {
      fail(ErrorCode::kParse,
           "matrix row " + std::to_string(row) + " (line " +
               std::to_string(line_no) + "): expected " + std::to_string(n) +
               " values, got " + std::to_string(values.size()));
    }
    weights.insert(weights.end(), values.begin(), values.end());
    ++row;
  }
  if (row != n) {
    fail(ErrorCode::kParse, "matrix: expected " + std::to_string(n) +
                                " rows, got " + std::to_string(row));
  }
  *n_out = static_cast<int>(n);
  return weights;
}

std::vector<double> parse_durations_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  std::vector<double> out;
  while (std::getline(is, line)) {
    ++line_no;
    auto values = parse_values(line, line_no, "durations");
    out.insert(out.end(), values.begin(), values.end());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << contents;
  if (!out) fail(ErrorCode::kIo, "write failed for '" + path + "'");
}

}  // namespace covernet
