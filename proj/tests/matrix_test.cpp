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


#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "covernet/error.hpp"
#include "covernet/matrix.hpp"
#include "test_support.hpp"

namespace covernet {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidInput;
}

TEST(Matrix, RejectsNonZeroDiagonal) {
  EXPECT_EQ(code_of([] { DissimilarityMatrix(2, {0.1, 1, 1, 0}, {1, 1}); }),
            ErrorCode::kInvalidInput);
}

TEST(Matrix, RejectsNegativeAndNonFiniteWeights) {
  EXPECT_THROW(DissimilarityMatrix(2, {0, -1, 1, 0}, {1, 1}), Error);
  EXPECT_THROW(DissimilarityMatrix(2, {0, std::nan(""), 1, 0}, {1, 1}), Error);
  EXPECT_THROW(DissimilarityMatrix(
                   2, {0, std::numeric_limits<double>::infinity(), 1, 0}, {1, 1}),
               Error);
}

TEST(Matrix, RejectsBadDurationsAndSizes) {
  EXPECT_THROW(DissimilarityMatrix(2, {0, 1, 1, 0}, {1, 0}), Error);
  EXPECT_THROW(DissimilarityMatrix(2, {0, 1, 1}, {1, 1}), Error);
  EXPECT_THROW(DissimilarityMatrix(2, {0, 1, 1, 0}, {1}), Error);
}

TEST(Matrix, FromQmaxUsesTargetDuration) {
  SimilarityInput in{2, {0, 4, 2, 0}, {100, 64}};
  const auto m = from_qmax(in);
  EXPECT_EQ(m(0, 1), std::sqrt(64.0) / 4.0);
  EXPECT_EQ(m(1, 0), std::sqrt(100.0) / 2.0);
  EXPECT_FALSE(m.is_symmetric());
}

TEST(Matrix, FromQmaxAnchorValue) {
  SimilarityInput in{2, {0, 46.6, 46.6, 0}, {100, 100}};
  const auto m = from_qmax(in);
  EXPECT_NEAR(m(0, 1), 0.2146, 1e-4);
  EXPECT_NEAR(m(0, 1), 10.0 / 46.6, 1e-12);
}

TEST(Matrix, FromQmaxRejectsScoresBelowOne) {
  SimilarityInput in{2, {0, 0.5, 2, 0}, {1, 1}};
  EXPECT_THROW(from_qmax(in), Error);
}

TEST(Matrix, SymmetrizeAverages) {
  const auto m = testing::random_matrix(6, 3);
  const auto s = symmetrize(m);
  EXPECT_TRUE(s.is_symmetric());
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i != j) EXPECT_EQ(s(i, j), (m(i, j) + m(j, i)) / 2.0);
    }
  }
}

TEST(Matrix, SubmatrixKeepsOrder) {
  const auto m = testing::random_matrix(5, 4);
  const std::vector<int> items{3, 1};
  const auto s = m.submatrix(items);
  EXPECT_EQ(s(0, 1), m(3, 1));
  EXPECT_EQ(s(1, 0), m(1, 3));
  EXPECT_EQ(s.durations()[0], m.durations()[3]);
}

TEST(Matrix, TextRoundTripIsExact) {
  const auto m = testing::random_matrix(7, 11);
  int n = 0;
  const auto w = parse_matrix_text(matrix_to_text(m), &n);
  EXPECT_EQ(n, 7);
  EXPECT_EQ(w, m.weights());
  EXPECT_EQ(parse_durations_text(durations_to_text(m.durations())), m.durations());
}

TEST(Matrix, ParseErrorsNameTheLine) {
  int n = 0;
  try {
    parse_matrix_text("2\n0 1\n1 x\n", &n);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_matrix_text("2\n0 1\n", &n), Error);
  EXPECT_THROW(parse_matrix_text("2\n0 1 2\n1 0\n", &n), Error);
  EXPECT_THROW(parse_matrix_text("", &n), Error);
  EXPECT_THROW(parse_durations_text("1\n-2\n"), Error);
}

TEST(Matrix, ReadMissingFileIsIoError) {
  try {
    read_file("/nonexistent/covernet/file.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/covernet/file.txt"),
              std::string::npos);
  }
}

TEST(Matrix, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2e-300, 123456.789}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

}  // namespace
}  // namespace covernet
