// Copyright 2026 The dlc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DLC_OPT_MATRIX_CHAIN_H_
#define DLC_OPT_MATRIX_CHAIN_H_

#include <cstdint>
#include <string>
#include <vector>

namespace dlc {

// Optimal parenthesization of M0 * M1 * ... * Mk where Mi is
// dims[i] x dims[i + 1].
class MatrixChainPlan {
 public:
  // Classic O(k^3) dynamic program; ties go to the smallest split index.
  // Requires at least two dims, all positive.
  static MatrixChainPlan Compute(const std::vector<int64_t>& dims);

  // Minimum number of scalar multiplications.
  int64_t cost() const { return cost_[0][count() - 1]; }
  int count() const { return static_cast<int>(cost_.size()); }

  // Index s such that the optimal product of Mi..Mj is (Mi..Ms)(Ms+1..Mj).
  int split(int i, int j) const { return split_[i][j]; }
  int64_t cost(int i, int j) const { return cost_[i][j]; }

  // "((M0 M1) M2)"; a single matrix prints as "M0".
  std::string ToString() const;

 private:
  std::vector<std::vector<int64_t>> cost_;
  std::vector<std::vector<int>> split_;
};

}  // namespace dlc

#endif  // DLC_OPT_MATRIX_CHAIN_H_
