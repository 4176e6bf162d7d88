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

#include "dlc/opt/matrix_chain.h"

#include <limits>

#include "absl/strings/str_cat.h"

namespace dlc {

MatrixChainPlan MatrixChainPlan::Compute(const std::vector<int64_t>& dims) {
  const int n = static_cast<int>(dims.size()) - 1;
  MatrixChainPlan plan;
  plan.cost_.assign(n, std::vector<int64_t>(n, 0));
  plan.split_.assign(n, std::vector<int>(n, -1));
  for (int length = 2; length <= n; ++length) {
    for (int i = 0; i + length - 1 < n; ++i) {
      const int j = i + length - 1;
      int64_t best = std::numeric_limits<int64_t>::max();
      for (int s = i; s < j; ++s) {
        int64_t candidate = plan.cost_[i][s] + plan.cost_[s + 1][j] +
                            dims[i] * dims[s + 1] * dims[j + 1];
        if (candidate < best) {
          best = candidate;
          plan.split_[i][j] = s;
        }
      }
      plan.cost_[i][j] = best;
    }
  }
  return plan;
}

std::string MatrixChainPlan::ToString() const {
  auto render = [&](auto&& self, int i, int j) -> std::string {
    if (i == j) return absl::StrCat("M", i);
    int s = split_[i][j];
    return absl::StrCat("(", self(self, i, s), " ", self(self, s + 1, j), ")");
  };
  return render(render, 0, count() - 1);
}

}  // namespace dlc
