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

#ifndef DLC_TESTS_SUPPORT_TEST_UTIL_H_
#define DLC_TESTS_SUPPORT_TEST_UTIL_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dlc/ir/ir.h"
#include "dlc/ir/tensor_value.h"

namespace dlc::test {

// Root of the checked-in test data (tests/).
std::string TestDataDir();

std::string ReadFileOrDie(const std::string& path);

// Sorted paths of the files in `dir` with extension `ext` (e.g. ".dl").
std::vector<std::string> ListFiles(const std::string& dir,
                                   absl::string_view ext);

// Parses `text`, turning diagnostics into an InvalidArgument status.
absl::StatusOr<std::unique_ptr<Module>> Parse(absl::string_view text);
std::unique_ptr<Module> ParseOrDie(absl::string_view text);

TensorValue RandomTensor(std::mt19937_64& rng, const TensorType& type,
                         double lo = -1, double hi = 1);
std::vector<TensorValue> RandomInputs(std::mt19937_64& rng,
                                      const Function& function, double lo = -1,
                                      double hi = 1);

// Bitwise equality, except that +0 equals -0 and any NaN equals any NaN.
bool SameBits(const TensorValue& a, const TensorValue& b);
bool SameBits(const std::vector<TensorValue>& a,
              const std::vector<TensorValue>& b);

// |a - b| <= max(atol, rtol * max(|a|, |b|)) element-wise, same types.
bool AllClose(const TensorValue& a, const TensorValue& b, double rtol,
              double atol);
bool AllClose(const std::vector<TensorValue>& a,
              const std::vector<TensorValue>& b, double rtol, double atol);

struct GradientCheckOptions {
  double rtol = 1e-5;
  double atol = 1e-8;
  double h = 1e-6;
};

// Runs the canonicalized unseeded gradient `gradient` of `source` on
// `inputs` and compares each wrt result with central differences of the sum
// of source output `from`. Returns the first mismatch as an error.
absl::Status CheckGradient(const Module& module, absl::string_view source,
                           absl::string_view gradient,
                           const std::vector<int>& wrt, int from,
                           const std::vector<TensorValue>& inputs,
                           const GradientCheckOptions& options = {});

}  // namespace dlc::test

#endif  // DLC_TESTS_SUPPORT_TEST_UTIL_H_
