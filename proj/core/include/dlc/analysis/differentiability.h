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

#ifndef DLC_ANALYSIS_DIFFERENTIABILITY_H_
#define DLC_ANALYSIS_DIFFERENTIABILITY_H_

#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dlc/ir/ir.h"

namespace dlc {

// The value returned as output `output_index` of a single-block function.
// Fails when the function returns a tuple-typed value as a whole.
absl::StatusOr<Value*> SelectedOutput(const Function& function,
                                      int output_index);

// Values lying on a float-typed def-use path from one of the `wrt` entry
// parameters to `output`. Values of integer or bool type never carry a
// derivative, so comparisons and select conditions are never active.
absl::flat_hash_set<const Value*> ActiveValues(const Function& function,
                                               const std::vector<int>& wrt,
                                               const Value* output);

// OK when the gradient described by `config` can be generated for
// `function`: the body is a single block, the selected output and every wrt
// argument have a float dtype, and every active instruction has an adjoint
// rule. Callees of active applies must themselves be differentiable with
// respect to all of their float parameters. The error message names the
// offending instruction or restriction.
absl::Status CheckDifferentiability(const Function& function,
                                    const GradientConfig& config);

}  // namespace dlc

#endif  // DLC_ANALYSIS_DIFFERENTIABILITY_H_
