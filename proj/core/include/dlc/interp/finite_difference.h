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

#ifndef DLC_INTERP_FINITE_DIFFERENCE_H_
#define DLC_INTERP_FINITE_DIFFERENCE_H_

#include <span>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dlc/ir/ir.h"
#include "dlc/ir/tensor_value.h"

namespace dlc {

// Central-difference estimate of d(sum of output `output_index`)/d(input
// `wrt_arg`), one element at a time: (f(x + h e) - f(x - h e)) / 2h. The
// result has the type of the wrt argument. Fails when the function fails or
// produces a non-finite value at a probe point.
absl::StatusOr<TensorValue> FiniteDifferenceGradient(
    const Module& module, absl::string_view function, int output_index,
    int wrt_arg, std::span<const TensorValue> inputs, double h = 1e-6);

}  // namespace dlc

#endif  // DLC_INTERP_FINITE_DIFFERENCE_H_
