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

#ifndef DLC_INTERP_KERNELS_H_
#define DLC_INTERP_KERNELS_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "dlc/ir/ir.h"
#include "dlc/ir/tensor_value.h"

namespace dlc {

// Number of tensor kernels evaluated by this process so far. Used to observe
// that staging and compilation perform no tensor math.
int64_t KernelInvocationCount();
void ResetKernelInvocationCount();

// Evaluates one tensor operation. `opcode` must not be apply, extract or a
// terminator. Floating-point kernels compute in double precision and round
// to the result dtype on write; integer kernels wrap in two's complement.
// Integer division by zero is an error (FailedPrecondition).
absl::StatusOr<TensorValue> EvaluateKernel(
    Opcode opcode, const InstructionAttributes& attributes,
    std::span<const TensorValue* const> operands,
    const TensorType& result_type);

// Convenience wrapper taking the opcode, attributes and result type from
// `inst`.
absl::StatusOr<TensorValue> EvaluateKernel(
    const Instruction& inst, std::span<const TensorValue* const> operands);

}  // namespace dlc

#endif  // DLC_INTERP_KERNELS_H_
