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

#ifndef DLC_AUTODIFF_ADJOINT_H_
#define DLC_AUTODIFF_ADJOINT_H_

#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "dlc/ir/builder.h"
#include "dlc/ir/ir.h"

namespace dlc {

// Sums `contribution` over the axes that broadcasting expanded so that the
// result has `target` shape: every leading axis missing from `target` and
// every axis where `target` has extent 1. Returns `contribution` itself
// when the shapes already agree.
absl::StatusOr<Value*> Unbroadcast(IRBuilder& builder, Value* contribution,
                                   const Shape& target);

struct AdjointContribution {
  size_t operand;  // Operand index of the primal instruction.
  Value* adjoint;  // Same type as that operand.
};

// Returns the gradient of `callee` with respect to all of its float
// parameters, taking a seed as its final argument.
using CalleeGradientFn = std::function<absl::StatusOr<Function*>(Function&)>;

// Emits, at the builder's insertion point, the adjoint contributions that
// `inst` passes to its operands given the adjoint `g` of its result.
// Contributions are produced only for operands for which `wanted` returns
// true. Element-wise contributions are unbroadcast to operand shapes.
absl::StatusOr<std::vector<AdjointContribution>> AdjointRule(
    IRBuilder& builder, const Instruction& inst, Value* g,
    const std::function<bool(size_t)>& wanted,
    const CalleeGradientFn& callee_gradient);

}  // namespace dlc

#endif  // DLC_AUTODIFF_ADJOINT_H_
