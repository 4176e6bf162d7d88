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

#ifndef DLC_ANALYSIS_TYPE_INFERENCE_H_
#define DLC_ANALYSIS_TYPE_INFERENCE_H_

#include <span>

#include "absl/status/statusor.h"
#include "dlc/ir/ir.h"

namespace dlc {

// Right-aligned broadcasting: trailing dimensions must be equal or 1, missing
// leading dimensions count as 1, and the result takes the larger extent.
absl::StatusOr<Shape> BroadcastShapes(const Shape& a, const Shape& b);

// Static result type of an instruction with the given operand types.
// Terminators yield the unit type.
//
//   unary                 same type (tanh/exp/log/sqrt need a float dtype)
//   binary, select        broadcast shape; compare yields bool
//   dot                   [m, k] . [k, n] -> [m, n]
//   reduce along d        axis d removed
//   transpose             all axes reversed
//   slice from a upto b   axis 0 becomes b - a (half-open)
//   concatenate along d   extents summed on d, equal elsewhere
//   shapeCast             element count preserved
//   dataTypeCast          shape preserved
//   apply                 callee result
//   extract i             tuple element i
absl::StatusOr<Type> InferType(Opcode opcode,
                               std::span<const Type> operand_types,
                               const InstructionAttributes& attributes);

// Infers from the instruction's current operands.
absl::StatusOr<Type> InferType(const Instruction& inst);

}  // namespace dlc

#endif  // DLC_ANALYSIS_TYPE_INFERENCE_H_
