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

#ifndef DLC_IR_OPCODE_H_
#define DLC_IR_OPCODE_H_

#include <optional>

#include "absl/strings/string_view.h"

namespace dlc {

enum class Opcode {
  // Element-wise unary.
  kNegate,
  kTanh,
  kExp,
  kLog,
  kSqrt,
  kAbs,
  kSign,
  // Element-wise binary, broadcasting.
  kAdd,
  kSubtract,
  kMultiply,
  kDivide,
  kPower,
  // Comparison, broadcasting, bool result.
  kLt,
  kLe,
  kGt,
  kGe,
  kEq,
  kNe,
  kSelect,
  kDot,
  kReduce,
  kTranspose,
  kSlice,
  kConcatenate,
  kShapeCast,
  kDataTypeCast,
  kApply,
  kExtract,
  // Terminators.
  kBranch,
  kConditional,
  kReturn,
};

inline constexpr int kNumOpcodes = static_cast<int>(Opcode::kReturn) + 1;

enum class ReduceOp { kAdd, kMultiply };

absl::string_view OpcodeName(Opcode opcode);
std::optional<Opcode> ParseOpcode(absl::string_view text);
absl::string_view ReduceOpName(ReduceOp op);

bool IsUnaryElementwise(Opcode opcode);
bool IsBinaryElementwise(Opcode opcode);
bool IsComparison(Opcode opcode);
bool IsTerminator(Opcode opcode);
bool IsCommutative(Opcode opcode);

// Operand count demanded by the opcode, or nullopt when variadic
// (concatenate, apply, branch, conditional, return).
std::optional<int> FixedArity(Opcode opcode);

}  // namespace dlc

#endif  // DLC_IR_OPCODE_H_
