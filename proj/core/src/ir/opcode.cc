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

#include "dlc/ir/opcode.h"

#include <array>

namespace dlc {
namespace {

constexpr std::array<absl::string_view, kNumOpcodes> kOpcodeNames = {
    "negate",      "tanh",      "exp",          "log",      "sqrt",
    "abs",         "sign",      "add",          "subtract", "multiply",
    "divide",      "power",     "lt",           "le",       "gt",
    "ge",          "eq",        "ne",           "select",   "dot",
    "reduce",      "transpose", "slice",        "concatenate",
    "shapeCast",   "dataTypeCast", "apply",     "extract",  "branch",
    "conditional", "return",
};

}  // namespace

absl::string_view OpcodeName(Opcode opcode) {
  return kOpcodeNames[static_cast<int>(opcode)];
}

std::optional<Opcode> ParseOpcode(absl::string_view text) {
  for (int i = 0; i < kNumOpcodes; ++i) {
    if (kOpcodeNames[i] == text) return static_cast<Opcode>(i);
  }
  return std::nullopt;
}

absl::string_view ReduceOpName(ReduceOp op) {
  return op == ReduceOp::kAdd ? "add" : "multiply";
}

bool IsUnaryElementwise(Opcode opcode) {
  return opcode >= Opcode::kNegate && opcode <= Opcode::kSign;
}

bool IsBinaryElementwise(Opcode opcode) {
  return opcode >= Opcode::kAdd && opcode <= Opcode::kPower;
}

bool IsComparison(Opcode opcode) {
  return opcode >= Opcode::kLt && opcode <= Opcode::kNe;
}

bool IsTerminator(Opcode opcode) {
  return opcode == Opcode::kBranch || opcode == Opcode::kConditional ||
         opcode == Opcode::kReturn;
}

bool IsCommutative(Opcode opcode) {
  return opcode == Opcode::kAdd || opcode == Opcode::kMultiply ||
         opcode == Opcode::kEq || opcode == Opcode::kNe;
}

std::optional<int> FixedArity(Opcode opcode) {
  if (IsUnaryElementwise(opcode)) return 1;
  if (IsBinaryElementwise(opcode) || IsComparison(opcode)) return 2;
  switch (opcode) {
    case Opcode::kSelect:
      return 3;
    case Opcode::kDot:
      return 2;
    case Opcode::kReduce:
    case Opcode::kTranspose:
    case Opcode::kSlice:
    case Opcode::kShapeCast:
    case Opcode::kDataTypeCast:
    case Opcode::kExtract:
      return 1;
    default:
      return std::nullopt;
  }
}

}  // namespace dlc
