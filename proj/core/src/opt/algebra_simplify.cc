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

#include <vector>

#include "dlc/ir/builder.h"
#include "dlc/opt/passes.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

bool IsSplat(const Value* v, double value) {
  return v->value_kind() == Value::Kind::kLiteral &&
         static_cast<const Literal*>(v)->IsSplatOf(value);
}

const Instruction* AsInstruction(const Value* v, Opcode opcode) {
  if (v->value_kind() != Value::Kind::kInstruction) return nullptr;
  const auto* inst = static_cast<const Instruction*>(v);
  return inst->opcode() == opcode ? inst : nullptr;
}

// Returns the value `inst` simplifies to, or null.
absl::StatusOr<Value*> Simplify(Instruction& inst) {
  const Type& type = inst.type();
  auto same = [&](Value* v) -> Value* {
    return v->type() == type ? v : nullptr;
  };
  Function* function = inst.function();
  switch (inst.opcode()) {
    case Opcode::kPower: {
      Value* x = inst.operand(0);
      Value* n = inst.operand(1);
      if (IsSplat(n, 1)) return same(x);
      if (IsSplat(n, 0)) return function->MakeSplat(1, type.tensor());
      if (IsSplat(n, 2) && x->type() == type) {
        IRBuilder builder;
        builder.SetInsertPointBefore(&inst);
        return builder.Binary(Opcode::kMultiply, x, x);
      }
      return nullptr;
    }
    case Opcode::kMultiply:
      for (int side = 0; side < 2; ++side) {
        Value* x = inst.operand(side);
        Value* c = inst.operand(1 - side);
        if (IsSplat(c, 1) && same(x)) return x;
        if (IsSplat(c, 0)) return function->MakeSplat(0, type.tensor());
      }
      return nullptr;
    case Opcode::kAdd:
      if (IsSplat(inst.operand(1), 0) && same(inst.operand(0))) {
        return inst.operand(0);
      }
      if (IsSplat(inst.operand(0), 0) && same(inst.operand(1))) {
        return inst.operand(1);
      }
      return nullptr;
    case Opcode::kSubtract:
      return IsSplat(inst.operand(1), 0) ? same(inst.operand(0)) : nullptr;
    case Opcode::kDivide:
      return IsSplat(inst.operand(1), 1) ? same(inst.operand(0)) : nullptr;
    case Opcode::kNegate:
      if (const Instruction* inner = AsInstruction(inst.operand(0), inst.opcode())) {
        return same(inner->operand(0));
      }
      return nullptr;
    case Opcode::kTranspose:
      if (const Instruction* inner = AsInstruction(inst.operand(0), inst.opcode())) {
        return same(inner->operand(0));
      }
      return nullptr;
    case Opcode::kLog:
      if (const Instruction* inner = AsInstruction(inst.operand(0), Opcode::kExp)) {
        return same(inner->operand(0));
      }
      return nullptr;
    case Opcode::kShapeCast:
    case Opcode::kDataTypeCast:
      return same(inst.operand(0));
    default:
      return nullptr;
  }
}

}  // namespace

absl::StatusOr<bool> AlgebraSimplify(Function& function) {
  bool changed = false;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& block : function.blocks()) {
      for (size_t i = 0; i < block->size(); ++i) {
        Instruction* inst = block->instruction(i);
        DLC_ASSIGN_OR_RETURN(Value * replacement, Simplify(*inst));
        if (replacement == nullptr) continue;
        DLC_RETURN_IF_ERROR(ReplaceAllUses(inst, replacement).status());
        // Inserting before `inst` shifted it one slot right.
        if (block->instruction(i) != inst) ++i;
        block->Erase(inst);
        --i;
        progress = changed = true;
      }
    }
  }
  return changed;
}

}  // namespace dlc
