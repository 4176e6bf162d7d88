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

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dlc/analysis/dominance.h"
#include "dlc/opt/passes.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

std::string OperandKey(const Value* v) {
  if (v->value_kind() == Value::Kind::kLiteral) {
    const auto* literal = static_cast<const Literal*>(v);
    const ScalarValue& value = literal->value();
    uint64_t bits = IsFloat(value.dtype())
                        ? std::bit_cast<uint64_t>(value.AsDouble())
                        : static_cast<uint64_t>(value.AsInt());
    return absl::StrCat("lit(", v->type().ToString(), ",", bits, ")");
  }
  return absl::StrCat("v", reinterpret_cast<uintptr_t>(v));
}

std::string InstructionKey(const Instruction& inst) {
  const InstructionAttributes& a = inst.attributes();
  std::vector<std::string> operands;
  for (const Value* v : inst.operands()) operands.push_back(OperandKey(v));
  if (IsCommutative(inst.opcode())) std::sort(operands.begin(), operands.end());
  return absl::StrCat(
      static_cast<int>(inst.opcode()), "|", inst.type().ToString(), "|",
      absl::StrJoin(operands, ","), "|", a.axis, ",", a.index, ",", a.from,
      ",", a.upto, ",", static_cast<int>(a.reduce_op), ",",
      absl::StrJoin(a.target_shape, "x"), ",", static_cast<int>(a.target_dtype),
      ",", reinterpret_cast<uintptr_t>(a.callee));
}

class ValueNumbering {
 public:
  ValueNumbering(const DominatorTree& tree, const EffectInfo& effects)
      : tree_(tree), effects_(effects) {}

  absl::StatusOr<bool> Visit(BasicBlock* block) {
    bool changed = false;
    std::vector<std::string> scope;
    for (size_t i = 0; i < block->size();) {
      Instruction* inst = block->instruction(i);
      if (inst->is_terminator() || !effects_.IsPure(*inst)) {
        ++i;
        continue;
      }
      std::string key = InstructionKey(*inst);
      auto it = table_.find(key);
      if (it != table_.end()) {
        DLC_RETURN_IF_ERROR(ReplaceAllUses(inst, it->second).status());
        block->Erase(inst);
        changed = true;
        continue;
      }
      table_.emplace(key, inst);
      scope.push_back(std::move(key));
      ++i;
    }
    for (BasicBlock* child : tree_.children(block)) {
      DLC_ASSIGN_OR_RETURN(bool child_changed, Visit(child));
      changed = changed || child_changed;
    }
    for (const std::string& key : scope) table_.erase(key);
    return changed;
  }

 private:
  const DominatorTree& tree_;
  const EffectInfo& effects_;
  absl::flat_hash_map<std::string, Instruction*> table_;
};

}  // namespace

absl::StatusOr<bool> EliminateCommonSubexpressions(Function& function,
                                                   const EffectInfo& effects) {
  if (function.is_declaration()) return false;
  DominatorTree tree(function);
  ValueNumbering numbering(tree, effects);
  return numbering.Visit(function.entry());
}

}  // namespace dlc
