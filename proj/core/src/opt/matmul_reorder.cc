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
#include <vector>

#include "dlc/ir/builder.h"
#include "dlc/opt/matrix_chain.h"
#include "dlc/opt/passes.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

bool IsFloatDot(const Value* v, const BasicBlock* block) {
  if (v->value_kind() != Value::Kind::kInstruction) return false;
  const auto* inst = static_cast<const Instruction*>(v);
  return inst->opcode() == Opcode::kDot && inst->parent() == block &&
         IsFloat(inst->type().tensor().dtype);
}

// A dot whose only user is another float dot of the same block is part of
// that dot's chain.
bool IsInterior(const Instruction* dot) {
  if (dot->uses().size() != 1) return false;
  return IsFloatDot(dot->uses()[0].user, dot->parent());
}

struct Chain {
  std::vector<Value*> leaves;
  std::vector<Instruction*> dots;
  int64_t cost = 0;
};

void CollectChain(Value* v, Instruction* root, Chain& chain) {
  if (IsFloatDot(v, root->parent()) &&
      (v == root || static_cast<Instruction*>(v)->uses().size() == 1)) {
    auto* dot = static_cast<Instruction*>(v);
    chain.dots.push_back(dot);
    const Shape& a = dot->operand(0)->type().tensor().shape;
    const Shape& b = dot->operand(1)->type().tensor().shape;
    chain.cost += a[0] * a[1] * b[1];
    CollectChain(dot->operand(0), root, chain);
    CollectChain(dot->operand(1), root, chain);
    return;
  }
  chain.leaves.push_back(v);
}

absl::StatusOr<Value*> Build(IRBuilder& builder, const MatrixChainPlan& plan,
                             const std::vector<Value*>& leaves, int i, int j) {
  if (i == j) return leaves[i];
  const int s = plan.split(i, j);
  DLC_ASSIGN_OR_RETURN(Value * left, Build(builder, plan, leaves, i, s));
  DLC_ASSIGN_OR_RETURN(Value * right, Build(builder, plan, leaves, s + 1, j));
  return builder.Dot(left, right);
}

absl::StatusOr<bool> TryReorder(Instruction* root) {
  Chain chain;
  CollectChain(root, root, chain);
  if (chain.leaves.size() < 3) return false;
  std::vector<int64_t> dims;
  dims.push_back(chain.leaves[0]->type().tensor().shape[0]);
  for (Value* leaf : chain.leaves) {
    dims.push_back(leaf->type().tensor().shape[1]);
  }
  MatrixChainPlan plan = MatrixChainPlan::Compute(dims);
  if (plan.cost() >= chain.cost) return false;

  IRBuilder builder;
  builder.SetInsertPointBefore(root);
  DLC_ASSIGN_OR_RETURN(
      Value * product,
      Build(builder, plan, chain.leaves, 0,
            static_cast<int>(chain.leaves.size()) - 1));
  DLC_RETURN_IF_ERROR(ReplaceAllUses(root, product).status());
  BasicBlock* block = root->parent();
  std::sort(chain.dots.begin(), chain.dots.end(),
            [&](Instruction* a, Instruction* b) {
              return block->IndexOf(a) > block->IndexOf(b);
            });
  for (Instruction* dot : chain.dots) block->Erase(dot);
  return true;
}

}  // namespace

absl::StatusOr<bool> ReorderMatmulChains(Function& function) {
  bool changed = false;
  for (const auto& block : function.blocks()) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (size_t i = block->size(); i-- > 0;) {
        Instruction* inst = block->instruction(i);
        if (!IsFloatDot(inst, block.get()) || IsInterior(inst)) continue;
        DLC_ASSIGN_OR_RETURN(bool rewritten, TryReorder(inst));
        if (rewritten) {
          progress = changed = true;
          break;
        }
      }
    }
  }
  return changed;
}

}  // namespace dlc
