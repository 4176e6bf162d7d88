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
#include "dlc/opt/passes.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

Instruction* InstructionIn(Value* v, const BasicBlock* block) {
  if (v->value_kind() != Value::Kind::kInstruction) return nullptr;
  auto* inst = static_cast<Instruction*>(v);
  return inst->parent() == block ? inst : nullptr;
}

bool SingleUse(const Value* v) { return v->uses().size() == 1; }

struct SumTree {
  std::vector<Instruction*> dots;      // In left-to-right order.
  Value* bias = nullptr;
  std::vector<Instruction*> interior;  // Every add and dot of the tree.
};

// Flattens the add tree rooted at `root`. Fails (returns false) when a leaf
// is neither a single-use dot nor the one permitted bias.
bool Collect(Instruction* root, SumTree& tree) {
  const BasicBlock* block = root->parent();
  const Shape& shape = root->type().tensor().shape;
  std::vector<Value*> stack = {root};
  std::vector<Value*> leaves;
  while (!stack.empty()) {
    Value* v = stack.back();
    stack.pop_back();
    Instruction* inst = InstructionIn(v, block);
    if (inst != nullptr && inst->opcode() == Opcode::kAdd &&
        (inst == root || SingleUse(inst)) && inst->type() == root->type()) {
      tree.interior.push_back(inst);
      // Right first so leaves pop out left to right.
      stack.push_back(inst->operand(1));
      stack.push_back(inst->operand(0));
      continue;
    }
    leaves.push_back(v);
  }
  for (Value* leaf : leaves) {
    Instruction* inst = InstructionIn(leaf, block);
    if (inst != nullptr && inst->opcode() == Opcode::kDot && SingleUse(inst) &&
        inst->type() == root->type()) {
      tree.dots.push_back(inst);
      tree.interior.push_back(inst);
      continue;
    }
    if (tree.bias != nullptr || !leaf->type().is_tensor()) return false;
    const Shape& bias_shape = leaf->type().tensor().shape;
    const bool row = bias_shape == Shape{1, shape[1]};
    const bool vec = bias_shape == Shape{shape[1]};
    if (!row && !vec) return false;
    tree.bias = leaf;
  }
  return !tree.dots.empty() && (tree.dots.size() >= 2 || tree.bias != nullptr);
}

absl::StatusOr<bool> TryFuse(Instruction* root) {
  const Type& type = root->type();
  if (!type.is_tensor() || type.tensor().rank() != 2 ||
      !IsFloat(type.tensor().dtype)) {
    return false;
  }
  SumTree tree;
  if (!Collect(root, tree)) return false;

  const int64_t m = type.tensor().shape[0];
  const int64_t p = type.tensor().shape[1];
  const DataType dtype = type.tensor().dtype;
  IRBuilder builder;
  builder.SetInsertPointBefore(root);
  std::vector<Value*> xs;
  std::vector<Value*> ws;
  for (Instruction* dot : tree.dots) {
    xs.push_back(dot->operand(0));
    ws.push_back(dot->operand(1));
  }
  if (tree.bias != nullptr) {
    xs.push_back(builder.Splat(1, TensorType{{m, 1}, dtype}));
    Value* bias = tree.bias;
    if (bias->type().tensor().rank() == 1) {
      DLC_ASSIGN_OR_RETURN(bias, builder.ShapeCast(bias, {1, p}));
    }
    ws.push_back(bias);
  }
  DLC_ASSIGN_OR_RETURN(Value * x, builder.Concatenate(xs, 1));
  DLC_ASSIGN_OR_RETURN(Value * w, builder.Concatenate(ws, 0));
  DLC_ASSIGN_OR_RETURN(Value * fused, builder.Dot(x, w));
  DLC_RETURN_IF_ERROR(ReplaceAllUses(root, fused).status());

  // Erase users before their operands.
  BasicBlock* block = root->parent();
  std::sort(tree.interior.begin(), tree.interior.end(),
            [&](Instruction* a, Instruction* b) {
              return block->IndexOf(a) > block->IndexOf(b);
            });
  for (Instruction* inst : tree.interior) block->Erase(inst);
  return true;
}

}  // namespace

absl::StatusOr<bool> FuseLinearAlgebra(Function& function) {
  bool changed = false;
  for (const auto& block : function.blocks()) {
    bool progress = true;
    while (progress) {
      progress = false;
      // Later adds first, so the largest enclosing tree is tried first.
      for (size_t i = block->size(); i-- > 0;) {
        Instruction* inst = block->instruction(i);
        if (inst->opcode() != Opcode::kAdd) continue;
        DLC_ASSIGN_OR_RETURN(bool fused, TryFuse(inst));
        if (fused) {
          progress = changed = true;
          break;
        }
      }
    }
  }
  return changed;
}

}  // namespace dlc
