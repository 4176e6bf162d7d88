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

#include "absl/container/flat_hash_set.h"
#include "dlc/ir/cfg.h"
#include "dlc/opt/passes.h"

namespace dlc {
namespace {

bool RemoveUnreachableBlocks(Function& function) {
  ControlFlowGraph cfg(function);
  std::vector<BasicBlock*> dead;
  for (const auto& block : function.blocks()) {
    if (!cfg.IsReachable(block.get())) dead.push_back(block.get());
  }
  // Unreachable blocks may reference each other; cut every edge first.
  for (BasicBlock* block : dead) {
    for (const auto& inst : block->instructions()) inst->DropOperands();
  }
  for (BasicBlock* block : dead) function.EraseBlock(block);
  return !dead.empty();
}

// Branch operand positions feeding `param` of its block.
std::vector<std::pair<Instruction*, size_t>> Incoming(
    const Function& function, const BlockArgument* param) {
  std::vector<std::pair<Instruction*, size_t>> incoming;
  for (const auto& block : function.blocks()) {
    Instruction* term = block->terminator();
    if (term == nullptr) continue;
    const auto& targets = term->attributes().targets;
    for (size_t t = 0; t < targets.size(); ++t) {
      if (targets[t] != param->parent()) continue;
      size_t base = term->opcode() == Opcode::kConditional
                        ? (t == 0 ? 1 : 1 + term->attributes().then_arg_count)
                        : 0;
      incoming.emplace_back(term, base + param->index());
    }
  }
  return incoming;
}

void RemoveBranchOperand(Instruction* term, size_t position) {
  std::vector<Value*> operands = term->operands();
  operands.erase(operands.begin() + static_cast<ptrdiff_t>(position));
  if (term->opcode() == Opcode::kConditional &&
      position <= term->attributes().then_arg_count) {
    --term->mutable_attributes().then_arg_count;
  }
  term->SetOperands(std::move(operands));
}

}  // namespace

absl::StatusOr<bool> EliminateDeadCode(Function& function,
                                       const EffectInfo& effects) {
  if (function.is_declaration()) return false;
  bool changed = RemoveUnreachableBlocks(function);

  // Mark: effectful instructions are roots; a live branch keeps an argument
  // alive only when the destination parameter is live.
  absl::flat_hash_set<const Value*> live;
  std::vector<const Value*> worklist;
  auto mark = [&](const Value* v) {
    if (v->value_kind() == Value::Kind::kLiteral ||
        v->value_kind() == Value::Kind::kGlobal) {
      return;
    }
    if (live.insert(v).second) worklist.push_back(v);
  };
  for (const auto& block : function.blocks()) {
    for (const auto& inst : block->instructions()) {
      if (!effects.IsPure(*inst)) mark(inst.get());
    }
  }
  while (!worklist.empty()) {
    const Value* v = worklist.back();
    worklist.pop_back();
    if (v->value_kind() == Value::Kind::kArgument) {
      const auto* param = static_cast<const BlockArgument*>(v);
      if (param->parent() == function.entry()) continue;
      for (auto [term, position] : Incoming(function, param)) {
        mark(term->operand(position));
      }
      continue;
    }
    const auto* inst = static_cast<const Instruction*>(v);
    switch (inst->opcode()) {
      case Opcode::kBranch:
        break;
      case Opcode::kConditional:
        mark(inst->operand(0));
        break;
      default:
        for (const Value* operand : inst->operands()) mark(operand);
        break;
    }
  }

  // Dead parameters of non-entry blocks: drop their incoming arguments
  // before the sweep, since those may be dead instructions.
  for (const auto& block : function.blocks()) {
    if (block.get() == function.entry()) continue;
    for (size_t i = block->num_params(); i-- > 0;) {
      if (live.contains(block->param(i))) continue;
      auto incoming = Incoming(function, block->param(i));
      // Highest positions first so earlier positions stay valid.
      std::sort(incoming.begin(), incoming.end(),
                [](const auto& a, const auto& b) { return a.second > b.second; });
      for (auto [term, position] : incoming) {
        RemoveBranchOperand(term, position);
      }
    }
  }
  // Sweep instructions, last to first so users go before their operands.
  for (const auto& block : function.blocks()) {
    for (size_t i = block->size(); i-- > 0;) {
      Instruction* inst = block->instruction(i);
      if (live.contains(inst)) continue;
      inst->DropOperands();
      changed = true;
    }
    for (size_t i = block->size(); i-- > 0;) {
      Instruction* inst = block->instruction(i);
      if (!live.contains(inst)) block->Erase(inst);
    }
  }
  for (const auto& block : function.blocks()) {
    if (block.get() == function.entry()) continue;
    for (size_t i = block->num_params(); i-- > 0;) {
      if (live.contains(block->param(i))) continue;
      block->RemoveParam(i);
      changed = true;
    }
  }
  return changed;
}

}  // namespace dlc
