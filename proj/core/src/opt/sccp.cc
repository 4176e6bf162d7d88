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

#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/container/node_hash_map.h"
#include "dlc/interp/kernels.h"
#include "dlc/ir/cfg.h"
#include "dlc/opt/passes.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

struct LatticeValue {
  enum class Level { kUnknown, kConstant, kOverdefined };
  Level level = Level::kUnknown;
  std::optional<TensorValue> constant;
};

bool FoldableOpcode(Opcode opcode) {
  switch (opcode) {
    case Opcode::kApply:
    case Opcode::kExtract:
    case Opcode::kBranch:
    case Opcode::kConditional:
    case Opcode::kReturn:
      return false;
    default:
      return true;
  }
}

class Solver {
 public:
  Solver(Function& function, const EffectInfo& effects)
      : function_(function), effects_(effects), cfg_(function) {}

  void Solve() {
    MarkBlock(function_.entry());
    for (size_t i = 0; i < function_.entry()->num_params(); ++i) {
      Overdefine(function_.entry()->param(i));
    }
    while (!block_work_.empty() || !value_work_.empty()) {
      while (!value_work_.empty()) {
        const Value* v = value_work_.front();
        value_work_.pop_front();
        for (const Use& use : v->uses()) {
          if (executable_.contains(use.user->parent())) Evaluate(use.user);
        }
      }
      while (!block_work_.empty()) {
        BasicBlock* block = block_work_.front();
        block_work_.pop_front();
        for (const auto& inst : block->instructions()) Evaluate(inst.get());
      }
    }
  }

  // References stay valid until the next lattice update.
  const LatticeValue& Get(const Value* v) {
    static const LatticeValue kUnknown;
    if (v->value_kind() == Value::Kind::kLiteral ||
        v->value_kind() == Value::Kind::kGlobal) {
      return Constant(v);
    }
    auto it = lattice_.find(v);
    return it == lattice_.end() ? kUnknown : it->second;
  }

  bool IsExecutable(const BasicBlock* block) const {
    return executable_.contains(block);
  }
  bool IsEdgeExecutable(const BasicBlock* from, const BasicBlock* to) const {
    return edges_.contains({from, to});
  }

 private:
  const LatticeValue& Constant(const Value* v) {
    auto it = constants_.find(v);
    if (it != constants_.end()) return it->second;
    LatticeValue value;
    if (v->value_kind() == Value::Kind::kLiteral) {
      value.level = LatticeValue::Level::kConstant;
      value.constant = static_cast<const Literal*>(v)->Materialize();
    } else {
      const TensorValue& global = static_cast<const Global*>(v)->value();
      if (global.size() <= kFoldLimit) {
        value.level = LatticeValue::Level::kConstant;
        value.constant = global;
      } else {
        value.level = LatticeValue::Level::kOverdefined;
      }
    }
    return constants_.emplace(v, std::move(value)).first->second;
  }

  void MarkBlock(BasicBlock* block) {
    if (executable_.insert(block).second) block_work_.push_back(block);
  }

  void MarkEdge(BasicBlock* from, BasicBlock* to) {
    if (!edges_.insert({from, to}).second) {
      // Re-merge incoming arguments; they may have changed.
      MergeParams(to);
      return;
    }
    MergeParams(to);
    MarkBlock(to);
  }

  void Overdefine(const Value* v) {
    LatticeValue& slot = lattice_[v];
    if (slot.level == LatticeValue::Level::kOverdefined) return;
    slot.level = LatticeValue::Level::kOverdefined;
    slot.constant.reset();
    value_work_.push_back(v);
  }

  void SetConstant(const Value* v, TensorValue value) {
    LatticeValue& slot = lattice_[v];
    if (slot.level == LatticeValue::Level::kOverdefined) return;
    if (slot.level == LatticeValue::Level::kConstant) {
      if (!slot.constant->IdenticalTo(value)) Overdefine(v);
      return;
    }
    slot.level = LatticeValue::Level::kConstant;
    slot.constant = std::move(value);
    value_work_.push_back(v);
  }

  // Meets each parameter of `block` over the arguments of executable
  // incoming edges.
  void MergeParams(BasicBlock* block) {
    for (size_t p = 0; p < block->num_params(); ++p) {
      const BlockArgument* param = block->param(p);
      for (BasicBlock* pred : cfg_.predecessors(block)) {
        if (!edges_.contains({pred, block})) continue;
        const Instruction* term = pred->terminator();
        const auto& targets = term->attributes().targets;
        for (size_t t = 0; t < targets.size(); ++t) {
          if (targets[t] != block) continue;
          if (term->opcode() == Opcode::kConditional && !TakenArm(term, t)) {
            continue;
          }
          const LatticeValue& arg = Get(term->TargetArgs(t)[p]);
          if (arg.level == LatticeValue::Level::kOverdefined) {
            Overdefine(param);
          } else if (arg.level == LatticeValue::Level::kConstant) {
            SetConstant(param, *arg.constant);
          }
        }
      }
    }
  }

  // Whether arm `t` of a conditional may be taken given its condition.
  bool TakenArm(const Instruction* term, size_t t) {
    const LatticeValue& cond = Get(term->operand(0));
    if (cond.level == LatticeValue::Level::kOverdefined) return true;
    if (cond.level == LatticeValue::Level::kUnknown) return false;
    const bool value = cond.constant->GetInt(0) != 0;
    return value == (t == 0);
  }

  void Evaluate(Instruction* inst) {
    BasicBlock* block = inst->parent();
    switch (inst->opcode()) {
      case Opcode::kBranch:
        MarkEdge(block, inst->attributes().targets[0]);
        return;
      case Opcode::kConditional:
        for (size_t t = 0; t < 2; ++t) {
          if (TakenArm(inst, t)) MarkEdge(block, inst->attributes().targets[t]);
        }
        return;
      case Opcode::kReturn:
        return;
      default:
        break;
    }
    if (!FoldableOpcode(inst->opcode()) || !effects_.IsPure(*inst) ||
        !inst->type().is_tensor() ||
        inst->type().tensor().element_count() > kFoldLimit) {
      Overdefine(inst);
      return;
    }
    std::vector<const TensorValue*> operands;
    for (const Value* operand : inst->operands()) {
      const LatticeValue& value = Get(operand);
      if (value.level == LatticeValue::Level::kOverdefined) {
        Overdefine(inst);
        return;
      }
      if (value.level == LatticeValue::Level::kUnknown) return;
      operands.push_back(&*value.constant);
    }
    absl::StatusOr<TensorValue> folded = EvaluateKernel(*inst, operands);
    if (!folded.ok()) {
      // Traps are left to happen at run time.
      Overdefine(inst);
      return;
    }
    SetConstant(inst, *std::move(folded));
  }

  Function& function_;
  const EffectInfo& effects_;
  ControlFlowGraph cfg_;
  absl::flat_hash_map<const Value*, LatticeValue> lattice_;
  absl::node_hash_map<const Value*, LatticeValue> constants_;
  absl::flat_hash_set<const BasicBlock*> executable_;
  absl::flat_hash_set<std::pair<const BasicBlock*, const BasicBlock*>> edges_;
  std::deque<BasicBlock*> block_work_;
  std::deque<const Value*> value_work_;
};

}  // namespace

absl::StatusOr<bool> PropagateConstants(Function& function,
                                        const EffectInfo& effects) {
  if (function.is_declaration()) return false;
  Solver solver(function, effects);
  solver.Solve();
  bool changed = false;

  for (const auto& block : function.blocks()) {
    if (!solver.IsExecutable(block.get())) continue;
    // Block parameters proven constant.
    for (size_t p = 0; p < block->num_params(); ++p) {
      BlockArgument* param = block->param(p);
      const LatticeValue& value = solver.Get(param);
      if (value.level != LatticeValue::Level::kConstant ||
          !value.constant->IsSplat() || !param->has_uses()) {
        continue;
      }
      Literal* literal =
          function.MakeLiteral(value.constant->Get(0), value.constant->type());
      DLC_RETURN_IF_ERROR(ReplaceAllUses(param, literal).status());
      changed = true;
    }
    for (size_t i = 0; i < block->size();) {
      Instruction* inst = block->instruction(i);
      if (inst->opcode() == Opcode::kConditional) {
        const LatticeValue& cond = solver.Get(inst->operand(0));
        if (cond.level == LatticeValue::Level::kConstant) {
          const size_t taken = cond.constant->GetInt(0) != 0 ? 0 : 1;
          BasicBlock* dest = inst->attributes().targets[taken];
          std::span<Value* const> span = inst->TargetArgs(taken);
          std::vector<Value*> args(span.begin(), span.end());
          InstructionAttributes attrs;
          attrs.targets = {dest};
          auto branch = std::make_unique<Instruction>(
              Opcode::kBranch, Type::Unit(), std::move(args), attrs);
          branch->loc = inst->loc;
          block->Erase(inst);
          DLC_RETURN_IF_ERROR(block->Append(std::move(branch)).status());
          changed = true;
        }
        ++i;
        continue;
      }
      const LatticeValue& value = solver.Get(inst);
      if (inst->is_terminator() ||
          value.level != LatticeValue::Level::kConstant ||
          !value.constant->IsSplat()) {
        ++i;
        continue;
      }
      Literal* literal =
          function.MakeLiteral(value.constant->Get(0), value.constant->type());
      DLC_RETURN_IF_ERROR(ReplaceAllUses(inst, literal).status());
      block->Erase(inst);
      changed = true;
    }
  }
  return changed;
}

}  // namespace dlc
