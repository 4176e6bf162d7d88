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

#include "dlc/ir/ir.h"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dlc {

void Value::AddUse(Instruction* user, size_t index) {
  uses_.push_back(Use{user, index});
}

void Value::RemoveUse(Instruction* user, size_t index) {
  auto it = std::find(uses_.begin(), uses_.end(), Use{user, index});
  assert(it != uses_.end());
  uses_.erase(it);
}

absl::StatusOr<size_t> ReplaceAllUses(Value* old_value, Value* new_value) {
  if (!(old_value->type() == new_value->type())) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot replace a value of type ",
                     old_value->type().ToString(), " with one of type ",
                     new_value->type().ToString()));
  }
  if (old_value == new_value) return old_value->uses().size();
  std::vector<Use> uses = old_value->uses();
  for (const Use& use : uses) {
    use.user->SetOperand(use.operand_index, new_value);
  }
  return uses.size();
}

Instruction::Instruction(Opcode opcode, Type result_type,
                         std::vector<Value*> operands,
                         InstructionAttributes attributes, std::string name)
    : Value(Kind::kInstruction, std::move(result_type), std::move(name)),
      opcode_(opcode),
      attributes_(std::move(attributes)) {
  SetOperands(std::move(operands));
}

Instruction::~Instruction() { DropOperands(); }

void Instruction::SetOperand(size_t i, Value* value) {
  if (operands_[i] != nullptr) operands_[i]->RemoveUse(this, i);
  operands_[i] = value;
  if (value != nullptr) value->AddUse(this, i);
}

void Instruction::SetOperands(std::vector<Value*> operands) {
  for (size_t i = 0; i < operands_.size(); ++i) {
    if (operands_[i] != nullptr) operands_[i]->RemoveUse(this, i);
  }
  operands_ = std::move(operands);
  for (size_t i = 0; i < operands_.size(); ++i) {
    if (operands_[i] != nullptr) operands_[i]->AddUse(this, i);
  }
}

std::span<Value* const> Instruction::TargetArgs(size_t target) const {
  std::span<Value* const> all(operands_);
  if (opcode_ == Opcode::kBranch) return all;
  if (opcode_ != Opcode::kConditional || all.empty()) return {};
  std::span<Value* const> rest = all.subspan(1);
  size_t then_count = std::min(attributes_.then_arg_count, rest.size());
  if (target == 0) return rest.first(then_count);
  return rest.subspan(then_count);
}

Function* Instruction::function() const {
  return parent_ == nullptr ? nullptr : parent_->parent();
}

BlockArgument* BasicBlock::AddParam(Type type, std::string name) {
  params_.push_back(std::make_unique<BlockArgument>(this, params_.size(),
                                                    std::move(type),
                                                    std::move(name)));
  return params_.back().get();
}

void BasicBlock::RemoveParam(size_t index) {
  assert(!params_[index]->has_uses());
  params_.erase(params_.begin() + static_cast<ptrdiff_t>(index));
  for (size_t i = index; i < params_.size(); ++i) params_[i]->index_ = i;
}

Instruction* BasicBlock::terminator() const {
  if (instructions_.empty() || !instructions_.back()->is_terminator()) {
    return nullptr;
  }
  return instructions_.back().get();
}

absl::StatusOr<Instruction*> BasicBlock::Insert(
    size_t position, std::unique_ptr<Instruction> inst) {
  if (position > instructions_.size()) {
    return absl::OutOfRangeError("insertion position past end of block");
  }
  bool at_end = position == instructions_.size();
  if (terminator() != nullptr && at_end) {
    return absl::FailedPreconditionError(absl::StrCat(
        "block '", label_, " already ends with a terminator; cannot append ",
        OpcodeName(inst->opcode())));
  }
  if (inst->is_terminator() && !at_end) {
    return absl::FailedPreconditionError(absl::StrCat(
        OpcodeName(inst->opcode()), " must be the last instruction of '",
        label_));
  }
  inst->parent_ = this;
  Instruction* raw = inst.get();
  instructions_.insert(instructions_.begin() + static_cast<ptrdiff_t>(position),
                       std::move(inst));
  return raw;
}

absl::StatusOr<Instruction*> BasicBlock::Append(
    std::unique_ptr<Instruction> inst) {
  return Insert(instructions_.size(), std::move(inst));
}

size_t BasicBlock::IndexOf(const Instruction* inst) const {
  for (size_t i = 0; i < instructions_.size(); ++i) {
    if (instructions_[i].get() == inst) return i;
  }
  return instructions_.size();
}

void BasicBlock::Erase(Instruction* inst) {
  assert(!inst->has_uses());
  size_t index = IndexOf(inst);
  assert(index < instructions_.size());
  instructions_.erase(instructions_.begin() + static_cast<ptrdiff_t>(index));
}

std::vector<int> GradientConfig::WrtIndices(size_t arity) const {
  if (wrt.has_value()) return *wrt;
  std::vector<int> all(arity);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

Function::Function(Module* parent, std::string name, Type type)
    : parent_(parent), name_(std::move(name)), type_(std::move(type)) {}

Function::~Function() {
  for (auto& block : blocks_) {
    for (auto& inst : block->instructions()) inst->DropOperands();
  }
}

BasicBlock* Function::FindBlock(absl::string_view label) const {
  for (const auto& block : blocks_) {
    if (block->label() == label) return block.get();
  }
  return nullptr;
}

absl::StatusOr<BasicBlock*> Function::AddBlock(std::string label) {
  if (FindBlock(label) != nullptr) {
    return absl::AlreadyExistsError(
        absl::StrCat("duplicate block label '", label, " in @", name_));
  }
  blocks_.push_back(std::make_unique<BasicBlock>(this, std::move(label)));
  return blocks_.back().get();
}

void Function::EraseBlock(BasicBlock* block) {
  for (auto& inst : block->instructions()) inst->DropOperands();
  auto it = std::find_if(blocks_.begin(), blocks_.end(),
                         [&](const auto& b) { return b.get() == block; });
  assert(it != blocks_.end());
  blocks_.erase(it);
}

std::string Function::UniqueLabel(absl::string_view base) const {
  std::string label(base);
  for (int i = 1; FindBlock(label) != nullptr; ++i) {
    label = absl::StrCat(base, "_", i);
  }
  return label;
}

Literal* Function::MakeLiteral(ScalarValue value, TensorType type) {
  literals_.push_back(std::make_unique<Literal>(value, std::move(type)));
  return literals_.back().get();
}

Literal* Function::MakeSplat(double value, TensorType type) {
  DataType dtype = type.dtype;
  return MakeLiteral(ScalarValue::FromDouble(value, dtype), std::move(type));
}

absl::string_view StageName(Stage stage) {
  return stage == Stage::kRaw ? "raw" : "optimizable";
}

absl::StatusOr<Global*> Module::AddGlobal(std::string name, TensorValue value) {
  if (FindGlobal(name) != nullptr) {
    return absl::AlreadyExistsError(
        absl::StrCat("duplicate global @", name));
  }
  globals_.push_back(std::make_unique<Global>(std::move(name), std::move(value)));
  return globals_.back().get();
}

Global* Module::FindGlobal(absl::string_view name) const {
  for (const auto& global : globals_) {
    if (global->name() == name) return global.get();
  }
  return nullptr;
}

absl::StatusOr<Function*> Module::AddFunction(std::string name, Type type) {
  if (!type.is_function()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "@", name, " must have a function type, got ", type.ToString()));
  }
  if (FindFunction(name) != nullptr) {
    return absl::AlreadyExistsError(
        absl::StrCat("duplicate function @", name));
  }
  functions_.push_back(
      std::make_unique<Function>(this, std::move(name), std::move(type)));
  return functions_.back().get();
}

Function* Module::FindFunction(absl::string_view name) const {
  for (const auto& function : functions_) {
    if (function->name() == name) return function.get();
  }
  return nullptr;
}

std::string Module::UniqueFunctionName(absl::string_view base) const {
  std::string name(base);
  for (int i = 1; FindFunction(name) != nullptr; ++i) {
    name = absl::StrCat(base, "_", i);
  }
  return name;
}

}  // namespace dlc
