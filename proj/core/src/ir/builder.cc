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

#include "dlc/ir/builder.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dlc/analysis/type_inference.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

absl::Status CheckTargetArgs(const BasicBlock* dest,
                             const std::vector<Value*>& args) {
  if (dest->num_params() != args.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", dest->label(), " expects ", dest->num_params(),
                     " arguments, got ", args.size()));
  }
  for (size_t i = 0; i < args.size(); ++i) {
    if (!(args[i]->type() == dest->param(i)->type())) {
      return absl::InvalidArgumentError(absl::StrCat(
          "argument ", i, " to '", dest->label(), " has type ",
          args[i]->type().ToString(), ", expected ",
          dest->param(i)->type().ToString()));
    }
  }
  return absl::OkStatus();
}

}  // namespace

void IRBuilder::SetInsertPointAtEnd(BasicBlock* block) {
  block_ = block;
  position_ = block->size();
}

void IRBuilder::SetInsertPoint(BasicBlock* block, size_t position) {
  block_ = block;
  position_ = position;
}

void IRBuilder::SetInsertPointBefore(Instruction* inst) {
  block_ = inst->parent();
  position_ = block_->IndexOf(inst);
}

absl::StatusOr<Instruction*> IRBuilder::Create(Opcode opcode,
                                               std::vector<Value*> operands,
                                               InstructionAttributes attributes,
                                               std::string name) {
  if (block_ == nullptr) {
    return absl::FailedPreconditionError("builder has no insertion point");
  }
  std::vector<Type> types;
  types.reserve(operands.size());
  for (Value* v : operands) {
    if (v == nullptr) return absl::InvalidArgumentError("null operand");
    types.push_back(v->type());
  }
  DLC_ASSIGN_OR_RETURN(Type result, InferType(opcode, types, attributes));
  if (IsTerminator(opcode)) name.clear();
  auto inst = std::make_unique<Instruction>(opcode, std::move(result),
                                            std::move(operands),
                                            std::move(attributes),
                                            std::move(name));
  DLC_ASSIGN_OR_RETURN(Instruction * raw,
                       block_->Insert(position_, std::move(inst)));
  ++position_;
  return raw;
}

absl::StatusOr<Instruction*> IRBuilder::Unary(Opcode opcode, Value* x,
                                              std::string name) {
  if (!IsUnaryElementwise(opcode)) {
    return absl::InvalidArgumentError(
        absl::StrCat(OpcodeName(opcode), " is not an element-wise unary op"));
  }
  return Create(opcode, {x}, {}, std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::Binary(Opcode opcode, Value* a,
                                               Value* b, std::string name) {
  if (!IsBinaryElementwise(opcode) && !IsComparison(opcode)) {
    return absl::InvalidArgumentError(
        absl::StrCat(OpcodeName(opcode), " is not a binary op"));
  }
  return Create(opcode, {a, b}, {}, std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::Select(Value* cond, Value* a, Value* b,
                                               std::string name) {
  return Create(Opcode::kSelect, {cond, a, b}, {}, std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::Dot(Value* a, Value* b,
                                            std::string name) {
  return Create(Opcode::kDot, {a, b}, {}, std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::Reduce(Value* x, ReduceOp op,
                                               int64_t axis, std::string name) {
  InstructionAttributes attrs;
  attrs.reduce_op = op;
  attrs.axis = axis;
  return Create(Opcode::kReduce, {x}, std::move(attrs), std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::Transpose(Value* x, std::string name) {
  return Create(Opcode::kTranspose, {x}, {}, std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::Slice(Value* x, int64_t from,
                                              int64_t upto, std::string name) {
  InstructionAttributes attrs;
  attrs.from = from;
  attrs.upto = upto;
  return Create(Opcode::kSlice, {x}, std::move(attrs), std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::Concatenate(std::vector<Value*> values,
                                                    int64_t axis,
                                                    std::string name) {
  InstructionAttributes attrs;
  attrs.axis = axis;
  return Create(Opcode::kConcatenate, std::move(values), std::move(attrs),
                std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::ShapeCast(Value* x, Shape shape,
                                                  std::string name) {
  InstructionAttributes attrs;
  attrs.target_shape = std::move(shape);
  return Create(Opcode::kShapeCast, {x}, std::move(attrs), std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::DataTypeCast(Value* x, DataType dtype,
                                                     std::string name) {
  InstructionAttributes attrs;
  attrs.target_dtype = dtype;
  return Create(Opcode::kDataTypeCast, {x}, std::move(attrs), std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::Apply(Function* callee,
                                              std::vector<Value*> args,
                                              std::string name) {
  InstructionAttributes attrs;
  attrs.callee = callee;
  return Create(Opcode::kApply, std::move(args), std::move(attrs),
                std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::Extract(Value* tuple, int64_t index,
                                                std::string name) {
  InstructionAttributes attrs;
  attrs.index = index;
  return Create(Opcode::kExtract, {tuple}, std::move(attrs), std::move(name));
}

absl::StatusOr<Instruction*> IRBuilder::Branch(BasicBlock* dest,
                                               std::vector<Value*> args) {
  DLC_RETURN_IF_ERROR(CheckTargetArgs(dest, args));
  InstructionAttributes attrs;
  attrs.targets = {dest};
  return Create(Opcode::kBranch, std::move(args), std::move(attrs));
}

absl::StatusOr<Instruction*> IRBuilder::Conditional(
    Value* cond, BasicBlock* then_dest, std::vector<Value*> then_args,
    BasicBlock* else_dest, std::vector<Value*> else_args) {
  DLC_RETURN_IF_ERROR(CheckTargetArgs(then_dest, then_args));
  DLC_RETURN_IF_ERROR(CheckTargetArgs(else_dest, else_args));
  InstructionAttributes attrs;
  attrs.targets = {then_dest, else_dest};
  attrs.then_arg_count = then_args.size();
  std::vector<Value*> operands = {cond};
  operands.insert(operands.end(), then_args.begin(), then_args.end());
  operands.insert(operands.end(), else_args.begin(), else_args.end());
  return Create(Opcode::kConditional, std::move(operands), std::move(attrs));
}

absl::StatusOr<Instruction*> IRBuilder::Return(std::vector<Value*> values) {
  if (block_ == nullptr) {
    return absl::FailedPreconditionError("builder has no insertion point");
  }
  std::vector<Type> types;
  for (Value* v : values) types.push_back(v->type());
  Type returned = Type::Tuple(std::move(types));
  if (!(returned == function()->result_type())) {
    return absl::InvalidArgumentError(
        absl::StrCat("return of ", returned.ToString(), " in @",
                     function()->name(), " which returns ",
                     function()->result_type().ToString()));
  }
  return Create(Opcode::kReturn, std::move(values));
}

}  // namespace dlc
