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

#ifndef DLC_IR_BUILDER_H_
#define DLC_IR_BUILDER_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dlc/ir/ir.h"

namespace dlc {

// Creates type-checked instructions at an insertion point. Every creation
// method validates arity and attributes, infers the result type, and fails
// without mutating the IR when the instruction would be ill-formed.
class IRBuilder {
 public:
  IRBuilder() = default;
  explicit IRBuilder(BasicBlock* block) { SetInsertPointAtEnd(block); }

  void SetInsertPointAtEnd(BasicBlock* block);
  void SetInsertPoint(BasicBlock* block, size_t position);
  void SetInsertPointBefore(Instruction* inst);

  BasicBlock* block() const { return block_; }
  Function* function() const { return block_->parent(); }

  absl::StatusOr<Instruction*> Create(Opcode opcode,
                                      std::vector<Value*> operands,
                                      InstructionAttributes attributes = {},
                                      std::string name = "");

  absl::StatusOr<Instruction*> Unary(Opcode opcode, Value* x,
                                     std::string name = "");
  absl::StatusOr<Instruction*> Binary(Opcode opcode, Value* a, Value* b,
                                      std::string name = "");
  absl::StatusOr<Instruction*> Select(Value* cond, Value* a, Value* b,
                                      std::string name = "");
  absl::StatusOr<Instruction*> Dot(Value* a, Value* b, std::string name = "");
  absl::StatusOr<Instruction*> Reduce(Value* x, ReduceOp op, int64_t axis,
                                      std::string name = "");
  absl::StatusOr<Instruction*> Transpose(Value* x, std::string name = "");
  absl::StatusOr<Instruction*> Slice(Value* x, int64_t from, int64_t upto,
                                     std::string name = "");
  absl::StatusOr<Instruction*> Concatenate(std::vector<Value*> values,
                                           int64_t axis,
                                           std::string name = "");
  absl::StatusOr<Instruction*> ShapeCast(Value* x, Shape shape,
                                         std::string name = "");
  absl::StatusOr<Instruction*> DataTypeCast(Value* x, DataType dtype,
                                            std::string name = "");
  absl::StatusOr<Instruction*> Apply(Function* callee,
                                     std::vector<Value*> args,
                                     std::string name = "");
  absl::StatusOr<Instruction*> Extract(Value* tuple, int64_t index,
                                       std::string name = "");
  absl::StatusOr<Instruction*> Branch(BasicBlock* dest,
                                      std::vector<Value*> args);
  absl::StatusOr<Instruction*> Conditional(Value* cond, BasicBlock* then_dest,
                                           std::vector<Value*> then_args,
                                           BasicBlock* else_dest,
                                           std::vector<Value*> else_args);
  // Zero values return unit, one returns it, several form a tuple.
  absl::StatusOr<Instruction*> Return(std::vector<Value*> values);

  Literal* Splat(double value, TensorType type) {
    return function()->MakeSplat(value, std::move(type));
  }
  Literal* Scalar(double value, DataType dtype) {
    return function()->MakeSplat(value, TensorType{{}, dtype});
  }

 private:
  BasicBlock* block_ = nullptr;
  size_t position_ = 0;
};

}  // namespace dlc

#endif  // DLC_IR_BUILDER_H_
