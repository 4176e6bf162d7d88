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

// The in-memory SSA IR: module > function > basic block > instruction.
//
// Values are owned by their defining site (blocks own their arguments,
// blocks own instructions, functions own literals, modules own globals) and
// referenced by raw pointer from operand lists. Every Value keeps an exact
// list of its uses, updated by the operand mutators on Instruction.
//
// Control flow uses block arguments rather than phi nodes: `branch` and
// `conditional` pass values to the parameters of their destination blocks.

#ifndef DLC_IR_IR_H_
#define DLC_IR_IR_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dlc/ir/opcode.h"
#include "dlc/ir/tensor_value.h"
#include "dlc/ir/types.h"

namespace dlc {

class BasicBlock;
class Function;
class Instruction;
class Module;

// 1-based source position; line 0 means "not from text".
struct SourceLoc {
  int line = 0;
  int column = 0;
  bool known() const { return line > 0; }
};

struct Use {
  Instruction* user;
  size_t operand_index;
  bool operator==(const Use&) const = default;
};

class Value {
 public:
  enum class Kind : uint8_t { kArgument, kInstruction, kLiteral, kGlobal };

  Value(const Value&) = delete;
  Value& operator=(const Value&) = delete;
  virtual ~Value() = default;

  Kind value_kind() const { return kind_; }
  const Type& type() const { return type_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<Use>& uses() const { return uses_; }
  bool has_uses() const { return !uses_.empty(); }

 protected:
  Value(Kind kind, Type type, std::string name)
      : type_(std::move(type)), kind_(kind), name_(std::move(name)) {}

  Type type_;

 private:
  friend class Instruction;

  void AddUse(Instruction* user, size_t index);
  void RemoveUse(Instruction* user, size_t index);

  Kind kind_;
  std::string name_;
  std::vector<Use> uses_;
};

// Rewrites every operand that references `old_value` to `new_value`.
// Returns the number of rewritten operands. Types must be identical.
absl::StatusOr<size_t> ReplaceAllUses(Value* old_value, Value* new_value);

class BlockArgument final : public Value {
 public:
  BlockArgument(BasicBlock* parent, size_t index, Type type, std::string name)
      : Value(Kind::kArgument, std::move(type), std::move(name)),
        parent_(parent),
        index_(index) {}

  BasicBlock* parent() const { return parent_; }
  size_t index() const { return index_; }

 private:
  friend class BasicBlock;
  BasicBlock* parent_;
  size_t index_;
};

// A scalar constant. With a tensor type of rank >= 1 it denotes a splat.
class Literal final : public Value {
 public:
  Literal(ScalarValue value, TensorType type)
      : Value(Kind::kLiteral, Type(std::move(type)), ""), value_(value) {}

  const ScalarValue& value() const { return value_; }
  const TensorType& tensor_type() const { return type_.tensor(); }
  bool IsSplatOf(double v) const { return value_.Equals(v); }
  TensorValue Materialize() const {
    return TensorValue::Splat(tensor_type(), value_);
  }

 private:
  ScalarValue value_;
};

// A named module-level constant tensor, referenced as `@name`.
class Global final : public Value {
 public:
  Global(std::string name, TensorValue value)
      : Value(Kind::kGlobal, Type(value.type()), std::move(name)),
        value_(std::move(value)) {}

  const TensorValue& value() const { return value_; }

 private:
  TensorValue value_;
};

struct InstructionAttributes {
  int64_t axis = 0;                 // reduce, concatenate
  int64_t index = 0;                // extract
  int64_t from = 0;                 // slice
  int64_t upto = 0;                 // slice
  ReduceOp reduce_op = ReduceOp::kAdd;
  Shape target_shape;               // shapeCast
  DataType target_dtype = DataType::kF32;  // dataTypeCast
  Function* callee = nullptr;       // apply
  std::vector<BasicBlock*> targets;  // branch: {dest}; conditional: {then, else}
  size_t then_arg_count = 0;        // conditional

  bool operator==(const InstructionAttributes&) const = default;
};

class Instruction final : public Value {
 public:
  Instruction(Opcode opcode, Type result_type, std::vector<Value*> operands,
              InstructionAttributes attributes, std::string name = "");
  ~Instruction() override;

  Opcode opcode() const { return opcode_; }
  bool is_terminator() const { return IsTerminator(opcode_); }

  const std::vector<Value*>& operands() const { return operands_; }
  Value* operand(size_t i) const { return operands_[i]; }
  size_t num_operands() const { return operands_.size(); }
  void SetOperand(size_t i, Value* value);
  void SetOperands(std::vector<Value*> operands);
  void DropOperands() { SetOperands({}); }

  const InstructionAttributes& attributes() const { return attributes_; }
  InstructionAttributes& mutable_attributes() { return attributes_; }
  Function* callee() const { return attributes_.callee; }

  // Argument lists of branch targets. For `branch` target 0 receives every
  // operand; for `conditional` operand 0 is the condition.
  std::span<Value* const> TargetArgs(size_t target) const;

  void set_result_type(Type type) { type_ = std::move(type); }

  BasicBlock* parent() const { return parent_; }
  Function* function() const;

  SourceLoc loc;

 private:
  friend class BasicBlock;

  Opcode opcode_;
  std::vector<Value*> operands_;
  InstructionAttributes attributes_;
  BasicBlock* parent_ = nullptr;
};

class BasicBlock {
 public:
  BasicBlock(Function* parent, std::string label)
      : parent_(parent), label_(std::move(label)) {}
  BasicBlock(const BasicBlock&) = delete;
  BasicBlock& operator=(const BasicBlock&) = delete;

  Function* parent() const { return parent_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  const std::vector<std::unique_ptr<BlockArgument>>& params() const {
    return params_;
  }
  BlockArgument* param(size_t i) const { return params_[i].get(); }
  size_t num_params() const { return params_.size(); }
  BlockArgument* AddParam(Type type, std::string name = "");
  // The parameter must be unused; later parameters shift down.
  void RemoveParam(size_t index);

  const std::vector<std::unique_ptr<Instruction>>& instructions() const {
    return instructions_;
  }
  size_t size() const { return instructions_.size(); }
  bool empty() const { return instructions_.empty(); }
  Instruction* instruction(size_t i) const { return instructions_[i].get(); }
  // The final instruction when it is a terminator, else null.
  Instruction* terminator() const;

  // Insertion keeps terminators last and unique: nothing may follow a
  // terminator and a terminator may only be appended.
  absl::StatusOr<Instruction*> Insert(size_t position,
                                      std::unique_ptr<Instruction> inst);
  absl::StatusOr<Instruction*> Append(std::unique_ptr<Instruction> inst);

  size_t IndexOf(const Instruction* inst) const;
  // The instruction must have no uses.
  void Erase(Instruction* inst);

  SourceLoc loc;

 private:
  Function* parent_;
  std::string label_;
  std::vector<std::unique_ptr<BlockArgument>> params_;
  std::vector<std::unique_ptr<Instruction>> instructions_;
};

// Attribute of a gradient declaration. Indices are zero-based.
struct GradientConfig {
  std::string source;
  std::optional<std::vector<int>> wrt;  // nullopt: every argument
  std::vector<int> keeping;
  std::optional<int> from;  // nullopt: output 0
  bool seedable = false;

  int from_index() const { return from.value_or(0); }
  // The concrete wrt list given the source arity.
  std::vector<int> WrtIndices(size_t arity) const;
  bool operator==(const GradientConfig&) const = default;
};

class Function {
 public:
  Function(Module* parent, std::string name, Type type);
  ~Function();
  Function(const Function&) = delete;
  Function& operator=(const Function&) = delete;

  Module* parent() const { return parent_; }
  const std::string& name() const { return name_; }
  const Type& type() const { return type_; }
  void set_type(Type type) { type_ = std::move(type); }
  std::vector<Type> param_types() const { return type_.params(); }
  const Type& result_type() const { return type_.result(); }

  const std::optional<GradientConfig>& gradient_config() const {
    return gradient_config_;
  }
  void set_gradient_config(std::optional<GradientConfig> config) {
    gradient_config_ = std::move(config);
  }

  bool is_declaration() const { return blocks_.empty(); }
  bool is_gradient_declaration() const {
    return is_declaration() && gradient_config_.has_value();
  }

  const std::vector<std::unique_ptr<BasicBlock>>& blocks() const {
    return blocks_;
  }
  BasicBlock* entry() const {
    return blocks_.empty() ? nullptr : blocks_.front().get();
  }
  BasicBlock* FindBlock(absl::string_view label) const;
  absl::StatusOr<BasicBlock*> AddBlock(std::string label);
  // Drops the block and its contents; values defined there must be unused
  // outside it.
  void EraseBlock(BasicBlock* block);
  // A label derived from `base` not yet used in this function.
  std::string UniqueLabel(absl::string_view base) const;

  // Literals live as long as the function.
  Literal* MakeLiteral(ScalarValue value, TensorType type);
  Literal* MakeSplat(double value, TensorType type);

  SourceLoc loc;

 private:
  Module* parent_;
  std::string name_;
  Type type_;
  std::optional<GradientConfig> gradient_config_;
  std::vector<std::unique_ptr<Literal>> literals_;
  std::vector<std::unique_ptr<BasicBlock>> blocks_;
};

enum class Stage { kRaw, kOptimizable };
absl::string_view StageName(Stage stage);

class Module {
 public:
  explicit Module(std::string name, Stage stage = Stage::kRaw)
      : name_(std::move(name)), stage_(stage) {}
  Module(const Module&) = delete;
  Module& operator=(const Module&) = delete;

  const std::string& name() const { return name_; }
  Stage stage() const { return stage_; }
  void set_stage(Stage stage) { stage_ = stage; }

  const std::vector<std::unique_ptr<Global>>& globals() const {
    return globals_;
  }
  absl::StatusOr<Global*> AddGlobal(std::string name, TensorValue value);
  Global* FindGlobal(absl::string_view name) const;

  const std::vector<std::unique_ptr<Function>>& functions() const {
    return functions_;
  }
  // Fails when the name is already bound.
  absl::StatusOr<Function*> AddFunction(std::string name, Type type);
  Function* FindFunction(absl::string_view name) const;
  std::string UniqueFunctionName(absl::string_view base) const;

 private:
  std::string name_;
  Stage stage_;
  // Declared before functions so instructions are destroyed first.
  std::vector<std::unique_ptr<Global>> globals_;
  std::vector<std::unique_ptr<Function>> functions_;
};

}  // namespace dlc

#endif  // DLC_IR_IR_H_
