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

#include "random_program.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_cat.h"
#include "dlc/analysis/verifier.h"
#include "dlc/autodiff/gradient_type.h"
#include "dlc/ir/builder.h"

namespace dlc::test {
namespace {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  int Int(int lo, int hi) {  // Inclusive.
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  double Real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  bool Chance(double p) { return Real(0, 1) < p; }
  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[Int(0, static_cast<int>(items.size()) - 1)];
  }

 private:
  std::mt19937_64 engine_;
};

void DieIfInvalid(const Module& module) {
  absl::Status status = VerifyModuleStatus(module);
  if (!status.ok()) {
    std::cerr << "generator produced an invalid module: " << status.message()
              << "\n";
    std::abort();
  }
}

// Builds one numeric function. Every value carries an upper bound on its
// magnitude; anything that could grow past kLimit is squashed with tanh.
class NumericGenerator {
 public:
  NumericGenerator(uint64_t seed, const NumericProgramOptions& options)
      : rng_(seed), options_(options) {}

  std::unique_ptr<Module> Run() {
    auto module = std::make_unique<Module>("random");
    Function* function = *module->AddFunction("main", Type::Function({}, Type::Unit()));
    block_ = *function->AddBlock("entry");
    builder_ = IRBuilder(block_);
    Param(RandomShape());
    Param(RandomShape());
    for (int i = 0; i < options_.num_instructions; ++i) Step();
    std::vector<Value*> results = {pool_.back()};
    int extra = rng_.Int(0, 2);
    for (int i = 0; i < extra; ++i) {
      Value* v = Any();
      if (std::find(results.begin(), results.end(), v) == results.end()) {
        results.push_back(v);
      }
    }
    std::vector<Type> params, result_types;
    for (const auto& p : block_->params()) params.push_back(p->type());
    for (Value* v : results) result_types.push_back(v->type());
    function->set_type(Type::Function(params, Type::Tuple(result_types)));
    (void)builder_.Return(results);
    DieIfInvalid(*module);
    return module;
  }

 private:
  static constexpr double kLimit = 64;

  DataType dtype() const { return options_.dtype; }
  TensorType Tensor(Shape shape) const { return {std::move(shape), dtype()}; }

  Shape RandomShape() {
    switch (rng_.Int(0, 5)) {
      case 0:
        return {};
      case 1:
        return {rng_.Int(1, 4)};
      default:
        return {rng_.Int(1, 4), rng_.Int(1, 4)};
    }
  }

  Value* Param(Shape shape) {
    Value* p = block_->AddParam(Type::Tensor(std::move(shape), dtype()),
                                absl::StrCat("p", block_->num_params()));
    Add(p, 1);
    return p;
  }

  void Add(Value* v, double bound) {
    bound_[v] = bound;
    pool_.push_back(v);
  }
  double Bound(Value* v) const {
    auto it = bound_.find(v);
    return it == bound_.end() ? 1 : it->second;
  }
  const Shape& ShapeOf(Value* v) const { return v->type().tensor().shape; }

  // Mostly recent values, so chains grow deep.
  Value* Any() {
    int n = static_cast<int>(pool_.size());
    if (rng_.Chance(0.6)) return pool_[rng_.Int(std::max(0, n - 4), n - 1)];
    return pool_[rng_.Int(0, n - 1)];
  }

  Value* WithShape(const Shape& shape) {
    std::vector<Value*> matches;
    for (Value* v : pool_) {
      if (ShapeOf(v) == shape) matches.push_back(v);
    }
    if (matches.empty() || rng_.Chance(0.15)) return Param(shape);
    return rng_.Pick(matches);
  }

  Value* Matrix() {
    std::vector<Value*> matrices;
    for (Value* v : pool_) {
      if (ShapeOf(v).size() == 2) matrices.push_back(v);
    }
    if (matrices.empty()) return Param({rng_.Int(1, 4), rng_.Int(1, 4)});
    return rng_.Pick(matrices);
  }

  Value* Emit(absl::StatusOr<Instruction*> inst, double bound) {
    if (!inst.ok()) {
      std::cerr << "generator: " << inst.status().message() << "\n";
      std::abort();
    }
    Value* v = *inst;
    if (bound > kLimit) {
      v = *builder_.Unary(Opcode::kTanh, v);
      bound = 1;
    }
    Add(v, bound);
    return v;
  }

  // A broadcast-compatible partner for `x`.
  Value* Partner(Value* x) {
    const Shape& shape = ShapeOf(x);
    switch (rng_.Int(0, 5)) {
      case 0:
        return builder_.Scalar(std::round(rng_.Real(-3, 3) * 4) / 4, dtype());
      case 1:
        if (shape.size() == 2) return WithShape({1, shape[1]});
        [[fallthrough]];
      default:
        return WithShape(shape);
    }
  }

  Value* Literal(double value, const Shape& shape) {
    return rng_.Chance(0.5) ? builder_.Scalar(value, dtype())
                            : builder_.Splat(value, Tensor(shape));
  }

  void Step() {
    Value* x = Any();
    double bx = Bound(x);
    const Shape& shape = ShapeOf(x);
    switch (rng_.Int(0, 27)) {
      case 0:
      case 1:
        Emit(builder_.Unary(Opcode::kTanh, x), 1);
        break;
      case 2:
        if (bx > 4) x = Emit(builder_.Unary(Opcode::kTanh, x), 1), bx = 1;
        Emit(builder_.Unary(Opcode::kExp, x), std::exp(bx));
        break;
      case 3: {
        Value* a = Emit(builder_.Unary(Opcode::kAbs, x), bx);
        Value* a1 = Emit(builder_.Binary(Opcode::kAdd, a,
                                         builder_.Scalar(1, dtype())),
                         bx + 1);
        Emit(builder_.Unary(Opcode::kLog, a1), std::log(bx + 1));
        break;
      }
      case 4: {
        Value* a = Emit(builder_.Unary(Opcode::kAbs, x), bx);
        Emit(builder_.Unary(Opcode::kSqrt, a), std::sqrt(bx));
        break;
      }
      case 5:
        Emit(builder_.Unary(rng_.Pick(std::vector<Opcode>{
                                Opcode::kNegate, Opcode::kAbs, Opcode::kSign}),
                            x),
             std::max(bx, 1.0));
        break;
      case 6:
      case 7:
      case 8: {
        Value* y = Partner(x);
        Opcode op = rng_.Pick(std::vector<Opcode>{
            Opcode::kAdd, Opcode::kSubtract, Opcode::kMultiply});
        double by = Bound(y);
        if (y->value_kind() == Value::Kind::kLiteral) by = 3;
        double bound = op == Opcode::kMultiply ? bx * by : bx + by;
        if (rng_.Chance(0.5)) std::swap(x, y);
        Emit(builder_.Binary(op, x, y), bound);
        break;
      }
      case 9: {
        Value* y = Partner(x);
        Value* a = Emit(builder_.Unary(Opcode::kAbs, y), Bound(y));
        Value* d = Emit(builder_.Binary(Opcode::kAdd, a,
                                        builder_.Scalar(1, dtype())),
                        Bound(y) + 1);
        Emit(builder_.Binary(Opcode::kDivide, x, d), bx);
        break;
      }
      case 10: {
        int n = rng_.Int(1, 3);
        if (bx > 4) x = Emit(builder_.Unary(Opcode::kTanh, x), 1), bx = 1;
        Emit(builder_.Binary(Opcode::kPower, x, builder_.Scalar(n, dtype())),
             std::pow(bx, n));
        break;
      }
      case 11:
      case 12: {
        Value* a = Matrix();
        int64_t k = ShapeOf(a)[1];
        Value* b = WithShape({k, rng_.Int(1, 4)});
        Emit(builder_.Dot(a, b), Bound(a) * Bound(b) * k);
        break;
      }
      case 13:
        if (shape.empty()) break;
        Emit(builder_.Reduce(x, ReduceOp::kAdd,
                             rng_.Int(0, static_cast<int>(shape.size()) - 1)),
             bx * shape[0] * (shape.size() > 1 ? shape[1] : 1));
        break;
      case 14:
        if (shape.size() == 2) Emit(builder_.Transpose(x), bx);
        break;
      case 15: {
        if (shape.empty()) break;
        int from = rng_.Int(0, static_cast<int>(shape[0]) - 1);
        int upto = rng_.Int(from + 1, static_cast<int>(shape[0]));
        Emit(builder_.Slice(x, from, upto), bx);
        break;
      }
      case 16: {
        if (shape.empty()) break;
        int64_t axis = rng_.Chance(0.5) ? 0 : static_cast<int64_t>(shape.size()) - 1;
        Shape other = shape;
        other[axis] = rng_.Int(1, 3);
        Value* y = WithShape(other);
        Emit(builder_.Concatenate({x, y}, axis), std::max(bx, Bound(y)));
        break;
      }
      case 17: {
        Value* y = WithShape(shape);
        Opcode cmp = rng_.Pick(std::vector<Opcode>{
            Opcode::kLt, Opcode::kLe, Opcode::kGt, Opcode::kGe, Opcode::kEq,
            Opcode::kNe});
        Value* c = *builder_.Binary(cmp, x, y);
        Emit(builder_.Select(c, x, y), std::max(bx, Bound(y)));
        break;
      }
      case 18: {
        if (shape.size() != 2) break;
        Shape target = rng_.Chance(0.5) ? Shape{shape[0] * shape[1]}
                                        : Shape{shape[1], shape[0]};
        Emit(builder_.ShapeCast(x, target), bx);
        break;
      }
      case 19: {
        DataType other = dtype() == DataType::kF64 ? DataType::kF32
                                                   : DataType::kF64;
        Value* narrow = *builder_.DataTypeCast(x, other);
        Emit(builder_.DataTypeCast(narrow, dtype()), bx);
        break;
      }
      case 20: {  // Identities for algebra-simplify.
        switch (rng_.Int(0, 8)) {
          case 0:
            Emit(builder_.Binary(Opcode::kMultiply, x, Literal(1, shape)), bx);
            break;
          case 1:
            Emit(builder_.Binary(Opcode::kMultiply, Literal(0, shape), x), 0);
            break;
          case 2:
            Emit(builder_.Binary(Opcode::kAdd, x, Literal(0, shape)), bx);
            break;
          case 3:
            Emit(builder_.Binary(Opcode::kSubtract, x, Literal(0, shape)), bx);
            break;
          case 4:
            Emit(builder_.Binary(Opcode::kDivide, x, Literal(1, shape)), bx);
            break;
          case 5:
            Emit(builder_.Binary(Opcode::kPower, x,
                                 Literal(rng_.Int(0, 2), shape)),
                 std::max(1.0, bx * bx));
            break;
          case 6: {
            Value* n = *builder_.Unary(Opcode::kNegate, x);
            Emit(builder_.Unary(Opcode::kNegate, n), bx);
            break;
          }
          case 7:
            if (shape.size() == 2) {
              Value* t = *builder_.Transpose(x);
              Emit(builder_.Transpose(t), bx);
            }
            break;
          default:
            Emit(builder_.ShapeCast(x, shape), bx);
            break;
        }
        break;
      }
      case 21:
      case 22: {  // Constant subexpression for sccp.
        Value* a = builder_.Splat(rng_.Int(1, 4), Tensor(shape));
        Value* b = *builder_.Binary(Opcode::kAdd, a,
                                    builder_.Scalar(rng_.Int(-2, 2), dtype()));
        Value* c = *builder_.Unary(Opcode::kTanh, b);
        Emit(builder_.Binary(Opcode::kMultiply, c, x), bx);
        break;
      }
      case 23: {  // Duplicate of an existing instruction for cse.
        std::vector<Instruction*> candidates;
        for (const auto& inst : block_->instructions()) {
          if (inst->type().is_tensor() && inst->type().tensor().dtype == dtype()) {
            candidates.push_back(inst.get());
          }
        }
        if (candidates.empty()) break;
        Instruction* original = rng_.Pick(candidates);
        std::vector<Value*> operands = original->operands();
        if (IsCommutative(original->opcode()) && rng_.Chance(0.5)) {
          std::swap(operands[0], operands[1]);
        }
        Emit(builder_.Create(original->opcode(), operands,
                             original->attributes()),
             Bound(original));
        break;
      }
      case 24:
      case 25: {  // Dense layer sums for fusion: dot(x, W) [+ dot(h, U)] + b.
        int64_t m = rng_.Int(1, 3), p = rng_.Int(1, 4);
        Value* sum = nullptr;
        double bound = 0;
        int terms = rng_.Int(1, 3);
        for (int t = 0; t < terms; ++t) {
          int64_t k = rng_.Int(1, 4);
          Value* a = WithShape({m, k});
          Value* w = WithShape({k, p});
          Value* d = *builder_.Dot(a, w);
          bound += Bound(a) * Bound(w) * k;
          sum = sum == nullptr ? d : *builder_.Binary(Opcode::kAdd, sum, d);
        }
        if (terms == 1 || rng_.Chance(0.7)) {
          Value* b = WithShape(rng_.Chance(0.5) ? Shape{1, p} : Shape{p});
          bound += Bound(b);
          Emit(builder_.Binary(Opcode::kAdd, sum, b), bound);
        } else {
          Emit(absl::StatusOr<Instruction*>(static_cast<Instruction*>(sum)),
               bound);
        }
        break;
      }
      case 26: {  // Matmul chain for matmul-reorder.
        int length = rng_.Int(3, 5);
        std::vector<int64_t> dims;
        for (int i = 0; i <= length; ++i) dims.push_back(rng_.Int(1, 8));
        Value* acc = WithShape({dims[0], dims[1]});
        double bound = Bound(acc);
        for (int i = 1; i < length; ++i) {
          Value* next = WithShape({dims[i], dims[i + 1]});
          bound *= Bound(next) * dims[i];
          acc = *builder_.Dot(acc, next);
        }
        Emit(absl::StatusOr<Instruction*>(static_cast<Instruction*>(acc)),
             bound);
        break;
      }
      default:
        Emit(builder_.Unary(Opcode::kTanh, x), 1);
        break;
    }
  }

  Rng rng_;
  NumericProgramOptions options_;
  BasicBlock* block_ = nullptr;
  IRBuilder builder_;
  std::vector<Value*> pool_;
  absl::flat_hash_map<const Value*, double> bound_;
};

// Builds modules meant only for printing and parsing.
class TextualGenerator {
 public:
  explicit TextualGenerator(uint64_t seed) : rng_(seed) {}

  std::unique_ptr<Module> Run() {
    module_ = std::make_unique<Module>(
        rng_.Pick(std::vector<std::string>{"m", "random", "net.v2", "a_b"}),
        rng_.Chance(0.5) ? Stage::kRaw : Stage::kOptimizable);
    int globals = rng_.Int(0, 2);
    for (int i = 0; i < globals; ++i) {
      TensorType type{RandomShape(), RandomDataType()};
      TensorValue value(type);
      for (int64_t k = 0; k < value.size(); ++k) value.Set(k, RandomScalar(type.dtype));
      (void)module_->AddGlobal(absl::StrCat("g", i), std::move(value));
    }
    int functions = rng_.Int(1, 3);
    for (int i = 0; i < functions; ++i) BuildFunction(absl::StrCat("f", i));
    if (module_->stage() == Stage::kRaw) MaybeAddGradient();
    DieIfInvalid(*module_);
    return std::move(module_);
  }

 private:
  DataType RandomDataType() {
    return rng_.Pick(std::vector<DataType>{
        DataType::kBool, DataType::kI8, DataType::kI16, DataType::kI32,
        DataType::kI64, DataType::kF16, DataType::kF32, DataType::kF64,
        DataType::kF32, DataType::kF64});
  }

  DataType FloatType() {
    return rng_.Pick(std::vector<DataType>{DataType::kF16, DataType::kF32,
                                           DataType::kF64});
  }

  Shape RandomShape() {
    int rank = rng_.Int(0, 3);
    Shape shape;
    for (int i = 0; i < rank; ++i) shape.push_back(rng_.Int(1, 3));
    return shape;
  }

  ScalarValue RandomScalar(DataType dtype) {
    if (dtype == DataType::kBool) return ScalarValue::Bool(rng_.Chance(0.5));
    if (IsInteger(dtype)) {
      int64_t value = rng_.Chance(0.3)
                          ? static_cast<int64_t>(rng_.Real(-1e6, 1e6))
                          : rng_.Int(-200, 200);
      return ScalarValue::Int(value, dtype);
    }
    switch (rng_.Int(0, 12)) {
      case 0:
        return ScalarValue::Float(std::numeric_limits<double>::infinity(), dtype);
      case 1:
        return ScalarValue::Float(-std::numeric_limits<double>::infinity(), dtype);
      case 2:
        return ScalarValue::Float(std::nan(""), dtype);
      case 3:
        return ScalarValue::Float(-0.0, dtype);
      case 4:
        return ScalarValue::Float(rng_.Real(-1, 1) * 1e-30, dtype);
      case 5:
        return ScalarValue::Float(rng_.Real(-1, 1) * 1e30, dtype);
      case 6:
        return ScalarValue::Float(rng_.Int(-8, 8), dtype);
      default:
        return ScalarValue::Float(rng_.Real(-10, 10), dtype);
    }
  }

  Value* MakeLiteral(Function* function, const TensorType& type) {
    return function->MakeLiteral(RandomScalar(type.dtype), type);
  }

  std::string MaybeName(absl::string_view base) {
    if (rng_.Chance(0.5)) return "";
    return absl::StrCat(base, rng_.Chance(0.3) ? ".x" : "", rng_.Int(0, 3));
  }

  struct Scope {
    std::vector<Value*> values;
  };

  Value* Pick(Function* function, Scope& scope, const TensorType& type) {
    std::vector<Value*> matches;
    for (Value* v : scope.values) {
      if (v->type().is_tensor() && v->type().tensor() == type) matches.push_back(v);
    }
    for (const auto& g : module_->globals()) {
      if (g->type().tensor() == type && rng_.Chance(0.5)) matches.push_back(g.get());
    }
    if (matches.empty() || rng_.Chance(0.2)) return MakeLiteral(function, type);
    return rng_.Pick(matches);
  }

  Value* AnyTensor(Scope& scope) {
    std::vector<Value*> tensors;
    for (Value* v : scope.values) {
      if (v->type().is_tensor()) tensors.push_back(v);
    }
    return rng_.Pick(tensors);
  }

  // Appends one random instruction valid for `scope`.
  void RandomInstruction(IRBuilder& b, Function* function, Scope& scope) {
    Value* x = AnyTensor(scope);
    const TensorType& type = x->type().tensor();
    std::string name = MaybeName("v");
    absl::StatusOr<Instruction*> inst;
    switch (rng_.Int(0, 13)) {
      case 0:
        if (IsFloat(type.dtype)) {
          inst = b.Unary(rng_.Pick(std::vector<Opcode>{
                             Opcode::kTanh, Opcode::kExp, Opcode::kLog,
                             Opcode::kSqrt}),
                         x, name);
        } else if (type.dtype != DataType::kBool) {
          inst = b.Unary(rng_.Pick(std::vector<Opcode>{
                             Opcode::kNegate, Opcode::kAbs, Opcode::kSign}),
                         x, name);
        }
        break;
      case 1:
      case 2:
        if (type.dtype != DataType::kBool) {
          inst = b.Binary(rng_.Pick(std::vector<Opcode>{
                              Opcode::kAdd, Opcode::kSubtract,
                              Opcode::kMultiply, Opcode::kDivide,
                              Opcode::kPower}),
                          x, Pick(function, scope, type), name);
        }
        break;
      case 3:
        inst = b.Binary(rng_.Pick(std::vector<Opcode>{
                            Opcode::kLt, Opcode::kLe, Opcode::kGt, Opcode::kGe,
                            Opcode::kEq, Opcode::kNe}),
                        x, MakeLiteral(function, {{}, type.dtype}), name);
        break;
      case 4: {
        TensorType cond{type.shape, DataType::kBool};
        inst = b.Select(Pick(function, scope, cond), x,
                        Pick(function, scope, type), name);
        break;
      }
      case 5:
        if (type.shape.size() == 2 && type.dtype != DataType::kBool) {
          TensorType rhs{{type.shape[1], rng_.Int(1, 3)}, type.dtype};
          inst = b.Dot(x, Pick(function, scope, rhs), name);
        }
        break;
      case 6:
        if (!type.shape.empty() && type.dtype != DataType::kBool) {
          inst = b.Reduce(x, rng_.Chance(0.5) ? ReduceOp::kAdd : ReduceOp::kMultiply,
                          rng_.Int(0, static_cast<int>(type.shape.size()) - 1),
                          name);
        }
        break;
      case 7:
        inst = b.Transpose(x, name);
        break;
      case 8:
        if (!type.shape.empty()) {
          int from = rng_.Int(0, static_cast<int>(type.shape[0]) - 1);
          inst = b.Slice(x, from,
                         rng_.Int(from + 1, static_cast<int>(type.shape[0])),
                         name);
        }
        break;
      case 9:
        if (!type.shape.empty()) {
          int64_t axis = rng_.Int(0, static_cast<int>(type.shape.size()) - 1);
          inst = b.Concatenate({x, Pick(function, scope, type)}, axis, name);
        }
        break;
      case 10: {
        int64_t count = type.element_count();
        inst = b.ShapeCast(x, count == 1 && rng_.Chance(0.5) ? Shape{}
                                                             : Shape{count},
                           name);
        break;
      }
      case 11:
        inst = b.DataTypeCast(x, RandomDataType(), name);
        break;
      case 12:
        inst = EmitApply(b, function, scope, name);
        break;
      default:
        inst = b.Binary(Opcode::kEq, x, x, name);
        break;
    }
    if (inst.ok() && *inst != nullptr) {
      scope.values.push_back(*inst);
      if ((*inst)->type().is_tuple()) {
        int64_t index = rng_.Int(0, (*inst)->type().elements().size() - 1);
        absl::StatusOr<Instruction*> e = b.Extract(*inst, index, MaybeName("e"));
        if (e.ok()) scope.values.push_back(*e);
      }
    }
  }

  absl::StatusOr<Instruction*> EmitApply(IRBuilder& b, Function* function,
                                         Scope& scope, const std::string& name) {
    std::vector<Function*> callees;
    for (const auto& f : module_->functions()) {
      if (f.get() != function) callees.push_back(f.get());
    }
    if (callees.empty()) return nullptr;
    Function* callee = rng_.Pick(callees);
    std::vector<Value*> args;
    for (const Type& t : callee->param_types()) {
      args.push_back(Pick(function, scope, t.tensor()));
    }
    return b.Apply(callee, args, name);
  }

  void BuildFunction(const std::string& name) {
    Function* function = *module_->AddFunction(name, Type::Function({}, Type::Unit()));
    BasicBlock* entry = *function->AddBlock("entry");
    int params = rng_.Int(1, 3);
    Scope scope;
    for (int i = 0; i < params; ++i) {
      scope.values.push_back(entry->AddParam(
          Type::Tensor(RandomShape(), RandomDataType()), MaybeName("arg")));
    }
    IRBuilder b(entry);
    int count = rng_.Int(1, 6);
    for (int i = 0; i < count; ++i) RandomInstruction(b, function, scope);

    Value* result = AnyTensor(scope);
    TensorType result_type = result->type().tensor();
    auto set_type = [&](const std::vector<Value*>& results) {
      std::vector<Type> param_types, result_types;
      for (const auto& p : entry->params()) param_types.push_back(p->type());
      for (Value* v : results) result_types.push_back(v->type());
      function->set_type(
          Type::Function(param_types, Type::Tuple(result_types)));
    };
    if (rng_.Chance(0.5)) {
      // entry -> (then | else) -> join, with an optional loop back to then.
      Value* flag = entry->AddParam(Type::Scalar(DataType::kBool), "flag");
      BasicBlock* then_block = *function->AddBlock(MaybeLabel("then"));
      BasicBlock* else_block = *function->AddBlock(MaybeLabel("else"));
      BasicBlock* join = *function->AddBlock(MaybeLabel("join"));
      Value* then_param = then_block->AddParam(result->type(), MaybeName("t"));
      Value* join_param = join->AddParam(result->type(), MaybeName("j"));
      Check(b.Conditional(flag, then_block, {result}, else_block, {}));

      IRBuilder tb(then_block);
      Scope then_scope = scope;
      then_scope.values.push_back(then_param);
      int n = rng_.Int(0, 3);
      for (int i = 0; i < n; ++i) RandomInstruction(tb, function, then_scope);
      Check(tb.Branch(join, {Pick(function, then_scope, result_type)}));

      IRBuilder eb(else_block);
      Check(eb.Branch(join, {Pick(function, scope, result_type)}));

      IRBuilder jb(join);
      if (rng_.Chance(0.3)) {
        BasicBlock* exit = *function->AddBlock(MaybeLabel("exit"));
        Check(jb.Conditional(flag, then_block, {join_param}, exit, {}));
        set_type({join_param});
        IRBuilder xb(exit);
        Check(xb.Return({join_param}));
      } else {
        std::vector<Value*> results = {join_param,
                                       Pick(function, scope, result_type)};
        set_type(results);
        Check(jb.Return(results));
      }
    } else {
      std::vector<Value*> results = {result};
      if (rng_.Chance(0.3)) results.push_back(AnyTensor(scope));
      set_type(results);
      Check(b.Return(results));
    }
  }

  static void Check(const absl::StatusOr<Instruction*>& inst) {
    if (!inst.ok()) {
      std::cerr << "generator: " << inst.status().message() << "\n";
      std::abort();
    }
  }

  std::string MaybeLabel(absl::string_view base) {
    return absl::StrCat(base, rng_.Chance(0.5) ? "" : ".1");
  }

  // Declares a gradient of a float-only function.
  void MaybeAddGradient() {
    for (const auto& f : module_->functions()) {
      bool all_float = true;
      for (const Type& t : f->param_types()) {
        all_float &= t.is_tensor() && IsFloat(t.tensor().dtype);
      }
      if (!all_float || !rng_.Chance(0.7)) continue;
      GradientConfig config;
      config.source = f->name();
      int arity = static_cast<int>(f->param_types().size());
      if (rng_.Chance(0.6)) {
        std::vector<int> wrt;
        for (int i = 0; i < arity; ++i) {
          if (rng_.Chance(0.6)) wrt.push_back(i);
        }
        if (wrt.empty()) wrt.push_back(0);
        std::shuffle(wrt.begin(), wrt.end(), engine_);
        config.wrt = wrt;
      }
      int outputs = f->result_type().is_tuple()
                        ? static_cast<int>(f->result_type().elements().size())
                        : 1;
      if (rng_.Chance(0.4)) config.keeping = {rng_.Int(0, outputs - 1)};
      if (rng_.Chance(0.4)) config.from = rng_.Int(0, outputs - 1);
      config.seedable = rng_.Chance(0.5);
      absl::StatusOr<Type> type = ExpectedGradientType(f->type(), config);
      if (!type.ok()) continue;
      Function* g = *module_->AddFunction(
          module_->UniqueFunctionName(absl::StrCat(f->name(), "_grad")), *type);
      g->set_gradient_config(config);
      return;
    }
  }

  Rng rng_;
  std::mt19937_64 engine_{7};
  std::unique_ptr<Module> module_;
};

}  // namespace

std::unique_ptr<Module> RandomNumericModule(uint64_t seed,
                                            const NumericProgramOptions& options) {
  return NumericGenerator(seed, options).Run();
}

std::unique_ptr<Module> RandomTextualModule(uint64_t seed) {
  return TextualGenerator(seed).Run();
}

}  // namespace dlc::test
