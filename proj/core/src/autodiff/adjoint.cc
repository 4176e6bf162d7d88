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

#include "dlc/autodiff/adjoint.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

const Shape& ShapeOf(const Value* v) { return v->type().tensor().shape; }
DataType DtypeOf(const Value* v) { return v->type().tensor().dtype; }

class RuleEmitter {
 public:
  RuleEmitter(IRBuilder& builder, const Instruction& inst, Value* g,
              const std::function<bool(size_t)>& wanted)
      : b_(builder), inst_(inst), g_(g), wanted_(wanted) {}

  bool Wants(size_t operand) const {
    return operand < inst_.num_operands() && wanted_(operand);
  }

  Value* Op(size_t i) const { return inst_.operand(i); }
  Value* Result() const { return const_cast<Instruction*>(&inst_); }

  Literal* Splat(double value, const Value* like) {
    return b_.Splat(value, like->type().tensor());
  }
  Literal* Scalar(double value) { return b_.Scalar(value, DtypeOf(g_)); }

  // Records `value` as the contribution to operand `i`, summing away
  // broadcast axes first.
  absl::Status Emit(size_t i, Value* value) {
    DLC_ASSIGN_OR_RETURN(Value * reduced,
                         Unbroadcast(b_, value, ShapeOf(Op(i))));
    out_.push_back({i, reduced});
    return absl::OkStatus();
  }

  absl::StatusOr<Value*> Bin(Opcode opcode, Value* a, Value* c) {
    return b_.Binary(opcode, a, c);
  }

  absl::StatusOr<std::vector<AdjointContribution>> Run(
      const CalleeGradientFn& callee_gradient) {
    const Opcode opcode = inst_.opcode();
    switch (opcode) {
      case Opcode::kNegate:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * v, b_.Unary(Opcode::kNegate, g_));
          DLC_RETURN_IF_ERROR(Emit(0, v));
        }
        break;
      case Opcode::kTanh:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * yy,
                               Bin(Opcode::kMultiply, Result(), Result()));
          DLC_ASSIGN_OR_RETURN(Value * d,
                               Bin(Opcode::kSubtract, Scalar(1), yy));
          DLC_ASSIGN_OR_RETURN(Value * v, Bin(Opcode::kMultiply, g_, d));
          DLC_RETURN_IF_ERROR(Emit(0, v));
        }
        break;
      case Opcode::kExp:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * v, Bin(Opcode::kMultiply, g_, Result()));
          DLC_RETURN_IF_ERROR(Emit(0, v));
        }
        break;
      case Opcode::kLog:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * v, Bin(Opcode::kDivide, g_, Op(0)));
          DLC_RETURN_IF_ERROR(Emit(0, v));
        }
        break;
      case Opcode::kSqrt:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * twice,
                               Bin(Opcode::kMultiply, Scalar(2), Result()));
          DLC_ASSIGN_OR_RETURN(Value * v, Bin(Opcode::kDivide, g_, twice));
          DLC_RETURN_IF_ERROR(Emit(0, v));
        }
        break;
      case Opcode::kAbs:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * s, b_.Unary(Opcode::kSign, Op(0)));
          DLC_ASSIGN_OR_RETURN(Value * v, Bin(Opcode::kMultiply, g_, s));
          DLC_RETURN_IF_ERROR(Emit(0, v));
        }
        break;
      case Opcode::kSign:
        // Zero almost everywhere: no contribution.
        break;
      case Opcode::kAdd:
        if (Wants(0)) DLC_RETURN_IF_ERROR(Emit(0, g_));
        if (Wants(1)) DLC_RETURN_IF_ERROR(Emit(1, g_));
        break;
      case Opcode::kSubtract:
        if (Wants(0)) DLC_RETURN_IF_ERROR(Emit(0, g_));
        if (Wants(1)) {
          DLC_ASSIGN_OR_RETURN(Value * v, b_.Unary(Opcode::kNegate, g_));
          DLC_RETURN_IF_ERROR(Emit(1, v));
        }
        break;
      case Opcode::kMultiply:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * v, Bin(Opcode::kMultiply, g_, Op(1)));
          DLC_RETURN_IF_ERROR(Emit(0, v));
        }
        if (Wants(1)) {
          DLC_ASSIGN_OR_RETURN(Value * v, Bin(Opcode::kMultiply, g_, Op(0)));
          DLC_RETURN_IF_ERROR(Emit(1, v));
        }
        break;
      case Opcode::kDivide:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * v, Bin(Opcode::kDivide, g_, Op(1)));
          DLC_RETURN_IF_ERROR(Emit(0, v));
        }
        if (Wants(1)) {
          DLC_ASSIGN_OR_RETURN(Value * ga, Bin(Opcode::kMultiply, g_, Op(0)));
          DLC_ASSIGN_OR_RETURN(Value * bb, Bin(Opcode::kMultiply, Op(1), Op(1)));
          DLC_ASSIGN_OR_RETURN(Value * q, Bin(Opcode::kDivide, ga, bb));
          DLC_ASSIGN_OR_RETURN(Value * v, b_.Unary(Opcode::kNegate, q));
          DLC_RETURN_IF_ERROR(Emit(1, v));
        }
        break;
      case Opcode::kPower:
        if (Wants(0)) {
          Value* exponent = Op(1);
          Value* lowered;
          if (exponent->value_kind() == Value::Kind::kLiteral) {
            const auto* literal = static_cast<const Literal*>(exponent);
            lowered = b_.Splat(literal->value().AsDouble() - 1,
                               literal->tensor_type());
          } else {
            DLC_ASSIGN_OR_RETURN(lowered,
                                 Bin(Opcode::kSubtract, exponent, Scalar(1)));
          }
          DLC_ASSIGN_OR_RETURN(Value * p, Bin(Opcode::kPower, Op(0), lowered));
          DLC_ASSIGN_OR_RETURN(Value * gn, Bin(Opcode::kMultiply, g_, exponent));
          DLC_ASSIGN_OR_RETURN(Value * v, Bin(Opcode::kMultiply, gn, p));
          DLC_RETURN_IF_ERROR(Emit(0, v));
        }
        if (Wants(1) && Op(1)->value_kind() != Value::Kind::kLiteral) {
          DLC_ASSIGN_OR_RETURN(Value * gy, Bin(Opcode::kMultiply, g_, Result()));
          DLC_ASSIGN_OR_RETURN(Value * l, b_.Unary(Opcode::kLog, Op(0)));
          DLC_ASSIGN_OR_RETURN(Value * v, Bin(Opcode::kMultiply, gy, l));
          DLC_RETURN_IF_ERROR(Emit(1, v));
        }
        break;
      case Opcode::kSelect:
        if (Wants(1)) {
          DLC_ASSIGN_OR_RETURN(Value * v, b_.Select(Op(0), g_, Scalar(0)));
          DLC_RETURN_IF_ERROR(Emit(1, v));
        }
        if (Wants(2)) {
          DLC_ASSIGN_OR_RETURN(Value * v, b_.Select(Op(0), Scalar(0), g_));
          DLC_RETURN_IF_ERROR(Emit(2, v));
        }
        break;
      case Opcode::kDot:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * bt, b_.Transpose(Op(1)));
          DLC_ASSIGN_OR_RETURN(Value * v, b_.Dot(g_, bt));
          out_.push_back({0, v});
        }
        if (Wants(1)) {
          DLC_ASSIGN_OR_RETURN(Value * at, b_.Transpose(Op(0)));
          DLC_ASSIGN_OR_RETURN(Value * v, b_.Dot(at, g_));
          out_.push_back({1, v});
        }
        break;
      case Opcode::kTranspose:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * v, b_.Transpose(g_));
          out_.push_back({0, v});
        }
        break;
      case Opcode::kReduce:
        if (Wants(0)) DLC_RETURN_IF_ERROR(ReduceAdd());
        break;
      case Opcode::kSlice:
        if (Wants(0)) DLC_RETURN_IF_ERROR(SliceRule());
        break;
      case Opcode::kConcatenate:
        DLC_RETURN_IF_ERROR(ConcatenateRule());
        break;
      case Opcode::kShapeCast:
        if (Wants(0)) {
          DLC_ASSIGN_OR_RETURN(Value * v, b_.ShapeCast(g_, ShapeOf(Op(0))));
          out_.push_back({0, v});
        }
        break;
      case Opcode::kDataTypeCast:
        if (Wants(0)) {
          if (!IsFloat(DtypeOf(Op(0)))) break;
          DLC_ASSIGN_OR_RETURN(Value * v, b_.DataTypeCast(g_, DtypeOf(Op(0))));
          out_.push_back({0, v});
        }
        break;
      case Opcode::kApply:
        DLC_RETURN_IF_ERROR(ApplyRule(callee_gradient));
        break;
      default:
        return absl::UnimplementedError(
            absl::StrCat("no adjoint rule for ", OpcodeName(opcode)));
    }
    return std::move(out_);
  }

 private:
  absl::Status ReduceAdd() {
    if (inst_.attributes().reduce_op != ReduceOp::kAdd) {
      return absl::UnimplementedError("no adjoint rule for reduce by multiply");
    }
    // Reinsert the reduced axis with extent 1, then broadcast back.
    Shape kept = ShapeOf(Op(0));
    kept[inst_.attributes().axis] = 1;
    DLC_ASSIGN_OR_RETURN(Value * cast, b_.ShapeCast(g_, kept));
    DLC_ASSIGN_OR_RETURN(Value * v,
                         Bin(Opcode::kAdd, cast, Splat(0, Op(0))));
    out_.push_back({0, v});
    return absl::OkStatus();
  }

  absl::Status SliceRule() {
    const Shape& source = ShapeOf(Op(0));
    const int64_t from = inst_.attributes().from;
    const int64_t upto = inst_.attributes().upto;
    std::vector<Value*> parts;
    auto zeros = [&](int64_t rows) {
      Shape shape = source;
      shape[0] = rows;
      return b_.Splat(0, TensorType{shape, DtypeOf(Op(0))});
    };
    if (from > 0) parts.push_back(zeros(from));
    parts.push_back(g_);
    if (upto < source[0]) parts.push_back(zeros(source[0] - upto));
    Value* v = g_;
    if (parts.size() > 1) {
      DLC_ASSIGN_OR_RETURN(v, b_.Concatenate(parts, 0));
    }
    out_.push_back({0, v});
    return absl::OkStatus();
  }

  absl::Status ConcatenateRule() {
    const int64_t axis = inst_.attributes().axis;
    const int64_t rank = inst_.type().tensor().rank();
    Value* source = g_;
    if (axis != 0) {
      if (axis != rank - 1) {
        return absl::UnimplementedError(
            "no adjoint rule for concatenate along an interior axis");
      }
      // Reversing all axes moves the last axis to the front.
      DLC_ASSIGN_OR_RETURN(source, b_.Transpose(g_));
    }
    int64_t offset = 0;
    for (size_t i = 0; i < inst_.num_operands(); ++i) {
      const int64_t extent = ShapeOf(Op(i))[axis];
      if (Wants(i)) {
        DLC_ASSIGN_OR_RETURN(Value * v,
                             b_.Slice(source, offset, offset + extent));
        if (axis != 0) {
          DLC_ASSIGN_OR_RETURN(v, b_.Transpose(v));
        }
        out_.push_back({i, v});
      }
      offset += extent;
    }
    return absl::OkStatus();
  }

  absl::Status ApplyRule(const CalleeGradientFn& callee_gradient) {
    bool any = false;
    for (size_t i = 0; i < inst_.num_operands(); ++i) any = any || Wants(i);
    if (!any) return absl::OkStatus();
    Function* callee = inst_.callee();
    DLC_ASSIGN_OR_RETURN(Function * gradient, callee_gradient(*callee));
    std::vector<Value*> args(inst_.operands().begin(), inst_.operands().end());
    args.push_back(g_);
    DLC_ASSIGN_OR_RETURN(Value * call, b_.Apply(gradient, args));
    std::vector<size_t> float_params;
    std::vector<Type> params = callee->param_types();
    for (size_t i = 0; i < params.size(); ++i) {
      if (params[i].is_tensor() && IsFloat(params[i].tensor().dtype)) {
        float_params.push_back(i);
      }
    }
    for (size_t k = 0; k < float_params.size(); ++k) {
      const size_t operand = float_params[k];
      if (!Wants(operand)) continue;
      Value* v = call;
      if (float_params.size() > 1) {
        DLC_ASSIGN_OR_RETURN(v, b_.Extract(call, static_cast<int64_t>(k)));
      }
      out_.push_back({operand, v});
    }
    return absl::OkStatus();
  }

  IRBuilder& b_;
  const Instruction& inst_;
  Value* g_;
  const std::function<bool(size_t)>& wanted_;
  std::vector<AdjointContribution> out_;
};

}  // namespace

absl::StatusOr<Value*> Unbroadcast(IRBuilder& builder, Value* contribution,
                                   const Shape& target) {
  const Shape& shape = ShapeOf(contribution);
  if (shape == target) return contribution;
  if (shape.size() < target.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot unbroadcast rank ", shape.size(), " to rank ",
                     target.size()));
  }
  const size_t lead = shape.size() - target.size();
  std::vector<int64_t> axes;
  for (size_t d = 0; d < shape.size(); ++d) {
    if (d < lead) {
      axes.push_back(d);
    } else if (target[d - lead] != shape[d]) {
      if (target[d - lead] != 1) {
        return absl::InvalidArgumentError(absl::StrCat(
            "cannot unbroadcast ", ShapeToString(shape), " to ",
            ShapeToString(target)));
      }
      axes.push_back(d);
    }
  }
  Value* value = contribution;
  // Descending order keeps the remaining axis numbers valid.
  for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
    DLC_ASSIGN_OR_RETURN(value, builder.Reduce(value, ReduceOp::kAdd, *it));
  }
  if (ShapeOf(value) != target) {
    DLC_ASSIGN_OR_RETURN(value, builder.ShapeCast(value, target));
  }
  return value;
}

absl::StatusOr<std::vector<AdjointContribution>> AdjointRule(
    IRBuilder& builder, const Instruction& inst, Value* g,
    const std::function<bool(size_t)>& wanted,
    const CalleeGradientFn& callee_gradient) {
  return RuleEmitter(builder, inst, g, wanted).Run(callee_gradient);
}

}  // namespace dlc
