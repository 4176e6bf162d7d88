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

#include "dlc/analysis/type_inference.h"

#include <algorithm>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

absl::Status Error(Opcode opcode, absl::string_view message) {
  return absl::InvalidArgumentError(
      absl::StrCat(OpcodeName(opcode), ": ", message));
}

absl::StatusOr<const TensorType*> TensorOperand(Opcode opcode,
                                                std::span<const Type> types,
                                                size_t i) {
  if (!types[i].is_tensor()) {
    return Error(opcode, absl::StrCat("operand ", i, " must be a tensor, got ",
                                      types[i].ToString()));
  }
  return &types[i].tensor();
}

absl::Status CheckArity(Opcode opcode, std::span<const Type> types) {
  std::optional<int> arity = FixedArity(opcode);
  if (arity.has_value() && static_cast<int>(types.size()) != *arity) {
    return Error(opcode, absl::StrCat("expects ", *arity, " operand",
                                      *arity == 1 ? "" : "s", ", got ",
                                      types.size()));
  }
  if (opcode == Opcode::kConcatenate && types.empty()) {
    return Error(opcode, "expects at least one operand");
  }
  if (opcode == Opcode::kConditional && types.empty()) {
    return Error(opcode, "expects a condition operand");
  }
  return absl::OkStatus();
}

absl::StatusOr<Type> InferBinary(Opcode opcode, std::span<const Type> types) {
  DLC_ASSIGN_OR_RETURN(const TensorType* lhs, TensorOperand(opcode, types, 0));
  DLC_ASSIGN_OR_RETURN(const TensorType* rhs, TensorOperand(opcode, types, 1));
  if (lhs->dtype != rhs->dtype) {
    return Error(opcode, absl::StrCat("operand dtypes differ: ",
                                      DataTypeName(lhs->dtype), " vs ",
                                      DataTypeName(rhs->dtype)));
  }
  if (!IsComparison(opcode) && !IsNumeric(lhs->dtype)) {
    return Error(opcode, "requires a numeric dtype");
  }
  auto shape = BroadcastShapes(lhs->shape, rhs->shape);
  if (!shape.ok()) return Error(opcode, shape.status().message());
  return Type::Tensor(*std::move(shape),
                      IsComparison(opcode) ? DataType::kBool : lhs->dtype);
}

}  // namespace

absl::StatusOr<Shape> BroadcastShapes(const Shape& a, const Shape& b) {
  size_t rank = std::max(a.size(), b.size());
  Shape result(rank);
  for (size_t i = 0; i < rank; ++i) {
    // Walk from the trailing dimension.
    int64_t da = i < a.size() ? a[a.size() - 1 - i] : 1;
    int64_t db = i < b.size() ? b[b.size() - 1 - i] : 1;
    if (da != db && da != 1 && db != 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "shapes [", ShapeToString(a), "] and [", ShapeToString(b),
          "] are not broadcast-compatible (", da, " vs ", db, ")"));
    }
    result[rank - 1 - i] = std::max(da, db);
  }
  return result;
}

absl::StatusOr<Type> InferType(Opcode opcode,
                               std::span<const Type> types,
                               const InstructionAttributes& attrs) {
  DLC_RETURN_IF_ERROR(CheckArity(opcode, types));

  if (IsUnaryElementwise(opcode)) {
    DLC_ASSIGN_OR_RETURN(const TensorType* x, TensorOperand(opcode, types, 0));
    bool float_only = opcode == Opcode::kTanh || opcode == Opcode::kExp ||
                      opcode == Opcode::kLog || opcode == Opcode::kSqrt;
    if (float_only ? !IsFloat(x->dtype) : !IsNumeric(x->dtype)) {
      return Error(opcode, absl::StrCat("unsupported dtype ",
                                        DataTypeName(x->dtype)));
    }
    return types[0];
  }
  if (IsBinaryElementwise(opcode) || IsComparison(opcode)) {
    return InferBinary(opcode, types);
  }

  switch (opcode) {
    case Opcode::kSelect: {
      DLC_ASSIGN_OR_RETURN(const TensorType* cond,
                           TensorOperand(opcode, types, 0));
      DLC_ASSIGN_OR_RETURN(const TensorType* a, TensorOperand(opcode, types, 1));
      DLC_ASSIGN_OR_RETURN(const TensorType* b, TensorOperand(opcode, types, 2));
      if (cond->dtype != DataType::kBool) {
        return Error(opcode, "condition must have dtype bool");
      }
      if (a->dtype != b->dtype) {
        return Error(opcode, "branch operands must have the same dtype");
      }
      auto ab = BroadcastShapes(a->shape, b->shape);
      if (!ab.ok()) return Error(opcode, ab.status().message());
      auto shape = BroadcastShapes(cond->shape, *ab);
      if (!shape.ok()) return Error(opcode, shape.status().message());
      return Type::Tensor(*std::move(shape), a->dtype);
    }
    case Opcode::kDot: {
      DLC_ASSIGN_OR_RETURN(const TensorType* a, TensorOperand(opcode, types, 0));
      DLC_ASSIGN_OR_RETURN(const TensorType* b, TensorOperand(opcode, types, 1));
      if (a->rank() != 2 || b->rank() != 2) {
        return Error(opcode, "operands must be rank 2");
      }
      if (a->dtype != b->dtype || !IsNumeric(a->dtype)) {
        return Error(opcode, "operands must share a numeric dtype");
      }
      if (a->shape[1] != b->shape[0]) {
        return Error(opcode, absl::StrCat("inner dimensions differ: ",
                                          a->shape[1], " vs ", b->shape[0]));
      }
      return Type::Tensor({a->shape[0], b->shape[1]}, a->dtype);
    }
    case Opcode::kReduce: {
      DLC_ASSIGN_OR_RETURN(const TensorType* x, TensorOperand(opcode, types, 0));
      if (!IsNumeric(x->dtype)) return Error(opcode, "requires a numeric dtype");
      if (attrs.axis < 0 || attrs.axis >= x->rank()) {
        return Error(opcode, absl::StrCat("axis ", attrs.axis,
                                          " out of range for rank ",
                                          x->rank()));
      }
      Shape shape = x->shape;
      shape.erase(shape.begin() + attrs.axis);
      return Type::Tensor(std::move(shape), x->dtype);
    }
    case Opcode::kTranspose: {
      DLC_ASSIGN_OR_RETURN(const TensorType* x, TensorOperand(opcode, types, 0));
      Shape shape(x->shape.rbegin(), x->shape.rend());
      return Type::Tensor(std::move(shape), x->dtype);
    }
    case Opcode::kSlice: {
      DLC_ASSIGN_OR_RETURN(const TensorType* x, TensorOperand(opcode, types, 0));
      if (x->rank() < 1) return Error(opcode, "operand must have rank >= 1");
      if (attrs.from < 0 || attrs.from >= attrs.upto ||
          attrs.upto > x->shape[0]) {
        return Error(opcode, absl::StrCat("bounds [", attrs.from, ", ",
                                          attrs.upto, ") invalid for extent ",
                                          x->shape[0]));
      }
      Shape shape = x->shape;
      shape[0] = attrs.upto - attrs.from;
      return Type::Tensor(std::move(shape), x->dtype);
    }
    case Opcode::kConcatenate: {
      DLC_ASSIGN_OR_RETURN(const TensorType* first,
                           TensorOperand(opcode, types, 0));
      if (attrs.axis < 0 || attrs.axis >= first->rank()) {
        return Error(opcode, absl::StrCat("axis ", attrs.axis,
                                          " out of range for rank ",
                                          first->rank()));
      }
      Shape shape = first->shape;
      for (size_t i = 1; i < types.size(); ++i) {
        DLC_ASSIGN_OR_RETURN(const TensorType* t,
                             TensorOperand(opcode, types, i));
        if (t->dtype != first->dtype || t->rank() != first->rank()) {
          return Error(opcode, "operands must share dtype and rank");
        }
        for (int64_t d = 0; d < t->rank(); ++d) {
          if (d != attrs.axis && t->shape[d] != first->shape[d]) {
            return Error(opcode, absl::StrCat("extent mismatch on axis ", d));
          }
        }
        shape[attrs.axis] += t->shape[attrs.axis];
      }
      return Type::Tensor(std::move(shape), first->dtype);
    }
    case Opcode::kShapeCast: {
      DLC_ASSIGN_OR_RETURN(const TensorType* x, TensorOperand(opcode, types, 0));
      for (int64_t d : attrs.target_shape) {
        if (d < 1) return Error(opcode, "target dimensions must be >= 1");
      }
      if (ElementCount(attrs.target_shape) != x->element_count()) {
        return Error(opcode,
                     absl::StrCat("element count ", x->element_count(),
                                  " cannot be cast to shape [",
                                  ShapeToString(attrs.target_shape), "]"));
      }
      return Type::Tensor(attrs.target_shape, x->dtype);
    }
    case Opcode::kDataTypeCast: {
      DLC_ASSIGN_OR_RETURN(const TensorType* x, TensorOperand(opcode, types, 0));
      return Type::Tensor(x->shape, attrs.target_dtype);
    }
    case Opcode::kApply: {
      const Function* callee = attrs.callee;
      if (callee == nullptr) return Error(opcode, "missing callee");
      std::vector<Type> params = callee->param_types();
      if (params.size() != types.size()) {
        return Error(opcode, absl::StrCat("@", callee->name(), " expects ",
                                          params.size(), " arguments, got ",
                                          types.size()));
      }
      for (size_t i = 0; i < params.size(); ++i) {
        if (!(params[i] == types[i])) {
          return Error(opcode, absl::StrCat("argument ", i, " of @",
                                            callee->name(), " expects ",
                                            params[i].ToString(), ", got ",
                                            types[i].ToString()));
        }
      }
      return callee->result_type();
    }
    case Opcode::kExtract: {
      if (!types[0].is_tuple()) {
        return Error(opcode, "operand must be a tuple");
      }
      if (attrs.index < 0 ||
          attrs.index >= static_cast<int64_t>(types[0].elements().size())) {
        return Error(opcode, absl::StrCat("index ", attrs.index,
                                          " out of range"));
      }
      return types[0].elements()[attrs.index];
    }
    case Opcode::kConditional: {
      if (!(types[0] == Type::Scalar(DataType::kBool))) {
        return Error(opcode, absl::StrCat("condition must be bool, got ",
                                          types[0].ToString()));
      }
      return Type::Unit();
    }
    case Opcode::kBranch:
    case Opcode::kReturn:
      return Type::Unit();
    default:
      return Error(opcode, "unhandled opcode");
  }
}

absl::StatusOr<Type> InferType(const Instruction& inst) {
  std::vector<Type> types;
  types.reserve(inst.num_operands());
  for (Value* operand : inst.operands()) {
    if (operand == nullptr) {
      return absl::InvalidArgumentError("instruction has an unset operand");
    }
    types.push_back(operand->type());
  }
  return InferType(inst.opcode(), types, inst.attributes());
}

}  // namespace dlc
