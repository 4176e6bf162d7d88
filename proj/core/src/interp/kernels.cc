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

#include "dlc/interp/kernels.h"

#include <atomic>
#include <cmath>
#include <limits>
#include <vector>

#include "absl/strings/str_cat.h"

namespace dlc {
namespace {

std::atomic<int64_t> kernel_count{0};

std::vector<int64_t> Strides(const Shape& shape) {
  std::vector<int64_t> strides(shape.size(), 1);
  for (int64_t i = static_cast<int64_t>(shape.size()) - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * shape[i + 1];
  }
  return strides;
}

// Maps flat indices of a broadcast result onto one operand's buffer.
class BroadcastIndexer {
 public:
  BroadcastIndexer(const Shape& operand, const Shape& result)
      : result_strides_(Strides(result)), result_shape_(result) {
    std::vector<int64_t> operand_strides = Strides(operand);
    const size_t offset = result.size() - operand.size();
    strides_.assign(result.size(), 0);
    for (size_t i = 0; i < operand.size(); ++i) {
      if (operand[i] != 1) strides_[offset + i] = operand_strides[i];
    }
  }

  int64_t operator()(int64_t flat) const {
    int64_t index = 0;
    for (size_t d = 0; d < result_shape_.size(); ++d) {
      int64_t coordinate = (flat / result_strides_[d]) % result_shape_[d];
      index += coordinate * strides_[d];
    }
    return index;
  }

 private:
  std::vector<int64_t> result_strides_;
  Shape result_shape_;
  std::vector<int64_t> strides_;
};

int64_t WrapAdd(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) +
                              static_cast<uint64_t>(b));
}
int64_t WrapSub(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) -
                              static_cast<uint64_t>(b));
}
int64_t WrapMul(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) *
                              static_cast<uint64_t>(b));
}

absl::Status DivisionByZero() {
  return absl::FailedPreconditionError("integer division by zero");
}

absl::StatusOr<int64_t> IntPower(int64_t base, int64_t exponent) {
  if (exponent < 0) {
    if (base == 0) return DivisionByZero();
    if (base == 1) return 1;
    if (base == -1) return (exponent % 2 == 0) ? 1 : -1;
    return 0;
  }
  int64_t result = 1;
  while (exponent > 0) {
    if (exponent & 1) result = WrapMul(result, base);
    base = WrapMul(base, base);
    exponent >>= 1;
  }
  return result;
}

double FloatUnary(Opcode opcode, double x) {
  switch (opcode) {
    case Opcode::kNegate: return -x;
    case Opcode::kTanh: return std::tanh(x);
    case Opcode::kExp: return std::exp(x);
    case Opcode::kLog: return std::log(x);
    case Opcode::kSqrt: return std::sqrt(x);
    case Opcode::kAbs: return std::fabs(x);
    case Opcode::kSign: return x > 0 ? 1.0 : x < 0 ? -1.0 : x;
    default: return 0;
  }
}

int64_t IntUnary(Opcode opcode, int64_t x) {
  switch (opcode) {
    case Opcode::kNegate: return WrapSub(0, x);
    case Opcode::kAbs: return x < 0 ? WrapSub(0, x) : x;
    case Opcode::kSign: return x > 0 ? 1 : x < 0 ? -1 : 0;
    default: return 0;
  }
}

bool Compare(Opcode opcode, double a, double b) {
  switch (opcode) {
    case Opcode::kLt: return a < b;
    case Opcode::kLe: return a <= b;
    case Opcode::kGt: return a > b;
    case Opcode::kGe: return a >= b;
    case Opcode::kEq: return a == b;
    case Opcode::kNe: return a != b;
    default: return false;
  }
}

bool CompareInt(Opcode opcode, int64_t a, int64_t b) {
  switch (opcode) {
    case Opcode::kLt: return a < b;
    case Opcode::kLe: return a <= b;
    case Opcode::kGt: return a > b;
    case Opcode::kGe: return a >= b;
    case Opcode::kEq: return a == b;
    case Opcode::kNe: return a != b;
    default: return false;
  }
}

double FloatBinary(Opcode opcode, double a, double b) {
  switch (opcode) {
    case Opcode::kAdd: return a + b;
    case Opcode::kSubtract: return a - b;
    case Opcode::kMultiply: return a * b;
    case Opcode::kDivide: return a / b;
    case Opcode::kPower: return std::pow(a, b);
    default: return 0;
  }
}

absl::StatusOr<int64_t> IntBinary(Opcode opcode, int64_t a, int64_t b,
                                  DataType dtype) {
  switch (opcode) {
    case Opcode::kAdd: return WrapAdd(a, b);
    case Opcode::kSubtract: return WrapSub(a, b);
    case Opcode::kMultiply: return WrapMul(a, b);
    case Opcode::kDivide:
      if (b == 0) return DivisionByZero();
      if (b == -1) return WrapSub(0, a);
      return a / b;
    case Opcode::kPower: return IntPower(a, b);
    default:
      return absl::InternalError(
          absl::StrCat("no integer kernel for ", OpcodeName(opcode), " on ",
                       DataTypeName(dtype)));
  }
}

absl::StatusOr<TensorValue> Elementwise(Opcode opcode,
                                        std::span<const TensorValue* const> ops,
                                        const TensorType& result_type) {
  TensorValue result(result_type);
  const int64_t n = result.size();
  if (IsUnaryElementwise(opcode)) {
    const TensorValue& x = *ops[0];
    for (int64_t i = 0; i < n; ++i) {
      if (x.is_float()) {
        result.SetDouble(i, FloatUnary(opcode, x.GetDouble(i)));
      } else {
        result.SetInt(i, IntUnary(opcode, x.GetInt(i)));
      }
    }
    return result;
  }
  if (opcode == Opcode::kSelect) {
    BroadcastIndexer ic(ops[0]->shape(), result_type.shape);
    BroadcastIndexer ia(ops[1]->shape(), result_type.shape);
    BroadcastIndexer ib(ops[2]->shape(), result_type.shape);
    for (int64_t i = 0; i < n; ++i) {
      const bool take_a = ops[0]->GetInt(ic(i)) != 0;
      result.Set(i, take_a ? ops[1]->Get(ia(i)) : ops[2]->Get(ib(i)));
    }
    return result;
  }
  const TensorValue& a = *ops[0];
  const TensorValue& b = *ops[1];
  BroadcastIndexer ia(a.shape(), result_type.shape);
  BroadcastIndexer ib(b.shape(), result_type.shape);
  const bool is_float = a.is_float();
  for (int64_t i = 0; i < n; ++i) {
    const int64_t ai = ia(i);
    const int64_t bi = ib(i);
    if (IsComparison(opcode)) {
      bool r = is_float ? Compare(opcode, a.GetDouble(ai), b.GetDouble(bi))
                        : CompareInt(opcode, a.GetInt(ai), b.GetInt(bi));
      result.SetInt(i, r ? 1 : 0);
    } else if (is_float) {
      result.SetDouble(i, FloatBinary(opcode, a.GetDouble(ai), b.GetDouble(bi)));
    } else {
      absl::StatusOr<int64_t> r =
          IntBinary(opcode, a.GetInt(ai), b.GetInt(bi), a.dtype());
      if (!r.ok()) return r.status();
      result.SetInt(i, *r);
    }
  }
  return result;
}

TensorValue Dot(const TensorValue& a, const TensorValue& b,
                const TensorType& result_type) {
  TensorValue result(result_type);
  const int64_t m = a.shape()[0];
  const int64_t k = a.shape()[1];
  const int64_t n = b.shape()[1];
  for (int64_t i = 0; i < m; ++i) {
    for (int64_t j = 0; j < n; ++j) {
      if (a.is_float()) {
        double sum = 0;
        for (int64_t l = 0; l < k; ++l) {
          sum += a.GetDouble(i * k + l) * b.GetDouble(l * n + j);
        }
        result.SetDouble(i * n + j, sum);
      } else {
        int64_t sum = 0;
        for (int64_t l = 0; l < k; ++l) {
          sum = WrapAdd(sum, WrapMul(a.GetInt(i * k + l), b.GetInt(l * n + j)));
        }
        result.SetInt(i * n + j, sum);
      }
    }
  }
  return result;
}

TensorValue Reduce(const TensorValue& x, ReduceOp op, int64_t axis,
                   const TensorType& result_type) {
  TensorValue result(result_type);
  const Shape& shape = x.shape();
  int64_t outer = 1;
  int64_t inner = 1;
  for (int64_t d = 0; d < axis; ++d) outer *= shape[d];
  for (size_t d = axis + 1; d < shape.size(); ++d) inner *= shape[d];
  const int64_t extent = shape[axis];
  for (int64_t o = 0; o < outer; ++o) {
    for (int64_t i = 0; i < inner; ++i) {
      const int64_t out = o * inner + i;
      if (x.is_float()) {
        double acc = op == ReduceOp::kAdd ? 0.0 : 1.0;
        for (int64_t e = 0; e < extent; ++e) {
          double v = x.GetDouble((o * extent + e) * inner + i);
          acc = op == ReduceOp::kAdd ? acc + v : acc * v;
        }
        result.SetDouble(out, acc);
      } else {
        int64_t acc = op == ReduceOp::kAdd ? 0 : 1;
        for (int64_t e = 0; e < extent; ++e) {
          int64_t v = x.GetInt((o * extent + e) * inner + i);
          acc = op == ReduceOp::kAdd ? WrapAdd(acc, v) : WrapMul(acc, v);
        }
        result.SetInt(out, acc);
      }
    }
  }
  return result;
}

TensorValue Transpose(const TensorValue& x, const TensorType& result_type) {
  TensorValue result(result_type);
  const Shape& in_shape = x.shape();
  const size_t rank = in_shape.size();
  std::vector<int64_t> in_strides = Strides(in_shape);
  std::vector<int64_t> out_strides = Strides(result_type.shape);
  for (int64_t flat = 0; flat < result.size(); ++flat) {
    // Output coordinate d equals input coordinate rank - 1 - d.
    int64_t source = 0;
    for (size_t d = 0; d < rank; ++d) {
      int64_t coordinate = (flat / out_strides[d]) % result_type.shape[d];
      source += coordinate * in_strides[rank - 1 - d];
    }
    result.Set(flat, x.Get(source));
  }
  return result;
}

TensorValue Slice(const TensorValue& x, int64_t from,
                  const TensorType& result_type) {
  TensorValue result(result_type);
  const int64_t row = x.shape().empty() ? 1 : x.size() / x.shape()[0];
  for (int64_t i = 0; i < result.size(); ++i) {
    result.Set(i, x.Get(from * row + i));
  }
  return result;
}

TensorValue Concatenate(std::span<const TensorValue* const> ops, int64_t axis,
                        const TensorType& result_type) {
  TensorValue result(result_type);
  const Shape& out_shape = result_type.shape;
  int64_t outer = 1;
  int64_t inner = 1;
  for (int64_t d = 0; d < axis; ++d) outer *= out_shape[d];
  for (size_t d = axis + 1; d < out_shape.size(); ++d) inner *= out_shape[d];
  int64_t out_index = 0;
  for (int64_t o = 0; o < outer; ++o) {
    for (const TensorValue* op : ops) {
      const int64_t chunk = op->shape()[axis] * inner;
      for (int64_t i = 0; i < chunk; ++i) {
        result.Set(out_index++, op->Get(o * chunk + i));
      }
    }
  }
  return result;
}

TensorValue DataTypeCast(const TensorValue& x, const TensorType& result_type) {
  TensorValue result(result_type);
  for (int64_t i = 0; i < result.size(); ++i) {
    if (x.is_float()) {
      result.SetDouble(i, x.GetDouble(i));
    } else {
      result.SetInt(i, x.GetInt(i));
    }
  }
  return result;
}

}  // namespace

int64_t KernelInvocationCount() { return kernel_count.load(); }
void ResetKernelInvocationCount() { kernel_count.store(0); }

absl::StatusOr<TensorValue> EvaluateKernel(
    Opcode opcode, const InstructionAttributes& attributes,
    std::span<const TensorValue* const> operands,
    const TensorType& result_type) {
  kernel_count.fetch_add(1, std::memory_order_relaxed);
  if (IsUnaryElementwise(opcode) || IsBinaryElementwise(opcode) ||
      IsComparison(opcode) || opcode == Opcode::kSelect) {
    return Elementwise(opcode, operands, result_type);
  }
  switch (opcode) {
    case Opcode::kDot:
      return Dot(*operands[0], *operands[1], result_type);
    case Opcode::kReduce:
      return Reduce(*operands[0], attributes.reduce_op, attributes.axis,
                    result_type);
    case Opcode::kTranspose:
      return Transpose(*operands[0], result_type);
    case Opcode::kSlice:
      return Slice(*operands[0], attributes.from, result_type);
    case Opcode::kConcatenate:
      return Concatenate(operands, attributes.axis, result_type);
    case Opcode::kShapeCast:
      return operands[0]->Reshaped(result_type.shape);
    case Opcode::kDataTypeCast:
      return DataTypeCast(*operands[0], result_type);
    default:
      return absl::InternalError(
          absl::StrCat("no kernel for ", OpcodeName(opcode)));
  }
}

absl::StatusOr<TensorValue> EvaluateKernel(
    const Instruction& inst, std::span<const TensorValue* const> operands) {
  if (!inst.type().is_tensor()) {
    return absl::InternalError(
        absl::StrCat(OpcodeName(inst.opcode()), " has no tensor result"));
  }
  return EvaluateKernel(inst.opcode(), inst.attributes(), operands,
                        inst.type().tensor());
}

}  // namespace dlc
