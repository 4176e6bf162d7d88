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

#include "dlc/ir/tensor_value.h"

#include <bit>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace dlc {
namespace {

double RoundToHalf(double value) {
  if (std::isnan(value) || std::isinf(value) || value == 0) return value;
  double magnitude = std::fabs(value);
  // Halfway between the largest half (65504) and the next power step rounds
  // to infinity.
  if (magnitude >= 65520.0) return std::copysign(INFINITY, value);
  int exponent;
  std::frexp(magnitude, &exponent);
  // Unit in the last place: 10 fraction bits for normals, fixed 2^-24 for
  // subnormals.
  int ulp_exponent = std::max(exponent - 1 - 10, -24);
  double scaled = std::ldexp(magnitude, -ulp_exponent);
  double rounded = std::ldexp(std::nearbyint(scaled), ulp_exponent);
  return std::copysign(rounded, value);
}

int64_t DoubleToInt64Truncating(double value) {
  if (std::isnan(value)) return 0;
  double truncated = std::trunc(value);
  if (truncated >= 9223372036854775807.0) {
    return std::numeric_limits<int64_t>::max();
  }
  if (truncated <= -9223372036854775808.0) {
    return std::numeric_limits<int64_t>::min();
  }
  return static_cast<int64_t>(truncated);
}

std::string FormatDouble(double value, DataType dtype) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  int digits = dtype == DataType::kF64 ? 17 : dtype == DataType::kF32 ? 9 : 5;
  std::string text = absl::StrFormat("%.*g", digits, value);
  if (text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

}  // namespace

double RoundToFloatType(double value, DataType dtype) {
  switch (dtype) {
    case DataType::kF64:
      return value;
    case DataType::kF32:
      return static_cast<double>(static_cast<float>(value));
    case DataType::kF16:
      return RoundToHalf(value);
    default:
      return value;
  }
}

int64_t WrapToIntType(int64_t value, DataType dtype) {
  switch (dtype) {
    case DataType::kBool:
      return value != 0 ? 1 : 0;
    case DataType::kI8:
      return static_cast<int8_t>(static_cast<uint8_t>(value));
    case DataType::kI16:
      return static_cast<int16_t>(static_cast<uint16_t>(value));
    case DataType::kI32:
      return static_cast<int32_t>(static_cast<uint32_t>(value));
    default:
      return value;
  }
}

ScalarValue ScalarValue::Float(double value, DataType dtype) {
  ScalarValue scalar;
  scalar.dtype_ = dtype;
  scalar.float_value_ = RoundToFloatType(value, dtype);
  return scalar;
}

ScalarValue ScalarValue::Int(int64_t value, DataType dtype) {
  ScalarValue scalar;
  scalar.dtype_ = dtype;
  scalar.int_value_ = WrapToIntType(value, dtype);
  return scalar;
}

ScalarValue ScalarValue::FromDouble(double value, DataType dtype) {
  if (IsFloat(dtype)) return Float(value, dtype);
  if (dtype == DataType::kBool) return Bool(value != 0);
  return Int(DoubleToInt64Truncating(value), dtype);
}

double ScalarValue::AsDouble() const {
  return IsFloat(dtype_) ? float_value_ : static_cast<double>(int_value_);
}

int64_t ScalarValue::AsInt() const {
  return IsFloat(dtype_) ? DoubleToInt64Truncating(float_value_) : int_value_;
}

bool ScalarValue::IdenticalTo(const ScalarValue& other) const {
  if (dtype_ != other.dtype_) return false;
  if (IsFloat(dtype_)) {
    return std::bit_cast<uint64_t>(float_value_) ==
           std::bit_cast<uint64_t>(other.float_value_);
  }
  return int_value_ == other.int_value_;
}

std::string ScalarValue::ToString() const {
  if (dtype_ == DataType::kBool) return int_value_ ? "true" : "false";
  if (IsFloat(dtype_)) return FormatDouble(float_value_, dtype_);
  return absl::StrCat(int_value_);
}

TensorValue::TensorValue(TensorType type) : type_(std::move(type)) {
  if (IsFloat(type_.dtype)) {
    floats_.assign(type_.element_count(), 0.0);
  } else {
    ints_.assign(type_.element_count(), 0);
  }
}

TensorValue TensorValue::Splat(TensorType type, const ScalarValue& value) {
  TensorValue tensor(std::move(type));
  for (int64_t i = 0; i < tensor.size(); ++i) tensor.Set(i, value);
  return tensor;
}

TensorValue TensorValue::FromDoubles(TensorType type,
                                     std::span<const double> data) {
  TensorValue tensor(std::move(type));
  for (int64_t i = 0; i < tensor.size() && i < static_cast<int64_t>(data.size());
       ++i) {
    tensor.SetDouble(i, data[i]);
  }
  return tensor;
}

TensorValue TensorValue::FromInts(TensorType type,
                                  std::span<const int64_t> data) {
  TensorValue tensor(std::move(type));
  for (int64_t i = 0; i < tensor.size() && i < static_cast<int64_t>(data.size());
       ++i) {
    tensor.SetInt(i, data[i]);
  }
  return tensor;
}

double TensorValue::GetDouble(int64_t index) const {
  return is_float() ? floats_[index] : static_cast<double>(ints_[index]);
}

int64_t TensorValue::GetInt(int64_t index) const {
  return is_float() ? DoubleToInt64Truncating(floats_[index]) : ints_[index];
}

ScalarValue TensorValue::Get(int64_t index) const {
  return is_float() ? ScalarValue::Float(floats_[index], dtype())
                    : ScalarValue::Int(ints_[index], dtype());
}

void TensorValue::SetDouble(int64_t index, double value) {
  if (is_float()) {
    floats_[index] = RoundToFloatType(value, dtype());
  } else {
    ints_[index] = ScalarValue::FromDouble(value, dtype()).AsInt();
  }
}

void TensorValue::SetInt(int64_t index, int64_t value) {
  if (is_float()) {
    floats_[index] = RoundToFloatType(static_cast<double>(value), dtype());
  } else {
    ints_[index] = WrapToIntType(value, dtype());
  }
}

void TensorValue::Set(int64_t index, const ScalarValue& value) {
  if (IsFloat(value.dtype())) {
    SetDouble(index, value.AsDouble());
  } else {
    SetInt(index, value.AsInt());
  }
}

std::vector<double> TensorValue::ToDoubles() const {
  std::vector<double> out(size());
  for (int64_t i = 0; i < size(); ++i) out[i] = GetDouble(i);
  return out;
}

TensorValue TensorValue::Reshaped(Shape shape) const {
  TensorValue result = *this;
  result.type_.shape = std::move(shape);
  return result;
}

bool TensorValue::IdenticalTo(const TensorValue& other) const {
  if (!(type_ == other.type_)) return false;
  for (int64_t i = 0; i < size(); ++i) {
    if (!Get(i).IdenticalTo(other.Get(i))) return false;
  }
  return true;
}

bool TensorValue::IsSplat() const {
  for (int64_t i = 1; i < size(); ++i) {
    if (!Get(i).IdenticalTo(Get(0))) return false;
  }
  return true;
}

std::string TensorValue::ToString() const {
  std::string out = absl::StrCat("<", ShapeToString(type_.shape),
                                 type_.shape.empty() ? "" : " x ",
                                 DataTypeName(dtype()), "> [");
  for (int64_t i = 0; i < size(); ++i) {
    if (i > 0) out += ", ";
    out += Get(i).ToString();
  }
  out += "]";
  return out;
}

}  // namespace dlc
