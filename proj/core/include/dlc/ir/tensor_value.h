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

#ifndef DLC_IR_TENSOR_VALUE_H_
#define DLC_IR_TENSOR_VALUE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dlc/ir/types.h"

namespace dlc {

// Rounds `value` to the nearest value representable in `dtype` (float
// dtypes) using round-to-nearest-even. f16 is emulated.
double RoundToFloatType(double value, DataType dtype);

// Wraps `value` to the two's-complement range of `dtype`; bool maps to 0/1.
int64_t WrapToIntType(int64_t value, DataType dtype);

// A single element of some dtype. Floats are held as double (already rounded
// to the dtype), integers and bools as int64.
class ScalarValue {
 public:
  ScalarValue() = default;
  static ScalarValue Float(double value, DataType dtype);
  static ScalarValue Int(int64_t value, DataType dtype);
  static ScalarValue Bool(bool value) { return Int(value, DataType::kBool); }
  // Converts a double into any dtype: rounding for floats, truncation toward
  // zero with wrap-around for integers.
  static ScalarValue FromDouble(double value, DataType dtype);

  DataType dtype() const { return dtype_; }
  double AsDouble() const;
  int64_t AsInt() const;

  // Exact comparison of the stored bits (NaN == NaN, -0 != +0).
  bool IdenticalTo(const ScalarValue& other) const;
  // Numeric equality against a double (e.g. "is this a splat of 1").
  bool Equals(double value) const { return AsDouble() == value; }

  std::string ToString() const;  // Literal spelling: "2", "1.5", "true".

 private:
  DataType dtype_ = DataType::kF32;
  double float_value_ = 0;
  int64_t int_value_ = 0;
};

// Dense row-major tensor of a static TensorType.
class TensorValue {
 public:
  TensorValue() : TensorValue(TensorType{{}, DataType::kF64}) {}
  explicit TensorValue(TensorType type);  // Zero-filled.

  static TensorValue Splat(TensorType type, const ScalarValue& value);
  static TensorValue FromDoubles(TensorType type, std::span<const double> data);
  static TensorValue FromInts(TensorType type, std::span<const int64_t> data);
  static TensorValue Scalar(double value, DataType dtype = DataType::kF64) {
    return FromDoubles(TensorType{{}, dtype}, std::span<const double>(&value, 1));
  }

  const TensorType& type() const { return type_; }
  DataType dtype() const { return type_.dtype; }
  const Shape& shape() const { return type_.shape; }
  int64_t size() const { return type_.element_count(); }
  bool is_float() const { return IsFloat(type_.dtype); }

  double GetDouble(int64_t index) const;
  int64_t GetInt(int64_t index) const;
  ScalarValue Get(int64_t index) const;
  void SetDouble(int64_t index, double value);  // Converts per FromDouble.
  void SetInt(int64_t index, int64_t value);    // Wraps.
  void Set(int64_t index, const ScalarValue& value);

  std::vector<double> ToDoubles() const;

  // Reinterprets the buffer under a new shape with the same element count.
  TensorValue Reshaped(Shape shape) const;

  // Exact element-wise bit equality and identical type.
  bool IdenticalTo(const TensorValue& other) const;
  // True when every element equals the first one.
  bool IsSplat() const;

  // `<2 x 2 x f64> [1, 2, 3, 4]`
  std::string ToString() const;

 private:
  TensorType type_;
  std::vector<double> floats_;
  std::vector<int64_t> ints_;
};

}  // namespace dlc

#endif  // DLC_IR_TENSOR_VALUE_H_
