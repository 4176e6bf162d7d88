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

#ifndef DLC_IR_TYPES_H_
#define DLC_IR_TYPES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/strings/string_view.h"

namespace dlc {

// Scalar element types. Within each family (integer, float) the enumerators
// are ordered by bit width.
enum class DataType : uint8_t {
  kBool,
  kI8,
  kI16,
  kI32,
  kI64,
  kF16,
  kF32,
  kF64,
};

absl::string_view DataTypeName(DataType dtype);
std::optional<DataType> ParseDataType(absl::string_view text);

bool IsFloat(DataType dtype);
bool IsInteger(DataType dtype);  // Excludes bool.
bool IsNumeric(DataType dtype);  // Integer or float.
int BitWidth(DataType dtype);

// True when every value of `from` is exactly representable in `to`: same
// family and no narrower.
bool IsWideningCast(DataType from, DataType to);

using Shape = std::vector<int64_t>;

int64_t ElementCount(const Shape& shape);
std::string ShapeToString(const Shape& shape);  // "2 x 3", "" for rank 0.

struct TensorType {
  Shape shape;
  DataType dtype = DataType::kF32;

  int64_t rank() const { return static_cast<int64_t>(shape.size()); }
  int64_t element_count() const { return ElementCount(shape); }
  bool is_scalar() const { return shape.empty(); }

  std::string ToString() const;
  bool operator==(const TensorType&) const = default;
};

// A value type: tensor, tuple, or function. The empty tuple doubles as the
// unit type of functions that return nothing.
class Type {
 public:
  enum class Kind : uint8_t { kTensor, kTuple, kFunction };

  Type() : Type(TensorType{{}, DataType::kF32}) {}
  Type(TensorType tensor);  // NOLINT(google-explicit-constructor)

  static Type Tensor(Shape shape, DataType dtype) {
    return Type(TensorType{std::move(shape), dtype});
  }
  static Type Scalar(DataType dtype) { return Tensor({}, dtype); }
  // Collapses a single element to that element.
  static Type Tuple(std::vector<Type> elements);
  static Type Unit() { return Tuple({}); }
  static Type Function(std::vector<Type> params, Type result);

  Kind kind() const { return kind_; }
  bool is_tensor() const { return kind_ == Kind::kTensor; }
  bool is_tuple() const { return kind_ == Kind::kTuple; }
  bool is_function() const { return kind_ == Kind::kFunction; }
  bool is_unit() const { return is_tuple() && children_.empty(); }

  const TensorType& tensor() const { return tensor_; }
  const std::vector<Type>& elements() const { return children_; }

  // Function types only.
  std::vector<Type> params() const;
  const Type& result() const { return children_.back(); }

  // The list of values a function result decomposes into: tuple elements,
  // nothing for unit, or the type itself.
  std::vector<Type> Flatten() const;

  std::string ToString() const;
  bool operator==(const Type& other) const;

 private:
  Kind kind_;
  TensorType tensor_;
  // Tuple elements, or function params followed by the result.
  std::vector<Type> children_;
};

}  // namespace dlc

#endif  // DLC_IR_TYPES_H_
