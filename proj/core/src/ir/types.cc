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

#include "dlc/ir/types.h"

#include <array>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dlc {
namespace {

constexpr std::array<absl::string_view, 8> kDataTypeNames = {
    "bool", "i8", "i16", "i32", "i64", "f16", "f32", "f64"};

}  // namespace

absl::string_view DataTypeName(DataType dtype) {
  return kDataTypeNames[static_cast<size_t>(dtype)];
}

std::optional<DataType> ParseDataType(absl::string_view text) {
  for (size_t i = 0; i < kDataTypeNames.size(); ++i) {
    if (kDataTypeNames[i] == text) return static_cast<DataType>(i);
  }
  return std::nullopt;
}

bool IsFloat(DataType dtype) {
  return dtype == DataType::kF16 || dtype == DataType::kF32 ||
         dtype == DataType::kF64;
}

bool IsInteger(DataType dtype) {
  return dtype == DataType::kI8 || dtype == DataType::kI16 ||
         dtype == DataType::kI32 || dtype == DataType::kI64;
}

bool IsNumeric(DataType dtype) { return IsFloat(dtype) || IsInteger(dtype); }

int BitWidth(DataType dtype) {
  switch (dtype) {
    case DataType::kBool:
      return 1;
    case DataType::kI8:
      return 8;
    case DataType::kI16:
    case DataType::kF16:
      return 16;
    case DataType::kI32:
    case DataType::kF32:
      return 32;
    case DataType::kI64:
    case DataType::kF64:
      return 64;
  }
  return 0;
}

bool IsWideningCast(DataType from, DataType to) {
  if (from == to) return true;
  if (IsFloat(from) != IsFloat(to)) return false;
  if ((from == DataType::kBool) != (to == DataType::kBool)) return false;
  return BitWidth(from) <= BitWidth(to);
}

int64_t ElementCount(const Shape& shape) {
  int64_t count = 1;
  for (int64_t dim : shape) count *= dim;
  return count;
}

std::string ShapeToString(const Shape& shape) {
  return absl::StrJoin(shape, " x ");
}

std::string TensorType::ToString() const {
  if (shape.empty()) return std::string(DataTypeName(dtype));
  return absl::StrCat("<", ShapeToString(shape), " x ", DataTypeName(dtype),
                      ">");
}

Type::Type(TensorType tensor) : kind_(Kind::kTensor), tensor_(std::move(tensor)) {}

Type Type::Tuple(std::vector<Type> elements) {
  if (elements.size() == 1) return std::move(elements.front());
  Type type;
  type.kind_ = Kind::kTuple;
  type.tensor_ = {};
  type.children_ = std::move(elements);
  return type;
}

Type Type::Function(std::vector<Type> params, Type result) {
  Type type;
  type.kind_ = Kind::kFunction;
  type.children_ = std::move(params);
  type.children_.push_back(std::move(result));
  return type;
}

std::vector<Type> Type::params() const {
  return std::vector<Type>(children_.begin(), children_.end() - 1);
}

std::vector<Type> Type::Flatten() const {
  if (is_tuple()) return children_;
  return {*this};
}

std::string Type::ToString() const {
  switch (kind_) {
    case Kind::kTensor:
      return tensor_.ToString();
    case Kind::kTuple:
      return absl::StrCat(
          "(",
          absl::StrJoin(children_, ", ",
                        [](std::string* out, const Type& t) {
                          out->append(t.ToString());
                        }),
          ")");
    case Kind::kFunction: {
      std::vector<Type> ps = params();
      return absl::StrCat("(",
                          absl::StrJoin(ps, ", ",
                                        [](std::string* out, const Type& t) {
                                          out->append(t.ToString());
                                        }),
                          ") -> ", result().ToString());
    }
  }
  return "";
}

bool Type::operator==(const Type& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == Kind::kTensor) return tensor_ == other.tensor_;
  return children_ == other.children_;
}

}  // namespace dlc
