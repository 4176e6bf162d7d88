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

#ifndef DLC_STAGED_EXPR_H_
#define DLC_STAGED_EXPR_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "dlc/ir/opcode.h"
#include "dlc/ir/types.h"

namespace dlc::staged {

struct FunctionNode;

// One node of an unshaped staged graph. Nodes are immutable and shared.
struct ExprNode {
  enum class Kind {
    kParameter,  // index = parameter position
    kLiteral,    // scalar constant, broadcast on use
    kUnary,      // opcode
    kBinary,     // opcode, element-wise with broadcasting
    kDot,
    kReduceAdd,  // index = axis
    kTranspose,
    kApply,      // callee applied to children
    kExtract,    // index = tuple element of an apply
  };

  Kind kind = Kind::kLiteral;
  Opcode opcode = Opcode::kAdd;
  int64_t index = 0;
  double literal = 0;
  DataType dtype = DataType::kF32;
  int result_count = 1;  // Greater than one only for tuple-valued applies.
  std::vector<std::shared_ptr<const ExprNode>> children;
  std::shared_ptr<const FunctionNode> callee;
  // The staging session a parameter belongs to.
  const void* owner = nullptr;
  // Non-OK when the expression is ill-formed; errors propagate upward.
  absl::Status status;
};

// A staged tensor expression: building one records a graph node and never
// evaluates tensor math. Element dtypes are checked eagerly; shapes are
// unknown until specialization.
class Expr {
 public:
  Expr() = default;
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  const std::shared_ptr<const ExprNode>& node() const { return node_; }
  DataType dtype() const { return node_->dtype; }
  const absl::Status& status() const { return node_->status; }

 private:
  std::shared_ptr<const ExprNode> node_;
};

Expr Constant(double value, DataType dtype = DataType::kF32);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);  // Element-wise.
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr Dot(const Expr& a, const Expr& b);  // Matrix product.
Expr Tanh(const Expr& x);
Expr Exp(const Expr& x);
Expr Log(const Expr& x);
Expr Transpose(const Expr& x);
Expr ReduceAdd(const Expr& x, int64_t axis);

// Element `index` of a multi-result staged application.
Expr Extract(const Expr& tuple, int index);

struct GradientSpec {
  std::optional<std::vector<int>> wrt;  // All parameters when unset.
  std::vector<int> keeping;
  int from = 0;
};

struct FunctionNode {
  uint64_t id = 0;  // Process-unique; part of the specialization key.
  std::string name;
  std::vector<DataType> param_dtypes;
  std::vector<DataType> result_dtypes;
  // Lambdas have a body; gradients have a source and a spec.
  std::optional<Expr> body;
  std::shared_ptr<const FunctionNode> gradient_source;
  GradientSpec spec;
  absl::Status status;
};

// A staged function. Applying it to staged expressions records an
// application node; executing it on data goes through a Jit.
class Function {
 public:
  Function() = default;
  explicit Function(std::shared_ptr<const FunctionNode> node)
      : node_(std::move(node)) {}

  const std::shared_ptr<const FunctionNode>& node() const { return node_; }
  const std::string& name() const { return node_->name; }
  size_t arity() const { return node_->param_dtypes.size(); }
  size_t result_count() const { return node_->result_dtypes.size(); }
  const absl::Status& status() const { return node_->status; }

  // Staged application.
  Expr operator()(std::vector<Expr> args) const;

 private:
  std::shared_ptr<const FunctionNode> node_;
};

// Stages `body` once with one parameter expression per dtype.
Function Lambda(std::string name, std::vector<DataType> param_dtypes,
                const std::function<Expr(const std::vector<Expr>&)>& body);

// The gradient of `f` per `spec`: gradients for the wrt parameters in
// order, then the kept outputs. Takes the same arguments as `f`.
Function GradientOf(const Function& f, GradientSpec spec,
                    std::string name = "");

}  // namespace dlc::staged

#endif  // DLC_STAGED_EXPR_H_
