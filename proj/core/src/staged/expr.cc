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

#include "dlc/staged/expr.h"

#include <atomic>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"

namespace dlc::staged {
namespace {

std::atomic<uint64_t> next_function_id{1};

// First non-OK status among the operands, if any.
absl::Status FirstError(std::initializer_list<const Expr*> operands) {
  for (const Expr* e : operands) {
    if (e->node() == nullptr) {
      return absl::InvalidArgumentError("use of an empty staged expression");
    }
    if (!e->status().ok()) return e->status();
  }
  return absl::OkStatus();
}

Expr Make(ExprNode node) {
  return Expr(std::make_shared<const ExprNode>(std::move(node)));
}

Expr Failed(absl::Status status) {
  ExprNode node;
  node.status = std::move(status);
  return Make(std::move(node));
}

Expr Unary(Opcode opcode, const Expr& x, bool float_only) {
  if (absl::Status s = FirstError({&x}); !s.ok()) return Failed(s);
  if (x.node()->result_count != 1) {
    return Failed(absl::InvalidArgumentError(
        absl::StrCat(OpcodeName(opcode), " of a tuple-valued expression")));
  }
  if (float_only && !IsFloat(x.dtype())) {
    return Failed(absl::InvalidArgumentError(absl::StrCat(
        OpcodeName(opcode), " needs a float operand, got ",
        DataTypeName(x.dtype()))));
  }
  ExprNode node;
  node.kind = ExprNode::Kind::kUnary;
  node.opcode = opcode;
  node.dtype = x.dtype();
  node.children = {x.node()};
  return Make(std::move(node));
}

Expr Binary(ExprNode::Kind kind, Opcode opcode, const Expr& a, const Expr& b) {
  if (absl::Status s = FirstError({&a, &b}); !s.ok()) return Failed(s);
  if (a.node()->result_count != 1 || b.node()->result_count != 1) {
    return Failed(absl::InvalidArgumentError(
        absl::StrCat(OpcodeName(opcode), " of a tuple-valued expression")));
  }
  if (a.dtype() != b.dtype()) {
    return Failed(absl::InvalidArgumentError(absl::StrCat(
        OpcodeName(opcode), " mixes ", DataTypeName(a.dtype()), " and ",
        DataTypeName(b.dtype()))));
  }
  ExprNode node;
  node.kind = kind;
  node.opcode = opcode;
  node.dtype = a.dtype();
  node.children = {a.node(), b.node()};
  return Make(std::move(node));
}

// Collects the owners of the parameters reachable from `root`.
void ParameterOwners(const std::shared_ptr<const ExprNode>& root,
                     absl::flat_hash_set<const void*>& owners) {
  absl::flat_hash_set<const ExprNode*> seen;
  std::vector<const ExprNode*> stack = {root.get()};
  while (!stack.empty()) {
    const ExprNode* node = stack.back();
    stack.pop_back();
    if (!seen.insert(node).second) continue;
    if (node->kind == ExprNode::Kind::kParameter) owners.insert(node->owner);
    for (const auto& child : node->children) stack.push_back(child.get());
  }
}

}  // namespace

Expr Constant(double value, DataType dtype) {
  ExprNode node;
  node.kind = ExprNode::Kind::kLiteral;
  node.literal = value;
  node.dtype = dtype;
  return Make(std::move(node));
}

Expr operator+(const Expr& a, const Expr& b) {
  return Binary(ExprNode::Kind::kBinary, Opcode::kAdd, a, b);
}
Expr operator-(const Expr& a, const Expr& b) {
  return Binary(ExprNode::Kind::kBinary, Opcode::kSubtract, a, b);
}
Expr operator*(const Expr& a, const Expr& b) {
  return Binary(ExprNode::Kind::kBinary, Opcode::kMultiply, a, b);
}
Expr operator/(const Expr& a, const Expr& b) {
  return Binary(ExprNode::Kind::kBinary, Opcode::kDivide, a, b);
}
Expr operator-(const Expr& a) { return Unary(Opcode::kNegate, a, false); }
Expr Dot(const Expr& a, const Expr& b) {
  return Binary(ExprNode::Kind::kDot, Opcode::kDot, a, b);
}
Expr Tanh(const Expr& x) { return Unary(Opcode::kTanh, x, true); }
Expr Exp(const Expr& x) { return Unary(Opcode::kExp, x, true); }
Expr Log(const Expr& x) { return Unary(Opcode::kLog, x, true); }

Expr Transpose(const Expr& x) {
  Expr e = Unary(Opcode::kTranspose, x, false);
  if (!e.status().ok()) return e;
  ExprNode node = *e.node();
  node.kind = ExprNode::Kind::kTranspose;
  return Make(std::move(node));
}

Expr ReduceAdd(const Expr& x, int64_t axis) {
  Expr e = Unary(Opcode::kReduce, x, false);
  if (!e.status().ok()) return e;
  ExprNode node = *e.node();
  node.kind = ExprNode::Kind::kReduceAdd;
  node.index = axis;
  return Make(std::move(node));
}

Expr Extract(const Expr& tuple, int index) {
  if (absl::Status s = FirstError({&tuple}); !s.ok()) return Failed(s);
  const ExprNode& source = *tuple.node();
  if (source.kind != ExprNode::Kind::kApply || source.result_count < 2) {
    return Failed(absl::InvalidArgumentError(
        "extract needs a multi-result staged application"));
  }
  if (index < 0 || index >= source.result_count) {
    return Failed(absl::InvalidArgumentError(
        absl::StrCat("extract index ", index, " out of range")));
  }
  ExprNode node;
  node.kind = ExprNode::Kind::kExtract;
  node.index = index;
  node.dtype = source.callee->result_dtypes[index];
  node.children = {tuple.node()};
  return Make(std::move(node));
}

Expr Function::operator()(std::vector<Expr> args) const {
  if (!status().ok()) return Failed(status());
  if (args.size() != arity()) {
    return Failed(absl::InvalidArgumentError(
        absl::StrCat(name(), " takes ", arity(), " argument(s), got ",
                     args.size())));
  }
  ExprNode node;
  node.kind = ExprNode::Kind::kApply;
  node.callee = node_;
  for (size_t i = 0; i < args.size(); ++i) {
    if (absl::Status s = FirstError({&args[i]}); !s.ok()) return Failed(s);
    if (args[i].dtype() != node_->param_dtypes[i]) {
      return Failed(absl::InvalidArgumentError(absl::StrCat(
          "argument ", i, " of ", name(), " must be ",
          DataTypeName(node_->param_dtypes[i]), ", got ",
          DataTypeName(args[i].dtype()))));
    }
    node.children.push_back(args[i].node());
  }
  node.result_count = static_cast<int>(result_count());
  node.dtype = node_->result_dtypes.empty() ? DataType::kF32
                                            : node_->result_dtypes[0];
  return Make(std::move(node));
}

Function Lambda(std::string name, std::vector<DataType> param_dtypes,
                const std::function<Expr(const std::vector<Expr>&)>& body) {
  auto node = std::make_shared<FunctionNode>();
  node->id = next_function_id.fetch_add(1);
  node->name = std::move(name);
  node->param_dtypes = std::move(param_dtypes);
  std::vector<Expr> params;
  for (size_t i = 0; i < node->param_dtypes.size(); ++i) {
    ExprNode param;
    param.kind = ExprNode::Kind::kParameter;
    param.index = static_cast<int64_t>(i);
    param.dtype = node->param_dtypes[i];
    param.owner = node.get();
    params.push_back(Make(std::move(param)));
  }
  Expr result = body(params);
  if (result.node() == nullptr) {
    node->status = absl::InvalidArgumentError(
        absl::StrCat(node->name, " returns an empty expression"));
  } else if (!result.status().ok()) {
    node->status = result.status();
  } else if (result.node()->result_count != 1) {
    node->status = absl::InvalidArgumentError(
        absl::StrCat(node->name, " must return a single tensor"));
  } else {
    absl::flat_hash_set<const void*> owners;
    ParameterOwners(result.node(), owners);
    for (const void* owner : owners) {
      if (owner != node.get()) {
        node->status = absl::InvalidArgumentError(absl::StrCat(
            node->name, " refers to a parameter of another function"));
      }
    }
    node->result_dtypes = {result.dtype()};
    node->body = std::move(result);
  }
  return Function(std::move(node));
}

Function GradientOf(const Function& f, GradientSpec spec, std::string name) {
  auto node = std::make_shared<FunctionNode>();
  node->id = next_function_id.fetch_add(1);
  node->name = name.empty() ? absl::StrCat(f.name(), "_grad") : std::move(name);
  node->param_dtypes = f.node()->param_dtypes;
  node->gradient_source = f.node();
  node->spec = spec;
  if (!f.status().ok()) {
    node->status = f.status();
    return Function(std::move(node));
  }
  auto check = [&](int index, size_t bound, absl::string_view what) {
    if (index < 0 || static_cast<size_t>(index) >= bound) {
      node->status = absl::InvalidArgumentError(absl::StrCat(
          what, " index ", index, " out of range for ", f.name()));
      return false;
    }
    return true;
  };
  std::vector<int> wrt;
  if (spec.wrt.has_value()) {
    wrt = *spec.wrt;
  } else {
    for (size_t i = 0; i < f.arity(); ++i) wrt.push_back(static_cast<int>(i));
  }
  for (int i : wrt) {
    if (!check(i, f.arity(), "wrt")) return Function(std::move(node));
    node->result_dtypes.push_back(f.node()->param_dtypes[i]);
  }
  for (int i : spec.keeping) {
    if (!check(i, f.result_count(), "keeping")) return Function(std::move(node));
    node->result_dtypes.push_back(f.node()->result_dtypes[i]);
  }
  check(spec.from, f.result_count(), "from");
  return Function(std::move(node));
}

}  // namespace dlc::staged
