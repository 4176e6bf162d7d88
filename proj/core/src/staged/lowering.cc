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

#include "dlc/staged/lowering.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dlc/analysis/type_inference.h"
#include "dlc/analysis/verifier.h"
#include "dlc/autodiff/gradient_type.h"
#include "dlc/ir/builder.h"

namespace dlc::staged {
namespace {

GradientConfig ConfigFor(const FunctionNode& node, std::string source) {
  GradientConfig config;
  config.source = std::move(source);
  config.wrt = node.spec.wrt;
  config.keeping = node.spec.keeping;
  if (node.spec.from != 0) config.from = node.spec.from;
  return config;
}

std::string ShapesToString(const std::vector<Shape>& shapes) {
  return absl::StrJoin(shapes, ", ", [](std::string* out, const Shape& s) {
    absl::StrAppend(out, "[", absl::StrJoin(s, " x "), "]");
  });
}

class Specializer {
 public:
  absl::StatusOr<size_t> Instance(const std::shared_ptr<const FunctionNode>& fn,
                                  const std::vector<Shape>& shapes) {
    if (!fn->status.ok()) return fn->status;
    auto key = std::make_pair(fn->id, shapes);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    if (shapes.size() != fn->param_dtypes.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat(fn->name, " takes ", fn->param_dtypes.size(),
                       " argument(s), got ", shapes.size(), " shape(s)"));
    }
    SpecializedFunction instance;
    instance.function = fn;
    instance.shapes = shapes;
    std::vector<Type> params;
    for (size_t i = 0; i < shapes.size(); ++i) {
      params.push_back(Type::Tensor(shapes[i], fn->param_dtypes[i]));
    }
    if (fn->gradient_source != nullptr) {
      absl::StatusOr<size_t> source = Instance(fn->gradient_source, shapes);
      if (!source.ok()) return source.status();
      instance.source = *source;
      const Type& source_type = graph_.instances[*source].type;
      GradientConfig config = ConfigFor(*fn, fn->gradient_source->name);
      absl::StatusOr<Type> type = ExpectedGradientType(source_type, config);
      if (!type.ok()) return type.status();
      instance.type = *type;
    } else {
      absl::StatusOr<Type> result =
          NodeType(instance, params, fn->body->node().get());
      if (!result.ok()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "specializing ", fn->name, " at (", ShapesToString(shapes),
            "): ", result.status().message()));
      }
      instance.type = Type::Function(params, *result);
    }
    graph_.instances.push_back(std::move(instance));
    size_t index = graph_.instances.size() - 1;
    index_[key] = index;
    return index;
  }

  SpecializedGraph Take() { return std::move(graph_); }

 private:
  absl::StatusOr<Type> NodeType(SpecializedFunction& instance,
                                const std::vector<Type>& params,
                                const ExprNode* node) {
    if (auto it = instance.node_types.find(node);
        it != instance.node_types.end()) {
      return it->second;
    }
    std::vector<Type> operands;
    for (const auto& child : node->children) {
      absl::StatusOr<Type> type = NodeType(instance, params, child.get());
      if (!type.ok()) return type.status();
      operands.push_back(*type);
    }
    absl::StatusOr<Type> type;
    InstructionAttributes attrs;
    switch (node->kind) {
      case ExprNode::Kind::kParameter:
        type = params[node->index];
        break;
      case ExprNode::Kind::kLiteral:
        type = Type::Scalar(node->dtype);
        break;
      case ExprNode::Kind::kUnary:
      case ExprNode::Kind::kBinary:
      case ExprNode::Kind::kDot:
      case ExprNode::Kind::kTranspose:
        type = InferType(node->opcode, operands, attrs);
        break;
      case ExprNode::Kind::kReduceAdd:
        attrs.reduce_op = ReduceOp::kAdd;
        attrs.axis = node->index;
        type = InferType(Opcode::kReduce, operands, attrs);
        break;
      case ExprNode::Kind::kExtract:
        attrs.index = node->index;
        type = InferType(Opcode::kExtract, operands, attrs);
        break;
      case ExprNode::Kind::kApply: {
        std::vector<Shape> shapes;
        for (const Type& t : operands) shapes.push_back(t.tensor().shape);
        absl::StatusOr<size_t> callee = Instance(node->callee, shapes);
        if (!callee.ok()) return callee.status();
        instance.callees[node] = *callee;
        type = graph_.instances[*callee].type.result();
        break;
      }
    }
    if (!type.ok()) return type.status();
    instance.node_types[node] = *type;
    return *type;
  }

  SpecializedGraph graph_;
  absl::flat_hash_map<std::pair<uint64_t, std::vector<Shape>>, size_t> index_;
};

class Lowerer {
 public:
  explicit Lowerer(const SpecializedGraph& graph) : graph_(graph) {}

  absl::StatusOr<LoweredModule> Run() {
    LoweredModule lowered;
    lowered.module = std::make_unique<Module>(graph_.root().function->name);
    module_ = lowered.module.get();
    for (const SpecializedFunction& instance : graph_.instances) {
      absl::StatusOr<dlc::Function*> function = LowerInstance(instance);
      if (!function.ok()) return function.status();
      functions_.push_back(*function);
    }
    lowered.entry = functions_.back()->name();
    if (absl::Status s = VerifyModuleStatus(*module_); !s.ok()) {
      return absl::InternalError(
          absl::StrCat("lowered module is malformed: ", s.message()));
    }
    return lowered;
  }

 private:
  absl::StatusOr<dlc::Function*> LowerInstance(const SpecializedFunction& instance) {
    std::string name = module_->UniqueFunctionName(instance.function->name);
    absl::StatusOr<dlc::Function*> function = module_->AddFunction(name, instance.type);
    if (!function.ok()) return function.status();
    if (instance.source.has_value()) {
      (*function)->set_gradient_config(
          ConfigFor(*instance.function, functions_[*instance.source]->name()));
      return *function;
    }
    absl::StatusOr<BasicBlock*> entry = (*function)->AddBlock("entry");
    if (!entry.ok()) return entry.status();
    for (const Type& param : instance.type.params()) {
      (*entry)->AddParam(param, absl::StrCat("arg", (*entry)->num_params()));
    }
    IRBuilder builder(*entry);
    absl::flat_hash_map<const ExprNode*, Value*> values;
    absl::StatusOr<Value*> result = Emit(builder, instance,
                                         instance.function->body->node().get(),
                                         values);
    if (!result.ok()) return result.status();
    if (absl::StatusOr<Instruction*> ret = builder.Return({*result}); !ret.ok()) {
      return ret.status();
    }
    return *function;
  }

  absl::StatusOr<Value*> Emit(
      IRBuilder& builder, const SpecializedFunction& instance,
      const ExprNode* node,
      absl::flat_hash_map<const ExprNode*, Value*>& values) {
    if (auto it = values.find(node); it != values.end()) return it->second;
    std::vector<Value*> operands;
    for (const auto& child : node->children) {
      absl::StatusOr<Value*> v = Emit(builder, instance, child.get(), values);
      if (!v.ok()) return v.status();
      operands.push_back(*v);
    }
    absl::StatusOr<Instruction*> inst;
    Value* value = nullptr;
    switch (node->kind) {
      case ExprNode::Kind::kParameter:
        value = builder.block()->param(node->index);
        break;
      case ExprNode::Kind::kLiteral:
        value = builder.Scalar(node->literal, node->dtype);
        break;
      case ExprNode::Kind::kUnary:
        inst = builder.Unary(node->opcode, operands[0]);
        break;
      case ExprNode::Kind::kBinary:
        inst = builder.Binary(node->opcode, operands[0], operands[1]);
        break;
      case ExprNode::Kind::kDot:
        inst = builder.Dot(operands[0], operands[1]);
        break;
      case ExprNode::Kind::kTranspose:
        inst = builder.Transpose(operands[0]);
        break;
      case ExprNode::Kind::kReduceAdd:
        inst = builder.Reduce(operands[0], ReduceOp::kAdd, node->index);
        break;
      case ExprNode::Kind::kExtract:
        inst = builder.Extract(operands[0], node->index);
        break;
      case ExprNode::Kind::kApply:
        inst = builder.Apply(functions_[instance.callees.at(node)], operands);
        break;
    }
    if (value == nullptr) {
      if (!inst.ok()) return inst.status();
      value = *inst;
    }
    values[node] = value;
    return value;
  }

  const SpecializedGraph& graph_;
  Module* module_ = nullptr;
  std::vector<dlc::Function*> functions_;  // Parallel to graph_.instances.
};

}  // namespace

absl::StatusOr<SpecializedGraph> Specialize(const Function& function,
                                            const std::vector<Shape>& shapes) {
  if (function.node() == nullptr) {
    return absl::InvalidArgumentError("empty staged function");
  }
  Specializer specializer;
  absl::StatusOr<size_t> root = specializer.Instance(function.node(), shapes);
  if (!root.ok()) return root.status();
  return specializer.Take();
}

absl::StatusOr<LoweredModule> Lower(const SpecializedGraph& graph) {
  if (graph.instances.empty()) {
    return absl::InvalidArgumentError("nothing to lower");
  }
  return Lowerer(graph).Run();
}

absl::StatusOr<LoweredModule> SpecializeAndLower(
    const Function& function, const std::vector<Shape>& shapes) {
  absl::StatusOr<SpecializedGraph> graph = Specialize(function, shapes);
  if (!graph.ok()) return graph.status();
  return Lower(*graph);
}

}  // namespace dlc::staged
