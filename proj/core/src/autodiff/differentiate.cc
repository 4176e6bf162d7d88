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

#include "dlc/autodiff/differentiate.h"

#include <span>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"
#include "dlc/analysis/differentiability.h"
#include "dlc/autodiff/adjoint.h"
#include "dlc/autodiff/gradient_type.h"
#include "dlc/ir/builder.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

// Appends a copy of `function`'s entry block to `dest`, binding its
// parameters to `args`, and returns the returned values. Applies of
// single-block callees with tuple results are expanded in place so that
// extracts of them resolve to plain values.
absl::StatusOr<std::vector<Value*>> InlineEntry(
    const Function& function, std::span<Value* const> args, BasicBlock* dest,
    absl::flat_hash_set<const Function*>& expanding) {
  Function& target = *dest->parent();
  const BasicBlock& block = *function.entry();
  absl::flat_hash_map<const Value*, Value*> map;
  absl::flat_hash_map<const Value*, std::vector<Value*>> tuples;
  for (size_t i = 0; i < block.num_params(); ++i) map[block.param(i)] = args[i];
  auto mapped = [&](Value* v) -> Value* {
    if (v->value_kind() == Value::Kind::kLiteral) {
      const auto* literal = static_cast<const Literal*>(v);
      return target.MakeLiteral(literal->value(), literal->tensor_type());
    }
    if (v->value_kind() == Value::Kind::kGlobal) return v;
    return map.at(v);
  };
  expanding.insert(&function);
  std::vector<Value*> results;
  for (const auto& inst : block.instructions()) {
    if (inst->opcode() == Opcode::kReturn) {
      for (Value* v : inst->operands()) results.push_back(mapped(v));
      break;
    }
    if (inst->opcode() == Opcode::kExtract) {
      auto tuple = tuples.find(inst->operand(0));
      if (tuple != tuples.end()) {
        map[inst.get()] = tuple->second[inst->attributes().index];
        continue;
      }
    }
    std::vector<Value*> operands;
    for (Value* v : inst->operands()) operands.push_back(mapped(v));
    const Function* callee = inst->callee();
    if (inst->opcode() == Opcode::kApply && inst->type().is_tuple() &&
        callee->blocks().size() == 1 && !expanding.contains(callee)) {
      DLC_ASSIGN_OR_RETURN(tuples[inst.get()],
                           InlineEntry(*callee, operands, dest, expanding));
      continue;
    }
    auto copy = std::make_unique<Instruction>(inst->opcode(), inst->type(),
                                              std::move(operands),
                                              inst->attributes(), inst->name());
    copy->loc = inst->loc;
    DLC_ASSIGN_OR_RETURN(map[inst.get()], dest->Append(std::move(copy)));
  }
  expanding.erase(&function);
  return results;
}

// A copy of single-block `source` in `scratch` with tuple-returning callees
// expanded. Other functions are returned unchanged.
absl::StatusOr<const Function*> Flatten(const Function& source,
                                        Module& scratch) {
  if (source.blocks().size() != 1) return &source;
  DLC_ASSIGN_OR_RETURN(Function * flat,
                       scratch.AddFunction(source.name(), source.type()));
  DLC_ASSIGN_OR_RETURN(BasicBlock * entry, flat->AddBlock("entry"));
  std::vector<Value*> params;
  for (const auto& param : source.entry()->params()) {
    params.push_back(entry->AddParam(param->type(), param->name()));
  }
  absl::flat_hash_set<const Function*> expanding;
  DLC_ASSIGN_OR_RETURN(std::vector<Value*> results,
                       InlineEntry(source, params, entry, expanding));
  IRBuilder builder(entry);
  DLC_RETURN_IF_ERROR(builder.Return(std::move(results)).status());
  return flat;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(Module& module) : module_(module) {}

  absl::Status Run() {
    std::vector<Function*> pending;
    for (const auto& function : module_.functions()) {
      if (function->is_gradient_declaration()) pending.push_back(function.get());
    }
    for (Function* function : pending) {
      DLC_RETURN_IF_ERROR(Canonicalize(*function));
    }
    module_.set_stage(Stage::kOptimizable);
    return absl::OkStatus();
  }

  // Gives `function` a body if it is a gradient declaration, first doing
  // the same for everything its source depends on.
  absl::Status Canonicalize(Function& function) {
    if (!function.is_gradient_declaration()) return absl::OkStatus();
    if (!in_progress_.insert(&function).second) {
      return absl::FailedPreconditionError(absl::StrCat(
          "cyclic gradient dependency through @", function.name()));
    }
    const GradientConfig& config = *function.gradient_config();
    Function* source = module_.FindFunction(config.source);
    if (source == nullptr) {
      return absl::NotFoundError(absl::StrCat(
          "gradient @", function.name(), ": source @", config.source,
          " is not defined"));
    }
    DLC_RETURN_IF_ERROR(EnsureBodies(*source));
    DLC_RETURN_IF_ERROR(Generate(function, *source, config));
    in_progress_.erase(&function);
    return absl::OkStatus();
  }

 private:
  // Canonicalizes `function` and every gradient declaration reachable from
  // it through applies.
  absl::Status EnsureBodies(Function& function) {
    if (!ensured_.insert(&function).second) return absl::OkStatus();
    DLC_RETURN_IF_ERROR(Canonicalize(function));
    for (const auto& block : function.blocks()) {
      for (const auto& inst : block->instructions()) {
        if (inst->opcode() == Opcode::kApply) {
          DLC_RETURN_IF_ERROR(EnsureBodies(*inst->callee()));
        }
      }
    }
    return absl::OkStatus();
  }

  absl::StatusOr<Function*> CalleeGradient(Function& callee) {
    auto it = callee_gradients_.find(&callee);
    if (it != callee_gradients_.end()) return it->second;
    GradientConfig config;
    config.source = callee.name();
    std::vector<int> wrt;
    std::vector<Type> params = callee.param_types();
    for (size_t i = 0; i < params.size(); ++i) {
      if (params[i].is_tensor() && IsFloat(params[i].tensor().dtype)) {
        wrt.push_back(static_cast<int>(i));
      }
    }
    config.wrt = std::move(wrt);
    config.seedable = true;
    DLC_ASSIGN_OR_RETURN(Type type,
                         ExpectedGradientType(callee.type(), config));
    DLC_ASSIGN_OR_RETURN(
        Function * gradient,
        module_.AddFunction(
            module_.UniqueFunctionName(absl::StrCat(callee.name(), "_vjp")),
            type));
    gradient->set_gradient_config(config);
    callee_gradients_[&callee] = gradient;
    DLC_RETURN_IF_ERROR(EnsureBodies(callee));
    DLC_RETURN_IF_ERROR(Canonicalize(*gradient));
    return gradient;
  }

  absl::Status Generate(Function& gradient, const Function& original,
                        const GradientConfig& config) {
    Module scratch("scratch");
    DLC_ASSIGN_OR_RETURN(const Function* flat, Flatten(original, scratch));
    const Function& source = *flat;
    DLC_RETURN_IF_ERROR(CheckDifferentiability(source, config));
    DLC_ASSIGN_OR_RETURN(Type expected,
                         ExpectedGradientType(source.type(), config));
    if (!(expected == gradient.type())) {
      return absl::InvalidArgumentError(absl::StrCat(
          "gradient @", gradient.name(), " is declared as ",
          gradient.type().ToString(), " but the expected type is ",
          expected.ToString()));
    }

    // Copy the primal computation.
    DLC_ASSIGN_OR_RETURN(BasicBlock * entry, gradient.AddBlock("entry"));
    const BasicBlock& primal = *source.entry();
    absl::flat_hash_map<const Value*, Value*> map;
    std::vector<Type> params = gradient.param_types();
    for (size_t i = 0; i < params.size(); ++i) {
      BlockArgument* param = entry->AddParam(
          params[i], i < primal.num_params() ? primal.param(i)->name() : "seed");
      if (i < primal.num_params()) map[primal.param(i)] = param;
    }
    auto mapped = [&](Value* v) -> Value* {
      if (v->value_kind() == Value::Kind::kLiteral) {
        const auto* literal = static_cast<const Literal*>(v);
        return gradient.MakeLiteral(literal->value(), literal->tensor_type());
      }
      if (v->value_kind() == Value::Kind::kGlobal) return v;
      return map.at(v);
    };
    std::vector<Instruction*> copies;
    std::vector<Value*> outputs;
    for (const auto& inst : primal.instructions()) {
      if (inst->opcode() == Opcode::kReturn) {
        for (Value* v : inst->operands()) outputs.push_back(mapped(v));
        continue;
      }
      std::vector<Value*> operands;
      for (Value* v : inst->operands()) operands.push_back(mapped(v));
      auto copy = std::make_unique<Instruction>(
          inst->opcode(), inst->type(), std::move(operands),
          inst->attributes(), inst->name());
      copy->loc = inst->loc;
      DLC_ASSIGN_OR_RETURN(Instruction * added, entry->Append(std::move(copy)));
      map[inst.get()] = added;
      copies.push_back(added);
    }

    const std::vector<int> wrt = config.WrtIndices(primal.num_params());
    Value* output = outputs[config.from_index()];
    absl::flat_hash_set<const Value*> active =
        ActiveValues(gradient, wrt, output);

    IRBuilder builder(entry);
    Value* seed = config.seedable
                      ? static_cast<Value*>(entry->param(params.size() - 1))
                      : builder.Splat(1, output->type().tensor());
    absl::flat_hash_map<const Value*, Value*> adjoints;
    auto accumulate = [&](const Value* primal_value,
                          Value* contribution) -> absl::Status {
      auto [it, inserted] = adjoints.try_emplace(primal_value, contribution);
      if (!inserted) {
        DLC_ASSIGN_OR_RETURN(
            it->second, builder.Binary(Opcode::kAdd, it->second, contribution));
      }
      return absl::OkStatus();
    };
    if (active.contains(output)) DLC_RETURN_IF_ERROR(accumulate(output, seed));

    CalleeGradientFn callee_gradient = [this](Function& callee) {
      return CalleeGradient(callee);
    };
    for (auto it = copies.rbegin(); it != copies.rend(); ++it) {
      const Instruction& inst = **it;
      auto adjoint = adjoints.find(&inst);
      if (adjoint == adjoints.end()) continue;
      auto wanted = [&](size_t i) {
        return active.contains(inst.operand(i));
      };
      DLC_ASSIGN_OR_RETURN(std::vector<AdjointContribution> contributions,
                           AdjointRule(builder, inst, adjoint->second, wanted,
                                       callee_gradient));
      for (const AdjointContribution& c : contributions) {
        DLC_RETURN_IF_ERROR(accumulate(inst.operand(c.operand), c.adjoint));
      }
    }

    std::vector<Value*> results;
    for (int index : wrt) {
      const Value* param = entry->param(index);
      auto found = adjoints.find(param);
      results.push_back(found != adjoints.end()
                            ? found->second
                            : builder.Splat(0, param->type().tensor()));
    }
    for (int index : config.keeping) results.push_back(outputs[index]);
    DLC_RETURN_IF_ERROR(builder.Return(std::move(results)).status());
    return absl::OkStatus();
  }

  Module& module_;
  absl::flat_hash_set<const Function*> in_progress_;
  absl::flat_hash_set<const Function*> ensured_;
  absl::flat_hash_map<const Function*, Function*> callee_gradients_;
};

}  // namespace

absl::Status CanonicalizeGradients(Module& module) {
  return Canonicalizer(module).Run();
}

absl::StatusOr<Function*> Differentiate(Module& module, const Function& source,
                                        GradientConfig config,
                                        std::string name) {
  config.source = source.name();
  DLC_ASSIGN_OR_RETURN(Type type, ExpectedGradientType(source.type(), config));
  DLC_ASSIGN_OR_RETURN(Function * gradient,
                       module.AddFunction(std::move(name), std::move(type)));
  gradient->set_gradient_config(std::move(config));
  Canonicalizer canonicalizer(module);
  DLC_RETURN_IF_ERROR(canonicalizer.Canonicalize(*gradient));
  return gradient;
}

}  // namespace dlc
