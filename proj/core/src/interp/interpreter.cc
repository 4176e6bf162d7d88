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

#include "dlc/interp/interpreter.h"

#include <utility>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_cat.h"
#include "dlc/interp/kernels.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

// A runtime value is the flattened list of tensors making up its type.
using Flat = std::vector<TensorValue>;

// Offset and count of tuple element `index` within the flattened tuple.
std::pair<size_t, size_t> ElementRange(const Type& tuple, int64_t index) {
  size_t offset = 0;
  for (int64_t i = 0; i < index; ++i) {
    offset += tuple.elements()[i].Flatten().size();
  }
  return {offset, tuple.elements()[index].Flatten().size()};
}

class Activation {
 public:
  Activation(const Module& module, const InterpreterOptions& options,
             int64_t* steps)
      : module_(module), options_(options), steps_(steps) {}

  absl::StatusOr<Flat> Call(const Function& function, std::vector<Flat> args,
                            int depth) {
    if (depth > options_.max_call_depth) {
      return absl::ResourceExhaustedError(
          absl::StrCat("call depth limit of ", options_.max_call_depth,
                       " exceeded in @", function.name()));
    }
    if (function.is_declaration()) {
      return absl::FailedPreconditionError(
          absl::StrCat("@", function.name(), " has no body"));
    }
    absl::flat_hash_map<const Value*, Flat> env;
    const BasicBlock* block = function.entry();
    while (true) {
      for (size_t i = 0; i < block->num_params(); ++i) {
        env[block->param(i)] = std::move(args[i]);
      }
      const BasicBlock* next = nullptr;
      for (const auto& inst : block->instructions()) {
        if (++*steps_ > options_.max_steps) {
          return absl::ResourceExhaustedError(
              absl::StrCat("step limit of ", options_.max_steps, " exceeded"));
        }
        switch (inst->opcode()) {
          case Opcode::kReturn: {
            Flat result;
            for (const Value* v : inst->operands()) {
              DLC_ASSIGN_OR_RETURN(const Flat* value, Lookup(env, v));
              result.insert(result.end(), value->begin(), value->end());
            }
            return result;
          }
          case Opcode::kBranch:
          case Opcode::kConditional: {
            size_t target = 0;
            if (inst->opcode() == Opcode::kConditional) {
              DLC_ASSIGN_OR_RETURN(const Flat* cond,
                                   Lookup(env, inst->operand(0)));
              target = (*cond)[0].GetInt(0) != 0 ? 0 : 1;
            }
            std::vector<Flat> next_args;
            for (const Value* v : inst->TargetArgs(target)) {
              DLC_ASSIGN_OR_RETURN(const Flat* value, Lookup(env, v));
              next_args.push_back(*value);
            }
            args = std::move(next_args);
            next = inst->attributes().targets[target];
            break;
          }
          case Opcode::kApply: {
            std::vector<Flat> call_args;
            for (const Value* v : inst->operands()) {
              DLC_ASSIGN_OR_RETURN(const Flat* value, Lookup(env, v));
              call_args.push_back(*value);
            }
            DLC_ASSIGN_OR_RETURN(
                Flat result,
                Call(*inst->callee(), std::move(call_args), depth + 1));
            env[inst.get()] = std::move(result);
            break;
          }
          case Opcode::kExtract: {
            DLC_ASSIGN_OR_RETURN(const Flat* tuple,
                                 Lookup(env, inst->operand(0)));
            auto [offset, count] = ElementRange(inst->operand(0)->type(),
                                                inst->attributes().index);
            env[inst.get()] = Flat(tuple->begin() + offset,
                                   tuple->begin() + offset + count);
            break;
          }
          default: {
            std::vector<const TensorValue*> operands;
            for (const Value* v : inst->operands()) {
              DLC_ASSIGN_OR_RETURN(const Flat* value, Lookup(env, v));
              operands.push_back(&(*value)[0]);
            }
            DLC_ASSIGN_OR_RETURN(TensorValue result,
                                 EvaluateKernel(*inst, operands));
            env[inst.get()] = Flat{std::move(result)};
            break;
          }
        }
        if (next != nullptr) break;
      }
      if (next == nullptr) {
        return absl::InternalError(absl::StrCat(
            "block '", block->label(), " fell through without a terminator"));
      }
      block = next;
    }
  }

 private:
  absl::StatusOr<const Flat*> Lookup(
      absl::flat_hash_map<const Value*, Flat>& env, const Value* v) {
    switch (v->value_kind()) {
      case Value::Kind::kLiteral: {
        auto it = constants_.find(v);
        if (it == constants_.end()) {
          it = constants_
                   .emplace(v, Flat{static_cast<const Literal*>(v)
                                        ->Materialize()})
                   .first;
        }
        return &it->second;
      }
      case Value::Kind::kGlobal: {
        auto it = constants_.find(v);
        if (it == constants_.end()) {
          it = constants_
                   .emplace(v, Flat{static_cast<const Global*>(v)->value()})
                   .first;
        }
        return &it->second;
      }
      default: {
        auto it = env.find(v);
        if (it == env.end()) {
          return absl::InternalError(absl::StrCat(
              "value ", v->name().empty() ? "<unnamed>" : v->name(),
              " read before definition"));
        }
        return &it->second;
      }
    }
  }

  const Module& module_;
  const InterpreterOptions& options_;
  int64_t* steps_;
  absl::flat_hash_map<const Value*, Flat> constants_;
};

}  // namespace

absl::StatusOr<std::vector<TensorValue>> Interpreter::Run(
    absl::string_view name, std::span<const TensorValue> inputs) const {
  const Function* function = module_.FindFunction(name);
  if (function == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat("no function named @", name));
  }
  return Run(*function, inputs);
}

absl::StatusOr<std::vector<TensorValue>> Interpreter::Run(
    const Function& function, std::span<const TensorValue> inputs) const {
  std::vector<Type> params = function.param_types();
  if (params.size() != inputs.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("@", function.name(), " takes ", params.size(),
                     " argument(s), got ", inputs.size()));
  }
  std::vector<Flat> args;
  for (size_t i = 0; i < params.size(); ++i) {
    if (!params[i].is_tensor()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "parameter ", i, " of @", function.name(),
          " has tuple type ", params[i].ToString(),
          "; entry points take tensors only"));
    }
    if (!(params[i].tensor() == inputs[i].type())) {
      return absl::InvalidArgumentError(absl::StrCat(
          "argument ", i, " of @", function.name(), " has type ",
          Type(inputs[i].type()).ToString(), ", expected ",
          params[i].ToString()));
    }
    args.push_back(Flat{inputs[i]});
  }
  int64_t steps = 0;
  Activation activation(module_, options_, &steps);
  return activation.Call(function, std::move(args), 0);
}

absl::StatusOr<std::vector<TensorValue>> RunFunction(
    const Module& module, absl::string_view name,
    std::span<const TensorValue> inputs) {
  return Interpreter(module).Run(name, inputs);
}

}  // namespace dlc
