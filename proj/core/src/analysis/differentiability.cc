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

#include "dlc/analysis/differentiability.h"

#include <string>

#include "absl/strings/str_cat.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

bool IsFloatTensor(const Type& type) {
  return type.is_tensor() && IsFloat(type.tensor().dtype);
}

std::string Describe(const Instruction& inst) {
  std::string text(OpcodeName(inst.opcode()));
  if (!inst.name().empty()) absl::StrAppend(&text, " %", inst.name());
  if (inst.loc.known()) {
    absl::StrAppend(&text, " at line ", inst.loc.line);
  }
  return text;
}

absl::Status CheckInstruction(const Instruction& inst,
                              absl::flat_hash_set<const Function*>& visiting);

absl::Status CheckFunction(const Function& function,
                           const GradientConfig& config,
                           absl::flat_hash_set<const Function*>& visiting) {
  const std::string fname = absl::StrCat("@", function.name());
  if (function.is_declaration()) {
    return absl::FailedPreconditionError(
        absl::StrCat(fname, " has no body to differentiate"));
  }
  if (function.blocks().size() != 1) {
    return absl::FailedPreconditionError(absl::StrCat(
        fname, " has ", function.blocks().size(),
        " blocks; only single-block functions are differentiable"));
  }
  if (!visiting.insert(&function).second) {
    return absl::FailedPreconditionError(
        absl::StrCat("recursive application of ", fname,
                     " is not differentiable"));
  }
  std::vector<Type> params = function.param_types();
  std::vector<int> wrt = config.WrtIndices(params.size());
  for (int index : wrt) {
    if (index < 0 || static_cast<size_t>(index) >= params.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("wrt index ", index, " out of range for ", fname));
    }
    if (!IsFloatTensor(params[index])) {
      return absl::InvalidArgumentError(absl::StrCat(
          "non-differentiable dtype: argument ", index, " of ", fname,
          " has type ", params[index].ToString()));
    }
  }
  DLC_ASSIGN_OR_RETURN(Value * output,
                       SelectedOutput(function, config.from_index()));
  if (!IsFloatTensor(output->type())) {
    return absl::InvalidArgumentError(
        absl::StrCat("non-differentiable dtype: output ", config.from_index(),
                     " of ", fname, " has type ", output->type().ToString()));
  }
  absl::flat_hash_set<const Value*> active =
      ActiveValues(function, wrt, output);
  for (const auto& inst : function.entry()->instructions()) {
    if (!active.contains(inst.get())) continue;
    absl::Status status = CheckInstruction(*inst, visiting);
    if (!status.ok()) {
      return absl::Status(status.code(),
                          absl::StrCat("in ", fname, ": ", status.message()));
    }
  }
  visiting.erase(&function);
  return absl::OkStatus();
}

absl::Status CheckInstruction(const Instruction& inst,
                              absl::flat_hash_set<const Function*>& visiting) {
  const InstructionAttributes& attrs = inst.attributes();
  switch (inst.opcode()) {
    case Opcode::kReduce:
      if (attrs.reduce_op == ReduceOp::kMultiply) {
        return absl::UnimplementedError(absl::StrCat(
            "no adjoint rule for reduce by multiply (", Describe(inst), ")"));
      }
      return absl::OkStatus();
    case Opcode::kConcatenate: {
      const int64_t rank = inst.type().tensor().rank();
      if (attrs.axis != 0 && attrs.axis != rank - 1) {
        return absl::UnimplementedError(absl::StrCat(
            "no adjoint rule for concatenate along an interior axis (",
            Describe(inst), ")"));
      }
      return absl::OkStatus();
    }
    case Opcode::kApply: {
      const Function* callee = inst.callee();
      if (!IsFloatTensor(callee->result_type())) {
        return absl::UnimplementedError(absl::StrCat(
            "no adjoint rule for apply of @", callee->name(),
            " with a non-float or tuple result (", Describe(inst), ")"));
      }
      GradientConfig config;
      config.source = callee->name();
      std::vector<int> wrt;
      std::vector<Type> params = callee->param_types();
      for (size_t i = 0; i < params.size(); ++i) {
        if (IsFloatTensor(params[i])) wrt.push_back(static_cast<int>(i));
      }
      config.wrt = wrt;
      return CheckFunction(*callee, config, visiting);
    }
    case Opcode::kExtract:
      return absl::UnimplementedError(absl::StrCat(
          "no adjoint rule for extract (", Describe(inst), ")"));
    case Opcode::kLt:
    case Opcode::kLe:
    case Opcode::kGt:
    case Opcode::kGe:
    case Opcode::kEq:
    case Opcode::kNe:
      return absl::UnimplementedError(absl::StrCat(
          "no adjoint rule for comparison (", Describe(inst), ")"));
    default:
      return absl::OkStatus();
  }
}

}  // namespace

absl::StatusOr<Value*> SelectedOutput(const Function& function,
                                      int output_index) {
  const Instruction* ret = function.entry()->terminator();
  if (ret == nullptr || ret->opcode() != Opcode::kReturn) {
    return absl::FailedPreconditionError(
        absl::StrCat("@", function.name(), " does not end in a return"));
  }
  if (ret->num_operands() == 1 && ret->operand(0)->type().is_tuple()) {
    return absl::UnimplementedError(absl::StrCat(
        "@", function.name(),
        " returns a tuple value as a whole; return its elements instead"));
  }
  if (output_index < 0 ||
      static_cast<size_t>(output_index) >= ret->num_operands()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "output ", output_index, " out of range for @", function.name()));
  }
  return ret->operand(output_index);
}

absl::flat_hash_set<const Value*> ActiveValues(const Function& function,
                                               const std::vector<int>& wrt,
                                               const Value* output) {
  absl::flat_hash_set<const Value*> varied;
  const BasicBlock* entry = function.entry();
  for (int index : wrt) varied.insert(entry->param(index));
  for (const auto& inst : entry->instructions()) {
    for (const Value* operand : inst->operands()) {
      if (varied.contains(operand)) {
        varied.insert(inst.get());
        break;
      }
    }
  }
  absl::flat_hash_set<const Value*> useful = {output};
  const auto& insts = entry->instructions();
  for (auto it = insts.rbegin(); it != insts.rend(); ++it) {
    if (!useful.contains(it->get())) continue;
    for (const Value* operand : (*it)->operands()) useful.insert(operand);
  }
  absl::flat_hash_set<const Value*> active;
  for (const Value* v : varied) {
    if (useful.contains(v) && IsFloatTensor(v->type())) active.insert(v);
  }
  return active;
}

absl::Status CheckDifferentiability(const Function& function,
                                    const GradientConfig& config) {
  absl::flat_hash_set<const Function*> visiting;
  return CheckFunction(function, config, visiting);
}

}  // namespace dlc
