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

#include "dlc/analysis/verifier.h"

#include <string>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dlc/analysis/dominance.h"
#include "dlc/analysis/type_inference.h"
#include "dlc/autodiff/gradient_type.h"

namespace dlc {
namespace {

std::string ValueLabel(const Value& value) {
  switch (value.value_kind()) {
    case Value::Kind::kGlobal:
      return absl::StrCat("@", value.name());
    case Value::Kind::kLiteral:
      return "literal";
    default:
      return value.name().empty() ? std::string("unnamed value")
                                  : absl::StrCat("%", value.name());
  }
}

class Verifier {
 public:
  explicit Verifier(const Module& module) : module_(module) {}

  std::vector<Diagnostic> Run() {
    for (const auto& function : module_.functions()) {
      VerifyGradientConfig(*function);
      if (!function->is_declaration()) VerifyBody(*function);
      if (module_.stage() == Stage::kOptimizable &&
          function->is_gradient_declaration()) {
        Report(function->loc,
               absl::StrCat("gradient declaration @", function->name(),
                            " remains in an optimizable-stage module"));
      }
    }
    return std::move(diagnostics_);
  }

 private:
  void Report(SourceLoc loc, std::string message) {
    Diagnostic d;
    d.line = loc.line;
    d.column = loc.column;
    d.message = std::move(message);
    diagnostics_.push_back(std::move(d));
  }

  static SourceLoc LocOf(const Instruction& inst) {
    if (inst.loc.known()) return inst.loc;
    if (inst.parent() != nullptr && inst.parent()->loc.known()) {
      return inst.parent()->loc;
    }
    const Function* function = inst.function();
    return function != nullptr ? function->loc : SourceLoc{};
  }

  void VerifyGradientConfig(const Function& function) {
    if (!function.gradient_config().has_value()) return;
    const GradientConfig& config = *function.gradient_config();
    const std::string prefix = absl::StrCat("gradient @", function.name());
    const Function* source = module_.FindFunction(config.source);
    if (source == nullptr) {
      Report(function.loc, absl::StrCat(prefix, ": source @", config.source,
                                        " is not defined"));
      return;
    }
    if (source->is_declaration() && !source->is_gradient_declaration()) {
      Report(function.loc, absl::StrCat(prefix, ": source @", config.source,
                                        " has no body"));
      return;
    }
    // Follow declaration chains to reject cycles.
    absl::flat_hash_set<const Function*> chain = {&function};
    for (const Function* f = source; f != nullptr && f->gradient_config();
         f = module_.FindFunction(f->gradient_config()->source)) {
      if (!f->is_declaration()) break;
      if (!chain.insert(f).second) {
        Report(function.loc,
               absl::StrCat(prefix, ": cyclic gradient declarations"));
        return;
      }
    }
    absl::StatusOr<Type> expected =
        ExpectedGradientType(source->type(), config);
    if (!expected.ok()) {
      Report(function.loc, absl::StrCat(prefix, ": bad gradient config: ",
                                        expected.status().message()));
      return;
    }
    if (!(*expected == function.type())) {
      Report(function.loc,
             absl::StrCat(prefix, ": declared type ",
                          function.type().ToString(),
                          " does not match the expected gradient type ",
                          expected->ToString()));
    }
  }

  void VerifyBody(const Function& function) {
    const std::string fname = absl::StrCat("@", function.name());
    const BasicBlock* entry = function.entry();
    std::vector<Type> params = function.param_types();
    bool entry_ok = entry->num_params() == params.size();
    for (size_t i = 0; entry_ok && i < params.size(); ++i) {
      entry_ok = entry->param(i)->type() == params[i];
    }
    if (!entry_ok) {
      Report(entry->loc.known() ? entry->loc : function.loc,
             absl::StrCat("entry block parameters of ", fname,
                          " do not match the function parameter types"));
    }

    absl::flat_hash_set<std::string> labels;
    absl::flat_hash_set<const BasicBlock*> blocks;
    for (const auto& block : function.blocks()) {
      blocks.insert(block.get());
      if (!labels.insert(block->label()).second) {
        Report(block->loc, absl::StrCat("duplicate block label '",
                                        block->label(), " in ", fname));
      }
    }

    DominatorTree dominators(function);
    for (const auto& block : function.blocks()) {
      if (block->empty()) {
        Report(block->loc, absl::StrCat("block '", block->label(),
                                        " has no terminator"));
        continue;
      }
      for (size_t i = 0; i < block->size(); ++i) {
        const Instruction& inst = *block->instruction(i);
        const bool last = i + 1 == block->size();
        if (inst.is_terminator() && !last) {
          Report(LocOf(inst), "terminator must be the last instruction");
        }
        if (!inst.is_terminator() && last) {
          Report(LocOf(inst),
                 absl::StrCat("block '", block->label(),
                              " does not end with a terminator"));
        }
        VerifyInstruction(function, blocks, dominators, inst);
      }
    }
  }

  bool OperandOk(const Function& function, const Instruction& inst,
                 const Value* operand) {
    if (operand == nullptr) {
      Report(LocOf(inst), "null operand");
      return false;
    }
    switch (operand->value_kind()) {
      case Value::Kind::kArgument: {
        const auto* arg = static_cast<const BlockArgument*>(operand);
        if (arg->parent()->parent() != &function) {
          Report(LocOf(inst), absl::StrCat(ValueLabel(*operand),
                                           " belongs to another function"));
          return false;
        }
        return true;
      }
      case Value::Kind::kInstruction: {
        const auto* def = static_cast<const Instruction*>(operand);
        if (def->function() != &function) {
          Report(LocOf(inst), absl::StrCat(ValueLabel(*operand),
                                           " belongs to another function"));
          return false;
        }
        if (def->is_terminator()) {
          Report(LocOf(inst), "a terminator has no value to use");
          return false;
        }
        return true;
      }
      case Value::Kind::kGlobal:
        if (module_.FindGlobal(operand->name()) != operand) {
          Report(LocOf(inst), absl::StrCat(ValueLabel(*operand),
                                           " is not a global of this module"));
          return false;
        }
        return true;
      case Value::Kind::kLiteral:
        return true;
    }
    return false;
  }

  void VerifyTarget(const Instruction& inst,
                    const absl::flat_hash_set<const BasicBlock*>& blocks,
                    size_t target) {
    const BasicBlock* dest = inst.attributes().targets[target];
    if (!blocks.contains(dest)) {
      Report(LocOf(inst), "branch target is not a block of this function");
      return;
    }
    std::span<Value* const> args = inst.TargetArgs(target);
    if (args.size() != dest->num_params()) {
      Report(LocOf(inst),
             absl::StrCat("'", dest->label(), " expects ", dest->num_params(),
                          " argument(s), got ", args.size()));
      return;
    }
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i] != nullptr && !(args[i]->type() == dest->param(i)->type())) {
        Report(LocOf(inst),
               absl::StrCat("argument ", i, " to '", dest->label(), " has type ",
                            args[i]->type().ToString(), ", expected ",
                            dest->param(i)->type().ToString()));
      }
    }
  }

  void VerifyInstruction(const Function& function,
                         const absl::flat_hash_set<const BasicBlock*>& blocks,
                         const DominatorTree& dominators,
                         const Instruction& inst) {
    bool operands_ok = true;
    for (const Value* operand : inst.operands()) {
      if (!OperandOk(function, inst, operand)) {
        operands_ok = false;
        continue;
      }
      if (!dominators.DominatesUse(*operand, inst)) {
        Report(LocOf(inst),
               absl::StrCat("use before dominance: the definition of ",
                            ValueLabel(*operand), " does not dominate this use"));
      }
    }
    if (!operands_ok) return;

    const Opcode opcode = inst.opcode();
    if (std::optional<int> arity = FixedArity(opcode);
        arity.has_value() &&
        static_cast<int>(inst.num_operands()) != *arity) {
      Report(LocOf(inst), absl::StrCat(OpcodeName(opcode), " expects ", *arity,
                                       " operand(s), got ",
                                       inst.num_operands()));
      return;
    }
    if (opcode == Opcode::kApply) {
      const Function* callee = inst.callee();
      if (callee == nullptr || module_.FindFunction(callee->name()) != callee) {
        Report(LocOf(inst), "apply callee is not a function of this module");
        return;
      }
    }
    if (opcode == Opcode::kBranch || opcode == Opcode::kConditional) {
      const size_t expected_targets = opcode == Opcode::kBranch ? 1 : 2;
      if (inst.attributes().targets.size() != expected_targets) {
        Report(LocOf(inst), "wrong number of branch targets");
        return;
      }
      if (opcode == Opcode::kConditional &&
          inst.attributes().then_arg_count + 1 > inst.num_operands()) {
        Report(LocOf(inst), "conditional argument lists are malformed");
        return;
      }
      for (size_t t = 0; t < expected_targets; ++t) {
        VerifyTarget(inst, blocks, t);
      }
    }

    absl::StatusOr<Type> inferred = InferType(inst);
    if (!inferred.ok()) {
      Report(LocOf(inst), std::string(inferred.status().message()));
      return;
    }
    if (!(*inferred == inst.type())) {
      Report(LocOf(inst),
             absl::StrCat(OpcodeName(opcode), " result type ",
                          inst.type().ToString(), " does not match inferred ",
                          inferred->ToString()));
    }
    if (opcode == Opcode::kReturn) {
      std::vector<Type> types;
      for (const Value* v : inst.operands()) types.push_back(v->type());
      Type returned = Type::Tuple(std::move(types));
      if (!(returned == function.result_type())) {
        Report(LocOf(inst),
               absl::StrCat("return type ", returned.ToString(),
                            " does not match the result type ",
                            function.result_type().ToString(), " of @",
                            function.name()));
      }
    }
  }

  const Module& module_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace

std::vector<Diagnostic> VerifyModule(const Module& module) {
  return Verifier(module).Run();
}

absl::Status VerifyModuleStatus(const Module& module) {
  std::vector<Diagnostic> diagnostics = VerifyModule(module);
  if (diagnostics.empty()) return absl::OkStatus();
  return absl::InvalidArgumentError(absl::StrCat(
      "verification failed:\n", RenderDiagnostics(diagnostics, module.name())));
}

}  // namespace dlc
