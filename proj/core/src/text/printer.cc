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

#include "dlc/text/printer.h"

#include <cctype>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dlc {
namespace {

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::string Sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (!IsNameChar(c)) c = '_';
  }
  return out;
}

// Assigns printable, unique names to every block argument and
// value-producing instruction of one function.
class NameTable {
 public:
  explicit NameTable(const Function& function) {
    std::vector<const Value*> values;
    for (const auto& block : function.blocks()) {
      for (const auto& param : block->params()) values.push_back(param.get());
      for (const auto& inst : block->instructions()) {
        if (!inst->is_terminator()) values.push_back(inst.get());
      }
    }
    // Explicit names claim their spelling first, in program order.
    for (const Value* v : values) {
      std::string name = Sanitize(v->name());
      if (!name.empty() && taken_.insert(name).second) names_[v] = name;
    }
    int counter = 0;
    for (const Value* v : values) {
      if (names_.contains(v)) continue;
      std::string name;
      do {
        name = absl::StrCat(counter++);
      } while (taken_.contains(name));
      taken_.insert(name);
      names_[v] = name;
    }
  }

  const std::string& operator[](const Value* v) const { return names_.at(v); }

 private:
  absl::flat_hash_map<const Value*, std::string> names_;
  absl::flat_hash_set<std::string> taken_;
};

std::string Operand(const NameTable& names, const Value* v) {
  switch (v->value_kind()) {
    case Value::Kind::kLiteral: {
      auto* literal = static_cast<const Literal*>(v);
      return absl::StrCat(literal->value().ToString(), ": ",
                          v->type().ToString());
    }
    case Value::Kind::kGlobal:
      return absl::StrCat("@", v->name(), ": ", v->type().ToString());
    default:
      return absl::StrCat("%", names[v], ": ", v->type().ToString());
  }
}

std::string OperandList(const NameTable& names,
                        std::span<Value* const> operands) {
  return absl::StrJoin(operands, ", ", [&](std::string* out, const Value* v) {
    out->append(Operand(names, v));
  });
}

std::string Target(const NameTable& names, const BasicBlock* block,
                   std::span<Value* const> args) {
  return absl::StrCat("'", block->label(), "(", OperandList(names, args), ")");
}

void PrintInstruction(const NameTable& names, const Instruction& inst,
                      std::string* out) {
  out->append("    ");
  if (!inst.is_terminator()) {
    absl::StrAppend(out, "%", names[&inst], " = ");
  }
  absl::StrAppend(out, OpcodeName(inst.opcode()));
  const InstructionAttributes& attrs = inst.attributes();
  switch (inst.opcode()) {
    case Opcode::kApply:
      absl::StrAppend(out, " @", attrs.callee->name(), "(",
                      OperandList(names, inst.operands()),
                      "): ", attrs.callee->type().ToString());
      break;
    case Opcode::kBranch:
      absl::StrAppend(out, " ",
                      Target(names, attrs.targets[0], inst.TargetArgs(0)));
      break;
    case Opcode::kConditional:
      absl::StrAppend(out, " ", Operand(names, inst.operand(0)), " then ",
                      Target(names, attrs.targets[0], inst.TargetArgs(0)),
                      " else ",
                      Target(names, attrs.targets[1], inst.TargetArgs(1)));
      break;
    default:
      if (inst.num_operands() > 0) {
        absl::StrAppend(out, " ", OperandList(names, inst.operands()));
      }
      break;
  }
  switch (inst.opcode()) {
    case Opcode::kReduce:
      absl::StrAppend(out, " by ", ReduceOpName(attrs.reduce_op), " along ",
                      attrs.axis);
      break;
    case Opcode::kConcatenate:
      absl::StrAppend(out, " along ", attrs.axis);
      break;
    case Opcode::kSlice:
      absl::StrAppend(out, " from ", attrs.from, " upto ", attrs.upto);
      break;
    case Opcode::kShapeCast:
      absl::StrAppend(out, " to ",
                      attrs.target_shape.empty()
                          ? "scalar"
                          : ShapeToString(attrs.target_shape));
      break;
    case Opcode::kDataTypeCast:
      absl::StrAppend(out, " to ", DataTypeName(attrs.target_dtype));
      break;
    case Opcode::kExtract:
      absl::StrAppend(out, " at ", attrs.index);
      break;
    default:
      break;
  }
  out->append("\n");
}

void PrintGradientAttribute(const GradientConfig& config, std::string* out) {
  absl::StrAppend(out, "[gradient @", config.source);
  if (config.wrt.has_value()) {
    absl::StrAppend(out, " wrt ", absl::StrJoin(*config.wrt, ", "));
  }
  if (!config.keeping.empty()) {
    absl::StrAppend(out, " keeping ", absl::StrJoin(config.keeping, ", "));
  }
  if (config.from.has_value()) absl::StrAppend(out, " from ", *config.from);
  if (config.seedable) out->append(" seedable");
  out->append("]\n");
}

void PrintFunctionTo(const Function& function, std::string* out) {
  if (function.gradient_config().has_value()) {
    PrintGradientAttribute(*function.gradient_config(), out);
  }
  absl::StrAppend(out, "func @", function.name(), ": ",
                  function.type().ToString());
  if (function.is_declaration()) {
    out->append("\n");
    return;
  }
  out->append(" {\n");
  NameTable names(function);
  for (const auto& block : function.blocks()) {
    absl::StrAppend(out, "'", block->label(), "(");
    for (size_t i = 0; i < block->num_params(); ++i) {
      if (i > 0) out->append(", ");
      absl::StrAppend(out, "%", names[block->param(i)], ": ",
                      block->param(i)->type().ToString());
    }
    out->append("):\n");
    for (const auto& inst : block->instructions()) {
      PrintInstruction(names, *inst, out);
    }
  }
  out->append("}\n");
}

}  // namespace

std::string PrintFunction(const Function& function) {
  std::string out;
  PrintFunctionTo(function, &out);
  return out;
}

std::string PrintModule(const Module& module) {
  std::string out = absl::StrCat("module \"", module.name(), "\"\nstage ",
                                 StageName(module.stage()), "\n");
  for (const auto& global : module.globals()) {
    absl::StrAppend(&out, "\nglobal @", global->name(), " = ",
                    global->value().ToString(), "\n");
  }
  for (const auto& function : module.functions()) {
    out.append("\n");
    PrintFunctionTo(*function, &out);
  }
  return out;
}

}  // namespace dlc
