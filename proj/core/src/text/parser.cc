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

#include "dlc/text/parser.h"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "dlc/analysis/type_inference.h"
#include "text/lexer.h"

namespace dlc {
namespace {

using text_internal::Token;
using text_internal::TokenKind;
using text_internal::TokenKindName;

// An operand as written, resolved once every definition in scope is known.
struct PendingOperand {
  enum class Kind { kLocal, kGlobal, kLiteral } kind;
  std::string name;
  Type annotated;
  Token token;
  Value* literal = nullptr;
};

struct PendingInstruction {
  Instruction* inst;
  std::vector<PendingOperand> operands;
  std::vector<Token> target_labels;
  std::optional<Token> callee;
  Type callee_type;
};

struct PendingFunction {
  Function* function;
  std::vector<PendingInstruction> globals_and_callees;
};

class Parser {
 public:
  explicit Parser(absl::string_view text) : tokens_(text_internal::Tokenize(text)) {}

  ParseResult ParseModuleText() {
    ParseResult result;
    if (!ParseModuleBody()) {
      result.diagnostics.push_back(*diagnostic_);
      return result;
    }
    result.module = std::move(module_);
    return result;
  }

  absl::StatusOr<TensorValue> ParseTensorLiteralText() {
    std::optional<TensorValue> value = ParseTensorLiteralTokens();
    if (value.has_value() && !At(TokenKind::kEof)) {
      Error(Peek(), absl::StrCat("unexpected ", Describe(Peek()),
                                 " after tensor literal"));
      value.reset();
    }
    if (!value.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          diagnostic_->line, ":", diagnostic_->column, ": ",
          diagnostic_->message));
    }
    return *std::move(value);
  }

 private:
  // --- Token helpers -------------------------------------------------------

  const Token& Peek(size_t ahead = 0) const {
    size_t i = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  bool At(TokenKind kind) const { return Peek().kind == kind; }
  bool AtIdent(absl::string_view text) const {
    return At(TokenKind::kIdent) && Peek().text == text;
  }
  const Token& Take() {
    const Token& token = tokens_[index_];
    if (index_ + 1 < tokens_.size()) ++index_;
    return token;
  }

  static std::string Describe(const Token& token) {
    switch (token.kind) {
      case TokenKind::kEof:
        return "end of input";
      case TokenKind::kValueName:
        return absl::StrCat("'%", token.text, "'");
      case TokenKind::kGlobalName:
        return absl::StrCat("'@", token.text, "'");
      case TokenKind::kLabel:
        return absl::StrCat("''", token.text, "'");
      case TokenKind::kString:
        return absl::StrCat("\"", token.text, "\"");
      default:
        return absl::StrCat("'", token.text, "'");
    }
  }

  bool Error(const Token& token, std::string message) {
    if (!diagnostic_.has_value()) {
      if (token.kind == TokenKind::kError) message = token.text;
      diagnostic_ = Diagnostic{Severity::kError, token.line, token.column,
                               std::move(message), token.text};
    }
    return false;
  }

  bool Expect(TokenKind kind, absl::string_view what = "") {
    if (At(kind)) {
      Take();
      return true;
    }
    return Error(Peek(), absl::StrCat("expected ",
                                      what.empty() ? TokenKindName(kind) : what,
                                      ", found ", Describe(Peek())));
  }

  bool ExpectIdent(absl::string_view word) {
    if (AtIdent(word)) {
      Take();
      return true;
    }
    return Error(Peek(), absl::StrCat("expected '", word, "', found ",
                                      Describe(Peek())));
  }

  bool ParseInt(int64_t* out) {
    const Token& token = Peek();
    if (token.kind != TokenKind::kNumber ||
        !absl::SimpleAtoi(token.text, out)) {
      return Error(token, absl::StrCat("expected an integer, found ",
                                       Describe(token)));
    }
    Take();
    return true;
  }

  bool ParseIntList(std::vector<int>* out) {
    do {
      int64_t value;
      if (!ParseInt(&value)) return false;
      out->push_back(static_cast<int>(value));
    } while (At(TokenKind::kComma) && (Take(), true));
    return true;
  }

  // --- Types ---------------------------------------------------------------

  bool ParseDType(DataType* out) {
    const Token& token = Peek();
    std::optional<DataType> dtype;
    if (token.kind == TokenKind::kIdent) dtype = ParseDataType(token.text);
    if (!dtype.has_value()) {
      return Error(token, absl::StrCat("expected a data type, found ",
                                       Describe(token)));
    }
    Take();
    *out = *dtype;
    return true;
  }

  bool ParseTensorType(TensorType* out) {
    if (At(TokenKind::kIdent)) {
      out->shape.clear();
      return ParseDType(&out->dtype);
    }
    if (!Expect(TokenKind::kLess, "a tensor type")) return false;
    out->shape.clear();
    while (At(TokenKind::kNumber)) {
      const Token& dim_token = Peek();
      int64_t dim;
      if (!ParseInt(&dim)) return false;
      if (dim < 1) {
        return Error(dim_token, absl::StrCat("dimension must be >= 1, got ",
                                             dim));
      }
      out->shape.push_back(dim);
      if (!ExpectIdent("x")) return false;
    }
    if (!ParseDType(&out->dtype)) return false;
    return Expect(TokenKind::kGreater);
  }

  bool ParseType(Type* out) {
    if (!At(TokenKind::kLParen)) {
      TensorType tensor;
      if (!ParseTensorType(&tensor)) return false;
      *out = Type(std::move(tensor));
      return true;
    }
    Take();
    std::vector<Type> elements;
    if (!At(TokenKind::kRParen)) {
      do {
        Type element;
        if (!ParseType(&element)) return false;
        elements.push_back(std::move(element));
      } while (At(TokenKind::kComma) && (Take(), true));
    }
    if (!Expect(TokenKind::kRParen)) return false;
    if (At(TokenKind::kArrow)) {
      Take();
      Type result;
      if (!ParseType(&result)) return false;
      *out = Type::Function(std::move(elements), std::move(result));
      return true;
    }
    if (elements.size() == 1) {
      return Error(Peek(), "single-element tuple types are written as the "
                           "element type");
    }
    *out = Type::Tuple(std::move(elements));
    return true;
  }

  // --- Scalars and tensor literals ----------------------------------------

  static bool IsScalarStart(const Token& token) {
    if (token.kind == TokenKind::kNumber) return true;
    return token.kind == TokenKind::kIdent &&
           (token.text == "true" || token.text == "false" ||
            token.text == "inf" || token.text == "nan");
  }

  bool ConvertScalar(const Token& token, DataType dtype, ScalarValue* out) {
    const std::string& text = token.text;
    if (dtype == DataType::kBool) {
      if (text == "true" || text == "1") {
        *out = ScalarValue::Bool(true);
      } else if (text == "false" || text == "0") {
        *out = ScalarValue::Bool(false);
      } else {
        return Error(token, absl::StrCat("invalid bool literal '", text, "'"));
      }
      return true;
    }
    if (IsInteger(dtype)) {
      int64_t value;
      if (!absl::SimpleAtoi(text, &value)) {
        return Error(token, absl::StrCat("invalid ", DataTypeName(dtype),
                                         " literal '", text, "'"));
      }
      if (WrapToIntType(value, dtype) != value) {
        return Error(token, absl::StrCat("literal ", text, " overflows ",
                                         DataTypeName(dtype)));
      }
      *out = ScalarValue::Int(value, dtype);
      return true;
    }
    if (text == "true" || text == "false") {
      return Error(token, absl::StrCat("invalid ", DataTypeName(dtype),
                                       " literal '", text, "'"));
    }
    errno = 0;
    char* end = nullptr;
    double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
      return Error(token, absl::StrCat("invalid number '", text, "'"));
    }
    bool written_infinite = text.find("inf") != std::string::npos;
    double rounded = RoundToFloatType(value, dtype);
    if (!written_infinite &&
        ((errno == ERANGE && std::isinf(value)) || std::isinf(rounded))) {
      return Error(token, absl::StrCat("literal ", text, " overflows ",
                                       DataTypeName(dtype)));
    }
    *out = ScalarValue::Float(value, dtype);
    return true;
  }

  std::optional<TensorValue> ParseTensorLiteralTokens() {
    TensorType type;
    const Token& type_token = Peek();
    // Splat: `1.0: <2 x 3 x f32>`.
    if (IsScalarStart(type_token) && Peek(1).kind == TokenKind::kColon) {
      Take();
      Take();
      if (!ParseTensorType(&type)) return std::nullopt;
      ScalarValue scalar;
      if (!ConvertScalar(type_token, type.dtype, &scalar)) return std::nullopt;
      return TensorValue::Splat(type, scalar);
    }
    if (At(TokenKind::kIdent)) {
      Error(type_token, "tensor literal type must be written in angle "
                        "brackets, e.g. <f32>");
      return std::nullopt;
    }
    if (!ParseTensorType(&type)) return std::nullopt;
    if (!Expect(TokenKind::kLBracket)) return std::nullopt;
    std::vector<ScalarValue> elements;
    if (!At(TokenKind::kRBracket)) {
      do {
        const Token& token = Peek();
        if (!IsScalarStart(token)) {
          Error(token, absl::StrCat("expected a number, found ",
                                    Describe(token)));
          return std::nullopt;
        }
        ScalarValue scalar;
        if (!ConvertScalar(token, type.dtype, &scalar)) return std::nullopt;
        Take();
        elements.push_back(scalar);
      } while (At(TokenKind::kComma) && (Take(), true));
    }
    const Token& close = Peek();
    if (!Expect(TokenKind::kRBracket)) return std::nullopt;
    if (static_cast<int64_t>(elements.size()) != type.element_count()) {
      Error(close, absl::StrCat("tensor literal has ", elements.size(),
                                " element", elements.size() == 1 ? "" : "s",
                                " but ", type.ToString(), " needs ",
                                type.element_count()));
      return std::nullopt;
    }
    TensorValue value(type);
    for (size_t i = 0; i < elements.size(); ++i) value.Set(i, elements[i]);
    return value;
  }

  // --- Module --------------------------------------------------------------

  bool ParseModuleBody() {
    if (!ExpectIdent("module")) return false;
    if (!At(TokenKind::kString)) {
      return Error(Peek(), absl::StrCat("expected module name string, found ",
                                        Describe(Peek())));
    }
    std::string name = Take().text;
    if (!ExpectIdent("stage")) return false;
    const Token& stage_token = Peek();
    Stage stage;
    if (AtIdent("raw")) {
      stage = Stage::kRaw;
    } else if (AtIdent("optimizable")) {
      stage = Stage::kOptimizable;
    } else {
      return Error(stage_token, absl::StrCat("unknown stage ",
                                             Describe(stage_token)));
    }
    Take();
    module_ = std::make_unique<Module>(std::move(name), stage);

    while (!At(TokenKind::kEof)) {
      if (AtIdent("global")) {
        if (!ParseGlobal()) return false;
      } else if (At(TokenKind::kLBracket) || AtIdent("func")) {
        if (!ParseFunction()) return false;
      } else {
        return Error(Peek(), absl::StrCat("expected 'func' or 'global', found ",
                                          Describe(Peek())));
      }
    }
    for (PendingFunction& pending : pending_functions_) {
      if (!ResolveModuleReferences(pending)) return false;
    }
    return true;
  }

  bool ParseGlobal() {
    Take();
    const Token& name = Peek();
    if (!Expect(TokenKind::kGlobalName, "a global name")) return false;
    if (!Expect(TokenKind::kEqual)) return false;
    std::optional<TensorValue> value = ParseTensorLiteralTokens();
    if (!value.has_value()) return false;
    if (!module_->AddGlobal(name.text, *std::move(value)).ok()) {
      return Error(name, absl::StrCat("redefinition of @", name.text));
    }
    return true;
  }

  bool ParseGradientAttribute(GradientConfig* config) {
    Take();  // [
    if (!ExpectIdent("gradient")) return false;
    const Token& source = Peek();
    if (!Expect(TokenKind::kGlobalName, "a source function name")) return false;
    config->source = source.text;
    if (AtIdent("wrt")) {
      Take();
      config->wrt.emplace();
      if (!ParseIntList(&*config->wrt)) return false;
    }
    if (AtIdent("keeping")) {
      Take();
      if (!ParseIntList(&config->keeping)) return false;
    }
    if (AtIdent("from")) {
      Take();
      int64_t from;
      if (!ParseInt(&from)) return false;
      config->from = static_cast<int>(from);
    }
    if (AtIdent("seedable")) {
      Take();
      config->seedable = true;
    }
    return Expect(TokenKind::kRBracket, "']' closing the gradient attribute");
  }

  bool ParseFunction() {
    std::optional<GradientConfig> config;
    if (At(TokenKind::kLBracket)) {
      config.emplace();
      if (!ParseGradientAttribute(&*config)) return false;
    }
    const Token& func_token = Peek();
    if (!ExpectIdent("func")) return false;
    const Token& name = Peek();
    if (!Expect(TokenKind::kGlobalName, "a function name")) return false;
    if (!Expect(TokenKind::kColon)) return false;
    const Token& type_token = Peek();
    Type type;
    if (!ParseType(&type)) return false;
    if (!type.is_function()) {
      return Error(type_token, absl::StrCat("expected a function type, found ",
                                            type.ToString()));
    }
    auto function = module_->AddFunction(name.text, type);
    if (!function.ok()) {
      return Error(name, absl::StrCat("redefinition of @", name.text));
    }
    Function* fn = *function;
    fn->loc = {func_token.line, func_token.column};
    fn->set_gradient_config(std::move(config));
    if (!At(TokenKind::kLBrace)) return true;
    return ParseBody(fn);
  }

  // --- Function bodies -----------------------------------------------------

  bool DefineLocal(const Token& token, Value* value) {
    if (!locals_.emplace(token.text, value).second) {
      return Error(token, absl::StrCat("redefinition of %", token.text));
    }
    return true;
  }

  bool ParseBody(Function* fn) {
    Take();  // {
    locals_.clear();
    std::vector<PendingInstruction> pending;
    if (!At(TokenKind::kLabel)) {
      return Error(Peek(), absl::StrCat("expected a block label, found ",
                                        Describe(Peek())));
    }
    while (At(TokenKind::kLabel)) {
      if (!ParseBlock(fn, &pending)) return false;
    }
    if (!Expect(TokenKind::kRBrace, "a block label or '}'")) return false;

    PendingFunction deferred{fn, {}};
    for (PendingInstruction& p : pending) {
      if (!ResolveLocal(fn, p)) return false;
      bool has_module_refs = p.callee.has_value();
      for (const PendingOperand& op : p.operands) {
        has_module_refs |= op.kind == PendingOperand::Kind::kGlobal;
      }
      if (has_module_refs) deferred.globals_and_callees.push_back(std::move(p));
    }
    pending_functions_.push_back(std::move(deferred));
    return true;
  }

  bool ParseBlock(Function* fn, std::vector<PendingInstruction>* pending) {
    const Token& label = Take();
    auto block_or = fn->AddBlock(label.text);
    if (!block_or.ok()) {
      return Error(label, absl::StrCat("redefinition of block '", label.text));
    }
    BasicBlock* block = *block_or;
    block->loc = {label.line, label.column};
    if (!Expect(TokenKind::kLParen)) return false;
    if (!At(TokenKind::kRParen)) {
      do {
        const Token& name = Peek();
        if (!Expect(TokenKind::kValueName, "a parameter name")) return false;
        if (!Expect(TokenKind::kColon)) return false;
        Type type;
        if (!ParseType(&type)) return false;
        BlockArgument* arg = block->AddParam(std::move(type), name.text);
        if (!DefineLocal(name, arg)) return false;
      } while (At(TokenKind::kComma) && (Take(), true));
    }
    if (!Expect(TokenKind::kRParen)) return false;
    if (!Expect(TokenKind::kColon)) return false;

    while (!At(TokenKind::kLabel) && !At(TokenKind::kRBrace)) {
      if (At(TokenKind::kEof)) {
        return Error(Peek(), "unexpected end of input inside function body");
      }
      if (block->terminator() != nullptr) {
        return Error(Peek(), absl::StrCat("instruction after the terminator of "
                                          "block '",
                                          block->label()));
      }
      if (!ParseInstruction(fn, block, pending)) return false;
    }
    if (block->empty()) {
      return Error(label, absl::StrCat("block '", label.text,
                                       " has no instructions"));
    }
    if (block->terminator() == nullptr) {
      const Instruction* last = block->instructions().back().get();
      Token where{TokenKind::kIdent, std::string(OpcodeName(last->opcode())),
                  last->loc.line, last->loc.column};
      return Error(where, absl::StrCat("block '", label.text,
                                       " does not end with a terminator"));
    }
    return true;
  }

  bool ParseOperand(Function* fn, PendingOperand* out) {
    const Token& token = Peek();
    out->token = token;
    if (token.kind == TokenKind::kValueName) {
      out->kind = PendingOperand::Kind::kLocal;
      out->name = token.text;
      Take();
    } else if (token.kind == TokenKind::kGlobalName) {
      out->kind = PendingOperand::Kind::kGlobal;
      out->name = token.text;
      Take();
    } else if (IsScalarStart(token)) {
      out->kind = PendingOperand::Kind::kLiteral;
      Take();
    } else {
      return Error(token, absl::StrCat("expected an operand, found ",
                                       Describe(token)));
    }
    if (!Expect(TokenKind::kColon, "':' and a type annotation")) return false;
    const Token& type_token = Peek();
    if (!ParseType(&out->annotated)) return false;
    if (out->kind == PendingOperand::Kind::kLiteral) {
      if (!out->annotated.is_tensor()) {
        return Error(type_token, "literal operands must have a tensor type");
      }
      ScalarValue scalar;
      if (!ConvertScalar(token, out->annotated.tensor().dtype, &scalar)) {
        return false;
      }
      out->literal = fn->MakeLiteral(scalar, out->annotated.tensor());
    }
    return true;
  }

  static bool StartsOperand(const Token& token) {
    return token.kind == TokenKind::kValueName ||
           token.kind == TokenKind::kGlobalName || IsScalarStart(token);
  }

  bool ParseOperandList(Function* fn, std::vector<PendingOperand>* out) {
    do {
      PendingOperand operand;
      if (!ParseOperand(fn, &operand)) return false;
      out->push_back(std::move(operand));
    } while (At(TokenKind::kComma) && (Take(), true));
    return true;
  }

  // `'label(operands)` of a branch target.
  bool ParseTarget(Function* fn, PendingInstruction* p, size_t* arg_count) {
    const Token& label = Peek();
    if (!Expect(TokenKind::kLabel, "a block label")) return false;
    p->target_labels.push_back(label);
    if (!Expect(TokenKind::kLParen)) return false;
    size_t before = p->operands.size();
    if (!At(TokenKind::kRParen) && !ParseOperandList(fn, &p->operands)) {
      return false;
    }
    *arg_count = p->operands.size() - before;
    return Expect(TokenKind::kRParen);
  }

  bool ParseInstruction(Function* fn, BasicBlock* block,
                        std::vector<PendingInstruction>* pending) {
    std::optional<Token> name;
    if (At(TokenKind::kValueName)) {
      name = Take();
      if (!Expect(TokenKind::kEqual)) return false;
    }
    const Token& op_token = Peek();
    if (!At(TokenKind::kIdent)) {
      return Error(op_token, absl::StrCat("expected an instruction, found ",
                                          Describe(op_token)));
    }
    std::optional<Opcode> opcode = ParseOpcode(op_token.text);
    if (!opcode.has_value()) {
      return Error(op_token, absl::StrCat("unknown opcode '", op_token.text,
                                          "'"));
    }
    Take();
    if (name.has_value() && IsTerminator(*opcode)) {
      return Error(*name, absl::StrCat(OpcodeName(*opcode),
                                       " does not produce a value"));
    }

    PendingInstruction p;
    InstructionAttributes attrs;
    switch (*opcode) {
      case Opcode::kApply: {
        const Token& callee = Peek();
        if (!Expect(TokenKind::kGlobalName, "a callee name")) return false;
        p.callee = callee;
        if (!Expect(TokenKind::kLParen)) return false;
        if (!At(TokenKind::kRParen) && !ParseOperandList(fn, &p.operands)) {
          return false;
        }
        if (!Expect(TokenKind::kRParen)) return false;
        if (!Expect(TokenKind::kColon, "':' and the callee type")) return false;
        const Token& type_token = Peek();
        if (!ParseType(&p.callee_type)) return false;
        if (!p.callee_type.is_function()) {
          return Error(type_token, "callee annotation must be a function type");
        }
        break;
      }
      case Opcode::kBranch: {
        size_t count;
        if (!ParseTarget(fn, &p, &count)) return false;
        break;
      }
      case Opcode::kConditional: {
        if (!ParseOperandList(fn, &p.operands)) return false;
        if (p.operands.size() != 1) {
          return Error(op_token, "conditional takes exactly one condition");
        }
        if (!ExpectIdent("then")) return false;
        if (!ParseTarget(fn, &p, &attrs.then_arg_count)) return false;
        if (!ExpectIdent("else")) return false;
        size_t else_count;
        if (!ParseTarget(fn, &p, &else_count)) return false;
        break;
      }
      case Opcode::kReturn:
        if (StartsOperand(Peek()) && !ParseOperandList(fn, &p.operands)) {
          return false;
        }
        break;
      default:
        if (!ParseOperandList(fn, &p.operands)) return false;
        if (!ParseTrailingAttributes(*opcode, &attrs)) return false;
        break;
    }

    std::vector<Type> annotated;
    for (const PendingOperand& op : p.operands) annotated.push_back(op.annotated);
    Type result;
    if (*opcode == Opcode::kApply) {
      if (!(Type::Function(annotated, p.callee_type.result()) ==
            p.callee_type)) {
        return Error(op_token, absl::StrCat(
                                   "apply arguments (",
                                   Type::Function(annotated, Type::Unit())
                                       .ToString(),
                                   ") do not match callee type ",
                                   p.callee_type.ToString()));
      }
      result = p.callee_type.result();
    } else {
      auto inferred = InferType(*opcode, annotated, attrs);
      if (!inferred.ok()) {
        return Error(op_token, std::string(inferred.status().message()));
      }
      result = *std::move(inferred);
    }

    auto inst = std::make_unique<Instruction>(
        *opcode, std::move(result),
        std::vector<Value*>(p.operands.size(), nullptr), std::move(attrs),
        name.has_value() ? name->text : "");
    inst->loc = {op_token.line, op_token.column};
    auto appended = block->Append(std::move(inst));
    if (!appended.ok()) {
      return Error(op_token, std::string(appended.status().message()));
    }
    p.inst = *appended;
    if (name.has_value() && !DefineLocal(*name, p.inst)) return false;
    pending->push_back(std::move(p));
    return true;
  }

  bool ParseTrailingAttributes(Opcode opcode, InstructionAttributes* attrs) {
    switch (opcode) {
      case Opcode::kReduce: {
        if (!ExpectIdent("by")) return false;
        if (AtIdent("add")) {
          attrs->reduce_op = ReduceOp::kAdd;
        } else if (AtIdent("multiply")) {
          attrs->reduce_op = ReduceOp::kMultiply;
        } else {
          return Error(Peek(), absl::StrCat("expected 'add' or 'multiply', "
                                            "found ",
                                            Describe(Peek())));
        }
        Take();
        if (!ExpectIdent("along")) return false;
        return ParseInt(&attrs->axis);
      }
      case Opcode::kConcatenate:
        if (!ExpectIdent("along")) return false;
        return ParseInt(&attrs->axis);
      case Opcode::kSlice:
        if (!ExpectIdent("from")) return false;
        if (!ParseInt(&attrs->from)) return false;
        if (!ExpectIdent("upto")) return false;
        return ParseInt(&attrs->upto);
      case Opcode::kShapeCast: {
        if (!ExpectIdent("to")) return false;
        attrs->target_shape.clear();
        if (AtIdent("scalar")) {
          Take();
          return true;
        }
        do {
          int64_t dim;
          if (!ParseInt(&dim)) return false;
          attrs->target_shape.push_back(dim);
        } while (AtIdent("x") && (Take(), true));
        return true;
      }
      case Opcode::kDataTypeCast:
        if (!ExpectIdent("to")) return false;
        return ParseDType(&attrs->target_dtype);
      case Opcode::kExtract:
        if (!ExpectIdent("at")) return false;
        return ParseInt(&attrs->index);
      default:
        return true;
    }
  }

  // Binds local operands and branch targets once the body is complete.
  bool ResolveLocal(Function* fn, PendingInstruction& p) {
    for (size_t i = 0; i < p.operands.size(); ++i) {
      const PendingOperand& op = p.operands[i];
      Value* value = nullptr;
      switch (op.kind) {
        case PendingOperand::Kind::kLiteral:
          value = op.literal;
          break;
        case PendingOperand::Kind::kGlobal:
          continue;  // Module scope, resolved later.
        case PendingOperand::Kind::kLocal: {
          auto it = locals_.find(op.name);
          if (it == locals_.end()) {
            return Error(op.token, absl::StrCat("use of undefined value %",
                                                op.name));
          }
          value = it->second;
          break;
        }
      }
      if (!CheckAnnotation(op, value)) return false;
      p.inst->SetOperand(i, value);
    }
    for (const Token& label : p.target_labels) {
      BasicBlock* target = fn->FindBlock(label.text);
      if (target == nullptr) {
        return Error(label, absl::StrCat("use of undefined block '",
                                         label.text));
      }
      p.inst->mutable_attributes().targets.push_back(target);
    }
    return true;
  }

  bool ResolveModuleReferences(PendingFunction& pending) {
    for (PendingInstruction& p : pending.globals_and_callees) {
      for (size_t i = 0; i < p.operands.size(); ++i) {
        const PendingOperand& op = p.operands[i];
        if (op.kind != PendingOperand::Kind::kGlobal) continue;
        Global* global = module_->FindGlobal(op.name);
        if (global == nullptr) {
          return Error(op.token, absl::StrCat("use of undefined global @",
                                              op.name));
        }
        if (!CheckAnnotation(op, global)) return false;
        p.inst->SetOperand(i, global);
      }
      if (p.callee.has_value()) {
        Function* callee = module_->FindFunction(p.callee->text);
        if (callee == nullptr) {
          return Error(*p.callee, absl::StrCat("call to undefined function @",
                                               p.callee->text));
        }
        if (!(callee->type() == p.callee_type)) {
          return Error(*p.callee,
                       absl::StrCat("@", callee->name(), " has type ",
                                    callee->type().ToString(),
                                    ", annotated as ",
                                    p.callee_type.ToString()));
        }
        p.inst->mutable_attributes().callee = callee;
      }
    }
    return true;
  }

  bool CheckAnnotation(const PendingOperand& op, const Value* value) {
    if (value->type() == op.annotated) return true;
    std::string what = op.kind == PendingOperand::Kind::kGlobal
                           ? absl::StrCat("@", op.name)
                           : absl::StrCat("%", op.name);
    return Error(op.token, absl::StrCat(what, " is annotated as ",
                                        op.annotated.ToString(),
                                        " but has type ",
                                        value->type().ToString()));
  }

  std::vector<Token> tokens_;
  size_t index_ = 0;
  std::optional<Diagnostic> diagnostic_;
  std::unique_ptr<Module> module_;
  absl::flat_hash_map<std::string, Value*> locals_;
  std::vector<PendingFunction> pending_functions_;
};

}  // namespace

ParseResult ParseModule(absl::string_view text) {
  return Parser(text).ParseModuleText();
}

absl::StatusOr<TensorValue> ParseTensorLiteral(absl::string_view text) {
  return Parser(text).ParseTensorLiteralText();
}

}  // namespace dlc
