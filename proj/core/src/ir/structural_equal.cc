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

#include "dlc/ir/structural_equal.h"

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_cat.h"

namespace dlc {
namespace {

class FunctionComparer {
 public:
  FunctionComparer(const Function& a, const Function& b, std::string* why)
      : a_(a), b_(b), why_(why) {}

  bool Run() {
    if (a_.blocks().size() != b_.blocks().size()) {
      return Fail("block count differs");
    }
    // Pair up definitions first so forward references resolve.
    for (size_t i = 0; i < a_.blocks().size(); ++i) {
      const BasicBlock& ba = *a_.blocks()[i];
      const BasicBlock& bb = *b_.blocks()[i];
      blocks_[&ba] = &bb;
      if (ba.label() != bb.label()) {
        return Fail(absl::StrCat("label '", ba.label(), " vs '", bb.label()));
      }
      if (ba.num_params() != bb.num_params() || ba.size() != bb.size()) {
        return Fail(absl::StrCat("shape of block '", ba.label(), " differs"));
      }
      for (size_t p = 0; p < ba.num_params(); ++p) {
        if (!(ba.param(p)->type() == bb.param(p)->type())) {
          return Fail(absl::StrCat("parameter ", p, " of '", ba.label(),
                                   " differs in type"));
        }
        values_[ba.param(p)] = bb.param(p);
      }
      for (size_t k = 0; k < ba.size(); ++k) {
        values_[ba.instruction(k)] = bb.instruction(k);
      }
    }
    for (size_t i = 0; i < a_.blocks().size(); ++i) {
      const BasicBlock& ba = *a_.blocks()[i];
      const BasicBlock& bb = *b_.blocks()[i];
      for (size_t k = 0; k < ba.size(); ++k) {
        if (!SameInstruction(*ba.instruction(k), *bb.instruction(k))) {
          return false;
        }
      }
    }
    return true;
  }

 private:
  bool Fail(std::string message) {
    if (why_ != nullptr) *why_ = absl::StrCat("@", a_.name(), ": ", message);
    return false;
  }

  bool SameValue(const Value* x, const Value* y) {
    if (x->value_kind() != y->value_kind()) return false;
    switch (x->value_kind()) {
      case Value::Kind::kLiteral: {
        auto* lx = static_cast<const Literal*>(x);
        auto* ly = static_cast<const Literal*>(y);
        return lx->type() == ly->type() &&
               lx->value().IdenticalTo(ly->value());
      }
      case Value::Kind::kGlobal:
        return x->name() == y->name();
      default: {
        auto it = values_.find(x);
        return it != values_.end() && it->second == y;
      }
    }
  }

  bool SameInstruction(const Instruction& x, const Instruction& y) {
    std::string where = absl::StrCat(OpcodeName(x.opcode()), " in '",
                                     x.parent()->label());
    if (x.opcode() != y.opcode()) {
      return Fail(absl::StrCat(where, " vs ", OpcodeName(y.opcode())));
    }
    if (!(x.type() == y.type())) return Fail(where + ": result type differs");
    if (x.num_operands() != y.num_operands()) {
      return Fail(where + ": operand count differs");
    }
    for (size_t i = 0; i < x.num_operands(); ++i) {
      if (!SameValue(x.operand(i), y.operand(i))) {
        return Fail(absl::StrCat(where, ": operand ", i, " differs"));
      }
    }
    InstructionAttributes ax = x.attributes();
    InstructionAttributes ay = y.attributes();
    if ((ax.callee == nullptr) != (ay.callee == nullptr) ||
        (ax.callee != nullptr && ax.callee->name() != ay.callee->name())) {
      return Fail(where + ": callee differs");
    }
    if (ax.targets.size() != ay.targets.size()) {
      return Fail(where + ": targets differ");
    }
    for (size_t t = 0; t < ax.targets.size(); ++t) {
      if (blocks_[ax.targets[t]] != ay.targets[t]) {
        return Fail(where + ": targets differ");
      }
    }
    ax.callee = ay.callee = nullptr;
    ax.targets.clear();
    ay.targets.clear();
    if (!(ax == ay)) return Fail(where + ": attributes differ");
    return true;
  }

  const Function& a_;
  const Function& b_;
  std::string* why_;
  absl::flat_hash_map<const Value*, const Value*> values_;
  absl::flat_hash_map<const BasicBlock*, const BasicBlock*> blocks_;
};

}  // namespace

bool StructurallyEqual(const Module& a, const Module& b, std::string* why) {
  auto fail = [&](std::string message) {
    if (why != nullptr) *why = std::move(message);
    return false;
  };
  if (a.name() != b.name()) return fail("module name differs");
  if (a.stage() != b.stage()) return fail("stage differs");
  if (a.globals().size() != b.globals().size()) {
    return fail("global count differs");
  }
  for (size_t i = 0; i < a.globals().size(); ++i) {
    const Global& ga = *a.globals()[i];
    const Global& gb = *b.globals()[i];
    if (ga.name() != gb.name() || !ga.value().IdenticalTo(gb.value())) {
      return fail(absl::StrCat("global @", ga.name(), " differs"));
    }
  }
  if (a.functions().size() != b.functions().size()) {
    return fail("function count differs");
  }
  for (size_t i = 0; i < a.functions().size(); ++i) {
    const Function& fa = *a.functions()[i];
    const Function& fb = *b.functions()[i];
    if (fa.name() != fb.name()) {
      return fail(absl::StrCat("@", fa.name(), " vs @", fb.name()));
    }
    if (!(fa.type() == fb.type())) {
      return fail(absl::StrCat("@", fa.name(), ": type differs"));
    }
    if (fa.gradient_config() != fb.gradient_config()) {
      return fail(absl::StrCat("@", fa.name(), ": gradient config differs"));
    }
    if (!FunctionComparer(fa, fb, why).Run()) return false;
  }
  return true;
}

}  // namespace dlc
