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

#include "dlc/analysis/effects.h"

namespace dlc {

EffectInfo::EffectInfo(const Module& module) {
  // Seed with the intrinsically opaque functions, then propagate impurity to
  // callers until nothing changes.
  for (const auto& function : module.functions()) {
    if (!function->is_declaration()) continue;
    const auto& config = function->gradient_config();
    const Function* source =
        config.has_value() ? module.FindFunction(config->source) : nullptr;
    if (source == nullptr) impure_.insert(function.get());
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& function : module.functions()) {
      if (impure_.contains(function.get())) continue;
      bool impure = false;
      if (function->is_declaration()) {
        impure = impure_.contains(
            module.FindFunction(function->gradient_config()->source));
      } else {
        for (const auto& block : function->blocks()) {
          for (const auto& inst : block->instructions()) {
            if (inst->opcode() == Opcode::kApply &&
                impure_.contains(inst->callee())) {
              impure = true;
            }
          }
        }
      }
      if (impure) {
        impure_.insert(function.get());
        changed = true;
      }
    }
  }
}

Effects EffectInfo::Of(const Instruction& inst) const {
  Effects effects;
  if (inst.is_terminator()) {
    effects.pure = false;
    effects.control = true;
  } else if (inst.opcode() == Opcode::kApply &&
             impure_.contains(inst.callee())) {
    effects.pure = false;
    effects.calls_opaque = true;
  }
  return effects;
}

}  // namespace dlc
