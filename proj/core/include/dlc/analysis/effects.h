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

#ifndef DLC_ANALYSIS_EFFECTS_H_
#define DLC_ANALYSIS_EFFECTS_H_

#include "absl/container/flat_hash_set.h"
#include "dlc/ir/ir.h"

namespace dlc {

struct Effects {
  bool pure = true;           // No observable effect; removable when unused.
  bool control = false;       // Transfers control (terminators).
  bool calls_opaque = false;  // Reaches a callee whose body is unknown.
};

// Side-effect summary of a module. Tensor math is pure; terminators are
// control; an apply inherits the effects of its callee. A declaration
// without a body is opaque unless it is a gradient declaration, which
// inherits the effects of its source. Purity is computed as an optimistic
// fixpoint over the call graph, so recursive functions are pure when
// nothing they reach is opaque.
class EffectInfo {
 public:
  explicit EffectInfo(const Module& module);

  bool FunctionIsPure(const Function* function) const {
    return !impure_.contains(function);
  }
  Effects Of(const Instruction& inst) const;
  bool IsPure(const Instruction& inst) const { return Of(inst).pure; }

 private:
  absl::flat_hash_set<const Function*> impure_;
};

}  // namespace dlc

#endif  // DLC_ANALYSIS_EFFECTS_H_
