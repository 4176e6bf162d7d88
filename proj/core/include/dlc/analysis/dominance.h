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

#ifndef DLC_ANALYSIS_DOMINANCE_H_
#define DLC_ANALYSIS_DOMINANCE_H_

#include <vector>

#include "absl/container/flat_hash_map.h"
#include "dlc/ir/cfg.h"
#include "dlc/ir/ir.h"

namespace dlc {

// Immediate dominators of the blocks reachable from the entry, computed with
// the iterative intersection algorithm of Cooper, Harvey and Kennedy.
// Unreachable blocks are not part of the tree.
class DominatorTree {
 public:
  explicit DominatorTree(const Function& function);

  const ControlFlowGraph& cfg() const { return cfg_; }

  BasicBlock* root() const { return root_; }
  // Null for the root and for unreachable blocks.
  BasicBlock* idom(const BasicBlock* block) const;
  const std::vector<BasicBlock*>& children(const BasicBlock* block) const;
  bool IsReachable(const BasicBlock* block) const {
    return cfg_.IsReachable(block);
  }

  // Reflexive block dominance. False when either block is unreachable.
  bool Dominates(const BasicBlock* a, const BasicBlock* b) const;

  // Whether the definition of `value` is available at operand `use`:
  // literals and globals always are; a block argument when its block
  // dominates the user's block; an instruction when it precedes the user in
  // the same block or its block strictly dominates the user's block. Uses in
  // unreachable blocks only get the same-block ordering check.
  bool DominatesUse(const Value& value, const Instruction& user) const;

 private:
  ControlFlowGraph cfg_;
  BasicBlock* root_ = nullptr;
  absl::flat_hash_map<const BasicBlock*, BasicBlock*> idom_;
  absl::flat_hash_map<const BasicBlock*, std::vector<BasicBlock*>> children_;
};

}  // namespace dlc

#endif  // DLC_ANALYSIS_DOMINANCE_H_
