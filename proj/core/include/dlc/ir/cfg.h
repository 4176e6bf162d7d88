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

#ifndef DLC_IR_CFG_H_
#define DLC_IR_CFG_H_

#include <vector>

#include "absl/container/flat_hash_map.h"
#include "dlc/ir/ir.h"

namespace dlc {

// Control-flow edges derived from block terminators. Edge lists keep
// terminator order and multiplicity (a conditional with both arms on the same
// block contributes two edges).
class ControlFlowGraph {
 public:
  explicit ControlFlowGraph(const Function& function);

  const std::vector<BasicBlock*>& successors(const BasicBlock* block) const;
  const std::vector<BasicBlock*>& predecessors(const BasicBlock* block) const;

  // Blocks reachable from the entry, in reverse post-order.
  const std::vector<BasicBlock*>& reverse_post_order() const { return rpo_; }
  bool IsReachable(const BasicBlock* block) const {
    return rpo_index_.contains(block);
  }
  size_t RpoIndex(const BasicBlock* block) const {
    return rpo_index_.at(block);
  }

  size_t num_edges() const;

 private:
  absl::flat_hash_map<const BasicBlock*, std::vector<BasicBlock*>> succs_;
  absl::flat_hash_map<const BasicBlock*, std::vector<BasicBlock*>> preds_;
  std::vector<BasicBlock*> rpo_;
  absl::flat_hash_map<const BasicBlock*, size_t> rpo_index_;
};

// (instruction, operand index) pairs referencing `value`.
inline const std::vector<Use>& Users(const Value& value) {
  return value.uses();
}

}  // namespace dlc

#endif  // DLC_IR_CFG_H_
