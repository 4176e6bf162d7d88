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

#include "dlc/ir/cfg.h"

#include <algorithm>
#include <utility>

#include "absl/container/flat_hash_set.h"

namespace dlc {
namespace {

const std::vector<BasicBlock*>& Empty() {
  static const std::vector<BasicBlock*> empty;
  return empty;
}

}  // namespace

ControlFlowGraph::ControlFlowGraph(const Function& function) {
  for (const auto& block : function.blocks()) {
    succs_[block.get()];
    preds_[block.get()];
  }
  for (const auto& block : function.blocks()) {
    Instruction* term = block->terminator();
    if (term == nullptr) continue;
    for (BasicBlock* dest : term->attributes().targets) {
      succs_[block.get()].push_back(dest);
      preds_[dest].push_back(block.get());
    }
  }
  if (function.entry() == nullptr) return;

  // Iterative DFS post-order from the entry.
  std::vector<BasicBlock*> post_order;
  absl::flat_hash_set<const BasicBlock*> visited;
  std::vector<std::pair<BasicBlock*, size_t>> stack;
  stack.emplace_back(function.entry(), 0);
  visited.insert(function.entry());
  while (!stack.empty()) {
    auto& [block, next] = stack.back();
    const auto& succs = succs_[block];
    if (next < succs.size()) {
      BasicBlock* succ = succs[next++];
      if (visited.insert(succ).second) stack.emplace_back(succ, 0);
    } else {
      post_order.push_back(block);
      stack.pop_back();
    }
  }
  rpo_.assign(post_order.rbegin(), post_order.rend());
  for (size_t i = 0; i < rpo_.size(); ++i) rpo_index_[rpo_[i]] = i;
}

const std::vector<BasicBlock*>& ControlFlowGraph::successors(
    const BasicBlock* block) const {
  auto it = succs_.find(block);
  return it == succs_.end() ? Empty() : it->second;
}

const std::vector<BasicBlock*>& ControlFlowGraph::predecessors(
    const BasicBlock* block) const {
  auto it = preds_.find(block);
  return it == preds_.end() ? Empty() : it->second;
}

size_t ControlFlowGraph::num_edges() const {
  size_t n = 0;
  for (const auto& [block, succs] : succs_) n += succs.size();
  return n;
}

}  // namespace dlc
