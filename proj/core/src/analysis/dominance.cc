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

#include "dlc/analysis/dominance.h"

namespace dlc {

DominatorTree::DominatorTree(const Function& function) : cfg_(function) {
  const std::vector<BasicBlock*>& rpo = cfg_.reverse_post_order();
  if (rpo.empty()) return;
  root_ = rpo.front();
  idom_[root_] = root_;

  auto intersect = [&](BasicBlock* a, BasicBlock* b) {
    while (a != b) {
      while (cfg_.RpoIndex(a) > cfg_.RpoIndex(b)) a = idom_.at(a);
      while (cfg_.RpoIndex(b) > cfg_.RpoIndex(a)) b = idom_.at(b);
    }
    return a;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 1; i < rpo.size(); ++i) {
      BasicBlock* block = rpo[i];
      BasicBlock* new_idom = nullptr;
      for (BasicBlock* pred : cfg_.predecessors(block)) {
        if (!idom_.contains(pred)) continue;
        new_idom = new_idom == nullptr ? pred : intersect(pred, new_idom);
      }
      auto it = idom_.find(block);
      if (it == idom_.end() || it->second != new_idom) {
        idom_[block] = new_idom;
        changed = true;
      }
    }
  }
  for (BasicBlock* block : rpo) {
    if (block != root_) children_[idom_.at(block)].push_back(block);
  }
}

BasicBlock* DominatorTree::idom(const BasicBlock* block) const {
  auto it = idom_.find(block);
  if (it == idom_.end() || block == root_) return nullptr;
  return it->second;
}

const std::vector<BasicBlock*>& DominatorTree::children(
    const BasicBlock* block) const {
  static const std::vector<BasicBlock*> kEmpty;
  auto it = children_.find(block);
  return it == children_.end() ? kEmpty : it->second;
}

bool DominatorTree::Dominates(const BasicBlock* a,
                              const BasicBlock* b) const {
  if (!IsReachable(a) || !IsReachable(b)) return false;
  // Walk up from b; RPO indices strictly decrease along idom links.
  const size_t a_index = cfg_.RpoIndex(a);
  while (true) {
    if (b == a) return true;
    if (b == root_ || cfg_.RpoIndex(b) < a_index) return false;
    b = idom_.at(b);
  }
}

bool DominatorTree::DominatesUse(const Value& value,
                                 const Instruction& user) const {
  const BasicBlock* use_block = user.parent();
  switch (value.value_kind()) {
    case Value::Kind::kLiteral:
    case Value::Kind::kGlobal:
      return true;
    case Value::Kind::kArgument: {
      const BasicBlock* def_block =
          static_cast<const BlockArgument&>(value).parent();
      if (def_block == use_block) return true;
      return !IsReachable(use_block) || Dominates(def_block, use_block);
    }
    case Value::Kind::kInstruction: {
      const auto& def = static_cast<const Instruction&>(value);
      const BasicBlock* def_block = def.parent();
      if (def_block == nullptr) return false;
      if (def_block == use_block) {
        return use_block->IndexOf(&def) < use_block->IndexOf(&user);
      }
      return !IsReachable(use_block) || Dominates(def_block, use_block);
    }
  }
  return false;
}

}  // namespace dlc
