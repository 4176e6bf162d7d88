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

#ifndef DLC_STAGED_LOWERING_H_
#define DLC_STAGED_LOWERING_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "dlc/ir/ir.h"
#include "dlc/staged/expr.h"

namespace dlc::staged {

// A staged function specialized to concrete argument shapes.
struct SpecializedFunction {
  std::shared_ptr<const FunctionNode> function;
  std::vector<Shape> shapes;
  Type type;  // Function type.
  // Lambdas: the type of every body node and the instance each apply calls.
  absl::flat_hash_map<const ExprNode*, Type> node_types;
  absl::flat_hash_map<const ExprNode*, size_t> callees;
  // Gradients: the instance being differentiated.
  std::optional<size_t> source;
};

// The shape-annotated graph reachable from one specialization. Instances
// are in dependency order; the root comes last.
struct SpecializedGraph {
  std::vector<SpecializedFunction> instances;
  const SpecializedFunction& root() const { return instances.back(); }
};

// Propagates shapes through the staged graph. Shape errors (mismatched
// broadcast, bad dot extents, out-of-range axes) are reported here.
absl::StatusOr<SpecializedGraph> Specialize(const Function& function,
                                            const std::vector<Shape>& shapes);

struct LoweredModule {
  std::unique_ptr<Module> module;  // Stage raw.
  std::string entry;
};

// Emits one IR function per instance. Gradients become gradient
// declarations, left for the differentiate pass.
absl::StatusOr<LoweredModule> Lower(const SpecializedGraph& graph);

absl::StatusOr<LoweredModule> SpecializeAndLower(
    const Function& function, const std::vector<Shape>& shapes);

}  // namespace dlc::staged

#endif  // DLC_STAGED_LOWERING_H_
