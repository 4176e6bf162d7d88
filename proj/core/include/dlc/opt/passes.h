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

#ifndef DLC_OPT_PASSES_H_
#define DLC_OPT_PASSES_H_

#include "absl/status/statusor.h"
#include "dlc/analysis/effects.h"
#include "dlc/ir/ir.h"

namespace dlc {

// Function-level transforms. Each returns whether it changed the function
// and leaves it verifier-clean.

// Rewrites to a fixpoint, only when the replacement has exactly the type of
// the replaced value:
//   power(x, 2) -> multiply(x, x)    power(x, 1) -> x    power(x, 0) -> 1
//   multiply(x, 1) -> x    multiply(x, 0) -> 0    add(x, 0) -> x
//   subtract(x, 0) -> x    divide(x, 1) -> x      negate(negate x) -> x
//   transpose(transpose x) -> x      log(exp x) -> x
//   shapeCast/dataTypeCast to the operand's own type -> x
// where constants are splat literals. Rewritten instructions are erased.
absl::StatusOr<bool> AlgebraSimplify(Function& function);

// Replaces a sum tree of k dot(x_i, W_i) terms plus at most one bias b of
// shape [1, p] or [p] with a single
//   dot(concatenate(x_1..x_k, ones[m, 1]) along 1,
//       concatenate(W_1..W_k, b as [1, p]) along 0)
// when k >= 2 or a bias is present and every interior value has one use.
absl::StatusOr<bool> FuseLinearAlgebra(Function& function);

// Re-associates chains of float dot instructions whose interior results
// have a single use, when the optimal order needs strictly fewer scalar
// multiplications than the current one.
absl::StatusOr<bool> ReorderMatmulChains(Function& function);

// Removes pure instructions that do not contribute to a terminator or an
// effectful instruction, block parameters nobody reads (with the matching
// branch arguments), and unreachable blocks.
absl::StatusOr<bool> EliminateDeadCode(Function& function,
                                       const EffectInfo& effects);

// Dominator-scoped value numbering over pure instructions. Literals with
// identical type and bits number alike.
absl::StatusOr<bool> EliminateCommonSubexpressions(Function& function,
                                                   const EffectInfo& effects);

// Sparse conditional constant propagation. Pure kernels whose operands are
// all constant are folded with the interpreter's kernels when the result
// has at most kFoldLimit elements. Values proven constant and splat are
// replaced with literals, and conditionals on constants become branches.
// Unreachable blocks are left for dead code elimination.
inline constexpr int64_t kFoldLimit = 4096;
absl::StatusOr<bool> PropagateConstants(Function& function,
                                        const EffectInfo& effects);

}  // namespace dlc

#endif  // DLC_OPT_PASSES_H_
