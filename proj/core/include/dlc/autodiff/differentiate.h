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

#ifndef DLC_AUTODIFF_DIFFERENTIATE_H_
#define DLC_AUTODIFF_DIFFERENTIATE_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dlc/ir/ir.h"

namespace dlc {

// Turns every gradient declaration of `module` into a definition by
// reverse-mode adjoint code generation and marks the module optimizable.
// The source body is copied first, then adjoint code for the selected
// output is appended in reverse instruction order. The seed is the extra
// parameter of a seedable gradient and an all-ones tensor otherwise, so the
// body computes a vector-Jacobian product. Gradients of gradients are
// handled by canonicalizing sources first. Applies on the differentiated
// path use an auto-declared seedable gradient of the callee, created once
// per callee and named after it.
//
// On error the module may be partially transformed.
absl::Status CanonicalizeGradients(Module& module);

// Declares `name` as the gradient of `source` under `config` (with
// config.source overwritten) and synthesizes its body.
absl::StatusOr<Function*> Differentiate(Module& module, const Function& source,
                                        GradientConfig config,
                                        std::string name);

}  // namespace dlc

#endif  // DLC_AUTODIFF_DIFFERENTIATE_H_
