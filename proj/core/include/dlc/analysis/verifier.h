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

#ifndef DLC_ANALYSIS_VERIFIER_H_
#define DLC_ANALYSIS_VERIFIER_H_

#include <vector>

#include "absl/status/status.h"
#include "dlc/ir/ir.h"
#include "dlc/support/diagnostic.h"

namespace dlc {

// Checks a module without mutating it:
//  - blocks are non-empty, end in their only terminator, labels are unique;
//  - the entry block's parameters match the function parameter types;
//  - operands belong to the enclosing function (or module, for globals) and
//    every use is dominated by its definition;
//  - each result type equals the type inferred from the operands;
//  - branch arguments match destination parameters, returns match the
//    function result, apply callees are module functions;
//  - gradient configs name an existing source that has a body or is itself
//    a gradient declaration, have in-range indices, form no cycle, and the
//    function type equals the expected gradient type;
//  - an optimizable-stage module has no gradient declarations left.
// Returns every violation found, located where the IR carries locations.
std::vector<Diagnostic> VerifyModule(const Module& module);

// OK, or InvalidArgument carrying the rendered diagnostics.
absl::Status VerifyModuleStatus(const Module& module);

}  // namespace dlc

#endif  // DLC_ANALYSIS_VERIFIER_H_
