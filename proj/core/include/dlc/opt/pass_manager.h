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

#ifndef DLC_OPT_PASS_MANAGER_H_
#define DLC_OPT_PASS_MANAGER_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dlc/ir/ir.h"

namespace dlc {

enum class PassKind { kAnalysis, kTransform };

// Which modules a pass accepts.
enum class StageRequirement {
  kAny,
  kRaw,                     // Stage raw.
  kNoGradientDeclarations,  // Every gradient declaration has been canonicalized.
};

class Pass {
 public:
  virtual ~Pass() = default;
  virtual absl::string_view name() const = 0;
  virtual PassKind kind() const = 0;
  virtual StageRequirement requirement() const = 0;
  // Returns whether the module changed. Analyses never change it.
  virtual absl::StatusOr<bool> Run(Module& module) = 0;
};

// The built-in passes, in a stable order: differentiate, algebra-simplify,
// fusion, matmul-reorder, dce, cse, sccp, verify.
std::vector<std::string> RegisteredPassNames();

// Null for an unknown name.
std::unique_ptr<Pass> CreatePass(absl::string_view name);

struct PassOutcome {
  std::string name;
  bool changed = false;
};

struct PipelineOptions {
  // Run the verifier after every transform and fail if it reports anything.
  bool verify_each = true;
};

// Runs the named passes in order. Errors:
//   InvalidArgument     an unknown pass name (nothing is run)
//   FailedPrecondition  a pass's stage requirement is not met
//   Internal            a transform left the module invalid
// plus any error a pass reports (e.g. a differentiability rejection).
absl::StatusOr<std::vector<PassOutcome>> RunPipeline(
    Module& module, const std::vector<std::string>& pass_names,
    const PipelineOptions& options = {});

}  // namespace dlc

#endif  // DLC_OPT_PASS_MANAGER_H_
