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

#include "dlc/opt/pass_manager.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "dlc/analysis/effects.h"
#include "dlc/analysis/verifier.h"
#include "dlc/autodiff/differentiate.h"
#include "dlc/opt/passes.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

class DifferentiatePass final : public Pass {
 public:
  absl::string_view name() const override { return "differentiate"; }
  PassKind kind() const override { return PassKind::kTransform; }
  StageRequirement requirement() const override {
    return StageRequirement::kRaw;
  }
  absl::StatusOr<bool> Run(Module& module) override {
    DLC_RETURN_IF_ERROR(CanonicalizeGradients(module));
    return true;  // The stage always advances to optimizable.
  }
};

class VerifyPass final : public Pass {
 public:
  absl::string_view name() const override { return "verify"; }
  PassKind kind() const override { return PassKind::kAnalysis; }
  StageRequirement requirement() const override {
    return StageRequirement::kAny;
  }
  absl::StatusOr<bool> Run(Module& module) override {
    DLC_RETURN_IF_ERROR(VerifyModuleStatus(module));
    return false;
  }
};

using FunctionTransform =
    std::function<absl::StatusOr<bool>(Function&, const EffectInfo&)>;

class FunctionPass final : public Pass {
 public:
  FunctionPass(std::string name, FunctionTransform transform)
      : name_(std::move(name)), transform_(std::move(transform)) {}

  absl::string_view name() const override { return name_; }
  PassKind kind() const override { return PassKind::kTransform; }
  StageRequirement requirement() const override {
    return StageRequirement::kNoGradientDeclarations;
  }
  absl::StatusOr<bool> Run(Module& module) override {
    EffectInfo effects(module);
    bool changed = false;
    for (const auto& function : module.functions()) {
      if (function->is_declaration()) continue;
      DLC_ASSIGN_OR_RETURN(bool function_changed,
                           transform_(*function, effects));
      changed = changed || function_changed;
    }
    return changed;
  }

 private:
  std::string name_;
  FunctionTransform transform_;
};

FunctionTransform IgnoringEffects(
    absl::StatusOr<bool> (*transform)(Function&)) {
  return [transform](Function& f, const EffectInfo&) { return transform(f); };
}

absl::Status CheckRequirement(const Pass& pass, const Module& module) {
  switch (pass.requirement()) {
    case StageRequirement::kAny:
      return absl::OkStatus();
    case StageRequirement::kRaw:
      if (module.stage() != Stage::kRaw) {
        return absl::FailedPreconditionError(
            absl::StrCat("pass ", pass.name(), " requires a raw-stage module"));
      }
      return absl::OkStatus();
    case StageRequirement::kNoGradientDeclarations:
      for (const auto& function : module.functions()) {
        if (function->is_gradient_declaration()) {
          return absl::FailedPreconditionError(absl::StrCat(
              "pass ", pass.name(), " requires canonicalized gradients; @",
              function->name(), " is still a gradient declaration (run "
              "differentiate first)"));
        }
      }
      return absl::OkStatus();
  }
  return absl::OkStatus();
}

}  // namespace

std::vector<std::string> RegisteredPassNames() {
  return {"differentiate", "algebra-simplify", "fusion", "matmul-reorder",
          "dce",           "cse",              "sccp",   "verify"};
}

std::unique_ptr<Pass> CreatePass(absl::string_view name) {
  if (name == "differentiate") return std::make_unique<DifferentiatePass>();
  if (name == "verify") return std::make_unique<VerifyPass>();
  if (name == "algebra-simplify") {
    return std::make_unique<FunctionPass>(std::string(name),
                                          IgnoringEffects(AlgebraSimplify));
  }
  if (name == "fusion") {
    return std::make_unique<FunctionPass>(std::string(name),
                                          IgnoringEffects(FuseLinearAlgebra));
  }
  if (name == "matmul-reorder") {
    return std::make_unique<FunctionPass>(std::string(name),
                                          IgnoringEffects(ReorderMatmulChains));
  }
  if (name == "dce") {
    return std::make_unique<FunctionPass>(std::string(name), EliminateDeadCode);
  }
  if (name == "cse") {
    return std::make_unique<FunctionPass>(std::string(name),
                                          EliminateCommonSubexpressions);
  }
  if (name == "sccp") {
    return std::make_unique<FunctionPass>(std::string(name),
                                          PropagateConstants);
  }
  return nullptr;
}

absl::StatusOr<std::vector<PassOutcome>> RunPipeline(
    Module& module, const std::vector<std::string>& pass_names,
    const PipelineOptions& options) {
  std::vector<std::unique_ptr<Pass>> passes;
  for (const std::string& name : pass_names) {
    std::unique_ptr<Pass> pass = CreatePass(name);
    if (pass == nullptr) {
      return absl::InvalidArgumentError(absl::StrCat("unknown pass '", name,
                                                     "'"));
    }
    passes.push_back(std::move(pass));
  }
  std::vector<PassOutcome> outcomes;
  for (const auto& pass : passes) {
    DLC_RETURN_IF_ERROR(CheckRequirement(*pass, module));
    DLC_ASSIGN_OR_RETURN(bool changed, pass->Run(module));
    outcomes.push_back({std::string(pass->name()), changed});
    if (options.verify_each && pass->kind() == PassKind::kTransform) {
      absl::Status status = VerifyModuleStatus(module);
      if (!status.ok()) {
        return absl::InternalError(absl::StrCat(
            "pass ", pass->name(), " produced an invalid module: ",
            status.message()));
      }
    }
  }
  return outcomes;
}

}  // namespace dlc
