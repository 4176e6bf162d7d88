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

#include "dlc/staged/jit.h"

#include "absl/strings/str_cat.h"
#include "dlc/interp/interpreter.h"
#include "dlc/opt/pass_manager.h"
#include "dlc/staged/lowering.h"
#include "dlc/text/printer.h"

namespace dlc::staged {

absl::StatusOr<std::vector<TensorValue>> CompiledFunction::Run(
    std::span<const TensorValue> args) const {
  return RunFunction(*module_, entry_, args);
}

Jit::Result Jit::CompileUncached(const Function& function,
                                 const std::vector<Shape>& shapes) {
  compile_count_.fetch_add(1);
  absl::StatusOr<LoweredModule> lowered = SpecializeAndLower(function, shapes);
  if (!lowered.ok()) return lowered.status();
  if (options_.dump_ir) {
    options_.dump_ir(lowered->entry, PrintModule(*lowered->module));
  }
  std::vector<std::string> passes = {"differentiate"};
  passes.insert(passes.end(), options_.passes.begin(), options_.passes.end());
  absl::StatusOr<std::vector<PassOutcome>> outcome =
      RunPipeline(*lowered->module, passes);
  if (!outcome.ok()) return outcome.status();
  return std::make_shared<const CompiledFunction>(std::move(lowered->module),
                                                  lowered->entry);
}

Jit::Result Jit::Compile(const Function& function,
                         const std::vector<Shape>& shapes) {
  if (function.node() == nullptr) {
    return absl::InvalidArgumentError("empty staged function");
  }
  if (!options_.use_cache) return CompileUncached(function, shapes);
  auto key = std::make_pair(function.node()->id, shapes);
  std::promise<Result> promise;
  std::shared_future<Result> pending;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      pending = it->second;
    } else {
      cache_.emplace(key, promise.get_future().share());
    }
  }
  if (pending.valid()) return pending.get();
  Result result = CompileUncached(function, shapes);
  promise.set_value(result);
  return result;
}

absl::StatusOr<std::vector<TensorValue>> Jit::Apply(
    const Function& function, std::span<const TensorValue> args) {
  if (function.node() != nullptr && args.size() != function.arity()) {
    return absl::InvalidArgumentError(
        absl::StrCat(function.name(), " takes ", function.arity(),
                     " argument(s), got ", args.size()));
  }
  std::vector<Shape> shapes;
  for (const TensorValue& arg : args) shapes.push_back(arg.type().shape);
  absl::StatusOr<std::shared_ptr<const CompiledFunction>> compiled =
      Compile(function, shapes);
  if (!compiled.ok()) return compiled.status();
  return (*compiled)->Run(args);
}

}  // namespace dlc::staged
