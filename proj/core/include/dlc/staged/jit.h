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

#ifndef DLC_STAGED_JIT_H_
#define DLC_STAGED_JIT_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dlc/ir/ir.h"
#include "dlc/ir/tensor_value.h"
#include "dlc/staged/expr.h"

namespace dlc::staged {

// A staged function lowered, differentiated and optimized for one set of
// argument shapes.
class CompiledFunction {
 public:
  CompiledFunction(std::unique_ptr<Module> module, std::string entry)
      : module_(std::move(module)), entry_(std::move(entry)) {}

  const Module& module() const { return *module_; }
  const std::string& entry() const { return entry_; }

  absl::StatusOr<std::vector<TensorValue>> Run(
      std::span<const TensorValue> args) const;

 private:
  std::unique_ptr<Module> module_;
  std::string entry_;
};

struct JitOptions {
  // Run after differentiate.
  std::vector<std::string> passes = {"algebra-simplify", "sccp", "cse", "dce"};
  bool use_cache = true;
  // Receives the printed raw module of every compilation.
  std::function<void(absl::string_view entry, absl::string_view ir)> dump_ir;
};

// Specializes staged functions on first use and caches the result per
// (function, argument shapes). Safe to call from several threads; concurrent
// first uses of one key compile once.
class Jit {
 public:
  explicit Jit(JitOptions options = {}) : options_(std::move(options)) {}

  absl::StatusOr<std::shared_ptr<const CompiledFunction>> Compile(
      const Function& function, const std::vector<Shape>& shapes);

  // Compiles for the shapes of `args` and runs.
  absl::StatusOr<std::vector<TensorValue>> Apply(
      const Function& function, std::span<const TensorValue> args);

  int64_t compile_count() const { return compile_count_.load(); }

 private:
  using Result = absl::StatusOr<std::shared_ptr<const CompiledFunction>>;

  Result CompileUncached(const Function& function,
                         const std::vector<Shape>& shapes);

  JitOptions options_;
  std::atomic<int64_t> compile_count_{0};
  std::mutex mu_;
  std::map<std::pair<uint64_t, std::vector<Shape>>, std::shared_future<Result>>
      cache_;
};

}  // namespace dlc::staged

#endif  // DLC_STAGED_JIT_H_
