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

#ifndef DLC_INTERP_INTERPRETER_H_
#define DLC_INTERP_INTERPRETER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dlc/ir/ir.h"
#include "dlc/ir/tensor_value.h"

namespace dlc {

struct InterpreterOptions {
  int max_call_depth = 256;
  // Bound on executed instructions per top-level call, to stop runaway
  // loops.
  int64_t max_steps = int64_t{1} << 32;
};

// Executes verified IR. The module must outlive the interpreter and must not
// be mutated while a call is running; concurrent calls are safe.
//
// Errors: InvalidArgument for inputs that do not match the parameter types
// or an unknown function; FailedPrecondition for traps (integer division by
// zero, calling a function without a body); ResourceExhausted when the call
// depth or step limit is exceeded.
class Interpreter {
 public:
  explicit Interpreter(const Module& module, InterpreterOptions options = {})
      : module_(module), options_(options) {}

  // Returns the elements of the result: none for unit, one value for a
  // tensor result, and one per element for a tuple.
  absl::StatusOr<std::vector<TensorValue>> Run(
      absl::string_view function, std::span<const TensorValue> inputs) const;
  absl::StatusOr<std::vector<TensorValue>> Run(
      const Function& function, std::span<const TensorValue> inputs) const;

 private:
  const Module& module_;
  InterpreterOptions options_;
};

// Shorthand for Interpreter(module).Run(name, inputs).
absl::StatusOr<std::vector<TensorValue>> RunFunction(
    const Module& module, absl::string_view name,
    std::span<const TensorValue> inputs);

}  // namespace dlc

#endif  // DLC_INTERP_INTERPRETER_H_
