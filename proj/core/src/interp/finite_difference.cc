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

#include "dlc/interp/finite_difference.h"

#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dlc/interp/interpreter.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

absl::StatusOr<double> SumOfOutput(const Interpreter& interpreter,
                                   absl::string_view function,
                                   int output_index,
                                   std::span<const TensorValue> inputs) {
  DLC_ASSIGN_OR_RETURN(std::vector<TensorValue> outputs,
                       interpreter.Run(function, inputs));
  if (output_index < 0 ||
      static_cast<size_t>(output_index) >= outputs.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("output ", output_index, " out of range for @", function));
  }
  double sum = 0;
  for (double v : outputs[output_index].ToDoubles()) sum += v;
  if (!std::isfinite(sum)) {
    return absl::OutOfRangeError(
        absl::StrCat("@", function, " is not finite at a probe point"));
  }
  return sum;
}

}  // namespace

absl::StatusOr<TensorValue> FiniteDifferenceGradient(
    const Module& module, absl::string_view function, int output_index,
    int wrt_arg, std::span<const TensorValue> inputs, double h) {
  if (wrt_arg < 0 || static_cast<size_t>(wrt_arg) >= inputs.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("wrt argument ", wrt_arg, " out of range"));
  }
  if (!inputs[wrt_arg].is_float()) {
    return absl::InvalidArgumentError(
        absl::StrCat("wrt argument ", wrt_arg, " is not floating point"));
  }
  Interpreter interpreter(module);
  DLC_RETURN_IF_ERROR(
      SumOfOutput(interpreter, function, output_index, inputs).status());
  std::vector<TensorValue> probe(inputs.begin(), inputs.end());
  TensorValue gradient(inputs[wrt_arg].type());
  for (int64_t i = 0; i < gradient.size(); ++i) {
    const double x = inputs[wrt_arg].GetDouble(i);
    probe[wrt_arg].SetDouble(i, x + h);
    DLC_ASSIGN_OR_RETURN(double plus, SumOfOutput(interpreter, function,
                                                  output_index, probe));
    probe[wrt_arg].SetDouble(i, x - h);
    DLC_ASSIGN_OR_RETURN(double minus, SumOfOutput(interpreter, function,
                                                   output_index, probe));
    probe[wrt_arg].SetDouble(i, x);
    gradient.SetDouble(i, (plus - minus) / (2 * h));
  }
  return gradient;
}

}  // namespace dlc
