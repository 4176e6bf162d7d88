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

#include "dlc/autodiff/gradient_type.h"

#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"
#include "dlc/support/status_macros.h"

namespace dlc {
namespace {

absl::Status CheckIndices(const std::vector<int>& indices, size_t bound,
                          absl::string_view what) {
  absl::flat_hash_set<int> seen;
  for (int index : indices) {
    if (index < 0 || static_cast<size_t>(index) >= bound) {
      return absl::InvalidArgumentError(absl::StrCat(
          what, " index ", index, " out of range (", bound, " available)"));
    }
    if (!seen.insert(index).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate ", what, " index ", index));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ValidateGradientConfig(const Type& source_type,
                                    const GradientConfig& config) {
  if (!source_type.is_function()) {
    return absl::InvalidArgumentError("gradient source is not a function");
  }
  const size_t arity = source_type.params().size();
  const size_t outputs = source_type.result().Flatten().size();
  if (config.wrt.has_value()) {
    DLC_RETURN_IF_ERROR(CheckIndices(*config.wrt, arity, "wrt"));
  }
  DLC_RETURN_IF_ERROR(CheckIndices(config.keeping, outputs, "keeping"));
  if (outputs == 0) {
    return absl::InvalidArgumentError("gradient source returns no value");
  }
  if (config.from_index() < 0 ||
      static_cast<size_t>(config.from_index()) >= outputs) {
    return absl::InvalidArgumentError(
        absl::StrCat("from index ", config.from_index(), " out of range (",
                     outputs, " outputs)"));
  }
  return absl::OkStatus();
}

absl::StatusOr<Type> ExpectedGradientType(const Type& source_type,
                                          const GradientConfig& config) {
  DLC_RETURN_IF_ERROR(ValidateGradientConfig(source_type, config));
  std::vector<Type> params = source_type.params();
  std::vector<Type> outputs = source_type.result().Flatten();
  std::vector<Type> results;
  for (int index : config.WrtIndices(params.size())) {
    results.push_back(params[index]);
  }
  for (int index : config.keeping) results.push_back(outputs[index]);
  if (config.seedable) params.push_back(outputs[config.from_index()]);
  return Type::Function(std::move(params), Type::Tuple(std::move(results)));
}

}  // namespace dlc
