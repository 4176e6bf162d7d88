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

#ifndef DLC_AUTODIFF_GRADIENT_TYPE_H_
#define DLC_AUTODIFF_GRADIENT_TYPE_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dlc/ir/ir.h"

namespace dlc {

// Checks that the config's indices are in range and free of duplicates for
// a source of the given function type.
absl::Status ValidateGradientConfig(const Type& source_type,
                                    const GradientConfig& config);

// The type a gradient declaration must have.
//
//   params:  source params, then the seed (type of output `from`) if seedable
//   results: wrt argument types in wrt order, then kept output types in
//            keeping order; a single result is not wrapped in a tuple
absl::StatusOr<Type> ExpectedGradientType(const Type& source_type,
                                          const GradientConfig& config);

}  // namespace dlc

#endif  // DLC_AUTODIFF_GRADIENT_TYPE_H_
