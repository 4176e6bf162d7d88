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

#ifndef DLC_SUPPORT_STATUS_MACROS_H_
#define DLC_SUPPORT_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DLC_STATUS_CONCAT_INNER(x, y) x##y
#define DLC_STATUS_CONCAT(x, y) DLC_STATUS_CONCAT_INNER(x, y)

#define DLC_RETURN_IF_ERROR(expr)            \
  do {                                       \
    ::absl::Status dlc_status_ = (expr);     \
    if (!dlc_status_.ok()) return dlc_status_; \
  } while (false)

#define DLC_ASSIGN_OR_RETURN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                              \
  if (!tmp.ok()) return tmp.status();             \
  lhs = std::move(*tmp)

#define DLC_ASSIGN_OR_RETURN(lhs, expr) \
  DLC_ASSIGN_OR_RETURN_IMPL(DLC_STATUS_CONCAT(dlc_statusor_, __LINE__), lhs, expr)

#endif  // DLC_SUPPORT_STATUS_MACROS_H_
