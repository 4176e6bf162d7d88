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

#ifndef DLC_SUPPORT_DIAGNOSTIC_H_
#define DLC_SUPPORT_DIAGNOSTIC_H_

#include <string>
#include <vector>

#include "absl/strings/string_view.h"

namespace dlc {

enum class Severity { kError, kWarning, kNote };

// A located message. Line and column are 1-based; 0 means unknown.
struct Diagnostic {
  Severity severity = Severity::kError;
  int line = 0;
  int column = 0;
  std::string message;
  std::string token;  // Offending token text, when there is one.

  // `file:line:col: error: message`
  std::string Render(absl::string_view file) const;
};

std::string RenderDiagnostics(const std::vector<Diagnostic>& diagnostics,
                              absl::string_view file);

}  // namespace dlc

#endif  // DLC_SUPPORT_DIAGNOSTIC_H_
