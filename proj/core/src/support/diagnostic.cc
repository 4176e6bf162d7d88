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

#include "dlc/support/diagnostic.h"

#include "absl/strings/str_cat.h"

namespace dlc {

std::string Diagnostic::Render(absl::string_view file) const {
  absl::string_view kind = severity == Severity::kError     ? "error"
                          : severity == Severity::kWarning ? "warning"
                                                           : "note";
  return absl::StrCat(file, ":", line, ":", column, ": ", kind, ": ", message);
}

std::string RenderDiagnostics(const std::vector<Diagnostic>& diagnostics,
                              absl::string_view file) {
  std::string out;
  for (const Diagnostic& d : diagnostics) {
    absl::StrAppend(&out, d.Render(file), "\n");
  }
  return out;
}

}  // namespace dlc
