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

#ifndef DLC_TESTS_SUPPORT_FILECHECK_H_
#define DLC_TESTS_SUPPORT_FILECHECK_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace dlc::test {

// A small FileCheck: directives are read from comment lines of the check
// file, `// PREFIX: pattern`, with these suffixes:
//
//   PREFIX:        next line (at or after the cursor) containing the pattern
//   PREFIX-NEXT:   the line right after the previous match
//   PREFIX-NOT:    no line between the surrounding positive matches
//   PREFIX-EMPTY:  the line right after the previous match is empty
//
// Patterns match as substrings; `{{re}}` embeds an ECMAScript regex.
struct CheckDirective {
  enum class Kind { kCheck, kNext, kNot, kEmpty };
  Kind kind = Kind::kCheck;
  std::string pattern;
  int line = 0;  // In the check file, 1-based.
};

absl::StatusOr<std::vector<CheckDirective>> ParseCheckDirectives(
    absl::string_view check_text, absl::string_view prefix);

// Returns OK when `input` satisfies every directive, otherwise a message
// naming the failing directive and where matching stopped.
absl::Status FileCheck(absl::string_view check_text, absl::string_view input,
                       absl::string_view prefix = "CHECK");

}  // namespace dlc::test

#endif  // DLC_TESTS_SUPPORT_FILECHECK_H_
