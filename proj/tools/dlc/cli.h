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

#ifndef DLC_TOOLS_DLC_CLI_H_
#define DLC_TOOLS_DLC_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace dlc {

enum ExitCode {
  kExitOk = 0,
  kExitVerifyFailure = 1,  // Verification or differentiation failed.
  kExitParseFailure = 2,
  kExitUsage = 3,  // Bad flags, unknown pass or function, bad inputs.
  kExitRuntime = 4,
};

// Runs the `dlc` driver. `args` excludes the program name. IR and tensors go
// to `out` unless redirected to a file; diagnostics go to `err`.
int RunDlc(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace dlc

#endif  // DLC_TOOLS_DLC_CLI_H_
