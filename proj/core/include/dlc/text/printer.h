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

#ifndef DLC_TEXT_PRINTER_H_
#define DLC_TEXT_PRINTER_H_

#include <string>

#include "dlc/ir/ir.h"

namespace dlc {

// Renders a module in the `.dl` syntax accepted by ParseModule. Output is a
// pure function of module structure: unnamed values and colliding names are
// numbered deterministically in program order.
std::string PrintModule(const Module& module);
std::string PrintFunction(const Function& function);

}  // namespace dlc

#endif  // DLC_TEXT_PRINTER_H_
