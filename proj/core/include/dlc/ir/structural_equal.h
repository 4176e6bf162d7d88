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

#ifndef DLC_IR_STRUCTURAL_EQUAL_H_
#define DLC_IR_STRUCTURAL_EQUAL_H_

#include <string>

#include "dlc/ir/ir.h"

namespace dlc {

// Compares two modules up to value naming: same globals, functions, types,
// gradient configs, block shapes, opcodes, attributes and operand wiring.
// Literals compare by value and type; SSA names and source locations are
// ignored. On mismatch `why` (if given) describes the first difference.
bool StructurallyEqual(const Module& a, const Module& b,
                       std::string* why = nullptr);

}  // namespace dlc

#endif  // DLC_IR_STRUCTURAL_EQUAL_H_
