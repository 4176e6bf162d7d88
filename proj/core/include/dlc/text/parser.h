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

#ifndef DLC_TEXT_PARSER_H_
#define DLC_TEXT_PARSER_H_

#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dlc/ir/ir.h"
#include "dlc/support/diagnostic.h"

namespace dlc {

struct ParseResult {
  std::unique_ptr<Module> module;  // Null on failure.
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return module != nullptr; }
};

// Parses a `.dl` module:
//
//   module "name"
//   stage raw
//
//   global @w = <2 x f32> [1.0, 2.0]
//
//   [gradient @foo wrt 1, 2 keeping 0 seedable]
//   func @foo_grad: (<1 x 4 x f32>, ...) -> (...)
//
//   func @foo: (<1 x 4 x f32>, <4 x 2 x f32>) -> <1 x 2 x f32> {
//   'entry(%x: <1 x 4 x f32>, %w: <4 x 2 x f32>):
//       %y = dot %x: <1 x 4 x f32>, %w: <4 x 2 x f32>
//       return %y: <1 x 2 x f32>
//   }
//
// Every operand carries a type annotation, checked against its definition.
// Result types are inferred. Parsing stops at the first error. A successful
// parse satisfies the structural IR invariants (terminators last, operand
// arity, resolved names); semantic checks are left to the verifier.
ParseResult ParseModule(absl::string_view text);

// `<2 x 2 x f64> [1.0, 2.0, 3.0, 4.0]`, elements in row-major order.
absl::StatusOr<TensorValue> ParseTensorLiteral(absl::string_view text);

}  // namespace dlc

#endif  // DLC_TEXT_PARSER_H_
