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

#ifndef DLC_TEXT_LEXER_H_
#define DLC_TEXT_LEXER_H_

#include <string>
#include <vector>

#include "absl/strings/string_view.h"
#include "dlc/support/diagnostic.h"

namespace dlc::text_internal {

enum class TokenKind {
  kIdent,       // module, func, f32, x, add, true, inf ...
  kValueName,   // %x (text excludes the sigil)
  kGlobalName,  // @foo
  kLabel,       // 'entry
  kNumber,      // 12, -3, 1.5e-3
  kString,      // "text" (text excludes quotes)
  kLess,
  kGreater,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kLBrace,
  kRBrace,
  kComma,
  kColon,
  kEqual,
  kArrow,
  kError,
  kEof,
};

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

// Tokenizes the whole input. `//` comments run to end of line; LF and CRLF
// are both accepted. A lexical error produces a kError token carrying the
// message and stops tokenization.
std::vector<Token> Tokenize(absl::string_view input);

absl::string_view TokenKindName(TokenKind kind);

}  // namespace dlc::text_internal

#endif  // DLC_TEXT_LEXER_H_
