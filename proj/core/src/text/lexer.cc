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

#include "text/lexer.h"

#include <cctype>

#include "absl/strings/str_cat.h"

namespace dlc::text_internal {
namespace {

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  explicit Lexer(absl::string_view input) : input_(input) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    while (true) {
      SkipTrivia();
      Token token = Next();
      bool stop = token.kind == TokenKind::kEof || token.kind == TokenKind::kError;
      tokens.push_back(std::move(token));
      if (stop) break;
    }
    return tokens;
  }

 private:
  char Peek(size_t ahead = 0) const {
    return pos_ + ahead < input_.size() ? input_[pos_ + ahead] : '\0';
  }

  void Advance() {
    if (Peek() == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void SkipTrivia() {
    while (pos_ < input_.size()) {
      char c = Peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        Advance();
      } else if (c == '/' && Peek(1) == '/') {
        while (pos_ < input_.size() && Peek() != '\n') Advance();
      } else {
        break;
      }
    }
  }

  Token Make(TokenKind kind, std::string text, int line, int column) {
    return Token{kind, std::move(text), line, column};
  }

  std::string TakeWhile(bool (*pred)(char)) {
    std::string text;
    while (pos_ < input_.size() && pred(Peek())) {
      text.push_back(Peek());
      Advance();
    }
    return text;
  }

  Token Number(int line, int column) {
    std::string text;
    if (Peek() == '-' || Peek() == '+') {
      text.push_back(Peek());
      Advance();
    }
    if (IsIdentStart(Peek())) {
      // -inf / +inf / -nan
      std::string word = TakeWhile(IsIdentChar);
      if (word != "inf" && word != "nan") {
        return Make(TokenKind::kError,
                    absl::StrCat("malformed number '", text, word, "'"), line,
                    column);
      }
      return Make(TokenKind::kNumber, text + word, line, column);
    }
    if (!IsDigit(Peek())) {
      return Make(TokenKind::kError, absl::StrCat("unexpected '", text, "'"),
                  line, column);
    }
    text += TakeWhile(IsDigit);
    if (Peek() == '.' && IsDigit(Peek(1))) {
      text.push_back('.');
      Advance();
      text += TakeWhile(IsDigit);
    }
    if ((Peek() == 'e' || Peek() == 'E') &&
        (IsDigit(Peek(1)) ||
         ((Peek(1) == '-' || Peek(1) == '+') && IsDigit(Peek(2))))) {
      text.push_back(Peek());
      Advance();
      if (Peek() == '-' || Peek() == '+') {
        text.push_back(Peek());
        Advance();
      }
      text += TakeWhile(IsDigit);
    }
    return Make(TokenKind::kNumber, std::move(text), line, column);
  }

  Token Sigiled(TokenKind kind, int line, int column) {
    char sigil = Peek();
    Advance();
    std::string text = TakeWhile(IsIdentChar);
    if (text.empty()) {
      return Make(TokenKind::kError,
                  absl::StrCat("expected a name after '", std::string(1, sigil),
                               "'"),
                  line, column);
    }
    return Make(kind, std::move(text), line, column);
  }

  Token Next() {
    int line = line_;
    int column = column_;
    if (pos_ >= input_.size()) return Make(TokenKind::kEof, "", line, column);
    char c = Peek();
    if (IsIdentStart(c)) {
      return Make(TokenKind::kIdent, TakeWhile(IsIdentChar), line, column);
    }
    if (IsDigit(c) || ((c == '-' || c == '+') &&
                       (IsDigit(Peek(1)) || IsIdentStart(Peek(1))))) {
      return Number(line, column);
    }
    switch (c) {
      case '%':
        return Sigiled(TokenKind::kValueName, line, column);
      case '@':
        return Sigiled(TokenKind::kGlobalName, line, column);
      case '\'':
        return Sigiled(TokenKind::kLabel, line, column);
      case '"': {
        Advance();
        std::string text;
        while (pos_ < input_.size() && Peek() != '"' && Peek() != '\n') {
          text.push_back(Peek());
          Advance();
        }
        if (Peek() != '"') {
          return Make(TokenKind::kError, "unterminated string", line, column);
        }
        Advance();
        return Make(TokenKind::kString, std::move(text), line, column);
      }
      case '-':
        if (Peek(1) == '>') {
          Advance();
          Advance();
          return Make(TokenKind::kArrow, "->", line, column);
        }
        break;
      default:
        break;
    }
    TokenKind kind;
    switch (c) {
      case '<': kind = TokenKind::kLess; break;
      case '>': kind = TokenKind::kGreater; break;
      case '(': kind = TokenKind::kLParen; break;
      case ')': kind = TokenKind::kRParen; break;
      case '[': kind = TokenKind::kLBracket; break;
      case ']': kind = TokenKind::kRBracket; break;
      case '{': kind = TokenKind::kLBrace; break;
      case '}': kind = TokenKind::kRBrace; break;
      case ',': kind = TokenKind::kComma; break;
      case ':': kind = TokenKind::kColon; break;
      case '=': kind = TokenKind::kEqual; break;
      default:
        return Make(TokenKind::kError,
                    absl::StrCat("unexpected character '", std::string(1, c),
                                 "'"),
                    line, column);
    }
    Advance();
    return Make(kind, std::string(1, c), line, column);
  }

  absl::string_view input_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Token> Tokenize(absl::string_view input) {
  return Lexer(input).Run();
}

absl::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdent: return "identifier";
    case TokenKind::kValueName: return "value name";
    case TokenKind::kGlobalName: return "global name";
    case TokenKind::kLabel: return "block label";
    case TokenKind::kNumber: return "number";
    case TokenKind::kString: return "string";
    case TokenKind::kLess: return "'<'";
    case TokenKind::kGreater: return "'>'";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kLBracket: return "'['";
    case TokenKind::kRBracket: return "']'";
    case TokenKind::kLBrace: return "'{'";
    case TokenKind::kRBrace: return "'}'";
    case TokenKind::kComma: return "','";
    case TokenKind::kColon: return "':'";
    case TokenKind::kEqual: return "'='";
    case TokenKind::kArrow: return "'->'";
    case TokenKind::kError: return "error";
    case TokenKind::kEof: return "end of input";
  }
  return "token";
}

}  // namespace dlc::text_internal
