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

#include "filecheck.h"

#include <optional>
#include <regex>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace dlc::test {
namespace {

std::string EscapeRegex(absl::string_view text) {
  static const std::string kSpecial = R"(\^$.|?*+()[]{})";
  std::string out;
  for (char c : text) {
    if (kSpecial.find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

absl::StatusOr<std::regex> Compile(absl::string_view pattern) {
  std::string source;
  size_t pos = 0;
  while (pos < pattern.size()) {
    size_t open = pattern.find("{{", pos);
    if (open == absl::string_view::npos) {
      source += EscapeRegex(pattern.substr(pos));
      break;
    }
    size_t close = pattern.find("}}", open + 2);
    if (close == absl::string_view::npos) {
      return absl::InvalidArgumentError("unterminated {{ in pattern");
    }
    source += EscapeRegex(pattern.substr(pos, open - pos));
    source += "(?:" + std::string(pattern.substr(open + 2, close - open - 2)) + ")";
    pos = close + 2;
  }
  try {
    return std::regex(source);
  } catch (const std::regex_error& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad regex: ", e.what()));
  }
}

bool Matches(const std::regex& re, const std::string& line) {
  return std::regex_search(line, re);
}

}  // namespace

absl::StatusOr<std::vector<CheckDirective>> ParseCheckDirectives(
    absl::string_view check_text, absl::string_view prefix) {
  std::vector<CheckDirective> directives;
  int line_number = 0;
  const std::pair<absl::string_view, CheckDirective::Kind> kSuffixes[] = {
      {"-NEXT:", CheckDirective::Kind::kNext},
      {"-NOT:", CheckDirective::Kind::kNot},
      {"-EMPTY:", CheckDirective::Kind::kEmpty},
      {":", CheckDirective::Kind::kCheck},
  };
  for (absl::string_view line : absl::StrSplit(check_text, '\n')) {
    ++line_number;
    absl::string_view rest = absl::StripLeadingAsciiWhitespace(line);
    if (!absl::ConsumePrefix(&rest, "//")) continue;
    rest = absl::StripLeadingAsciiWhitespace(rest);
    if (!absl::ConsumePrefix(&rest, prefix)) continue;
    for (const auto& [suffix, kind] : kSuffixes) {
      if (absl::ConsumePrefix(&rest, suffix)) {
        CheckDirective directive;
        directive.kind = kind;
        directive.pattern = std::string(absl::StripAsciiWhitespace(rest));
        directive.line = line_number;
        if (directive.pattern.empty() && kind != CheckDirective::Kind::kEmpty) {
          return absl::InvalidArgumentError(absl::StrCat(
              "line ", line_number, ": empty ", prefix, " pattern"));
        }
        directives.push_back(std::move(directive));
        break;
      }
    }
  }
  return directives;
}

absl::Status FileCheck(absl::string_view check_text, absl::string_view input,
                       absl::string_view prefix) {
  absl::StatusOr<std::vector<CheckDirective>> directives =
      ParseCheckDirectives(check_text, prefix);
  if (!directives.ok()) return directives.status();
  std::vector<std::string> lines = absl::StrSplit(input, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();

  size_t cursor = 0;  // First line not yet consumed.
  std::optional<size_t> last_match;
  std::vector<const CheckDirective*> pending_nots;
  auto fail = [&](const CheckDirective& d, absl::string_view why) {
    return absl::NotFoundError(absl::StrCat(
        "line ", d.line, ": ", prefix, " '", d.pattern, "' ", why,
        " (scanning from output line ", cursor + 1, ")\n--- output ---\n",
        input));
  };
  auto check_nots = [&](size_t begin, size_t end) -> absl::Status {
    for (const CheckDirective* d : pending_nots) {
      absl::StatusOr<std::regex> re = Compile(d->pattern);
      if (!re.ok()) return re.status();
      for (size_t i = begin; i < end; ++i) {
        if (Matches(*re, lines[i])) {
          return absl::NotFoundError(absl::StrCat(
              "line ", d->line, ": ", prefix, "-NOT '", d->pattern,
              "' matched output line ", i + 1, ": ", lines[i]));
        }
      }
    }
    pending_nots.clear();
    return absl::OkStatus();
  };

  for (const CheckDirective& d : *directives) {
    absl::StatusOr<std::regex> re = Compile(d.pattern);
    if (!re.ok()) return re.status();
    switch (d.kind) {
      case CheckDirective::Kind::kNot:
        pending_nots.push_back(&d);
        break;
      case CheckDirective::Kind::kCheck: {
        size_t begin = cursor;
        size_t i = cursor;
        while (i < lines.size() && !Matches(*re, lines[i])) ++i;
        if (i == lines.size()) return fail(d, "not found");
        if (absl::Status s = check_nots(begin, i); !s.ok()) return s;
        last_match = i;
        cursor = i + 1;
        break;
      }
      case CheckDirective::Kind::kNext:
      case CheckDirective::Kind::kEmpty: {
        if (!last_match.has_value()) return fail(d, "has no previous match");
        size_t i = *last_match + 1;
        bool ok = i < lines.size() &&
                  (d.kind == CheckDirective::Kind::kEmpty
                       ? lines[i].empty()
                       : Matches(*re, lines[i]));
        if (!ok) return fail(d, "does not match the next line");
        if (absl::Status s = check_nots(cursor, i); !s.ok()) return s;
        last_match = i;
        cursor = i + 1;
        break;
      }
    }
  }
  return check_nots(cursor, lines.size());
}

}  // namespace dlc::test
