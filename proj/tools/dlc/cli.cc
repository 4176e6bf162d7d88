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

#include "cli.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "dlc/analysis/verifier.h"
#include "dlc/autodiff/differentiate.h"
#include "dlc/interp/interpreter.h"
#include "dlc/opt/pass_manager.h"
#include "dlc/text/parser.h"
#include "dlc/text/printer.h"

namespace dlc {
namespace {

// `-` reads standard input.
bool ReadFile(const std::string& path, std::string& contents) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    contents = buffer.str();
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  contents = buffer.str();
  return true;
}

class Driver {
 public:
  Driver(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  // Parses and verifies `path`. Returns an exit code, kExitOk on success.
  int Load(const std::string& path) {
    std::string text;
    if (!ReadFile(path, text)) {
      err_ << path << ": error: cannot read file\n";
      return kExitUsage;
    }
    ParseResult parsed = ParseModule(text);
    if (!parsed.ok()) {
      err_ << RenderDiagnostics(parsed.diagnostics, path);
      return kExitParseFailure;
    }
    std::vector<Diagnostic> diagnostics = VerifyModule(*parsed.module);
    if (!diagnostics.empty()) {
      err_ << RenderDiagnostics(diagnostics, path);
      return kExitVerifyFailure;
    }
    module_ = std::move(parsed.module);
    return kExitOk;
  }

  int Emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
      out_ << text;
      return kExitOk;
    }
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      err_ << output << ": error: cannot write file\n";
      return kExitUsage;
    }
    file << text;
    return kExitOk;
  }

  int Verify(const std::string& path) { return Load(path); }

  int Opt(const std::string& path, const std::string& pass_list,
          const std::string& output, bool print_changed) {
    std::vector<std::string> passes;
    for (absl::string_view name :
         absl::StrSplit(pass_list, ',', absl::SkipWhitespace())) {
      std::string pass(absl::StripAsciiWhitespace(name));
      if (CreatePass(pass) == nullptr) {
        err_ << "error: unknown pass '" << pass << "'\n";
        return kExitUsage;
      }
      passes.push_back(pass);
    }
    if (int code = Load(path); code != kExitOk) return code;
    absl::StatusOr<std::vector<PassOutcome>> outcomes =
        RunPipeline(*module_, passes);
    if (!outcomes.ok()) {
      err_ << path << ": error: " << outcomes.status().message() << "\n";
      return absl::IsInvalidArgument(outcomes.status()) ? kExitUsage
                                                        : kExitVerifyFailure;
    }
    if (print_changed) {
      for (const PassOutcome& outcome : *outcomes) {
        if (outcome.changed) err_ << "changed: " << outcome.name << "\n";
      }
    }
    return Emit(PrintModule(*module_), output);
  }

  int Diff(const std::string& path, const std::string& output) {
    if (int code = Load(path); code != kExitOk) return code;
    if (absl::Status s = CanonicalizeGradients(*module_); !s.ok()) {
      err_ << path << ": error: " << s.message() << "\n";
      return kExitVerifyFailure;
    }
    if (absl::Status s = VerifyModuleStatus(*module_); !s.ok()) {
      err_ << path << ": error: " << s.message() << "\n";
      return kExitVerifyFailure;
    }
    return Emit(PrintModule(*module_), output);
  }

  int Run(const std::string& path, std::string function,
          const std::string& inputs_path, const std::string& output) {
    if (int code = Load(path); code != kExitOk) return code;
    function = std::string(absl::StripPrefix(function, "@"));
    const Function* callee = module_->FindFunction(function);
    if (callee == nullptr) {
      err_ << "error: no function @" << function << "\n";
      return kExitUsage;
    }
    std::vector<TensorValue> inputs;
    if (!inputs_path.empty()) {
      std::string text;
      if (!ReadFile(inputs_path, text)) {
        err_ << inputs_path << ": error: cannot read file\n";
        return kExitUsage;
      }
      int line_number = 0;
      for (absl::string_view line : absl::StrSplit(text, '\n')) {
        ++line_number;
        line = absl::StripAsciiWhitespace(line);
        if (line.empty() || absl::StartsWith(line, "#")) continue;
        absl::StatusOr<TensorValue> value = ParseTensorLiteral(line);
        if (!value.ok()) {
          err_ << inputs_path << ":" << line_number
               << ":1: error: " << value.status().message() << "\n";
          return kExitUsage;
        }
        inputs.push_back(*std::move(value));
      }
    }
    size_t arity = callee->param_types().size();
    if (inputs.size() != arity) {
      err_ << "error: @" << function << " takes " << arity
           << " input(s), got " << inputs.size() << "\n";
      return kExitUsage;
    }
    absl::StatusOr<std::vector<TensorValue>> results =
        RunFunction(*module_, function, inputs);
    if (!results.ok()) {
      err_ << "error: " << results.status().message() << "\n";
      return absl::IsInvalidArgument(results.status()) ? kExitUsage
                                                       : kExitRuntime;
    }
    std::string text;
    for (const TensorValue& value : *results) {
      absl::StrAppend(&text, value.ToString(), "\n");
    }
    return Emit(text, output);
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<Module> module_;
};

}  // namespace

int RunDlc(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Verify, differentiate, optimize and run .dl modules.", "dlc");
  app.require_subcommand(1);

  std::string file, output, passes, function, inputs;
  bool print_changed = false;

  CLI::App* verify = app.add_subcommand("verify", "Parse and verify a module");
  verify->add_option("file", file, "Input .dl file")->required();

  CLI::App* opt = app.add_subcommand("opt", "Run optimization passes");
  opt->add_option("file", file, "Input .dl file")->required();
  opt->add_option("-p,--passes", passes, "Comma-separated pass list")
      ->required();
  opt->add_option("-o,--output", output, "Output file (default stdout)");
  opt->add_flag("--print-changed", print_changed,
                "List passes that changed the module on stderr");

  CLI::App* diff = app.add_subcommand("diff", "Canonicalize gradients");
  diff->add_option("file", file, "Input .dl file")->required();
  diff->add_option("-o,--output", output, "Output file (default stdout)");

  CLI::App* run = app.add_subcommand("run", "Interpret a function");
  run->add_option("file", file, "Input .dl file")->required();
  run->add_option("-f,--function", function, "Function to run, e.g. @foo")
      ->required();
  run->add_option("--inputs", inputs,
                  "File with one tensor literal per line, in parameter order");
  run->add_option("-o,--output", output, "Output file (default stdout)");

  std::vector<std::string> argv_storage = {"dlc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& arg : argv_storage) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Driver driver(out, err);
  if (verify->parsed()) return driver.Verify(file);
  if (opt->parsed()) return driver.Opt(file, passes, output, print_changed);
  if (diff->parsed()) return driver.Diff(file, output);
  return driver.Run(file, function, inputs, output);
}

}  // namespace dlc
