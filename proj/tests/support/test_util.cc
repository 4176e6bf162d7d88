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

#include "test_util.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "dlc/interp/finite_difference.h"
#include "dlc/interp/interpreter.h"
#include "dlc/text/parser.h"

namespace dlc::test {

std::string TestDataDir() { return DLC_TEST_DATA_DIR; }

std::string ReadFileOrDie(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    std::abort();
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> ListFiles(const std::string& dir,
                                   absl::string_view ext) {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension().string() == ext) {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

absl::StatusOr<std::unique_ptr<Module>> Parse(absl::string_view text) {
  ParseResult result = ParseModule(text);
  if (!result.ok()) {
    return absl::InvalidArgumentError(
        RenderDiagnostics(result.diagnostics, "<input>"));
  }
  return std::move(result.module);
}

std::unique_ptr<Module> ParseOrDie(absl::string_view text) {
  absl::StatusOr<std::unique_ptr<Module>> module = Parse(text);
  if (!module.ok()) {
    std::cerr << module.status().message() << "\n";
    std::abort();
  }
  return *std::move(module);
}

TensorValue RandomTensor(std::mt19937_64& rng, const TensorType& type,
                         double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  TensorValue value(type);
  for (int64_t i = 0; i < value.size(); ++i) value.SetDouble(i, dist(rng));
  return value;
}

std::vector<TensorValue> RandomInputs(std::mt19937_64& rng,
                                      const Function& function, double lo,
                                      double hi) {
  std::vector<TensorValue> inputs;
  for (const Type& type : function.param_types()) {
    inputs.push_back(RandomTensor(rng, type.tensor(), lo, hi));
  }
  return inputs;
}

bool SameBits(const TensorValue& a, const TensorValue& b) {
  if (!(a.type() == b.type())) return false;
  for (int64_t i = 0; i < a.size(); ++i) {
    if (a.is_float()) {
      double x = a.GetDouble(i);
      double y = b.GetDouble(i);
      if (std::isnan(x) && std::isnan(y)) continue;
      if (x == 0 && y == 0) continue;
      if (std::bit_cast<uint64_t>(x) != std::bit_cast<uint64_t>(y)) {
        return false;
      }
    } else if (a.GetInt(i) != b.GetInt(i)) {
      return false;
    }
  }
  return true;
}

bool SameBits(const std::vector<TensorValue>& a,
              const std::vector<TensorValue>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!SameBits(a[i], b[i])) return false;
  }
  return true;
}

bool AllClose(const TensorValue& a, const TensorValue& b, double rtol,
              double atol) {
  if (!(a.type() == b.type())) return false;
  for (int64_t i = 0; i < a.size(); ++i) {
    double x = a.GetDouble(i);
    double y = b.GetDouble(i);
    if (std::isnan(x) || std::isnan(y)) {
      if (std::isnan(x) != std::isnan(y)) return false;
      continue;
    }
    if (x == y) continue;
    double bound = std::max(atol, rtol * std::max(std::fabs(x), std::fabs(y)));
    if (!(std::fabs(x - y) <= bound)) return false;
  }
  return true;
}

bool AllClose(const std::vector<TensorValue>& a,
              const std::vector<TensorValue>& b, double rtol, double atol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!AllClose(a[i], b[i], rtol, atol)) return false;
  }
  return true;
}

absl::Status CheckGradient(const Module& module, absl::string_view source,
                           absl::string_view gradient,
                           const std::vector<int>& wrt, int from,
                           const std::vector<TensorValue>& inputs,
                           const GradientCheckOptions& options) {
  absl::StatusOr<std::vector<TensorValue>> analytic =
      RunFunction(module, gradient, inputs);
  if (!analytic.ok()) return analytic.status();
  if (analytic->size() < wrt.size()) {
    return absl::InternalError("gradient returned too few results");
  }
  for (size_t k = 0; k < wrt.size(); ++k) {
    absl::StatusOr<TensorValue> numeric = FiniteDifferenceGradient(
        module, source, from, wrt[k], inputs, options.h);
    if (!numeric.ok()) return numeric.status();
    if (!AllClose((*analytic)[k], *numeric, options.rtol, options.atol)) {
      return absl::InternalError(absl::StrCat(
          "@", gradient, " result ", k, " (wrt ", wrt[k], ")\n  analytic ",
          (*analytic)[k].ToString(), "\n  numeric  ", numeric->ToString()));
    }
  }
  return absl::OkStatus();
}

}  // namespace dlc::test
