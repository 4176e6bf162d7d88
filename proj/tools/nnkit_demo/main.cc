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

// Builds a one-layer network with the staged DSL, differentiates it twice and
// runs everything through the JIT.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dlc/ir/tensor_value.h"
#include "dlc/staged/expr.h"
#include "dlc/staged/jit.h"

namespace {

using dlc::DataType;
using dlc::TensorType;
using dlc::TensorValue;
namespace staged = dlc::staged;

TensorValue Random(std::mt19937_64& rng, dlc::Shape shape) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  TensorValue value(TensorType{std::move(shape), DataType::kF64});
  for (int64_t i = 0; i < value.size(); ++i) value.SetDouble(i, dist(rng));
  return value;
}

void Print(const std::string& label, const std::vector<TensorValue>& values) {
  std::cout << label << ":\n";
  for (const TensorValue& v : values) std::cout << "  " << v.ToString() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Staged DSL demo: a dense tanh layer and its gradients.",
               "nnkit_demo");
  std::string dump_ir;
  int64_t batch = 1, in = 4, out = 3;
  uint64_t seed = 7;
  app.add_option("--dump-ir", dump_ir,
                 "Write each lowered module to this directory ('-' for stdout)");
  app.add_option("--batch", batch, "Rows of x")->check(CLI::PositiveNumber);
  app.add_option("--in", in, "Input features")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "Output features")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Input generator seed");
  CLI11_PARSE(app, argc, argv);

  staged::JitOptions options;
  if (!dump_ir.empty()) {
    options.dump_ir = [&](absl::string_view entry, absl::string_view ir) {
      if (dump_ir == "-") {
        std::cout << ir;
        return;
      }
      std::filesystem::create_directories(dump_ir);
      std::ofstream(std::filesystem::path(dump_ir) /
                    (std::string(entry) + ".dl"))
          << ir;
    };
  }
  staged::Jit jit(options);

  std::vector<DataType> params(3, DataType::kF64);
  staged::Function f = staged::Lambda(
      "f", params, [](const std::vector<staged::Expr>& a) {
        return staged::Dot(a[0], a[1]) + a[2];
      });
  staged::Function g = staged::Lambda(
      "g", params, [&](const std::vector<staged::Expr>& a) {
        staged::Expr linear = f({a[0], a[1], a[2]});
        return staged::Tanh(linear);
      });
  staged::Function dg =
      staged::GradientOf(g, {.wrt = std::vector<int>{1, 2}, .keeping = {0}},
                         "dg");
  staged::Function d2g_dw2 =
      staged::GradientOf(dg, {.wrt = std::vector<int>{1}, .from = 0},
                         "d2g_dw2");

  std::mt19937_64 rng(seed);
  std::vector<TensorValue> args = {Random(rng, {batch, in}),
                                   Random(rng, {in, out}),
                                   Random(rng, {1, out})};
  for (const auto& [label, fn] :
       std::vector<std::pair<std::string, staged::Function>>{
           {"g", g}, {"dg (dw, db, g)", dg}, {"d2g_dw2", d2g_dw2}}) {
    absl::StatusOr<std::vector<TensorValue>> result = jit.Apply(fn, args);
    if (!result.ok()) {
      std::cerr << "error: " << result.status().message() << "\n";
      return 1;
    }
    Print(label, *result);
  }
  std::cout << "compilations: " << jit.compile_count() << "\n";
  return 0;
}
