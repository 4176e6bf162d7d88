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

#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dlc/autodiff/differentiate.h"
#include "dlc/interp/interpreter.h"
#include "dlc/opt/matrix_chain.h"
#include "dlc/opt/pass_manager.h"
#include "dlc/text/parser.h"
#include "dlc/text/printer.h"

namespace dlc {
namespace {

std::string ReadCorpus(const std::string& name) {
  std::ifstream in(std::string(DLC_CORPUS_DIR) + "/" + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::unique_ptr<Module> Parse(const std::string& text) {
  ParseResult parsed = ParseModule(text);
  if (!parsed.ok()) std::abort();
  return std::move(parsed.module);
}

void BM_ParsePrint(benchmark::State& state) {
  const std::string text = ReadCorpus("mlp_two_layer.dl");
  for (auto _ : state) {
    auto module = Parse(text);
    benchmark::DoNotOptimize(PrintModule(*module));
  }
  state.SetBytesProcessed(state.iterations() * text.size());
}
BENCHMARK(BM_ParsePrint);

void BM_CanonicalizeGradients(benchmark::State& state) {
  const std::string text = ReadCorpus("adjoint_rules.dl");
  for (auto _ : state) {
    state.PauseTiming();
    auto module = Parse(text);
    state.ResumeTiming();
    if (!CanonicalizeGradients(*module).ok()) std::abort();
  }
}
BENCHMARK(BM_CanonicalizeGradients);

void BM_MatrixChainPlan(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<int64_t> dims(state.range(0) + 1);
  for (int64_t& d : dims) d = std::uniform_int_distribution<int>(1, 512)(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MatrixChainPlan::Compute(dims).cost());
  }
}
BENCHMARK(BM_MatrixChainPlan)->Arg(4)->Arg(16)->Arg(64);

void BM_OptimizePipeline(benchmark::State& state) {
  const std::string text = ReadCorpus("dense_gradients.dl");
  for (auto _ : state) {
    state.PauseTiming();
    auto module = Parse(text);
    if (!CanonicalizeGradients(*module).ok()) std::abort();
    state.ResumeTiming();
    auto outcome = RunPipeline(
        *module, {"algebra-simplify", "sccp", "cse", "fusion", "dce"});
    if (!outcome.ok()) std::abort();
  }
}
BENCHMARK(BM_OptimizePipeline);

void BM_InterpretDot(benchmark::State& state) {
  const int64_t n = state.range(0);
  const std::string type = "<" + std::to_string(n) + " x " +
                           std::to_string(n) + " x f64>";
  auto module = Parse("module \"bench\"\nstage raw\n\nfunc @mm: (" + type +
                      ", " + type + ") -> " + type + " {\n'entry(%a: " + type +
                      ", %b: " + type + "):\n    %c = dot %a: " + type +
                      ", %b: " + type + "\n    return %c: " + type + "\n}\n");
  const TensorType tensor{{n, n}, DataType::kF64};
  std::vector<double> data(n * n, 0.5);
  std::vector<TensorValue> inputs = {TensorValue::FromDoubles(tensor, data),
                                     TensorValue::FromDoubles(tensor, data)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunFunction(*module, "mm", inputs));
  }
  state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_InterpretDot)->Arg(16)->Arg(64)->Arg(128);

}  // namespace
}  // namespace dlc

BENCHMARK_MAIN();
