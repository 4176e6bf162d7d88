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

#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "dlc/interp/kernels.h"
#include "dlc/ir/structural_equal.h"
#include "dlc/staged/expr.h"
#include "dlc/staged/jit.h"
#include "dlc/staged/lowering.h"
#include "dlc/text/printer.h"

namespace dlc::staged {
namespace {

using ::testing::HasSubstr;

constexpr int kRows = 2, kIn = 4, kOut = 3;

// f(x, w, b) = x . w + b, g = tanh(f), dg = d g / d(w, b) keeping g, and
// d2g_dw2 = d (sum dg/dw) / dw.
struct Program {
  Function f, g, dg, d2g_dw2;
};

Program BuildProgram(DataType dtype = DataType::kF64) {
  Program p;
  std::vector<DataType> params(3, dtype);
  p.f = Lambda("f", params, [](const std::vector<Expr>& a) {
    return Dot(a[0], a[1]) + a[2];
  });
  p.g = Lambda("g", params, [&](const std::vector<Expr>& a) {
    Expr linear = p.f({a[0], a[1], a[2]});
    return Tanh(linear);
  });
  p.dg = GradientOf(p.g, {.wrt = std::vector<int>{1, 2}, .keeping = {0}},
                    "dg");
  p.d2g_dw2 = GradientOf(p.dg, {.wrt = std::vector<int>{1}, .from = 0},
                         "d2g_dw2");
  return p;
}

struct Data {
  std::vector<double> x, w, b;
  std::vector<TensorValue> args;
};

Data RandomData(uint64_t seed, int rows = kRows) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1, 1);
  Data d;
  d.x.resize(rows * kIn);
  d.w.resize(kIn * kOut);
  d.b.resize(kOut);
  for (auto* v : {&d.x, &d.w, &d.b}) {
    for (double& e : *v) e = dist(rng);
  }
  d.args = {
      TensorValue::FromDoubles({{rows, kIn}, DataType::kF64}, d.x),
      TensorValue::FromDoubles({{kIn, kOut}, DataType::kF64}, d.w),
      TensorValue::FromDoubles({{1, kOut}, DataType::kF64}, d.b)};
  return d;
}

// Plain C++ reference for tanh(x w + b).
std::vector<double> ReferenceG(const std::vector<double>& x,
                               const std::vector<double>& w,
                               const std::vector<double>& b, int rows) {
  std::vector<double> t(rows * kOut);
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < kOut; ++j) {
      double s = b[j];
      for (int k = 0; k < kIn; ++k) s += x[r * kIn + k] * w[k * kOut + j];
      t[r * kOut + j] = std::tanh(s);
    }
  }
  return t;
}

double Sum(const std::vector<double>& v) {
  double s = 0;
  for (double e : v) s += e;
  return s;
}

TEST(StagedTest, FunctionAndApplication) {
  Program p = BuildProgram();
  Jit jit;
  Data d = RandomData(1);
  auto f = jit.Apply(p.f, d.args);
  auto g = jit.Apply(p.g, d.args);
  ASSERT_TRUE(f.ok()) << f.status();
  ASSERT_TRUE(g.ok()) << g.status();
  std::vector<double> t = ReferenceG(d.x, d.w, d.b, kRows);
  for (int i = 0; i < kRows * kOut; ++i) {
    EXPECT_NEAR(std::atanh(t[i]), f->at(0).GetDouble(i), 1e-12);
    EXPECT_NEAR(t[i], g->at(0).GetDouble(i), 1e-15);
  }
}

TEST(StagedTest, GradientMatchesFiniteDifferences) {
  Program p = BuildProgram();
  Jit jit;
  const double h = 1e-6;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Data d = RandomData(seed);
    auto dg = jit.Apply(p.dg, d.args);
    ASSERT_TRUE(dg.ok()) << dg.status();
    ASSERT_EQ(dg->size(), 3u);
    auto numeric = [&](std::vector<double>& param, size_t i) {
      const double saved = param[i];
      param[i] = saved + h;
      double up = Sum(ReferenceG(d.x, d.w, d.b, kRows));
      param[i] = saved - h;
      double down = Sum(ReferenceG(d.x, d.w, d.b, kRows));
      param[i] = saved;
      return (up - down) / (2 * h);
    };
    for (size_t i = 0; i < d.w.size(); ++i) {
      const double expected = numeric(d.w, i);
      EXPECT_NEAR(dg->at(0).GetDouble(i), expected,
                  std::max(1e-8, 1e-5 * std::fabs(expected)));
    }
    for (size_t i = 0; i < d.b.size(); ++i) {
      const double expected = numeric(d.b, i);
      EXPECT_NEAR(dg->at(1).GetDouble(i), expected,
                  std::max(1e-8, 1e-5 * std::fabs(expected)));
    }
    auto g = jit.Apply(p.g, d.args);
    EXPECT_TRUE(dg->at(2).IdenticalTo(g->at(0)));
  }
}

TEST(StagedTest, SecondDerivativeMatchesClosedForm) {
  Program p = BuildProgram();
  Jit jit;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Data d = RandomData(seed);
    auto d2 = jit.Apply(p.d2g_dw2, d.args);
    ASSERT_TRUE(d2.ok()) << d2.status();
    ASSERT_EQ(d2->size(), 1u);
    // sum(dg/dw) = sum_r (sum_k x[r,k]) sum_j (1 - t[r,j]^2), so its
    // derivative by w[k', j] is -2 sum_r x[r,k'] (sum_k x[r,k]) t (1 - t^2).
    std::vector<double> t = ReferenceG(d.x, d.w, d.b, kRows);
    for (int kp = 0; kp < kIn; ++kp) {
      for (int j = 0; j < kOut; ++j) {
        double expected = 0;
        for (int r = 0; r < kRows; ++r) {
          double row_sum = 0;
          for (int k = 0; k < kIn; ++k) row_sum += d.x[r * kIn + k];
          const double tv = t[r * kOut + j];
          expected += -2 * d.x[r * kIn + kp] * row_sum * tv * (1 - tv * tv);
        }
        EXPECT_NEAR(d2->at(0).GetDouble(kp * kOut + j), expected,
                    std::max(1e-12, 1e-5 * std::fabs(expected)));
      }
    }
  }
}

TEST(StagedTest, NestedGradientMatchesNestedFiniteDifferences) {
  Program p = BuildProgram();
  Jit jit;
  Data d = RandomData(42);
  auto d2 = jit.Apply(p.d2g_dw2, d.args);
  ASSERT_TRUE(d2.ok());
  const double h = 1e-5;
  for (size_t i = 0; i < d.w.size(); ++i) {
    auto sum_dg_dw = [&](double delta) {
      Data shifted = d;
      shifted.w[i] += delta;
      shifted.args[1] = TensorValue::FromDoubles(
          {{kIn, kOut}, DataType::kF64}, shifted.w);
      return Sum(jit.Apply(p.dg, shifted.args)->at(0).ToDoubles());
    };
    const double expected = (sum_dg_dw(h) - sum_dg_dw(-h)) / (2 * h);
    EXPECT_NEAR(d2->at(0).GetDouble(i), expected,
                std::max(1e-7, 1e-5 * std::fabs(expected)));
  }
}

TEST(StagedTest, GradientTypes) {
  Program p = BuildProgram();
  auto dg = SpecializeAndLower(p.dg, {{kRows, kIn}, {kIn, kOut}, {1, kOut}});
  ASSERT_TRUE(dg.ok()) << dg.status();
  const Type x(TensorType{{kRows, kIn}, DataType::kF64});
  const Type w(TensorType{{kIn, kOut}, DataType::kF64});
  const Type b(TensorType{{1, kOut}, DataType::kF64});
  const Type y(TensorType{{kRows, kOut}, DataType::kF64});
  EXPECT_EQ(dg->module->FindFunction(dg->entry)->type(),
            Type::Function({x, w, b}, Type::Tuple({w, b, y})));
  auto d2 = SpecializeAndLower(p.d2g_dw2, {{kRows, kIn}, {kIn, kOut}, {1, kOut}});
  ASSERT_TRUE(d2.ok());
  EXPECT_EQ(d2->module->FindFunction(d2->entry)->type(),
            Type::Function({x, w, b}, w));
}

TEST(StagedTest, LoweringMatchesHandWrittenIr) {
  Program p = BuildProgram();
  auto lowered = SpecializeAndLower(p.dg, {{kRows, kIn}, {kIn, kOut}, {1, kOut}});
  ASSERT_TRUE(lowered.ok()) << lowered.status();
  auto expected = test::ParseOrDie(test::ReadFileOrDie(
      test::TestDataDir() + "/staged/dense_tanh_dg.dl"));
  std::string why;
  EXPECT_TRUE(StructurallyEqual(*lowered->module, *expected, &why))
      << why << "\n" << PrintModule(*lowered->module);
}

TEST(StagedTest, StagingAndLoweringRunNoKernels) {
  ResetKernelInvocationCount();
  Program p = BuildProgram();
  for (const Function* fn : {&p.f, &p.g, &p.dg, &p.d2g_dw2}) {
    ASSERT_TRUE(SpecializeAndLower(*fn, {{kRows, kIn}, {kIn, kOut}, {1, kOut}})
                    .ok());
  }
  EXPECT_EQ(KernelInvocationCount(), 0);
  Jit jit;
  Data d = RandomData(3);
  ASSERT_TRUE(jit.Apply(p.g, d.args).ok());
  EXPECT_GT(KernelInvocationCount(), 0);
}

TEST(StagedTest, OneCompilationPerKey) {
  Program p = BuildProgram();
  Jit jit;
  Data d = RandomData(5);
  for (int i = 0; i < 3; ++i) {
    ASSERT_TRUE(jit.Apply(p.g, d.args).ok());
    ASSERT_TRUE(jit.Apply(p.dg, d.args).ok());
  }
  EXPECT_EQ(jit.compile_count(), 2);
  Data wide = RandomData(5, 7);
  ASSERT_TRUE(jit.Apply(p.g, wide.args).ok());
  EXPECT_EQ(jit.compile_count(), 3);
  ASSERT_TRUE(jit.Apply(p.g, d.args).ok());
  EXPECT_EQ(jit.compile_count(), 3);
  // A structurally identical lambda is a different function.
  Program q = BuildProgram();
  ASSERT_TRUE(jit.Apply(q.g, d.args).ok());
  EXPECT_EQ(jit.compile_count(), 4);
}

TEST(StagedTest, CacheCanBeDisabled) {
  Program p = BuildProgram();
  Jit jit({.use_cache = false});
  Data d = RandomData(5);
  ASSERT_TRUE(jit.Apply(p.g, d.args).ok());
  ASSERT_TRUE(jit.Apply(p.g, d.args).ok());
  EXPECT_EQ(jit.compile_count(), 2);
}

TEST(StagedTest, ConcurrentFirstUseCompilesOnce) {
  Program p = BuildProgram();
  Jit jit;
  const std::vector<Shape> shapes = {{kRows, kIn}, {kIn, kOut}, {1, kOut}};
  std::vector<std::shared_ptr<const CompiledFunction>> results(8);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] { results[i] = *jit.Compile(p.dg, shapes); });
  }
  for (std::thread& t : threads) t.join();
  EXPECT_EQ(jit.compile_count(), 1);
  for (const auto& r : results) EXPECT_EQ(r, results[0]);
}

TEST(StagedTest, CachedAndFreshCompilationsAgree) {
  Program p = BuildProgram();
  Jit cached;
  Jit fresh({.use_cache = false});
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Data d = RandomData(seed);
    auto a = cached.Apply(p.d2g_dw2, d.args);
    auto b = fresh.Apply(p.d2g_dw2, d.args);
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_TRUE(test::SameBits(*a, *b));
  }
}

TEST(StagedTest, DumpIrHookSeesRawModule) {
  std::vector<std::string> dumped;
  Jit jit({.dump_ir = [&](absl::string_view entry, absl::string_view ir) {
    dumped.push_back(std::string(entry) + "|" + std::string(ir));
  }});
  Program p = BuildProgram();
  ASSERT_TRUE(jit.Apply(p.dg, RandomData(1).args).ok());
  ASSERT_EQ(dumped.size(), 1u);
  EXPECT_THAT(dumped[0], HasSubstr("dg|module"));
  EXPECT_THAT(dumped[0], HasSubstr("[gradient @g wrt 1, 2 keeping 0"));
}

TEST(StagedTest, ShapeErrorsAtSpecialization) {
  Program p = BuildProgram(DataType::kF32);
  auto bad = Specialize(p.g, {{1, 784}, {10, 10}, {1, 10}});
  ASSERT_FALSE(bad.ok());
  EXPECT_THAT(bad.status().message(), HasSubstr("specializing f"));
  EXPECT_THAT(bad.status().message(), HasSubstr("dot"));
  EXPECT_FALSE(Specialize(p.g, {{1, 784}, {784, 10}}).ok());
  EXPECT_TRUE(Specialize(p.g, {{1, 784}, {784, 10}, {1, 10}}).ok());
}

TEST(StagedTest, StagingErrorsPropagate) {
  Function mixed = Lambda("mixed", {DataType::kF32, DataType::kF64},
                          [](const std::vector<Expr>& a) { return a[0] + a[1]; });
  EXPECT_FALSE(mixed.status().ok());
  Function arity = Lambda("arity", {DataType::kF32},
                          [](const std::vector<Expr>& a) { return a[0]; });
  Function caller = Lambda("caller", {DataType::kF32},
                           [&](const std::vector<Expr>& a) {
                             return arity({a[0], a[0]});
                           });
  EXPECT_FALSE(caller.status().ok());
  Expr leaked;
  Function first = Lambda("first", {DataType::kF32},
                          [&](const std::vector<Expr>& a) {
                            leaked = a[0];
                            return a[0];
                          });
  Function second = Lambda("second", {DataType::kF32},
                           [&](const std::vector<Expr>&) { return leaked; });
  EXPECT_FALSE(second.status().ok());
  Function bad_grad =
      GradientOf(first, {.wrt = std::vector<int>{3}});
  EXPECT_FALSE(bad_grad.status().ok());
  Jit jit;
  EXPECT_FALSE(jit.Apply(second, RandomData(0).args).ok());
}

TEST(StagedTest, IdentityGradientIsOnes) {
  Function id = Lambda("id", {DataType::kF64},
                       [](const std::vector<Expr>& a) { return a[0]; });
  Function grad = GradientOf(id, {});
  EXPECT_EQ(grad.name(), "id_grad");
  Jit jit;
  std::vector<TensorValue> args = {RandomData(9).args[1]};
  auto out = jit.Apply(grad, args);
  ASSERT_TRUE(out.ok()) << out.status();
  for (double v : out->at(0).ToDoubles()) EXPECT_EQ(v, 1);
}

TEST(StagedTest, ArithmeticOperatorsAndReductions) {
  Function h = Lambda("h", {DataType::kF64, DataType::kF64},
                      [](const std::vector<Expr>& a) {
                        Expr e = (a[0] - a[1]) * a[0] / Constant(2, DataType::kF64);
                        Expr l = Log(Exp(-e) + Constant(1, DataType::kF64));
                        return ReduceAdd(Transpose(l), 0);
                      });
  ASSERT_TRUE(h.status().ok()) << h.status();
  Jit jit;
  Data d = RandomData(4);
  std::vector<TensorValue> args = {d.args[0], d.args[0]};
  args[1] = TensorValue::FromDoubles({{kRows, kIn}, DataType::kF64},
                                     std::vector<double>(kRows * kIn, 0.5));
  auto out = jit.Apply(h, args);
  ASSERT_TRUE(out.ok()) << out.status();
  ASSERT_EQ(out->at(0).shape(), Shape({kRows}));
  for (int r = 0; r < kRows; ++r) {
    double expected = 0;
    for (int k = 0; k < kIn; ++k) {
      const double x = d.x[r * kIn + k];
      expected += std::log(std::exp(-(x - 0.5) * x / 2) + 1);
    }
    EXPECT_NEAR(out->at(0).GetDouble(r), expected, 1e-12);
  }
}

}  // namespace
}  // namespace dlc::staged
