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

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "dlc/analysis/differentiability.h"
#include "dlc/analysis/dominance.h"
#include "dlc/analysis/effects.h"
#include "dlc/analysis/verifier.h"
#include "dlc/text/parser.h"
#include "absl/strings/str_cat.h"

namespace dlc {
namespace {

using ::testing::HasSubstr;
using ::testing::IsEmpty;
using ::testing::Not;

constexpr char kDiamond[] = R"(module "m"
stage raw

func @f: (<2 x f32>, bool) -> <2 x f32> {
'entry(%x: <2 x f32>, %c: bool):
    %t = tanh %x: <2 x f32>
    conditional %c: bool then 'left() else 'right()
'left():
    %l = exp %t: <2 x f32>
    branch 'join(%l: <2 x f32>)
'right():
    branch 'join(%t: <2 x f32>)
'join(%r: <2 x f32>):
    return %r: <2 x f32>
'dead():
    return %x: <2 x f32>
}
)";

TEST(DominanceTest, DiamondTree) {
  auto module = test::ParseOrDie(kDiamond);
  const Function& f = *module->FindFunction("f");
  DominatorTree tree(f);
  BasicBlock* entry = f.FindBlock("entry");
  BasicBlock* left = f.FindBlock("left");
  BasicBlock* right = f.FindBlock("right");
  BasicBlock* join = f.FindBlock("join");
  BasicBlock* dead = f.FindBlock("dead");
  EXPECT_EQ(tree.root(), entry);
  EXPECT_EQ(tree.idom(entry), nullptr);
  EXPECT_EQ(tree.idom(left), entry);
  EXPECT_EQ(tree.idom(right), entry);
  EXPECT_EQ(tree.idom(join), entry);
  EXPECT_EQ(tree.idom(dead), nullptr);
  EXPECT_TRUE(tree.Dominates(entry, join));
  EXPECT_TRUE(tree.Dominates(join, join));
  EXPECT_FALSE(tree.Dominates(left, join));
  EXPECT_FALSE(tree.Dominates(entry, dead));
  EXPECT_FALSE(tree.IsReachable(dead));
  EXPECT_EQ(tree.children(entry).size(), 3u);

  const Instruction* exp = left->instruction(0);
  const Instruction* t = entry->instruction(0);
  EXPECT_TRUE(tree.DominatesUse(*t, *exp));
  EXPECT_TRUE(tree.DominatesUse(*entry->param(0), *exp));
  EXPECT_FALSE(tree.DominatesUse(*exp, *join->terminator()));
  EXPECT_TRUE(tree.DominatesUse(*join->param(0), *join->terminator()));
}

TEST(DominanceTest, LoopHeaderDominatesBody) {
  auto module = test::ParseOrDie(test::ReadFileOrDie(
      test::TestDataDir() + "/corpus/valid/control_flow_loop.dl"));
  const Function& f = *module->FindFunction("triangular");
  DominatorTree tree(f);
  BasicBlock* header = f.FindBlock("header");
  EXPECT_EQ(tree.idom(f.FindBlock("body")), header);
  EXPECT_EQ(tree.idom(f.FindBlock("exit")), header);
  EXPECT_FALSE(tree.Dominates(f.FindBlock("body"), header));
}

TEST(VerifierTest, ValidCorpusIsClean) {
  for (const std::string& path :
       test::ListFiles(test::TestDataDir() + "/corpus/valid", ".dl")) {
    auto module = test::ParseOrDie(test::ReadFileOrDie(path));
    EXPECT_THAT(VerifyModule(*module), IsEmpty()) << path;
  }
}

TEST(VerifierTest, ReportsLocatedDominanceViolation) {
  ParseResult parsed = ParseModule(test::ReadFileOrDie(
      test::TestDataDir() + "/corpus/invalid/dominance_diamond.dl"));
  ASSERT_TRUE(parsed.ok());
  std::vector<Diagnostic> diagnostics = VerifyModule(*parsed.module);
  ASSERT_EQ(diagnostics.size(), 1u);
  EXPECT_THAT(diagnostics[0].message, HasSubstr("does not dominate"));
  EXPECT_EQ(diagnostics[0].line, 15);
  EXPECT_GT(diagnostics[0].column, 0);
  EXPECT_THAT(diagnostics[0].Render("x.dl"), HasSubstr("x.dl:15:"));
  EXPECT_FALSE(VerifyModuleStatus(*parsed.module).ok());
}

TEST(VerifierTest, ReportsEveryViolation) {
  auto module = test::ParseOrDie(R"(module "m"
stage raw

func @f: (<2 x f32>) -> <2 x f32> {
'entry(%x: <2 x f32>):
    branch 'next(%x: <2 x f32>, %x: <2 x f32>)
'next(%a: <2 x f32>):
    return %a: <2 x f32>
}

func @g: (<2 x f32>) -> <3 x f32> {
'entry(%x: <2 x f32>):
    return %x: <2 x f32>
}
)");
  std::vector<Diagnostic> diagnostics = VerifyModule(*module);
  ASSERT_EQ(diagnostics.size(), 2u);
  EXPECT_EQ(diagnostics[0].line, 6);
  EXPECT_EQ(diagnostics[1].line, 13);
}

TEST(VerifierTest, InvalidCorpusVerifierCasesFail) {
  // Files expecting exit 1 parse but must not verify.
  int checked = 0;
  for (const std::string& path :
       test::ListFiles(test::TestDataDir() + "/corpus/invalid", ".dl")) {
    std::string text = test::ReadFileOrDie(path);
    if (text.find("// EXPECT-EXIT: 1") == std::string::npos) continue;
    ParseResult parsed = ParseModule(text);
    ASSERT_TRUE(parsed.ok()) << path;
    EXPECT_THAT(VerifyModule(*parsed.module), Not(IsEmpty())) << path;
    ++checked;
  }
  EXPECT_GE(checked, 8);
}

TEST(EffectsTest, OpaqueCalleesAreImpure) {
  auto module = test::ParseOrDie(test::ReadFileOrDie(
      test::TestDataDir() + "/corpus/valid/declarations.dl"));
  EffectInfo effects(*module);
  const Function* host = module->FindFunction("host_log");
  const Function* square = module->FindFunction("logged_square");
  EXPECT_FALSE(effects.FunctionIsPure(host));
  EXPECT_FALSE(effects.FunctionIsPure(square));
  const Instruction* call = square->entry()->instruction(0);
  Effects e = effects.Of(*call);
  EXPECT_FALSE(e.pure);
  EXPECT_TRUE(e.calls_opaque);
  EXPECT_TRUE(effects.IsPure(*square->entry()->instruction(1)));
  EXPECT_TRUE(effects.Of(*square->entry()->terminator()).control);
}

TEST(EffectsTest, BodiedCalleesArePure) {
  auto module = test::ParseOrDie(test::ReadFileOrDie(
      test::TestDataDir() + "/corpus/valid/apply_interprocedural.dl"));
  EffectInfo effects(*module);
  for (const auto& f : module->functions()) {
    if (!f->is_declaration()) EXPECT_TRUE(effects.FunctionIsPure(f.get()));
  }
}

absl::Status Check(const std::string& body, GradientConfig config) {
  auto module = test::ParseOrDie(absl::StrCat(
      "module \"m\"\nstage raw\n\n", body));
  config.source = "f";
  return CheckDifferentiability(*module->FindFunction("f"), config);
}

TEST(DifferentiabilityTest, AcceptsSmoothSingleBlock) {
  EXPECT_TRUE(Check(R"(func @f: (<2 x f32>) -> f32 {
'entry(%x: <2 x f32>):
    %t = tanh %x: <2 x f32>
    %s = reduce %t: <2 x f32> by add along 0
    return %s: f32
}
)", {}).ok());
}

TEST(DifferentiabilityTest, RejectsControlFlow) {
  absl::Status s = Check(kDiamond + std::string(kDiamond).find("func"), {});
  EXPECT_EQ(s.code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_THAT(s.message(), HasSubstr("single-block"));
}

TEST(DifferentiabilityTest, RejectsIntegerArguments) {
  GradientConfig config;
  config.wrt = std::vector<int>{1};
  absl::Status s = Check(R"(func @f: (<2 x f32>, <2 x i32>) -> <2 x f32> {
'entry(%x: <2 x f32>, %n: <2 x i32>):
    return %x: <2 x f32>
}
)", config);
  EXPECT_THAT(s.message(), HasSubstr("non-differentiable dtype"));
}

TEST(DifferentiabilityTest, RejectsReduceMultiplyOnlyWhenActive) {
  const std::string body = R"(func @f: (<2 x f32>, <2 x f32>) -> (f32, f32) {
'entry(%x: <2 x f32>, %y: <2 x f32>):
    %p = reduce %x: <2 x f32> by multiply along 0
    %q = reduce %y: <2 x f32> by add along 0
    return %p: f32, %q: f32
}
)";
  GradientConfig config;
  absl::Status s = Check(body, config);
  EXPECT_EQ(s.code(), absl::StatusCode::kUnimplemented);
  EXPECT_THAT(s.message(), HasSubstr("reduce by multiply"));
  config.from = 1;
  EXPECT_TRUE(Check(body, config).ok());
  config.from = 0;
  config.wrt = std::vector<int>{1};
  EXPECT_TRUE(Check(body, config).ok());
}

TEST(DifferentiabilityTest, RejectsOpaqueCallee) {
  absl::Status s = Check(R"(func @g: (<2 x f32>) -> <2 x f32>

func @f: (<2 x f32>) -> <2 x f32> {
'entry(%x: <2 x f32>):
    %y = apply @g(%x: <2 x f32>): (<2 x f32>) -> <2 x f32>
    return %y: <2 x f32>
}
)", {});
  EXPECT_THAT(s.message(), HasSubstr("no body"));
}

TEST(DifferentiabilityTest, ActiveValuesNeedBothDependencies) {
  auto module = test::ParseOrDie(R"(module "m"
stage raw

func @f: (<2 x f32>, <2 x f32>) -> (<2 x f32>, <2 x f32>) {
'entry(%x: <2 x f32>, %y: <2 x f32>):
    %a = tanh %x: <2 x f32>
    %b = exp %y: <2 x f32>
    %c = multiply %a: <2 x f32>, %b: <2 x f32>
    %d = negate %a: <2 x f32>
    return %c: <2 x f32>, %d: <2 x f32>
}
)");
  const Function& f = *module->FindFunction("f");
  Value* out = *SelectedOutput(f, 0);
  auto active = ActiveValues(f, {0}, out);
  const BasicBlock* entry = f.entry();
  EXPECT_TRUE(active.contains(entry->instruction(0)));   // a
  EXPECT_FALSE(active.contains(entry->instruction(1)));  // b: not varied
  EXPECT_TRUE(active.contains(entry->instruction(2)));   // c
  EXPECT_FALSE(active.contains(entry->instruction(3)));  // d: not useful
  EXPECT_FALSE(SelectedOutput(f, 2).ok());
}

}  // namespace
}  // namespace dlc
