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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "cli.h"

namespace dlc {
namespace {

using ::testing::HasSubstr;
using ::testing::IsEmpty;
using ::testing::Not;
using ::testing::StartsWith;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Dlc(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = RunDlc(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Corpus(const std::string& path) {
  return test::TestDataDir() + "/corpus/" + path;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("dlc_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& contents) {
    std::string path = (dir_ / name).string();
    std::ofstream(path, std::ios::binary) << contents;
    return path;
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, ValidCorpusVerifies) {
  for (const std::string& path : test::ListFiles(Corpus("valid"), ".dl")) {
    Result r = Dlc({"verify", path});
    EXPECT_EQ(r.code, kExitOk) << path << "\n" << r.err;
    EXPECT_THAT(r.err, IsEmpty());
  }
}

// Each invalid file names its exit code and a diagnostic substring.
TEST_F(CliTest, InvalidCorpusMatchesExpectations) {
  std::vector<std::string> files = test::ListFiles(Corpus("invalid"), ".dl");
  ASSERT_GE(files.size(), 15u);
  for (const std::string& path : files) {
    std::string text = test::ReadFileOrDie(path);
    int expected_exit = -1;
    std::string expected_error;
    for (absl::string_view line : absl::StrSplit(text, '\n')) {
      if (absl::ConsumePrefix(&line, "// EXPECT-EXIT: ")) {
        ASSERT_TRUE(absl::SimpleAtoi(line, &expected_exit)) << path;
      } else if (absl::ConsumePrefix(&line, "// EXPECT-ERROR: ")) {
        expected_error = std::string(line);
      }
    }
    ASSERT_NE(expected_exit, -1) << path;
    ASSERT_FALSE(expected_error.empty()) << path;
    // Gradient problems only surface once declarations are expanded.
    Result verify = Dlc({"verify", path});
    Result diff = Dlc({"diff", path});
    const Result& r = verify.code != kExitOk ? verify : diff;
    EXPECT_EQ(r.code, expected_exit) << path << "\n" << r.err;
    EXPECT_THAT(r.err, HasSubstr(expected_error)) << path;
    // Located: file:line:col, or file-level for module-wide problems.
    EXPECT_THAT(r.err, StartsWith(path + ":")) << r.err;
  }
}

TEST_F(CliTest, DiffOptRunPipeline) {
  std::string canonical = Write("canonical.dl", "");
  std::string optimized = Write("optimized.dl", "");
  ASSERT_EQ(Dlc({"diff", Corpus("valid/adjoint_rules.dl"), "-o", canonical})
                .code,
            kExitOk);
  Result opt = Dlc({"opt", canonical, "-p", "dce,cse", "-o", optimized,
                    "--print-changed"});
  ASSERT_EQ(opt.code, kExitOk) << opt.err;
  std::string inputs = Write("inputs.txt",
                             "# x\n<4 x f64> [0.5, -1.0, 2.0, 0.25]\n");
  Result a = Dlc({"run", canonical, "-f", "@halves_product_grad", "--inputs",
                  inputs});
  Result b = Dlc({"run", optimized, "-f", "halves_product_grad", "--inputs",
                  inputs});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(a.out, b.out);
  // d/dx of (x0 x2, x1 x3) summed.
  EXPECT_EQ(a.out, "<4 x f64> [2.0, 0.25, 0.5, -1.0]\n");
}

TEST_F(CliTest, OptPrintsModuleAndChangedPasses) {
  Result r = Dlc({"opt", Corpus("valid/dot_chain.dl"), "-p",
                  "matmul-reorder,dce", "--print-changed"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_THAT(r.out, StartsWith("module \"chain\""));
  EXPECT_THAT(r.err, HasSubstr("changed: matmul-reorder"));
  EXPECT_THAT(r.err, Not(HasSubstr("changed: dce")));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Dlc({}).code, kExitUsage);
  EXPECT_EQ(Dlc({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Dlc({"opt", Corpus("valid/casts.dl")}).code, kExitUsage);
  Result unknown = Dlc({"opt", Corpus("valid/casts.dl"), "-p", "inline"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_THAT(unknown.err, HasSubstr("inline"));
  EXPECT_EQ(Dlc({"verify", (dir_ / "missing.dl").string()}).code, kExitUsage);
  EXPECT_EQ(Dlc({"run", Corpus("valid/casts.dl"), "-f", "nope"}).code,
            kExitUsage);
  EXPECT_EQ(Dlc({"run", Corpus("valid/casts.dl"), "-f", "to_scalar"}).code,
            kExitUsage);
  std::string wrong = Write("wrong.txt", "<2 x f32> [1.0, 2.0]\n");
  EXPECT_EQ(Dlc({"run", Corpus("valid/casts.dl"), "-f", "to_scalar",
                 "--inputs", wrong})
                .code,
            kExitUsage);
  std::string garbage = Write("garbage.txt", "<1 x 1 x f32> [1.0, \n");
  Result bad = Dlc({"run", Corpus("valid/casts.dl"), "-f", "to_scalar",
                    "--inputs", garbage});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_THAT(bad.err, HasSubstr("garbage.txt:1:"));
  EXPECT_EQ(Dlc({"--help"}).code, kExitOk);
}

TEST_F(CliTest, RuntimeTrap) {
  std::string module = Write("div.dl", R"(module "m"
stage raw

func @div: (i32, i32) -> i32 {
'entry(%a: i32, %b: i32):
    %q = divide %a: i32, %b: i32
    return %q: i32
}
)");
  std::string inputs = Write("in.txt", "<i32> [7]\n<i32> [0]\n");
  Result r = Dlc({"run", module, "-f", "div", "--inputs", inputs});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_THAT(r.err, HasSubstr("division by zero"));
  std::string ok = Write("ok.txt", "<i32> [7]\n<i32> [-2]\n");
  Result q = Dlc({"run", module, "-f", "div", "--inputs", ok, "-o",
                  (dir_ / "out.txt").string()});
  EXPECT_EQ(q.code, kExitOk);
  EXPECT_EQ(test::ReadFileOrDie((dir_ / "out.txt").string()), "<i32> [-3]\n");
}

TEST_F(CliTest, UnitResultPrintsNothing) {
  Result r = Dlc({"run", Corpus("valid/unit_return.dl"), "-f",
                  "nothing"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(r.out, IsEmpty());
}

}  // namespace
}  // namespace dlc
