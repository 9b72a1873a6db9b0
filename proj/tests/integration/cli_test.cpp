// Copyright 2026 The Surro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "surro/dataset.hpp"
#include "surro/doe.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("surro_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Exit status of the binary with stdout/stderr sent to a log file.
  int run(const std::string& args) const {
    const std::string cmd = std::string("\"") + SURRO_CLI_PATH + "\" " + args + " > \"" +
                            (dir_ / "log.txt").string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string out(const std::string& sub) const { return "--out \"" + (dir_ / sub).string() + "\""; }

  // Labelled DOE with synthetic crash outputs.
  fs::path labelled(int n) const {
    const auto X = surro::lhs_sample(surro::DesignSpace::standard(), n, 11);
    const auto path = dir_ / "data.csv";
    surro::write_dataset(path, surro::testing::make_crash_dataset(X));
    return path;
  }

  fs::path dir_;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_F(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("train"), 2);
  EXPECT_EQ(run("doe --n 0 " + out("a")), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("train --data \"" + labelled(20).string() + "\" --model forest " + out("a")), 2);
}

TEST_F(Cli, RuntimeErrorsExitWithOne) {
  const auto bad = dir_ / "bad.csv";
  std::ofstream(bad) << "x,y\n1,2\n";
  EXPECT_EQ(run("train --data \"" + bad.string() + "\" " + out("a")), 1);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, DoeIsReproducible) {
  ASSERT_EQ(run("--seed 5 doe --n 37 " + out("a")), 0);
  ASSERT_EQ(run("--seed 5 --threads 1 doe --n 37 " + out("b")), 0);
  ASSERT_EQ(run("--seed 6 doe --n 37 " + out("c")), 0);
  const auto a = slurp(dir_ / "a" / "doe.csv");
  EXPECT_EQ(a, slurp(dir_ / "b" / "doe.csv"));
  EXPECT_NE(a, slurp(dir_ / "c" / "doe.csv"));
  const auto loaded = surro::load_dataset(dir_ / "a" / "doe.csv", surro::Schema::design_only());
  EXPECT_EQ(loaded.data.rows(), 37);
  EXPECT_EQ(loaded.dropped, 0u);
}

TEST_F(Cli, TrainPredictPropagate) {
  const auto data = labelled(60);
  ASSERT_EQ(run("train --data \"" + data.string() + "\" --restarts 1 " + out("m")), 0) << slurp(dir_ / "log.txt");
  const auto model = dir_ / "m" / "model.json";
  ASSERT_TRUE(fs::exists(model));
  EXPECT_TRUE(fs::exists(dir_ / "m" / "report.csv"));

  ASSERT_EQ(run("doe --n 5 " + out("p")), 0);
  ASSERT_EQ(run("predict --model \"" + model.string() + "\" --points \"" + (dir_ / "p" / "doe.csv").string() + "\" " +
                out("p")),
            0)
      << slurp(dir_ / "log.txt");
  std::ifstream in(dir_ / "p" / "predictions.csv");
  std::string line;
  while (std::getline(in, line) && line.starts_with('#')) {
  }
  EXPECT_NE(line.find("n_ls"), std::string::npos);
  for (const char* col : {"F_p_mean", "F_p_std", "F_p_lo95", "F_p_hi95", "dY_node_hi95"}) {
    EXPECT_NE(line.find(col), std::string::npos) << col;
  }
  int rows = 0;
  while (std::getline(in, line)) rows += !line.empty();
  EXPECT_EQ(rows, 5);

  ASSERT_EQ(run("propagate --model \"" + model.string() + "\" --case 2 --stack B --samples 3000 " + out("mc")), 0)
      << slurp(dir_ / "log.txt");
  EXPECT_TRUE(fs::exists(dir_ / "mc" / "mc_summary.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "mc" / "mc_hist_SEA.csv"));
  EXPECT_EQ(run("propagate --model \"" + model.string() + "\" --case 7 " + out("mc")), 2);
}

TEST_F(Cli, CrossValidationIsByteIdentical) {
  const auto data = labelled(40);
  const std::string args = "--seed 3 cv --data \"" + data.string() + "\" --model ridge --k 4 --repeats 2 ";
  ASSERT_EQ(run(args + out("a")), 0) << slurp(dir_ / "log.txt");
  ASSERT_EQ(run(args + "--threads 1 " + out("b")), 0);
  for (const char* file : {"cv_repeats.csv", "cv_summary.csv"}) {
    EXPECT_EQ(slurp(dir_ / "a" / file), slurp(dir_ / "b" / file)) << file;
  }
}

}  // namespace
