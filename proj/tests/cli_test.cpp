// Copyright 2026 The Covernet Authors.
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

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI with stdout and stderr captured together.
Result run(const std::string& args) {
  const std::string cmd = std::string(COVERNET_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path(COVERNET_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Cli, MissingInputFileExitsTwoAndNamesPath) {
  const fs::path dir = fresh_dir("missing");
  const Result r = run("detect-eval --seed 1 --out " + dir.string() +
                       " --matrix /nonexistent/q.txt --durations /nonexistent/d.txt"
                       " --labels /nonexistent/l.txt");
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("/nonexistent/q.txt"), std::string::npos) << r.output;
}

TEST(Cli, MissingConfigExitsTwo) {
  const Result r = run("sweep --seed 1 --config /nonexistent/run.cfg");
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("/nonexistent/run.cfg"), std::string::npos) << r.output;
}

TEST(Cli, SeedIsRequired) {
  const Result r = run("sweep --out /tmp");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.output.find("seed"), std::string::npos) << r.output;
}

TEST(Cli, UnknownSettingIsRejected) {
  const Result r = run("sweep --seed 1 --set nonsense=3");
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_NE(r.output.find("nonsense"), std::string::npos);
}

TEST(Cli, ConfigFileThenFlags) {
  const fs::path dir = fresh_dir("config");
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "# small run\nn_groups=120\nsetup=1.1\ntrials=5\nalgorithm=PM1\n";
  }
  const Result r = run("detect-eval --seed 3 --config " + (dir / "run.cfg").string() +
                       " --trials 2 --out " + dir.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const std::string csv = slurp(dir / "detect_eval.csv");
  EXPECT_NE(csv.find("PM1,1.1,2,"), std::string::npos) << csv;
}

TEST(Cli, GenerateThenReadBack) {
  const fs::path dir = fresh_dir("generate");
  ASSERT_EQ(run("generate --seed 9 --set n_groups=60 --out " + dir.string()).exit_code, 0);
  for (const char* f : {"matrix.txt", "durations.txt", "labels.txt"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const Result r = run("prototype --seed 9 --out " + dir.string() + " --matrix " +
                       (dir / "matrix.txt").string() + " --durations " +
                       (dir / "durations.txt").string() + " --labels " +
                       (dir / "labels.txt").string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_TRUE(fs::exists(dir / "prototype.csv"));
}

// Every command twice with the same seed; the CSVs must match byte for byte.
TEST(Cli, SameSeedGivesIdenticalCsvs) {
  const std::string common =
      " --seed 21 --set n_groups=140 --trials 2 --setup 1.2 --set sweep_count=3"
      " --set grid.w_th=0.5,0.6 --set grid.d_th=0.5 --set grid.r_th=2"
      " --algorithm PM1,MO,SL,KM";
  for (const char* cmd : {"sweep", "detect-eval", "grid", "prototype", "generate"}) {
    const fs::path a = fresh_dir(std::string("det_a_") + cmd);
    const fs::path b = fresh_dir(std::string("det_b_") + cmd);
    ASSERT_EQ(run(std::string(cmd) + common + " --out " + a.string()).exit_code, 0) << cmd;
    ASSERT_EQ(run(std::string(cmd) + common + " --out " + b.string()).exit_code, 0) << cmd;
    int files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      ++files;
      EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename()))
          << cmd << " " << entry.path().filename();
    }
    EXPECT_GT(files, 0) << cmd;
  }
}

}  // namespace
