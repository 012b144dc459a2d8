#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status = -1;
  std::string output;
};

Outcome run_cli(const std::string& args) {
  const std::string cmd = std::string(TBIPED_CLI_PATH) + " " + args + " 2>&1";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) o.output += buf;
  const int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tbiped_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

TEST_F(Cli, DefaultTrotWritesFiveThousandRows) {
  const Outcome o = run_cli("run --out " + dir_.string());
  ASSERT_EQ(o.status, 0) << o.output;
  EXPECT_NE(o.output.find("mean_thrust="), std::string::npos);
  EXPECT_NE(o.output.find("max_abs_roll="), std::string::npos);
  EXPECT_NE(o.output.find("final_body_z="), std::string::npos);
  std::ifstream in(dir_ / "telemetry.csv");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 5000 + 2);
}

TEST_F(Cli, SameSeedByteIdentical) {
  const fs::path cfg = write("a.cfg",
                             "[scenario]\nkind = drop_then_trot\nduration = 2\noutput = a.csv\n"
                             "[imu]\nnoise_sigma = 0.01\nspike_prob = 0.02\nspike_mag = 0.1\n");
  ASSERT_EQ(run_cli("run --config " + cfg.string() + " --seed 5 --out " + (dir_ / "1").string()).status, 0);
  ASSERT_EQ(run_cli("run --config " + cfg.string() + " --seed 5 --out " + (dir_ / "2").string()).status, 0);
  ASSERT_EQ(run_cli("run --config " + cfg.string() + " --seed 6 --out " + (dir_ / "3").string()).status, 0);
  const std::string a = slurp(dir_ / "1" / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "2" / "a.csv"));
  EXPECT_NE(a, slurp(dir_ / "3" / "a.csv"));
}

TEST_F(Cli, ParallelScenariosMatchSerialRuns) {
  const fs::path a = write("a.cfg", "[scenario]\nduration = 1\noutput = a.csv\n");
  const fs::path b = write("b.cfg", "[scenario]\nkind = drop_then_trot\nduration = 1\noutput = b.csv\n");
  const Outcome both = run_cli("run --config " + a.string() + " --config " + b.string() + " --out " +
                               (dir_ / "p").string());
  ASSERT_EQ(both.status, 0) << both.output;
  EXPECT_NE(both.output.find("first_contact="), std::string::npos);
  ASSERT_EQ(run_cli("run --config " + b.string() + " --out " + (dir_ / "s").string()).status, 0);
  EXPECT_EQ(slurp(dir_ / "p" / "b.csv"), slurp(dir_ / "s" / "b.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "p" / "a.csv"));
}

TEST_F(Cli, ConfigErrorsExitTwo) {
  const fs::path bad = write("bad.cfg", "[gait]\nduty = 1.5\n");
  EXPECT_EQ(run_cli("run --config " + bad.string() + " --out " + dir_.string()).status, 2);
  const fs::path unknown = write("unknown.cfg", "[gait]\nstride = 1\n");
  const Outcome o = run_cli("run --config " + unknown.string() + " --out " + dir_.string());
  EXPECT_EQ(o.status, 2);
  EXPECT_NE(o.output.find("line 2"), std::string::npos);
  EXPECT_EQ(run_cli("run --config " + (dir_ / "missing.cfg").string()).status, 2);
}

TEST_F(Cli, DivergenceExitsThree) {
  const fs::path cfg = write("div.cfg",
                             "[scenario]\nduration = 1\n[robot]\nmass = 0.01\n"
                             "[disturbance]\nforce_x = 1e308\nstart = 0.5\nduration = 1\n");
  const Outcome o = run_cli("run --config " + cfg.string() + " --out " + dir_.string());
  EXPECT_EQ(o.status, 3);
  EXPECT_NE(o.output.find("t=0.5"), std::string::npos) << o.output;
}

TEST_F(Cli, PlotAllFigures) {
  const fs::path cfg = write("short.cfg", "[scenario]\nduration = 0.5\n");
  ASSERT_EQ(run_cli("run --config " + cfg.string() + " --out " + dir_.string()).status, 0);
  const Outcome o = run_cli("plot " + (dir_ / "telemetry.csv").string() + " --figure all --out " +
                            (dir_ / "fig").string());
  ASSERT_EQ(o.status, 0) << o.output;
  for (const char* name : {"joints-left", "joints-right", "body", "grf", "imu", "capture"}) {
    EXPECT_TRUE(fs::exists(dir_ / "fig" / (std::string(name) + ".svg"))) << name;
  }
  EXPECT_EQ(run_cli("plot " + (dir_ / "telemetry.csv").string() + " --figure bogus").status, 2);
}

TEST_F(Cli, CalcRigidityWorkedExample) {
  const Outcome o = run_cli("calc-rigidity --ef 50e9 --ec 1e9 --t 0.001 --c 0.01 --b 0.02");
  ASSERT_EQ(o.status, 0);
  EXPECT_NE(o.output.find("total         = 62.3333333"), std::string::npos) << o.output;
  EXPECT_EQ(run_cli("calc-rigidity --ef 50e9 --ec 1e9 --t 0 --c 0.01 --b 0.02").status, 2);
}

TEST_F(Cli, PrintDefaultConfigRoundTrips) {
  const Outcome o = run_cli("print-default-config");
  ASSERT_EQ(o.status, 0);
  const fs::path cfg = write("defaults.cfg", o.output);
  const Outcome again = run_cli("run --config " + cfg.string() + " --out " + dir_.string());
  EXPECT_EQ(again.status, 0) << again.output;
}

}  // namespace
