#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fracdyn/config.hpp"
#include "fracdyn/scenarios.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result cli(const std::string& args, const std::string& env = "") {
  const fs::path log = fs::temp_directory_path() / "fracdyn_cli_test.log";
  const std::string cmd = env + " '" FRACDYN_CLI_PATH "' " + args + " > '" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

const std::string kScenarios = FRACDYN_SCENARIO_DIR;
const std::string kData = FRACDYN_TEST_DATA_DIR;

TEST(Cli, ListsScenarios) {
  const Result r = cli("scenarios list");
  EXPECT_EQ(r.code, 0);
  for (const auto& s : fracdyn::builtin_scenarios()) EXPECT_NE(r.out.find(s.name), std::string::npos);
}

TEST(Cli, ExportMatchesShippedFile) {
  const fs::path out = fs::temp_directory_path() / "fracdyn_cli_export.json";
  EXPECT_EQ(cli("scenarios export pendulum_hybrid_classical -f '" + out.string() + "'").code, 0);
  EXPECT_EQ(fracdyn::load_config_file(out.string()),
            fracdyn::load_config_file(kScenarios + "/pendulum_hybrid_classical.json"));
  EXPECT_EQ(cli("scenarios export nope").code, 2);
}

TEST(Cli, ValidateShippedConfig) {
  const Result r = cli("validate '" + kScenarios + "/pendulum_fuzzy_frac.json'");
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, MissingGridNIsConfigError) {
  const Result r = cli("validate '" + kData + "/missing_grid_n.json'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("grid.N"), std::string::npos) << r.out;
}

TEST(Cli, BadArgumentsAreConfigErrors) {
  EXPECT_EQ(cli("run").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
}

TEST(Cli, MissingFileIsIoError) {
  EXPECT_EQ(cli("run /nonexistent/config.json").code, 4);
}

TEST(Cli, UnwritableOutputIsIoError) {
  EXPECT_EQ(cli("run --scenario pendulum_hybrid_frac -o /proc/fracdyn_cannot_write").code, 4);
}

TEST(Cli, DivergingRunIsNumericAbort) {
  const Result r = cli("run '" + kData + "/diverging_hybrid.json' -o '" +
                       (fs::temp_directory_path() / "fracdyn_cli_diverge").string() + "'");
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_NE(r.out.find("step"), std::string::npos);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const fs::path dir = fs::temp_directory_path() / "fracdyn_cli_env";
  fs::remove_all(dir);
  const Result r = cli("run --scenario pendulum_hybrid_frac", "FRACDYN_OUTPUT_DIR='" + dir.string() + "'");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir / "pendulum_hybrid_frac.csv"));
  EXPECT_TRUE(fs::exists(dir / "pendulum_hybrid_frac.manifest.json"));
  fs::remove_all(dir);
}

TEST(Cli, SweepWritesSummary) {
  const fs::path dir = fs::temp_directory_path() / "fracdyn_cli_sweep";
  fs::remove_all(dir);
  const Result r = cli("sweep '" + kData + "/small_sweep.json' -o '" + dir.string() + "'");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir / "small_sweep_summary.csv"));
  fs::remove_all(dir);
}

}  // namespace
