#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <gtest/gtest.h>

#include "qhmetric/matrix_io.hpp"
#include "qhmetric/report.hpp"
#include "test_support.hpp"

namespace qhm {
namespace {

namespace fs = std::filesystem;

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + QHMETRIC_CLI + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Family residuals near 2e-11: fails at residual_tol 1e-11, passes at 1e-8.
const std::string kNoisyModel =
    "analyze --model random --dim 8 --cond-bound 1000 --model-seed 3 --samples 5";

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("qhmetric_cli_" + name);
}

TEST(Cli, ExitCodes) {
  const fs::path identity = temp_path("identity.json");
  io::write_matrix(ComplexMatrix::Identity(2, 2), identity);
  EXPECT_EQ(run("analyze " + identity.string() + " --samples 1"), 0);

  const fs::path rotation = temp_path("rotation.json");
  io::write_matrix(testing::from_real({{0, 1}, {-1, 0}}), rotation);
  EXPECT_EQ(run("analyze " + rotation.string()), 1);

  EXPECT_EQ(run("analyze --model two_level --b 1 --c 4 --samples 5 --seed 7"), 0);
  EXPECT_EQ(run(kNoisyModel + " --tol 1e-11"), 2);
  EXPECT_EQ(run("analyze"), 1);
  EXPECT_EQ(run("analyze --bogus-flag"), 1);
  EXPECT_EQ(run("spectrum --model swanson --dim 20"), 0);
  EXPECT_EQ(run("family --model swanson --dim 12 --samples 2"), 0);
}

TEST(Cli, WritesReportFile) {
  const fs::path out = temp_path("report.json");
  fs::remove(out);
  ASSERT_EQ(run("analyze --model two_level --b 1 --c 4 --seed 7 --out " + out.string()), 0);
  const VerificationReport r = read_report(out);
  EXPECT_EQ(r.verdict, "pass");
  EXPECT_LE(testing::max_abs_diff(*r.eta, testing::from_real({{1.6, 0}, {0, 0.4}})), 1e-12);
  EXPECT_EQ(r.input["model"], "two_level");
  EXPECT_FALSE(r.timestamp.empty());
}

TEST(Cli, ByteIdenticalWithoutTimestamp) {
  const fs::path a = temp_path("a.json");
  const fs::path b = temp_path("b.json");
  const std::string args = "analyze --model random --dim 6 --model-seed 4 --samples 3 --no-timestamp --out ";
  ASSERT_EQ(run(args + a.string()), 0);
  ASSERT_EQ(run(args + b.string()), 0);
  std::ifstream fa(a), fb(b);
  const std::string sa((std::istreambuf_iterator<char>(fa)), {});
  const std::string sb((std::istreambuf_iterator<char>(fb)), {});
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);
}

TEST(Cli, EnvironmentToleranceHasLowestPrecedence) {
  const std::string env = std::string(kToleranceEnvVar) + "=residual_tol=1e-11";
  EXPECT_EQ(run(kNoisyModel, env), 2);
  EXPECT_EQ(run(kNoisyModel + " --tol 1e-8", env), 0);
  EXPECT_EQ(run("analyze --model two_level --c 4", std::string(kToleranceEnvVar) + "=nonsense"), 1);
}

}  // namespace
}  // namespace qhm
