#include "fexray/cli.hpp"
#include "fexray/image_io.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace fexray;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fexray_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateRenderAndCompare) {
  CliResult r = run({"generate-ball", "--elements", "48", "--mesh", path("ball.mesh"), "--field", path("ball.field")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("elements 48"), std::string::npos);

  write("render.cfg",
        "mesh = ball.mesh\nfield = ball.field\nrays_per_cm2 = 400\nstep = 0.02\noracle = ball\n"
        "output_grid = out/density.fxg\noutput_pgm = density.pgm\noutput_stats = stats.json\n");
  fs::create_directories(dir_ / "out");
  r = run({"render", path("render.cfg"), "--threads", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto stats = nlohmann::json::parse(r.out);
  EXPECT_EQ(stats["nu"], stats["nv"]);
  const int n = stats["nu"];
  EXPECT_EQ(n, 40);
  EXPECT_NEAR(stats["mass"].get<double>(), 4.18879, 0.2);
  EXPECT_LT(stats["error"]["max_error"].get<double>(), 0.6);
  EXPECT_TRUE(fs::exists(path("density.pgm")));
  std::ifstream saved(path("stats.json"));
  EXPECT_EQ(nlohmann::json::parse(saved)["mass"], stats["mass"]);

  r = run({"error-map", path("out/density.fxg"), "--oracle", "ball", "--output", path("err.fxg")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["max_error"], stats["error"]["max_error"]);
  EXPECT_EQ(read_float_grid_file(path("err.fxg")).values.size(), static_cast<std::size_t>(n * n));
}

TEST_F(CliTest, SerialAndBruteForceAgree) {
  ASSERT_EQ(run({"generate-ball", "--mesh", path("b.mesh"), "--field", path("b.field")}).code, 0);
  write("a.cfg", "mesh = b.mesh\nfield = b.field\npitch = 0.2\nstep = 0.05\noutput_grid = a.fxg\n");
  write("b.cfg", "mesh = b.mesh\nfield = b.field\npitch = 0.2\nstep = 0.05\noutput_grid = b.fxg\n");
  ASSERT_EQ(run({"render", path("a.cfg"), "--serial"}).code, 0);
  ASSERT_EQ(run({"render", path("b.cfg"), "--brute-force"}).code, 0);
  EXPECT_EQ(read_float_grid_file(path("a.fxg")).values, read_float_grid_file(path("b.fxg")).values);
}

TEST_F(CliTest, InfoMatchesGenerator) {
  ASSERT_EQ(run({"generate-cylinder", "--mesh", path("c.mesh"), "--field", path("c.field")}).code, 0);
  const CliResult r = run({"info", path("c.mesh"), "--field", path("c.field"), "--tree", "10",
                     "--dump-tree", path("tree.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("elements 2142"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("order quadratic"), std::string::npos);
  EXPECT_NE(r.out.find("tree_leaves"), std::string::npos);
  std::ifstream tree(path("tree.json"));
  EXPECT_TRUE(nlohmann::json::parse(tree).is_object());
}

TEST_F(CliTest, MissingMeshIsValidationError) {
  write("r.cfg", "mesh = nowhere.mesh\nfield = nowhere.field\nrays_per_cm2 = 100\n");
  const CliResult r = run({"render", path("r.cfg")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("nowhere.mesh"), std::string::npos) << r.err;
}

TEST_F(CliTest, BadConfigIsValidationError) {
  write("r.cfg", "mesh = m\nfield = f\nrays_per_cm2 = 100\nstep = 0\n");
  const CliResult r = run({"render", path("r.cfg")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("step"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"render"}).code, kExitUsage);
  EXPECT_EQ(run({"error-map", "g.fxg", "--oracle", "cube"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}
