#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

class CliExit : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("qadv_cli_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  int run(const std::string& args) const {
    const std::string cmd = std::string(QADV_CLI_PATH) + " " + args + " >" + (dir_ / "stdout").string() + " 2>" +
                            (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path write(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  std::string tiny_config() const {
    return write("config.json", R"({"data": {"synthetic_rows": 120},
      "train": {"epochs": 1, "batch_size": 32, "qnn": {"hidden": [8]}, "explainer": {"n_samples": 8}}})")
        .string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliExit, MissingSubcommandIsUsageError) { EXPECT_EQ(run(""), 2); }

TEST_F(CliExit, HelpSucceeds) { EXPECT_EQ(run("--help"), 0); }

TEST_F(CliExit, UnknownModelIsConfigError) { EXPECT_EQ(run("train --synthetic --model resnet --out " + dir_.string()), 2); }

TEST_F(CliExit, UnknownConfigKeyIsConfigError) {
  const auto cfg = write("bad.json", R"({"train": {"epochz": 1}})");
  EXPECT_EQ(run("train --config " + cfg.string() + " --out " + (dir_ / "r").string()), 2);
}

TEST_F(CliExit, MissingColumnIsDataError) {
  const auto csv = write("cat.csv", "logRe,ZH\n1,2\n");
  EXPECT_EQ(run("train --data " + csv.string() + " --out " + (dir_ / "r").string()), 3);
}

TEST_F(CliExit, TrainThenVersionMismatch) {
  const auto out = dir_ / "run";
  ASSERT_EQ(run("train --config " + tiny_config() + " --synthetic --seed 3 --out " + out.string()), 0);
  ASSERT_TRUE(fs::exists(out / "checkpoint.json"));
  EXPECT_EQ(run("explain --checkpoint " + (out / "checkpoint.json").string() + " --rows 0-1"), 0);

  std::ifstream in(out / "checkpoint.json");
  auto doc = nlohmann::ordered_json::parse(in);
  doc["format_version"] = "9.0";
  const auto bumped = write("future.json", doc.dump());
  EXPECT_EQ(run("evaluate --checkpoint " + bumped.string() + " --out " + (dir_ / "e").string()), 5);
  EXPECT_EQ(run("explain --checkpoint " + (out / "checkpoint.json").string() + " --rows 99999"), 3);
}
