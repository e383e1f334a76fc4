#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>

#include "apmeas/io.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using apmeas::cli::run;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("apmeas_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GalleryWritesMeasure) {
  ASSERT_EQ(run({"gallery", "--name", "ex1", "--n", "4", "--out", path("m.json")}), 0);
  const auto mu = apmeas::read_measure(path("m.json"));
  EXPECT_EQ(mu.pp().atoms().size(), 4u);
}

TEST_F(Cli, NormReportsValueAndConfig) {
  ASSERT_EQ(run({"gallery", "--name", "ex1", "--n", "4", "--out", path("m.json")}), 0);
  ASSERT_EQ(run({"norm", "--measure", path("m.json"), "--window", "0,1", "--out", path("n.json")}), 0);
  const auto j = json::parse(apmeas::read_text(path("n.json")));
  EXPECT_DOUBLE_EQ(j.at("value").get<double>(), 1.0);
  EXPECT_EQ(j.at("config").at("subcommand"), "norm");
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"norm", "--bogus"}), 2);
  EXPECT_EQ(run({"norm", "--measure", "gallery:nope"}), 2);
  EXPECT_EQ(run({"norm", "--measure", path("missing.json")}), 2);
  EXPECT_EQ(run({"norm", "--measure", "gallery:ex1:n=2", "--window", "1,0"}), 2);
  EXPECT_EQ(run(std::vector<std::string>{}), 2);
}

TEST_F(Cli, EdgeRefusalExitsThree) {
  EXPECT_EQ(run({"norm", "--measure", "gallery:dirac_comb:lo=-2,hi=2", "--window", "0,10"}), 3);
  EXPECT_EQ(run({"scan", "--measure", "gallery:dirac_comb:lo=-5,hi=5", "--window", "0,1", "--eps", "0.1",
                 "--scan=-10,10", "--step", "1", "--csv", path("d.csv")}),
            3);
}

TEST_F(Cli, ReplayIsByteIdentical) {
  const std::vector<std::string> args{"scan",  "--measure", "gallery:dirac_comb:lo=-30,hi=30", "--window", "0,1",
                                      "--eps", "0.5,1",     "--scan=-3,3",  "--step",   "0.5",
                                      "--csv", path("d.csv"), "--out", path("r.json")};
  ASSERT_EQ(run(args), 0);
  const auto csv = apmeas::read_text(path("d.csv"));
  const auto report = apmeas::read_text(path("r.json"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,norm,is_period_0.5,is_period_1");
  fs::copy_file(path("r.json"), path("saved.json"));
  fs::remove(path("d.csv"));
  fs::remove(path("r.json"));
  ASSERT_EQ(run({"--replay", path("saved.json")}), 0);
  EXPECT_EQ(apmeas::read_text(path("d.csv")), csv);
  EXPECT_EQ(apmeas::read_text(path("r.json")), report);
}

TEST_F(Cli, ReplayNeedsConfig) {
  apmeas::write_text(path("bad.json"), "{}\n");
  EXPECT_EQ(run({"--replay", path("bad.json")}), 2);
}

TEST_F(Cli, EberleinOutputReadsBackAsMeasure) {
  ASSERT_EQ(run({"eberlein", "--a", "gallery:dirac_comb:lo=-30,hi=30", "--b", "gallery:dirac_comb:lo=-30,hi=30",
                 "--radius", "10", "--out", path("e.json")}),
            0);
  const auto e = apmeas::read_measure(path("e.json"));
  EXPECT_EQ(e.pp().atoms().size(), 37u);
  const auto j = json::parse(apmeas::read_text(path("e.json")));
  EXPECT_TRUE(j.at("meta").contains("caveat"));
}

TEST_F(Cli, SnapCandidatesAddWitnessColumn) {
  ASSERT_EQ(run({"cps", "--window=-60,60", "--out", path("fib.json")}), 0);
  ASSERT_EQ(run({"scan", "--measure", path("fib.json"), "--eps", "0.2", "--scan=-12,12", "--step", "0.125",
                 "--snap-star", "0.1", "--csv", path("d.csv")}),
            0);
  const auto csv = apmeas::read_text(path("d.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,witness,norm,is_period_0.2");
  // 3 + 5 tau = 11.090 has internal coordinate 3 - 5 / tau = -0.090.
  EXPECT_NE(csv.find("\n11.125,11.09"), std::string::npos);
}
