#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("shellbreak_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(SHELLBREAK_CLI) + " " + args + " > " + path("stdout.txt") + " 2> " +
                            path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const std::string& file) {
    std::ifstream is(file, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
  }

  fs::path dir_;
};

const std::string kSmall = " --n-r 32 --n-theta 16 ";

}  // namespace

TEST_F(Cli, ConstantsForThreeDimensions) {
  ASSERT_EQ(run("constants --N 3 --p 2"), 0);
  const auto j = nlohmann::json::parse(slurp(path("stdout.txt")));
  bool found = false;
  for (const auto& row : j.at("constants")) {
    if (row.at("name") != "K") continue;
    EXPECT_NEAR(std::stod(row.at("value").get<std::string>()), 0.25, 1e-14);
    found = true;
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(run("constants --N 2 --p 3"), 0);
}

TEST_F(Cli, SolveBallIsByteReproducible) {
  const std::string args = "solve-ball --N 2 --R 0.3 --alpha 20 --starts 2 --seed 5" + kSmall;
  ASSERT_EQ(run(args + "--out " + path("a.json") + " --field " + path("a.csv")), 0);
  ASSERT_EQ(run(args + "--out " + path("b.json") + " --field " + path("b.csv")), 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.csv")).rfind("r,theta,u\n", 0), 0u);
}

TEST_F(Cli, SweepCsvThreadsDoNotMatter) {
  const std::string args = "sweep --N 3 --R 0.5 --alphas 10,20 --format csv" + kSmall;
  ASSERT_EQ(run(args + "--threads 1 --out " + path("a.csv")), 0);
  ASSERT_EQ(run(args + "--threads 2 --out " + path("b.csv")), 0);
  const std::string a = slurp(path("a.csv"));
  EXPECT_EQ(a, slurp(path("b.csv")));
  EXPECT_EQ(a.rfind("N,p,R,alpha,status,S_rad,S_full", 0), 0u);
}

TEST_F(Cli, MalformedConfigWritesNothing) {
  std::ofstream(path("bad.ini")) << "N = 3\nnot_an_option = 4\n";
  EXPECT_NE(run("solve-radial --config " + path("bad.ini") + " --out " + path("out.json")), 0);
  EXPECT_FALSE(fs::exists(path("out.json")));
}

TEST_F(Cli, ConfigFileIsHonoured) {
  std::ofstream(path("good.ini")) << "N = 2\nR = 0.4\nalpha = 10\nn = 200\n";
  ASSERT_EQ(run("solve-radial --config " + path("good.ini") + " --out " + path("out.json")), 0);
  const auto j = nlohmann::json::parse(slurp(path("out.json")));
  EXPECT_EQ(j.at("params").at("N").get<int>(), 2);
  EXPECT_EQ(j.at("params").at("p").get<double>(), 3.0);
  EXPECT_EQ(j.at("radial").at("grid").at("n").get<int>(), 200);
}

TEST_F(Cli, InvalidParametersExitTwo) {
  EXPECT_EQ(run("solve-radial --R 1.5 --out " + path("out.json")), 2);
  EXPECT_FALSE(fs::exists(path("out.json")));
  EXPECT_EQ(run("solve-radial --N 3 --p 5"), 2);
  EXPECT_NE(run("solve-radial --format xml"), 0);
  EXPECT_NE(run(""), 0);
}

TEST_F(Cli, FailedRowKeepsTheTable) {
  EXPECT_EQ(run("sweep --N 3 --R 1 --alphas 10,1e7 --grading 0 --format csv" + kSmall + "--out " + path("s.csv")), 1);
  std::istringstream is(slurp(path("s.csv")));
  std::string header, ok_row, bad_row;
  std::getline(is, header);
  std::getline(is, ok_row);
  std::getline(is, bad_row);
  EXPECT_NE(ok_row.find(",ok,"), std::string::npos);
  EXPECT_EQ(bad_row.find(",ok,"), std::string::npos);
  EXPECT_NE(bad_row.find(",,"), std::string::npos);
}

TEST_F(Cli, ResultRoundTrip) {
  ASSERT_EQ(run("solve-radial --N 3 --R 0.3 --alpha 40 --n 300 --out " + path("r.json")), 0);
  EXPECT_EQ(run("verify --result " + path("r.json") + " --format csv"), 0) << slurp(path("stdout.txt"));
  // A tampered profile must fail the round trip.
  auto j = nlohmann::ordered_json::parse(slurp(path("r.json")));
  auto& u = j["radial"]["profile"]["u"];
  u[10] = u[10].get<double>() * 1.01;
  std::ofstream(path("t.json")) << j.dump();
  EXPECT_EQ(run("verify --result " + path("t.json")), 1);
}

TEST_F(Cli, CsvFormatForSingleResults) {
  ASSERT_EQ(run("solve-radial --N 1 --R 0.5 --alpha 5 --n 100 --format csv"), 0);
  const std::string out = slurp(path("stdout.txt"));
  EXPECT_EQ(out.rfind("key,value\n", 0), 0u);
  EXPECT_NE(out.find("radial.S_rad,"), std::string::npos);
}
