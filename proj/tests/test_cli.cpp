#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fingeo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult exec(const std::string& args) const {
    const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && '" FINGEO_CLI "' " + args + " >'" + out.string() + "' 2>'" +
                            err.string() + "'";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

const std::string kCatalogue = std::string(FINGEO_SOURCE_DIR) + "/catalogue";

}  // namespace

TEST_F(Cli, VersionNamesTheConwayTable) {
  const auto r = exec("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("conway-table v1"), std::string::npos);
}

TEST_F(Cli, GenWritesPointsAndMetadata) {
  const auto r = exec("gen subgeometry --p 3 --t 2 --n 2 --out baer.pts");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = slurp(dir_ / "baer.pts");
  EXPECT_NE(text.find("points 13\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "baer.meta.json"));
  EXPECT_EQ(exec("gen subgeometry --p 3 --t 2 --n 2 --out again.pts").code, 0);
  EXPECT_EQ(slurp(dir_ / "again.pts"), text);
}

TEST_F(Cli, GenRejectsBadParameters) {
  const auto r = exec("gen random_rank_r --p 3 --t 2 --n 2 --r 0 --out x.pts");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error: BadParams: ", 0), 0u) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  EXPECT_EQ(exec("gen subgeometry --p 4 --t 1 --n 2 --out x.pts").code, 2);
}

TEST_F(Cli, CheckReportsTheBaerSubplane) {
  ASSERT_EQ(exec("gen subgeometry --p 3 --t 2 --n 2 --out baer.pts").code, 0);
  const auto r = exec("check baer.pts --k 1 --p0 3");
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* key : {"\"blocking\": true", "\"small\": true", "\"minimal\": true", "\"exponent\": 1", "\"redei\": true"})
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  EXPECT_EQ(exec("check baer.pts --k 1 --p0 3").out, r.out);
}

TEST_F(Cli, UsageAndIoErrors) {
  ASSERT_EQ(exec("gen subgeometry --p 3 --t 2 --n 2 --out baer.pts").code, 0);
  EXPECT_EQ(exec("check baer.pts --k 2").code, 2);
  EXPECT_EQ(exec("check baer.pts --k 0").code, 2);
  EXPECT_EQ(exec("check").code, 2);
  EXPECT_EQ(exec("frobnicate").code, 2);
  std::ofstream(dir_ / "empty.pts").close();
  const auto e = exec("check empty.pts --k 1");
  EXPECT_EQ(e.code, 3);
  EXPECT_EQ(e.err.rfind("error: ParseError: ", 0), 0u);
  EXPECT_EQ(exec("check missing.pts --k 1").code, 3);
}

TEST_F(Cli, ReconstructExitCodes) {
  ASSERT_EQ(exec("gen subgeometry --p 3 --t 2 --n 2 --out baer.pts").code, 0);
  const auto ok = exec("reconstruct baer.pts --k 1 --p0 3");
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("\"dim_w\": 2"), std::string::npos);
  EXPECT_EQ(exec("reconstruct baer.pts --k 1 --p0 3 --all-points").code, 0);
  ASSERT_EQ(exec("gen subspace --p 3 --t 2 --n 2 --m 1 --out line.pts").code, 0);
  const auto line = exec("reconstruct line.pts --k 1 --p0 3");
  EXPECT_EQ(line.code, 1);
  EXPECT_EQ(line.err.rfind("error: NoSublineSecant: ", 0), 0u) << line.err;
}

TEST_F(Cli, IsLinear) {
  ASSERT_EQ(exec("gen subgeometry --p 3 --t 2 --n 2 --out baer.pts").code, 0);
  const auto r = exec("islinear baer.pts --p0 3 --k 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"linear\": true"), std::string::npos);
  const auto m = exec("islinear '" + kCatalogue + "/controls/mutated_baer_pg2_9.pts' --p0 3 --exhaustive");
  EXPECT_EQ(m.code, 1);
  EXPECT_NE(m.out.find("\"linear\": false"), std::string::npos);
}

TEST_F(Cli, SecantsProjectAndSpread) {
  ASSERT_EQ(exec("gen subgeometry --p 7 --t 2 --n 3 --m 2 --out sub.pts").code, 0);
  EXPECT_EQ(exec("secants sub.pts --k 1 --p0 7").code, 0);
  const auto p = exec("project sub.pts --out image.pts");
  EXPECT_EQ(p.code, 0) << p.err;
  EXPECT_NE(slurp(dir_ / "image.pts").find("points 57\n"), std::string::npos);
  const auto s = exec("spread dump --p 2 --t 2 --n 1");
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("\"elements\""), std::string::npos);
}

TEST_F(Cli, HarnessOnTheCatalogue) {
  const auto r = exec("harness run --catalogue '" + kCatalogue + "' --out score.json");
  EXPECT_EQ(r.code, 0) << r.err;
  const auto first = slurp(dir_ / "score.json");
  EXPECT_NE(first.find("\"schema\": \"fingeo-scorecard/1\""), std::string::npos);
  EXPECT_EQ(exec("harness run --catalogue '" + kCatalogue + "' --out score2.json").code, 0);
  EXPECT_EQ(slurp(dir_ / "score2.json"), first);
  EXPECT_EQ(exec("harness run --catalogue '" + kCatalogue + "' --only sziklai_i,grootte_bound").code, 0);
  EXPECT_EQ(exec("harness run --catalogue '" + kCatalogue + "' --only nonsense").code, 2);
}

TEST_F(Cli, HarnessFlagsTheNegativeControls) {
  const auto r = exec("harness run --catalogue '" + kCatalogue + "/controls'");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("\"violated\""), std::string::npos);
}

TEST_F(Cli, CatalogueRegenerationIsByteIdentical) {
  ASSERT_EQ(exec("catalogue --out cat").code, 0);
  for (const auto& f : fs::recursive_directory_iterator(dir_ / "cat")) {
    if (!f.is_regular_file()) continue;
    const auto rel = fs::relative(f.path(), dir_ / "cat");
    EXPECT_EQ(slurp(f.path()), slurp(fs::path(kCatalogue) / rel)) << rel;
  }
}
