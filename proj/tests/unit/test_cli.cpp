#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "icsheaf/serialize.hpp"
#include "oracle.hpp"

using namespace icsheaf;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  if (args.front() != "demo") {
    args.push_back("--cache");
    args.push_back(oracle::cache_dir());
  }
  std::ostringstream out, err;
  Invocation r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / ("icsheaf-cli-" + std::to_string(std::random_device{}()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

int shell(const std::string& args, const fs::path& out) {
  std::string cmd = std::string(ICSHEAF_TOOL) + " " + args + " --cache " + oracle::cache_dir() + " > " + out.string() +
                    " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ExitCodesInProcess) {
  EXPECT_EQ(run({"check-ax2", "demo:wedge"}).code, cli::kPass);
  EXPECT_EQ(run({"check-ax1", "demo:wedge"}).code, cli::kPass);
  EXPECT_EQ(run({"check-classic-ax2", "demo:wedge"}).code, cli::kFail);
  EXPECT_EQ(run({"check-ax2", "demo:fake-surface", "--naive"}).code, cli::kFail);
  Invocation bad = run({"check-ax2", "demo:no-such-space"});
  EXPECT_EQ(bad.code, cli::kError);
  EXPECT_NE(bad.err.find("error:"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kError);
  EXPECT_EQ(run({"hyperco", "demo:wedge", "--field", "nope"}).code, cli::kError);
}

TEST(Cli, ReportShape) {
  Invocation r = run({"hyperco", "demo:pinched-torus"});
  ASSERT_EQ(r.code, cli::kPass);
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("exit_code"), 0);
  EXPECT_EQ(j.at("manifest").at("command"), "hyperco");
  EXPECT_EQ(j.at("manifest").at("format"), RunManifest::kFormat);
  EXPECT_EQ(j.at("result").at("hypercohomology"), (json{{"-1", 1}, {"1", 1}}));
}

TEST(Cli, ClassicReportCarriesWitnesses) {
  json j = json::parse(run({"check-classic-ax2", "demo:wedge"}).out);
  EXPECT_FALSE(j.at("result").at("pass").get<bool>());
  EXPECT_FALSE(j.at("result").at("witnesses").empty());
  EXPECT_EQ(j.at("exit_code"), 2);
}

TEST(Cli, BuildOutputFeedsSheafOption) {
  fs::path dir = scratch();
  ASSERT_EQ(run({"build", "demo:wedge", "--out", dir.string()}).code, cli::kPass);
  ASSERT_TRUE(fs::exists(dir / "build.json"));
  Invocation st = run({"stalks", "demo:wedge", "--sheaf", (dir / "build.json").string()});
  ASSERT_EQ(st.code, cli::kPass) << st.err;
  EXPECT_EQ(json::parse(st.out).at("result").at("stalks").at("[6]"), (json{{"-2", 1}, {"-1", 1}}));
  EXPECT_EQ(run({"check-ax2", "demo:wedge", "--sheaf", (dir / "build.json").string()}).code, cli::kPass);
  fs::remove_all(dir);
}

TEST(Cli, DemoFilesLoadAsDirectoryInput) {
  fs::path dir = scratch();
  ASSERT_EQ(run({"demo", "susp-s1xs2", "--out", dir.string()}).code, cli::kPass);
  for (const char* f : {"complex.json", "stratification.json", "local_system.json"}) {
    EXPECT_TRUE(fs::exists(dir / "susp-s1xs2" / f)) << f;
  }
  Invocation v = run({"validate", (dir / "susp-s1xs2").string()});
  EXPECT_EQ(v.code, cli::kPass) << v.err;
  Invocation c = run({"compare", (dir / "susp-s1xs2").string(), "--refine", "extra-point", "--costalk-sample", "20"});
  EXPECT_EQ(c.code, cli::kPass) << c.err;
  fs::remove_all(dir);
}

TEST(Cli, FiltrationTableAndLemmas) {
  Invocation t = run({"filtration", "demo:wedge", "--table"});
  EXPECT_EQ(t.code, cli::kPass);
  EXPECT_NE(t.out.find("U_"), std::string::npos);
  json j = json::parse(run({"filtration", "demo:wedge"}).out);
  for (const auto& l : j.at("result").at("lemmas")) EXPECT_TRUE(l.at("holds").get<bool>());
}

TEST(Cli, CoarsenRecoversMinimalStratification) {
  Invocation r = run({"coarsen", "demo:wedge", "--refine", "extra-point"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  EXPECT_EQ(json::parse(r.out).at("result").at("strata"), 3);
}

TEST(Cli, BinaryExitCodesAndDeterminism) {
  fs::path dir = scratch();
  EXPECT_EQ(shell("check-ax2 demo:wedge", dir / "a.json"), 0);
  EXPECT_EQ(shell("check-ax2 demo:wedge", dir / "b.json"), 0);
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  EXPECT_FALSE(slurp(dir / "a.json").empty());
  EXPECT_EQ(shell("check-classic-ax2 demo:wedge", dir / "c.json"), 2);
  EXPECT_EQ(shell("check-ax2 demo:missing", dir / "d.json"), 1);
  EXPECT_EQ(shell("--bogus", dir / "e.json"), 1);
  fs::remove_all(dir);
}
