#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

const std::string cli = GBPA_CLI;
const std::filesystem::path specs = GBPA_SPECS_DIR;

struct Run {
  int status = -1;
  std::string out;  // stdout and stderr
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" + cli + "' " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string spec(const std::string& name) { return "'" + (specs / name).string() + "'"; }

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "gbpa-cli-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, FlattenWorkedExample) {
  auto out = temp_file("flat.json");
  auto r = run("flatten " + spec("paper-example.json") + " -o '" + out.string() + "'");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out, "vertices=7 arrows=10 relations=2 dim=21\n");
  auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["dim"], 21);
  EXPECT_EQ(j["vertex_map"].size(), 7u);
}

TEST(Cli, FlattenOutputIsAnAlgebraFile) {
  auto out = temp_file("flat2.json");
  ASSERT_EQ(run("flatten " + spec("lambda-example.json") + " -o '" + out.string() + "'").status, 0);
  auto r = run("flatten '" + out.string() + "'");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out, "vertices=3 arrows=3 relations=3 dim=8\n");
  EXPECT_EQ(run("gldim '" + out.string() + "'").status, 0);
}

TEST(Cli, GlobalDimensionOfA) {
  auto r = run("gldim " + spec("algebra-A.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "2 (certified)\n");
  EXPECT_EQ(run("gldim " + spec("paper-example.json")).out, "2 (certified)\n");
}

TEST(Cli, ProjectiveAndInjectiveDimensions) {
  EXPECT_EQ(run("pd " + spec("dual-numbers.json") + " --simple 1").out,
            "infinite (periodic syzygy)\n");
  EXPECT_EQ(run("pd " + spec("dual-numbers.json") + " --projective 1").out, "0\n");
  EXPECT_EQ(run("id " + spec("algebra-A.json") + " --simple 3").out, "2\n");
  EXPECT_EQ(run("pd " + spec("algebra-A.json") + " --module " + spec("modules/A-simple-2.json")).out,
            "1\n");
  EXPECT_EQ(run("pd " + spec("paper-example.json") + " --module " + spec("modules/shod-witness.json")).out,
            "2\n");
  EXPECT_EQ(run("pd " + spec("dual-numbers.json") + " --simple 1 --cutoff 3").out,
            "infinite (periodic syzygy)\n");
}

TEST(Cli, Resolve) {
  auto r = run("resolve " + spec("algebra-A.json") + " --simple 1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "P0 (1,1,0)\nP1 (0,1,1)\nP2 (0,0,1)\npd 2 (certified)\n");
}

TEST(Cli, MalformedJsonExitsTwo) {
  auto bad = temp_file("bad.json");
  std::ofstream(bad) << "{\"quiver\": {\"vertices\": [\"1\",]}}";
  auto r = run("gldim '" + bad.string() + "'");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("byte"), std::string::npos) << r.out;
}

TEST(Cli, SchemaErrorsExitTwo) {
  auto bad = temp_file("unknown-key.json");
  std::ofstream(bad) << R"({"quiver": {"vertices": ["1"]}, "colour": 1})";
  EXPECT_EQ(run("gldim '" + bad.string() + "'").status, 2);
  EXPECT_EQ(run("pd " + spec("algebra-A.json") + " --simple 9").status, 2);
  EXPECT_EQ(run("pd " + spec("algebra-A.json")).status, 2);
  EXPECT_EQ(run("check " + spec("paper-example.json") + " --suite nope").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST(Cli, RelationViolationExitsFour) {
  auto r = run("pd " + spec("algebra-A.json") + " --module " + spec("modules/A-bad.json"));
  EXPECT_EQ(r.status, 4);
  EXPECT_NE(r.out.find("relation"), std::string::npos) << r.out;
}

TEST(Cli, CutoffExitsThree) {
  EXPECT_EQ(run("gldim " + spec("inexact.json")).status, 3);
}

TEST(Cli, RemarkConditionGatesSuites) {
  auto r = run("check " + spec("remark-violating.json") + " --suite pd");
  EXPECT_EQ(r.status, 5);
  EXPECT_NE(r.out.find("precondition"), std::string::npos) << r.out;
  // Suites without the precondition still run.
  EXPECT_EQ(run("check " + spec("remark-violating.json") + " --suite cone --budget 4 --instances 0").status, 0);
}

TEST(Cli, CheckWorkedExampleSuites) {
  auto r = run("check " + spec("paper-example.json") + " --suite pd --seed 7");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("claim holds violated inconclusive"), std::string::npos);
  auto gd = run("check " + spec("paper-example.json") + " --suite gd");
  EXPECT_EQ(gd.status, 0) << gd.out;
  EXPECT_NE(gd.out.find("gd_bounds 1 0 0"), std::string::npos) << gd.out;
}

TEST(Cli, ShodSuiteReportsTheCounterexample) {
  auto r = run("check " + spec("paper-example.json") + " --suite shod --seed 7");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("counterexample found"), std::string::npos) << r.out;
}

TEST(Cli, JsonlIsDeterministic) {
  auto a = temp_file("a.jsonl"), b = temp_file("b.jsonl");
  std::string base = "check " + spec("paper-example.json") + " --suite mainlemma --seed 11 --budget 6 --jsonl ";
  ASSERT_EQ(run(base + "'" + a.string() + "'").status, 0);
  ASSERT_EQ(run(base + "'" + b.string() + "'").status, 0);
  auto ta = slurp(a);
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, slurp(b));
  std::istringstream lines(ta);
  std::string line;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("claim"));
    EXPECT_TRUE(j.contains("verdict"));
  }
}

TEST(Cli, FieldFromEnvironment) {
  auto r = run("flatten " + spec("kA2.json"), "GBPA_FIELD=F7");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out, "vertices=2 arrows=1 relations=0 dim=3\n");
  EXPECT_EQ(run("flatten " + spec("kA2.json"), "GBPA_FIELD=F4").status, 2);
  // A field given in the file wins over the environment.
  EXPECT_EQ(run("flatten " + spec("paper-example.json"), "GBPA_FIELD=F4").status, 0);
}
