#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lpmult/json_io.hpp"

using lpmult::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LPMULT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string run_stderr(const std::string& args) {
  const std::string cmd = std::string(LPMULT_CLI) + " " + args + " 2>&1 >/dev/null";
  std::string text;
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
  pclose(pipe);
  return text;
}

const std::string kIso = LPMULT_DATA "/isometry.json";
const std::string kMixed = LPMULT_DATA "/mixed.json";

Json parsed(const Run& r) {
  auto j = Json::parse(r.out);
  EXPECT_TRUE(lpmult::validate_report(j).empty()) << r.out;
  return j;
}

}  // namespace

TEST(Cli, ClassifyIsometry) {
  const auto r = run("classify " + kIso + " M");
  ASSERT_EQ(r.code, 0);
  const auto j = parsed(r);
  EXPECT_EQ(j["classification"]["isometric"], true);
  EXPECT_EQ(j["classification"]["isometric_isomorphism"], true);
  EXPECT_EQ(j["p"], 1);
}

TEST(Cli, EveryCommandEmitsAConformingReport) {
  for (const auto& args :
       std::vector<std::string>{"decompose " + kMixed + " nu mu", "classify " + kMixed + " same", "classify " + kMixed + " up",
        "invert " + kIso + " M --side right", "invert " + kMixed + " down", "hom-norm " + kMixed + " up",
        "certify " + kIso + " injective M phi_from --mode extreme",
        "certify " + kIso + " projective M phi_into --mode metric", "verify " + kMixed + " same --samples 500",
        std::string("pitt-demo --p 1 --q 2 --max-n 8")}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << args;
    if (r.code == 0) parsed(r);
  }
}

TEST(Cli, InvertNonInjectiveExitsThreeWithWitness) {
  const auto r = run("invert " + kMixed + " kernel --side left");
  EXPECT_EQ(r.code, 3);
  const auto j = parsed(r);
  EXPECT_EQ(j["error"]["kind"], "precondition");
  EXPECT_NE(j["error"]["witness"].get<std::string>().find("a"), std::string::npos);
}

TEST(Cli, CertifyPreconditionExitsThree) {
  EXPECT_EQ(run("certify " + kMixed + " injective kernel kernel").code, 3);
}

TEST(Cli, VerifyIsConsistentForEveryOperator) {
  for (const char* op : {"same", "down", "up", "kernel", "supinf"}) {
    const auto r = run("verify " + kMixed + " " + op + " --samples 400 --seed 3");
    ASSERT_EQ(r.code, 0) << op;
    EXPECT_EQ(parsed(r)["bracket"]["consistent"], true) << op;
  }
}

TEST(Cli, InvalidInputExitsTwo) {
  const std::string bad = std::string(LPMULT_TMP) + "/bad.json";
  std::ofstream(bad) << "{\n  \"skeleton\": {\n    \"atoms\": [\"a\",]\n  }\n}\n";
  EXPECT_EQ(run("classify " + bad + " M").code, 2);
  const auto err = run_stderr("classify " + bad + " M");
  EXPECT_NE(err.find("line 3"), std::string::npos) << err;

  EXPECT_EQ(run("classify " + kIso + " missing").code, 2);
  EXPECT_EQ(run("classify").code, 2);
  EXPECT_EQ(run("invert " + kIso + " M --side up").code, 2);
  EXPECT_EQ(run("pitt-demo --p 2 --q 2").code, 2);
  EXPECT_EQ(run("pitt-demo --p 0.2 --q 2").code, 2);
}

TEST(Cli, DeterministicAndOutputFlag) {
  const std::string args = "verify " + kMixed + " same --samples 700 --seed 9";
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  const std::string path = std::string(LPMULT_TMP) + "/report.json";
  ASSERT_EQ(run("--output " + path + " " + args).code, 0);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), a.out);
}

TEST(Cli, PittDemoTable) {
  const auto r = run("pitt-demo --p 1 --q 2 --max-n 4");
  ASSERT_EQ(r.code, 0);
  const auto j = parsed(r);
  ASSERT_EQ(j["table"].size(), 4u);
  EXPECT_EQ(j["table"][3][1], 0.5);
  const auto text = run("pitt-demo --p 1 --q 2 --max-n 4 --text");
  EXPECT_EQ(text.out.substr(0, 11), "n constant\n");
}
