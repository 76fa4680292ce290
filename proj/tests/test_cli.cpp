#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lpa/cli.hpp"
#include "lpa/graph.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = lpa::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("lpa_cli_test_" + name)).string();
}

void expect_schema(const json& doc) {
  ASSERT_TRUE(doc.is_object());
  EXPECT_TRUE(doc.at("command").is_string());
  EXPECT_TRUE(doc.at("inputs").is_object());
  EXPECT_TRUE(doc.at("outputs").is_object());
  ASSERT_TRUE(doc.at("checks").is_array());
  for (const auto& c : doc.at("checks")) {
    EXPECT_TRUE(c.at("name").is_string());
    EXPECT_TRUE(c.at("status") == "pass" || c.at("status") == "fail" || c.at("status") == "skip");
    EXPECT_TRUE(c.at("details").is_string());
  }
}

}  // namespace

TEST(Cli, InfoBuiltin) {
  auto r = run({"info", "E_star"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Z^0 ; unit=() ; det=-1 ; SPI=yes\n");
}

TEST(Cli, InfoWithSinks) {
  auto r = run({"info", "F_star"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Z ; unit=(-1) ; det=n/a"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("3x2"), std::string::npos);
  EXPECT_NE(r.out.find("SPI=no"), std::string::npos);
}

TEST(Cli, InfoFromFileAndMalformedFile) {
  auto good = temp_path("good.json");
  std::ofstream(good) << lpa::render_graph(lpa::builtin("R3"));
  auto r = run({"info", good});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Z/2 ; unit=(1) ; det=-2 ; SPI=yes\n");

  auto bad = temp_path("bad.json");
  std::ofstream(bad) << "{\n  \"vertices\": [\"a\"],\n  \"edges\": [[\"e\", \"a\", \"b\"]]\n}\n";
  auto b = run({"info", bad});
  EXPECT_EQ(b.code, 2);
  EXPECT_TRUE(b.out.empty());
  EXPECT_NE(b.err.find("line 3"), std::string::npos) << b.err;
  std::remove(good.c_str());
  std::remove(bad.c_str());
}

TEST(Cli, UnknownGraphIsError) {
  auto r = run({"info", "no_such_graph"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, JsonSchemaForEveryCommand) {
  std::vector<std::vector<std::string>> commands{
      {"--json", "info", "E_star"},
      {"--json", "spi", "F_star"},
      {"--json", "k0", "F_star_star"},
      {"--json", "det", "E_star_star"},
      {"--json", "move", "cuntz-splice", "R3", "--at", "u"},
      {"--json", "classify", "E_star", "E_star_star"},
      {"--json", "algebra", "E_star", "e1* e1"},
      {"--json", "verify-paper", "--filter", "determinants"},
  };
  for (const auto& args : commands) {
    auto r = run(args);
    EXPECT_EQ(r.code, 0) << args[1] << ": " << r.err;
    auto doc = json::parse(r.out);
    expect_schema(doc);
    EXPECT_EQ(doc.at("command"), args[1]);
  }
}

TEST(Cli, KZeroClasses) {
  auto doc = json::parse(run({"--json", "k0", "F_star_star"}).out);
  EXPECT_EQ(doc["outputs"]["rendered"], "Z ; unit=(-1)");
  EXPECT_EQ(doc["outputs"]["classes"]["w3"], json::array({"0"}));
  EXPECT_EQ(doc["outputs"]["classes"]["w1'"], json::array({"1"}));
}

TEST(Cli, MoveReportsAndWritesGraph) {
  auto path = temp_path("spliced.json");
  auto r = run({"--json", "move", "double-cuntz-splice", "R3", "--at", "u", "--out", path});
  EXPECT_EQ(r.code, 0) << r.err;
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["outputs"]["after"]["determinant"], "-2");
  bool preserved = false;
  for (const auto& c : doc["checks"])
    if (c["name"].get<std::string>().rfind("determinant preserved", 0) == 0 && c["status"] == "pass") preserved = true;
  EXPECT_TRUE(preserved);
  auto written = lpa::load_graph_file(path);
  EXPECT_EQ(written.vertex_count(), 5u);
  std::remove(path.c_str());
}

TEST(Cli, MoveCohn) {
  auto r = run({"--json", "move", "cohn", "E_star", "--complete-at", "v2"});
  EXPECT_EQ(r.code, 0);
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["outputs"]["after"]["k0"]["rendered"], "Z ; unit=(-1)");
  EXPECT_EQ(doc["outputs"]["graph"], json::parse(lpa::render_graph(lpa::builtin("F_star"))));
}

TEST(Cli, MoveErrors) {
  EXPECT_EQ(run({"move", "cuntz-splice", "R3", "--at", "zz"}).code, 2);
  EXPECT_EQ(run({"move", "cuntz-splice", "R3"}).code, 2);
  EXPECT_EQ(run({"move", "shuffle", "R3", "--at", "u"}).code, 2);
}

TEST(Cli, ClassifyVerdictsExitZero) {
  auto a = run({"classify", "E_star", "E_star_star"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "AKPInstance");
  auto b = run({"classify", "E_star", "E_star"});
  EXPECT_EQ(b.out.substr(0, b.out.find('\n')), "Isomorphic");
  auto c = run({"classify", "E_star", "R3"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out.substr(0, c.out.find('\n')), "NotIsomorphicByInvariant");
}

TEST(Cli, Algebra) {
  auto r = run({"algebra", "E_star", "(e1+e2)* (e1+e2)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "v1 + v2\n");
  EXPECT_EQ(run({"algebra", "E_star", "e1* e2"}).out, "0\n");
  EXPECT_EQ(run({"algebra", "E_star", "e3 e3*", "--complete-at", "v2"}).out, "v2 - e4 e4*\n");
  auto bad = run({"algebra", "E_star", "(e1 + e2"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("unbalanced"), std::string::npos);
}

TEST(Cli, VerifyPaper) {
  auto all = run({"verify-paper"});
  EXPECT_EQ(all.code, 0) << all.out;
  auto faulty = run({"verify-paper", "--inject-fault", "sign"});
  EXPECT_EQ(faulty.code, 1);
  auto one = run({"--json", "verify-paper", "--filter", "cohn-k0"});
  EXPECT_EQ(one.code, 0);
  auto doc = json::parse(one.out);
  ASSERT_EQ(doc["outputs"]["blocks"].size(), 1u);
  EXPECT_EQ(doc["outputs"]["blocks"][0]["name"], "cohn-k0");
  EXPECT_EQ(run({"verify-paper", "--filter", "nope"}).code, 2);
  EXPECT_EQ(run({"verify-paper", "--inject-fault", "other"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"info"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SizeCapEnvironment) {
  setenv("LPA_SIZE_CAP", "garbage", 1);
  auto r = run({"classify", "E_star", "E_star"});
  unsetenv("LPA_SIZE_CAP");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("LPA_SIZE_CAP"), std::string::npos);
}
