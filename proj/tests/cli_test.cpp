#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "json.hpp"

using namespace stallings;
using fixtures::sub;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run fg_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = fg::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fg_cli_test_" + name);
}

TEST(Cli, MemberAnswersNo) {
  auto r = fg_run({"--alphabet", "ab", "member", "--sub", "bbAA", "--word", "ab"});
  EXPECT_EQ(r.code, fg::kComputed);
  EXPECT_EQ(r.out, "no\n");
  EXPECT_EQ(fg_run({"member", "--sub", "bbAA", "--word", "bbAAbbAA"}).out, "yes\n");
}

TEST(Cli, Index) {
  EXPECT_EQ(fg_run({"--alphabet", "ab", "index", "--sub", "aa,b,abA"}).out, "2\n");
  EXPECT_EQ(fg_run({"index", "ab"}).out, "infinite\n");
  auto j = nlohmann::json::parse(fg_run({"--json", "index", "aa,b,abA"}).out);
  EXPECT_EQ(j["index"], 2);
  EXPECT_EQ(j["coset_representatives"].size(), 2u);
}

TEST(Cli, IntersectWritesDot) {
  auto path = temp_file("intersect.dot");
  std::filesystem::remove(path);
  auto r = fg_run({"--alphabet", "ab", "intersect", "--sub", "ab,Ba", "--sub", "aaa,Aba", "--dot", path.string()});
  ASSERT_EQ(r.code, fg::kComputed) << r.err;
  auto text = r.out.substr(0, r.out.find('\n'));
  auto g = subgroup_from_json_text(text);
  EXPECT_EQ(g, intersection(fixtures::product_h(), fixtures::product_k()));
  EXPECT_NE(r.out.find("rank: 2"), std::string::npos);
  std::ifstream in(path);
  std::stringstream dot;
  dot << in.rdbuf();
  EXPECT_EQ(dot.str(), to_dot(g));
  std::filesystem::remove(path);
}

TEST(Cli, GraphOutputReingests) {
  auto first = fg_run({"graph", "aab,bAba,abA"});
  ASSERT_EQ(first.code, fg::kComputed);
  auto path = temp_file("graph.json");
  std::ofstream(path) << first.out;
  EXPECT_EQ(fg_run({"rank", path.string()}).out, "3\n");
  std::string inline_json = first.out.substr(0, first.out.size() - 1);
  EXPECT_EQ(fg_run({"graph", inline_json}).out, first.out);
  std::filesystem::remove(path);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"--json", "extensions", "aa,bab"};
  EXPECT_EQ(fg_run(args).out, fg_run(args).out);
}

TEST(Cli, ReduceAndBasis) {
  EXPECT_EQ(fg_run({"reduce", "aAb", "abBA"}).out, "b\n\n");
  EXPECT_EQ(fg_run({"--alphabet", "abc", "reduce", "abcCBA"}).out, "\n");
  EXPECT_EQ(fg_run({"basis", "--geodesic", "aa"}).out, "aa\n");
  EXPECT_EQ(fg_run({"rank", "--sub", "a,b,ab"}).out, "2\n");
}

TEST(Cli, Predicates) {
  EXPECT_EQ(fg_run({"malnormal", "aa"}).out, "no\nwitness: a\n");
  EXPECT_EQ(fg_run({"malnormal", "a"}).out, "yes\n");
  EXPECT_EQ(fg_run({"normal", "aa,b,abA"}).out, "yes\n");
  EXPECT_EQ(fg_run({"free-factor", "--ambient", "ab"}).out, "yes\n");
  EXPECT_EQ(fg_run({"free-factor", "--ambient", "aa"}).out, "no\n");
  EXPECT_EQ(fg_run({"free-factor", "--in", "a,b", "a"}).out, "yes\n");
  EXPECT_EQ(fg_run({"power", "--word", "a", "aaa"}).out, "3\n");
  EXPECT_EQ(fg_run({"power", "--word", "b", "aaa"}).out, "none\n");
  auto iso = fg_run({"--alphabet", "a", "isolated", "aaa"});
  EXPECT_NE(iso.out.find("witness: a^3"), std::string::npos);
  EXPECT_NE(iso.out.find("bound: 23338"), std::string::npos);
}

TEST(Cli, ClosureAndExtensions) {
  auto cl = fg_run({"--json", "closure", "--algebraic", "aa"});
  ASSERT_EQ(cl.code, fg::kComputed) << cl.err;
  EXPECT_NE(cl.out.find(to_json(sub("a")).dump()), std::string::npos);
  auto ext = nlohmann::json::parse(fg_run({"--json", "extensions", "aa"}).out);
  EXPECT_EQ(ext["extensions"].size(), 2u);
}

TEST(Cli, JsonAnswerField) {
  auto j = nlohmann::json::parse(fg_run({"--json", "malnormal", "aa"}).out);
  EXPECT_EQ(j["answer"], false);
  EXPECT_EQ(j["witness"], "a");
}

TEST(Cli, StrictTurnsNoIntoExitOne) {
  EXPECT_EQ(fg_run({"--strict", "member", "bbAA", "--word", "ab"}).code, fg::kAnswerNo);
  EXPECT_EQ(fg_run({"--strict", "member", "bbAA", "--word", "bbAA"}).code, fg::kComputed);
  EXPECT_EQ(fg_run({"--strict", "index", "ab"}).code, fg::kComputed);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(fg_run({}).code, fg::kUsage);
  EXPECT_EQ(fg_run({"frobnicate"}).code, fg::kUsage);
  EXPECT_EQ(fg_run({"member", "--word", "a"}).code, fg::kUsage);
  auto bad = fg_run({"rank", "abx"});
  EXPECT_EQ(bad.code, fg::kUsage);
  EXPECT_FALSE(bad.err.empty());
  EXPECT_TRUE(bad.out.empty());
  EXPECT_EQ(fg_run({"rank", "{\"alphabet\":"}).code, fg::kUsage);
  EXPECT_EQ(fg_run({"intersect", "a"}).code, fg::kUsage);
  EXPECT_EQ(fg_run({"free-factor", "--in", "aa", "a"}).code, fg::kUsage);
}

TEST(Cli, ResourceLimit) {
  auto r = fg_run({"quotients", "--vertex-bound", "1", "aa"});
  EXPECT_EQ(r.code, fg::kResourceLimit);
  EXPECT_NE(r.err.find("bound"), std::string::npos);
  EXPECT_EQ(fg_run({"isolated", "--budget", "3", "a,baB"}).code, fg::kResourceLimit);
}

TEST(Cli, DotToStdout) {
  EXPECT_EQ(fg_run({"dot", "aa"}).out, to_dot(sub("aa")));
}

}  // namespace
