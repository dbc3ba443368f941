#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "cli_app.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json result_of(const Outcome& o) { return nlohmann::json::parse(o.out)["result"]; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(CliEval, CycleUsesShearerRadius) {
  auto o = run({"eval", "--poly", "independence", "--graph", "gen:cycle:10", "--lambda", "0.1,0", "--eps", "0.01"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto r = result_of(o);
  EXPECT_EQ(r["radius_source"], "shearer");
  EXPECT_DOUBLE_EQ(r["radius_assumed"].get<double>(), 0.25);
  EXPECT_EQ(r["max_degree"], 2);
}

TEST(CliEval, TriangleValue) {
  auto o = run({"eval", "--poly", "independence", "--graph", "gen:complete:3", "--lambda", "0.1,0", "--eps", "0.01"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto v = result_of(o)["value"];
  EXPECT_LE(std::hypot(v["re"].get<double>() - 1.3, v["im"].get<double>()), 0.013);
}

TEST(CliEval, ChromaticCycle) {
  auto o = run({"eval", "--poly", "chromatic", "--graph", "gen:cycle:5", "--q", "40,0", "--eps", "0.01"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto r = result_of(o);
  const double want = std::pow(39.0, 5) - 39.0;
  EXPECT_LE(std::abs(r["value"]["re"].get<double>() - want), 0.01 * want);
  EXPECT_EQ(r["radius_source"], "chromatic_691");
}

TEST(CliEval, RefusedOutsideDisk) {
  auto o = run({"eval", "--graph", "gen:cycle:10", "--lambda", "0.3,0"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("refused"), std::string::npos);
  EXPECT_TRUE(o.out.empty());
  auto unsafe = run({"eval", "--graph", "gen:cycle:10", "--lambda", "0.3,0", "--unsafe"});
  ASSERT_EQ(unsafe.code, 0) << unsafe.err;
  auto r = result_of(unsafe);
  EXPECT_TRUE(r["epsilon_guaranteed"].is_null());
  EXPECT_EQ(r["radius_source"], "user_supplied");
}

TEST(CliEval, TextAndCsvFormats) {
  auto text = run({"eval", "--graph", "gen:path:4", "--lambda", "0.1,0", "--format", "text"});
  ASSERT_EQ(text.code, 0);
  EXPECT_EQ(text.out.rfind("value ", 0), 0u);
  auto csv = run({"eval", "--graph", "gen:path:4", "--lambda", "0.1,0", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(lines(csv.out).size(), 2u);
}

TEST(CliCoeffs, PathMatchesOracle) {
  auto o = run({"coeffs", "--graph", "gen:path:20", "--m", "4"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto r = result_of(o);
  EXPECT_FALSE(r["mismatch"].get<bool>());
  ASSERT_EQ(r["coefficients"].size(), 5u);
  EXPECT_EQ(r["coefficients"][1]["engine"], "20");
  EXPECT_EQ(r["coefficients"][2]["engine"], "171");
  for (const auto& row : r["coefficients"]) EXPECT_TRUE(row["match"].get<bool>());
}

TEST(CliCoeffs, BudgetExitNamesTheCap) {
  auto o = run({"coeffs", "--graph", "gen:path:20", "--m", "11"});
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.err.find("algebra_cap"), std::string::npos);
}

TEST(CliCoeffs, CacheFileIsWrittenAndReused) {
  const auto path = (std::filesystem::path(testing::TempDir()) / "cli_cache.gpxc").string();
  std::filesystem::remove(path);
  auto first = run({"coeffs", "--graph", "gen:cycle:8", "--m", "3", "--cache", path});
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_TRUE(std::filesystem::exists(path));
  auto second = run({"coeffs", "--graph", "gen:cycle:8", "--m", "3", "--cache", path});
  ASSERT_EQ(second.code, 0) << second.err;
  EXPECT_EQ(result_of(first)["coefficients"], result_of(second)["coefficients"]);
}

TEST(CliCertify, RegularGraphBelowRadius) {
  auto o = run({"certify", "--graph", "gen:random_regular:12:3:seed7", "--lambda", "0.14,0"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(result_of(o)["ok"].get<bool>());
  auto fail = run({"certify", "--graph", "gen:complete:2", "--lambda", "-0.5,0"});
  ASSERT_EQ(fail.code, 0);
  EXPECT_FALSE(result_of(fail)["ok"].get<bool>());
}

TEST(CliZeros, TreesStayOutsideTheRadius) {
  auto o = run({"zeros", "--family", "trees", "--delta", "3", "--max-n", "16", "--format", "csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto rows = lines(o.out);
  ASSERT_GT(rows.size(), 1u);
  EXPECT_EQ(rows[0], "graph,n,delta,min_modulus,min_neg_real_root");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> cells;
    std::istringstream is(rows[i]);
    for (std::string c; std::getline(is, c, ',');) cells.push_back(c);
    ASSERT_GE(cells.size(), 4u);
    EXPECT_GE(std::stod(cells[3]), 4.0 / 27 - 1e-9) << rows[i];
  }
}

TEST(CliZeros, ChromaticHeader) {
  auto o = run({"zeros", "--family", "corpus", "--poly", "chromatic", "--max-n", "5", "--format", "csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(lines(o.out)[0], "graph,n,delta,max_root_modulus,ratio_to_691delta");
}

TEST(CliPolymer, LemmaAndConditionReport) {
  auto o = run({"polymer", "--graph", "gen:cycle:6", "--q", "0.05,0.02"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto r = result_of(o);
  EXPECT_LE(r["lemma1"]["relative_error"].get<double>(), 1e-8);
  EXPECT_TRUE(r["gk"]["tree_bound"]["ok"].get<bool>());
}

TEST(CliCompare, CsvGrid) {
  auto o = run({"compare", "--graph", "gen:grid:2:4", "--points", "8", "--format", "csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto rows = lines(o.out);
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].substr(rows[i].rfind(',') + 1), "true");
}

TEST(CliUsage, ErrorsAndHelp) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"eval", "--format", "xml", "--graph", "gen:path:3"}).code, 1);
  EXPECT_EQ(run({"eval"}).code, 1);
  EXPECT_EQ(run({"eval", "--graph", "gen:path:3", "--eps", "0"}).code, 1);
  EXPECT_EQ(run({"eval", "--graph", "/nonexistent/graph.txt"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliJson, RoundTripAndResolvedConfig) {
  auto o = run({"eval", "--graph", "gen:grid:3:3", "--lambda", "0.05,0.02", "--eps", "0.001"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto doc = nlohmann::json::parse(o.out);
  EXPECT_EQ(nlohmann::json::parse(doc.dump()), doc);
  EXPECT_EQ(doc["tool"], "graphpoly");
  EXPECT_EQ(doc["version"], GRAPHPOLY_VERSION);
  EXPECT_EQ(doc["config"]["command"], "eval");
  EXPECT_EQ(doc["config"]["graph"], "gen:grid:3:3");
  EXPECT_EQ(doc["config"]["eps"], 0.001);
  EXPECT_TRUE(doc["timestamp"].is_string());
}

TEST(CliJson, DeterministicApartFromTimestamp) {
  const std::vector<std::vector<std::string>> commands{
      {"eval", "--graph", "gen:random_regular:12:3:seed7", "--lambda", "0.1,0.03"},
      {"coeffs", "--graph", "gen:grid:3:3", "--m", "4"},
      {"certify", "--graph", "gen:cycle:7", "--lambda", "0.2,0"},
      {"zeros", "--family", "regular", "--delta", "3", "--max-n", "10"},
      {"polymer", "--graph", "gen:path:5", "--q", "0.1,0"},
  };
  for (const auto& cmd : commands) {
    auto a = run(cmd), b = run(cmd);
    ASSERT_EQ(a.code, 0) << a.err;
    auto la = lines(a.out), lb = lines(b.out);
    ASSERT_EQ(la.size(), lb.size());
    for (std::size_t i = 0; i < la.size(); ++i)
      if (la[i] != lb[i]) EXPECT_NE(la[i].find("\"timestamp\""), std::string::npos) << la[i];
    auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
    ja.erase("timestamp");
    jb.erase("timestamp");
    EXPECT_EQ(ja.dump(), jb.dump());
  }
}
