#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "framemult/error.hpp"
#include "framemult/scenarios.hpp"

using namespace framemult;
using nlohmann::json;

namespace {

std::string error_text(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Parse, MinimalScenarioDefaults) {
  auto s = parse_scenario(R"({"format": 1, "name": "id", "multiplier": {"symbol": 1, "phi": {"kind": "onb"}, "psi": {"kind": "onb"}}})");
  EXPECT_EQ(s.ladder().lengths(), (std::vector<std::int64_t>{64, 256, 1024, 4096}));
  EXPECT_EQ(s.seed.value, 42u);
  EXPECT_EQ(s.analyses, std::vector<Analysis>{Analysis::Convergence});
}

TEST(Parse, Errors) {
  EXPECT_NE(error_text(R"({"format": 1, "name": "g", "multiplier": {"symbol": 1,
      "phi": {"kind": "gabor", "window": {"seed": 1, "length": 12}, "a": 5, "b": 3}}})")
                .find("a must divide L"),
            std::string::npos);
  EXPECT_NE(error_text(R"({"format": 1, "name": "x", "ladder": [64, 32, 128], "multiplier": {"symbol": 1}})").find("ladder"),
            std::string::npos);
  EXPECT_NE(error_text(R"({"format": 1, "name": "x", "multiplier": {"symbol": 1}, "bogus": 1})").find("bogus"),
            std::string::npos);
  EXPECT_NE(error_text(R"({"format": 1, "name": "x", "multiplier": {"symbol": 1}, "analyses": ["nope"]})").find("analyses"),
            std::string::npos);
  EXPECT_NE(error_text("{\n  \"format\": 1,\n  \"name\": }").find("line 3"), std::string::npos);
  EXPECT_NE(error_text(R"({"format": 1, "name": "x", "multiplier": {"symbol": 1},
      "expected": {"invertibility": {"verdict": "InvertibleAtScale"}}})")
                .find("expected"),
            std::string::npos);
}

TEST(Parse, ScenarioListNamesMustBeUnique) {
  std::string one = R"({"format": 1, "name": "a", "multiplier": {"symbol": 1}})";
  EXPECT_EQ(parse_scenarios(R"({"format": 1, "scenarios": [)" + one + "]}").size(), 1u);
  EXPECT_THROW(parse_scenarios(R"({"format": 1, "scenarios": [)" + one + "," + one + "]}"), ParseError);
}

TEST(Registry, EntriesRoundTrip) {
  const auto& list = registry_list();
  EXPECT_GE(list.size(), 14u);
  std::set<std::string> names;
  for (const auto& s : list) {
    EXPECT_TRUE(names.insert(s.name).second) << s.name;
    EXPECT_EQ(parse_scenario(serialize_scenario(s)), s) << s.name;
  }
  EXPECT_TRUE(registry_find("paper.example_wd").has_value());
  EXPECT_TRUE(registry_find("example_wd").has_value());
  EXPECT_FALSE(registry_find("missing").has_value());
}

TEST(Matching, ExpectationForms) {
  EXPECT_TRUE(matches(json("Yes"), json("Yes")));
  EXPECT_FALSE(matches(json("Yes"), json("No")));
  EXPECT_TRUE(matches(json{{"value", 1.0}, {"tol", 1e-12}}, json(1.0 + 1e-13)));
  EXPECT_FALSE(matches(json{{"value", 1.0}, {"tol", 1e-12}}, json(1.0 + 1e-9)));
  EXPECT_TRUE(matches(json{{"max", 2}}, json(1.5)));
  EXPECT_TRUE(matches(json{{"min", 2}}, json(2.5)));
  EXPECT_TRUE(matches(json{{"in", {"a", "b"}}}, json("b")));
  EXPECT_TRUE(matches(json{{"contains", "x"}}, json::array({"w", "x"})));
  json doc = {{"a", {{"b", json::array({json{{"c", 3}}})}}}};
  ASSERT_NE(lookup(doc, "a.b.0.c"), nullptr);
  EXPECT_EQ(*lookup(doc, "a.b.0.c"), 3);
  EXPECT_EQ(lookup(doc, "a.x"), nullptr);
}

TEST(Run, IdentityScenarioPasses) {
  auto s = registry_find("e1short");
  ASSERT_TRUE(s.has_value());
  auto r = run(*s);
  EXPECT_EQ(r.outcome, Outcome::Pass);
  EXPECT_EQ(r.exit_code(), 0);
  for (const auto& a : r.analyses) EXPECT_EQ(a.status, "ok") << to_string(a.analysis);
  EXPECT_FALSE(r.wall_time_seconds.has_value());
  EXPECT_EQ(Report::from_json(r.to_json()), r);
}

TEST(Run, SwappedExampleDiverges) {
  auto r = run(*registry_find("example_wd_swapped"));
  EXPECT_EQ(r.outcome, Outcome::Pass);
  EXPECT_EQ(r.analyses.front().result["verdict"], "DivergentAtScale");
}

TEST(Run, FailedExpectationSetsExitCode) {
  auto s = parse_scenario(R"({"format": 1, "name": "wrong", "multiplier": {"symbol": 1},
      "expected": {"convergence": {"verdict": "DivergentAtScale"}}})");
  auto r = run(s);
  EXPECT_EQ(r.outcome, Outcome::Fail);
  EXPECT_EQ(r.exit_code(), 1);
  ASSERT_EQ(r.analyses.front().checks.size(), 1u);
  EXPECT_FALSE(r.analyses.front().checks.front().ok);
}

TEST(Run, AnalysisErrorIsRecorded) {
  auto s = parse_scenario(R"({"format": 1, "name": "err", "analyses": ["sqrt_split", "invertibility"],
      "multiplier": {"symbol": 1, "phi": {"kind": "weighted_onb", "weights": "n"}, "psi": {"kind": "onb"}}})");
  auto r = run(s);
  EXPECT_EQ(r.analyses[0].status, "error");
  EXPECT_EQ(r.analyses[1].status, "ok");
  EXPECT_EQ(r.exit_code(), 3);
}

TEST(Run, TimingIsOptIn) {
  auto s = parse_scenario(R"({"format": 1, "name": "t", "ladder": [16, 32, 64], "multiplier": {"symbol": 1}})");
  EXPECT_TRUE(run(s, RunOptions{true}).wall_time_seconds.has_value());
  EXPECT_EQ(run(s).to_json().dump(), run(s).to_json().dump());
}

TEST(Files, AtomicWrite) {
  auto path = (std::filesystem::temp_directory_path() / "framemult_atomic_test.json").string();
  write_file_atomic(path, "{}\n");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(content, "{}\n");
  std::filesystem::remove(path);
}
