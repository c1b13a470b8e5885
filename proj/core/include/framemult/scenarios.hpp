#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "framemult/core.hpp"
#include "framemult/multiplier.hpp"

namespace framemult {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kScenarioFormat = 1;

enum class Analysis {
  ClassifyScalars,
  FrameBounds,
  Convergence,
  NecessaryReport,
  Canonicalize,
  SqrtSplit,
  Invertibility,
  E2Certificate,
  DualCheck,
  AdjointCheck,
};

std::string to_string(Analysis a);
std::optional<Analysis> analysis_from_string(std::string_view name);
const std::vector<Analysis>& all_analyses();

struct ScenarioOptions {
  /// The multiplier is claimed to be the identity (invertibility cross-check).
  bool identity_claimed = false;
  /// Sizes for e2_certificate.
  std::vector<std::int64_t> e2_sizes{2, 10, 100};

  friend bool operator==(const ScenarioOptions&, const ScenarioOptions&) = default;
};

/// A multiplier, a ladder, a seed, the analyses to run and what each is
/// expected to produce.
///
/// `expected` maps an analysis name to either
///   {"<dotted.path>": value | {"value": x, "tol": t} | {"max": x} | {"min": x} | {"in": [...]}, ...}
/// or, when the outcome is deliberately left open,
///   {"unspecified": true, "claim": {"<dotted.path>": value, ...}, "note": "..."}.
struct Scenario {
  std::string name;
  std::string description;
  MultiplierSpec multiplier;
  RngSeed seed;
  std::vector<Analysis> analyses;
  ScenarioOptions options;
  nlohmann::json expected = nlohmann::json::object();

  const TruncationLadder& ladder() const noexcept { return multiplier.ladder; }

  nlohmann::json to_json() const;
  /// Validates and throws ParseError naming the offending field.
  static Scenario from_json(const nlohmann::json& j, const std::string& path = "");

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// One scenario document. Syntax errors are reported with line and column.
Scenario parse_scenario(std::string_view text);
/// A single scenario or {"format": 1, "scenarios": [...]}; names must be unique.
std::vector<Scenario> parse_scenarios(std::string_view text);
std::string serialize_scenario(const Scenario& s);

enum class Outcome { Pass, Fail, UnspecifiedExpected };

std::string to_string(Outcome o);
Outcome outcome_from_string(std::string_view s);

struct CheckResult {
  std::string path;
  nlohmann::json expected;
  nlohmann::json actual;
  bool ok = false;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct AnalysisReport {
  Analysis analysis = Analysis::Convergence;
  /// "ok" or "error".
  std::string status = "ok";
  std::string error;
  nlohmann::json result;
  Outcome outcome = Outcome::Pass;
  std::vector<CheckResult> checks;
  /// Comparison of the recorded result with a claimed one (unspecified
  /// expectations only).
  std::string note;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

struct Report {
  std::string scenario;
  std::string version = kToolVersion;
  std::uint64_t seed = 42;
  std::vector<std::int64_t> ladder;
  nlohmann::json multiplier;
  std::vector<AnalysisReport> analyses;
  Outcome outcome = Outcome::Pass;
  std::vector<std::string> notes;
  std::optional<double> wall_time_seconds;

  /// 0 pass (unspecified-expected included), 1 expectation failure,
  /// 3 numerical error in some analysis.
  int exit_code() const;

  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  std::string to_text() const;

  friend bool operator==(const Report&, const Report&) = default;
};

struct RunOptions {
  bool timing = false;
};

/// Runs every requested analysis; an analysis that raises records the error
/// and the rest still run.
Report run(const Scenario& scenario, const RunOptions& options = {});

/// Looks up `path` ("a.b.0.c") in a JSON document.
const nlohmann::json* lookup(const nlohmann::json& doc, std::string_view path);

/// Compares one expected entry with the actual value.
bool matches(const nlohmann::json& expected, const nlohmann::json& actual);

/// Built-in scenarios, named "paper.<entry>".
const std::vector<Scenario>& registry_list();
/// Accepts the name with or without the "paper." prefix.
std::optional<Scenario> registry_find(std::string_view name);

/// Reports for several scenarios as one document {"format", "reports"}.
nlohmann::json reports_to_json(const std::vector<Report>& reports);
std::string reports_to_text(const std::vector<Report>& reports);
/// Worst exit code over the reports (3 > 1 > 0).
int combined_exit_code(const std::vector<Report>& reports);

/// Writes through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace framemult
