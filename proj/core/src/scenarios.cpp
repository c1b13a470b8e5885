#include "framemult/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "framemult/classification.hpp"
#include "framemult/convergence.hpp"
#include "framemult/error.hpp"
#include "framemult/serialize.hpp"

namespace framemult {

using nlohmann::json;

namespace {

const std::vector<std::pair<Analysis, const char*>>& analysis_names() {
  static const std::vector<std::pair<Analysis, const char*>> names = {
      {Analysis::ClassifyScalars, "classify_scalars"}, {Analysis::FrameBounds, "frame_bounds"},
      {Analysis::Convergence, "convergence"},          {Analysis::NecessaryReport, "necessary_report"},
      {Analysis::Canonicalize, "canonicalize"},        {Analysis::SqrtSplit, "sqrt_split"},
      {Analysis::Invertibility, "invertibility"},      {Analysis::E2Certificate, "e2_certificate"},
      {Analysis::DualCheck, "dual_check"},             {Analysis::AdjointCheck, "adjoint_check"},
  };
  return names;
}

}  // namespace

std::string to_string(Analysis a) {
  for (const auto& [value, name] : analysis_names())
    if (value == a) return name;
  return "unknown";
}

std::optional<Analysis> analysis_from_string(std::string_view name) {
  for (const auto& [value, text] : analysis_names())
    if (name == text) return value;
  return std::nullopt;
}

const std::vector<Analysis>& all_analyses() {
  static const std::vector<Analysis> all = [] {
    std::vector<Analysis> out;
    for (const auto& entry : analysis_names()) out.push_back(entry.first);
    return out;
  }();
  return all;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::UnspecifiedExpected:
      return "unspecified-expected";
  }
  return "fail";
}

Outcome outcome_from_string(std::string_view s) {
  if (s == "pass") return Outcome::Pass;
  if (s == "fail") return Outcome::Fail;
  if (s == "unspecified-expected") return Outcome::UnspecifiedExpected;
  throw ParseError("outcome", "unknown outcome '" + std::string(s) + "'");
}

// ---------------------------------------------------------------- scenarios

json Scenario::to_json() const {
  json analyses_json = json::array();
  for (auto a : analyses) analyses_json.push_back(to_string(a));
  json out = {{"format", kScenarioFormat},
              {"name", name},
              {"multiplier", multiplier.to_json()},
              {"ladder", multiplier.ladder.lengths()},
              {"seed", seed.value},
              {"analyses", analyses_json},
              {"options", {{"identity_claimed", options.identity_claimed}, {"e2_sizes", options.e2_sizes}}},
              {"expected", expected}};
  if (!description.empty()) out["description"] = description;
  return out;
}

namespace {

std::string field(const std::string& path, const std::string& name) { return path.empty() ? name : path + "." + name; }

void check_expectation_shape(const json& e, const std::string& path) {
  if (!e.is_object()) throw ParseError(path, "expectation must be an object");
  if (e.contains("unspecified")) {
    if (!e["unspecified"].is_boolean() || !e["unspecified"].get<bool>())
      throw ParseError(field(path, "unspecified"), "must be true when present");
    if (e.contains("claim") && !e["claim"].is_object()) throw ParseError(field(path, "claim"), "expected an object");
    if (e.contains("note") && !e["note"].is_string()) throw ParseError(field(path, "note"), "expected a string");
    return;
  }
  for (const auto& [key, value] : e.items()) {
    if (key.empty()) throw ParseError(path, "empty expectation path");
    if (value.is_object()) {
      static const std::set<std::string> allowed = {"value", "tol", "max", "min", "in", "contains"};
      for (const auto& [k, v] : value.items()) {
        if (!allowed.count(k)) throw ParseError(field(path, key), "unknown comparison '" + k + "'");
        if ((k == "tol" || k == "max" || k == "min") && !v.is_number())
          throw ParseError(field(field(path, key), k), "expected a number");
        if (k == "in" && !v.is_array()) throw ParseError(field(field(path, key), k), "expected an array");
      }
    }
  }
}

}  // namespace

Scenario Scenario::from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "scenario must be an object");
  static const std::set<std::string> known = {"format", "name",     "description", "multiplier", "ladder",
                                              "seed",   "analyses", "options",     "expected"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ParseError(field(path, key), "unknown field");
  }
  if (j.contains("format") && (!j["format"].is_number_integer() || j["format"].get<int>() != kScenarioFormat))
    throw ParseError(field(path, "format"), "unsupported format (expected 1)");

  Scenario s;
  if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
    throw ParseError(field(path, "name"), "a non-empty name is required");
  s.name = j["name"].get<std::string>();
  if (j.contains("description")) {
    if (!j["description"].is_string()) throw ParseError(field(path, "description"), "expected a string");
    s.description = j["description"].get<std::string>();
  }

  TruncationLadder ladder;
  if (j.contains("ladder")) {
    const auto& l = j["ladder"];
    if (!l.is_array()) throw ParseError(field(path, "ladder"), "expected an array of lengths");
    std::vector<std::int64_t> lengths;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_number_integer()) throw ParseError(field(path, "ladder") + "[" + std::to_string(i) + "]", "expected an integer");
      lengths.push_back(l[i].get<std::int64_t>());
    }
    try {
      ladder = TruncationLadder(std::move(lengths));
    } catch (const PreconditionError& e) {
      throw ParseError(field(path, "ladder"), e.what());
    }
  }

  if (!j.contains("multiplier")) throw ParseError(field(path, "multiplier"), "required");
  try {
    s.multiplier = MultiplierSpec::from_json(j["multiplier"], ladder, field(path, "multiplier"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(field(path, "multiplier"), e.what());
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError(field(path, "seed"), "expected a nonnegative integer");
    s.seed.value = j["seed"].get<std::uint64_t>();
  }

  if (j.contains("analyses")) {
    const auto& a = j["analyses"];
    if (!a.is_array()) throw ParseError(field(path, "analyses"), "expected an array of analysis names");
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::string where = field(path, "analyses") + "[" + std::to_string(i) + "]";
      if (!a[i].is_string()) throw ParseError(where, "expected a string");
      auto parsed = analysis_from_string(a[i].get<std::string>());
      if (!parsed) throw ParseError(where, "unknown analysis '" + a[i].get<std::string>() + "'");
      if (std::find(s.analyses.begin(), s.analyses.end(), *parsed) != s.analyses.end())
        throw ParseError(where, "analysis listed twice");
      s.analyses.push_back(*parsed);
    }
  } else {
    s.analyses = {Analysis::Convergence};
  }

  if (j.contains("options")) {
    const auto& o = j["options"];
    if (!o.is_object()) throw ParseError(field(path, "options"), "expected an object");
    for (const auto& [key, value] : o.items()) {
      std::string where = field(field(path, "options"), key);
      if (key == "identity_claimed") {
        if (!value.is_boolean()) throw ParseError(where, "expected a boolean");
        s.options.identity_claimed = value.get<bool>();
      } else if (key == "e2_sizes") {
        if (!value.is_array()) throw ParseError(where, "expected an array");
        s.options.e2_sizes.clear();
        for (const auto& v : value) {
          if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw ParseError(where, "sizes must be positive integers");
          s.options.e2_sizes.push_back(v.get<std::int64_t>());
        }
      } else {
        throw ParseError(where, "unknown option");
      }
    }
  }

  if (j.contains("expected")) {
    const auto& e = j["expected"];
    if (!e.is_object()) throw ParseError(field(path, "expected"), "expected an object");
    for (const auto& [key, value] : e.items()) {
      std::string where = field(field(path, "expected"), key);
      auto a = analysis_from_string(key);
      if (!a) throw ParseError(where, "unknown analysis");
      if (std::find(s.analyses.begin(), s.analyses.end(), *a) == s.analyses.end())
        throw ParseError(where, "expectation for an analysis that is not requested");
      check_expectation_shape(value, where);
    }
    s.expected = e;
  }
  return s;
}

namespace {

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    auto colon = message.find("syntax error");
    if (colon != std::string::npos) message = message.substr(colon);
    throw ParseError("", "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message);
  }
}

}  // namespace

std::vector<Scenario> parse_scenarios(std::string_view text) {
  json doc = parse_json_text(text);
  std::vector<Scenario> out;
  if (doc.is_object() && doc.contains("scenarios")) {
    if (doc.contains("format") && (!doc["format"].is_number_integer() || doc["format"].get<int>() != kScenarioFormat))
      throw ParseError("format", "unsupported format (expected 1)");
    const auto& list = doc["scenarios"];
    if (!list.is_array()) throw ParseError("scenarios", "expected an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string path = "scenarios[" + std::to_string(i) + "]";
      out.push_back(Scenario::from_json(list[i], path));
      if (!names.insert(out.back().name).second) throw ParseError(path + ".name", "duplicate scenario name '" + out.back().name + "'");
    }
    if (out.empty()) throw ParseError("scenarios", "no scenarios");
  } else {
    out.push_back(Scenario::from_json(doc));
  }
  return out;
}

Scenario parse_scenario(std::string_view text) {
  auto all = parse_scenarios(text);
  if (all.size() != 1) throw ParseError("scenarios", "expected exactly one scenario");
  return all.front();
}

std::string serialize_scenario(const Scenario& s) { return s.to_json().dump(2) + "\n"; }

// ------------------------------------------------------------- expectations

const json* lookup(const json& doc, std::string_view path) {
  const json* node = &doc;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t dot = path.find('.', start);
    std::string key(path.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (node->is_object()) {
      auto it = node->find(key);
      if (it == node->end()) return nullptr;
      node = &*it;
    } else if (node->is_array()) {
      if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; })) return nullptr;
      std::size_t idx = std::stoul(key);
      if (idx >= node->size()) return nullptr;
      node = &(*node)[idx];
    } else {
      return nullptr;
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return node;
}

namespace {

std::optional<double> as_number(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  return std::nullopt;
}

bool scalar_equal(const json& expected, const json& actual, double tol) {
  if (expected.is_number()) {
    auto a = as_number(actual);
    if (!a) return false;
    double e = expected.get<double>();
    double t = tol >= 0.0 ? tol : 1e-9 * std::max(1.0, std::abs(e));
    return std::abs(*a - e) <= t;
  }
  return expected == actual;
}

}  // namespace

bool matches(const json& expected, const json& actual) {
  if (expected.is_object()) {
    bool ok = true;
    if (expected.contains("value")) {
      double tol = expected.contains("tol") ? expected["tol"].get<double>() : -1.0;
      ok = ok && scalar_equal(expected["value"], actual, tol);
    }
    if (expected.contains("max")) {
      auto a = as_number(actual);
      ok = ok && a && *a <= expected["max"].get<double>();
    }
    if (expected.contains("min")) {
      auto a = as_number(actual);
      ok = ok && a && *a >= expected["min"].get<double>();
    }
    if (expected.contains("in")) {
      const auto& options = expected["in"];
      ok = ok && std::any_of(options.begin(), options.end(), [&](const json& o) { return scalar_equal(o, actual, -1.0); });
    }
    if (expected.contains("contains")) {
      ok = ok && actual.is_array() &&
           std::any_of(actual.begin(), actual.end(), [&](const json& o) { return scalar_equal(expected["contains"], o, -1.0); });
    }
    return ok;
  }
  return scalar_equal(expected, actual, -1.0);
}

// ----------------------------------------------------------------- running

namespace {

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const OverflowError*>(&e)) return "OverflowError";
  if (dynamic_cast<const ShapeError*>(&e)) return "ShapeError";
  if (dynamic_cast<const LatticeError*>(&e)) return "LatticeError";
  if (dynamic_cast<const NumericalError*>(&e)) return "NumericalError";
  if (dynamic_cast<const ReweightError*>(&e)) return "ReweightError";
  if (dynamic_cast<const CanonicalizationError*>(&e)) return "CanonicalizationError";
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  return "Error";
}

json scalar_block(const MultiplierSpec& spec) {
  const auto& ladder = spec.ladder;
  auto phi_norm = spec.phi.norm_weights();
  auto psi_norm = spec.psi.norm_weights();
  return {{"symbol", to_json(classify_scalars(spec.symbol, ladder))},
          {"phi_norms", to_json(classify_scalars(phi_norm, ladder))},
          {"psi_norms", to_json(classify_scalars(psi_norm, ladder))},
          {"product_norms",
           to_json(classify_scalars(WeightExpr::product(spec.symbol, WeightExpr::product(phi_norm, psi_norm)), ladder))}};
}

class Runner {
 public:
  explicit Runner(const Scenario& s) : s_(s) {}

  json compute(Analysis a) {
    const auto& spec = s_.multiplier;
    switch (a) {
      case Analysis::ClassifyScalars:
        return scalar_block(spec);
      case Analysis::FrameBounds:
        return {{"phi", to_json(estimate_frame_bounds(spec.phi, spec.ladder))},
                {"psi", to_json(estimate_frame_bounds(spec.psi, spec.ladder))},
                {"phi_minimality", to_json(biorthogonal(spec.phi, spec.ladder))}};
      case Analysis::Convergence:
        return to_json(convergence());
      case Analysis::NecessaryReport:
        return to_json(necessary_report(spec, convergence()));
      case Analysis::Canonicalize:
        return to_json(canonicalize_p2(spec));
      case Analysis::SqrtSplit:
        return to_json(sqrt_split(spec));
      case Analysis::Invertibility:
        return to_json(invertibility(spec, s_.options.identity_claimed));
      case Analysis::E2Certificate: {
        json certs = json::array();
        for (auto N : s_.options.e2_sizes) certs.push_back(to_json(e2_certificate(N)));
        return {{"certificates", certs}};
      }
      case Analysis::DualCheck:
        return to_json(dual_check(spec));
      case Analysis::AdjointCheck:
        return to_json(adjoint_swap_check(spec));
    }
    return json::object();
  }

 private:
  const ConvergenceResult& convergence() {
    if (!convergence_) convergence_ = classify(s_.multiplier, s_.seed);
    return *convergence_;
  }

  const Scenario& s_;
  std::optional<ConvergenceResult> convergence_;
};

std::string short_json(const json& v) {
  if (v.is_null()) return "(missing)";
  return v.dump();
}

}  // namespace

Report run(const Scenario& scenario, const RunOptions& options) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.scenario = scenario.name;
  report.seed = scenario.seed.value;
  report.ladder = scenario.ladder().lengths();
  report.multiplier = scenario.multiplier.to_json();

  Runner runner(scenario);
  for (auto a : scenario.analyses) {
    AnalysisReport ar;
    ar.analysis = a;
    try {
      ar.result = runner.compute(a);
    } catch (const Error& e) {
      ar.status = "error";
      ar.error = error_kind(e) + ": " + e.what();
      ar.result = json::object();
    } catch (const std::exception& e) {
      ar.status = "error";
      ar.error = std::string("Error: ") + e.what();
      ar.result = json::object();
    }

    auto name = to_string(a);
    if (scenario.expected.contains(name)) {
      const auto& exp = scenario.expected[name];
      if (exp.contains("unspecified")) {
        ar.outcome = Outcome::UnspecifiedExpected;
        std::vector<std::string> parts;
        bool differs = false;
        if (exp.contains("claim")) {
          for (const auto& [path, claimed] : exp["claim"].items()) {
            const json* actual = ar.status == "ok" ? lookup(ar.result, path) : nullptr;
            bool agree = actual && matches(claimed, *actual);
            differs |= !agree;
            parts.push_back(path + ": recorded " + (actual ? short_json(*actual) : std::string("(missing)")) +
                            ", claimed " + short_json(claimed) + (agree ? " (agrees)" : " (differs)"));
          }
        }
        std::string joined;
        for (std::size_t i = 0; i < parts.size(); ++i) joined += (i ? "; " : "") + parts[i];
        ar.note = (differs ? "discrepancy: " : "consistent: ") + joined;
        if (exp.contains("note")) ar.note += " [" + exp["note"].get<std::string>() + "]";
        report.notes.push_back(name + " " + ar.note);
      } else if (ar.status != "ok") {
        ar.outcome = Outcome::Fail;
      } else {
        bool all_ok = true;
        for (const auto& [path, expected] : exp.items()) {
          CheckResult c;
          c.path = path;
          c.expected = expected;
          const json* actual = lookup(ar.result, path);
          c.actual = actual ? *actual : json();
          c.ok = actual && matches(expected, *actual);
          all_ok &= c.ok;
          ar.checks.push_back(std::move(c));
        }
        ar.outcome = all_ok ? Outcome::Pass : Outcome::Fail;
      }
    }
    report.analyses.push_back(std::move(ar));
  }

  report.outcome = Outcome::Pass;
  for (const auto& ar : report.analyses) {
    if (ar.outcome == Outcome::Fail) report.outcome = Outcome::Fail;
    if (ar.outcome == Outcome::UnspecifiedExpected && report.outcome == Outcome::Pass)
      report.outcome = Outcome::UnspecifiedExpected;
  }
  if (options.timing)
    report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ----------------------------------------------------------------- reports

int Report::exit_code() const {
  for (const auto& ar : analyses)
    if (ar.status != "ok") return 3;
  return outcome == Outcome::Fail ? 1 : 0;
}

json Report::to_json() const {
  json list = json::array();
  for (const auto& ar : analyses) {
    json checks = json::array();
    for (const auto& c : ar.checks)
      checks.push_back({{"path", c.path}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
    json entry = {{"analysis", to_string(ar.analysis)},
                  {"status", ar.status},
                  {"result", ar.result},
                  {"outcome", to_string(ar.outcome)},
                  {"checks", checks}};
    if (!ar.error.empty()) entry["error"] = ar.error;
    if (!ar.note.empty()) entry["note"] = ar.note;
    list.push_back(std::move(entry));
  }
  json out = {{"format", kScenarioFormat},
              {"tool", "framemult"},
              {"version", version},
              {"scenario", scenario},
              {"seed", seed},
              {"ladder", ladder},
              {"multiplier", multiplier},
              {"outcome", to_string(outcome)},
              {"notes", notes},
              {"analyses", list}};
  if (wall_time_seconds) out["wall_time_seconds"] = *wall_time_seconds;
  return out;
}

Report Report::from_json(const json& j) {
  try {
    Report r;
    r.scenario = j.at("scenario").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.ladder = j.at("ladder").get<std::vector<std::int64_t>>();
    r.multiplier = j.at("multiplier");
    r.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("wall_time_seconds")) r.wall_time_seconds = j["wall_time_seconds"].get<double>();
    for (const auto& e : j.at("analyses")) {
      AnalysisReport ar;
      auto a = analysis_from_string(e.at("analysis").get<std::string>());
      if (!a) throw ParseError("analyses", "unknown analysis");
      ar.analysis = *a;
      ar.status = e.at("status").get<std::string>();
      ar.result = e.at("result");
      ar.outcome = outcome_from_string(e.at("outcome").get<std::string>());
      if (e.contains("error")) ar.error = e["error"].get<std::string>();
      if (e.contains("note")) ar.note = e["note"].get<std::string>();
      for (const auto& c : e.at("checks")) {
        ar.checks.push_back({c.at("path").get<std::string>(), c.at("expected"), c.at("actual"), c.at("ok").get<bool>()});
      }
      r.analyses.push_back(std::move(ar));
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError("report", e.what());
  }
}

namespace {

std::string headline(Analysis a, const json& r) {
  auto get = [&r](const char* path) {
    const json* v = lookup(r, path);
    if (!v) return std::string("?");
    return v->is_string() ? v->get<std::string>() : v->dump();
  };
  switch (a) {
    case Analysis::ClassifyScalars:
      return "m: nbb=" + get("symbol.is_nbb") + " linf=" + get("symbol.is_linf") +
             ", |m|*|phi|*|psi|: nbb=" + get("product_norms.is_nbb");
    case Analysis::FrameBounds:
      return "phi " + get("phi.verdict") + " (B=" + get("phi.B_estimate") + ", A=" + get("phi.A_estimate") + "), psi " +
             get("psi.verdict") + " (B=" + get("psi.B_estimate") + ", A=" + get("psi.A_estimate") + ")";
    case Analysis::Convergence:
      return get("verdict") +
             (get("witness.probe").empty() ? "" : " (witness " + get("witness.probe") + "/" + get("witness.pattern") + ")");
    case Analysis::NecessaryReport:
      return "contradictions=" + get("contradiction_count") + ", (m psi) " + get("m_psi.verdict");
    case Analysis::Canonicalize:
    case Analysis::SqrtSplit:
      return "symbol=" + get("symbol") + ", bessel_pair=" + get("bessel_pair") + ", frame_pair=" + get("frame_pair") +
             ", invariance=" + get("max_invariance_residual");
    case Analysis::Invertibility:
      return get("verdict");
    case Analysis::E2Certificate: {
      std::string out;
      const json* certs = lookup(r, "certificates");
      if (certs)
        for (const auto& c : *certs) out += (out.empty() ? "" : ", ") + std::string("N=") + c["N"].dump() + ": " + c["optimum"].get<std::string>();
      return out;
    }
    case Analysis::DualCheck:
      return "vanishes=" + get("vanishes") + ", swapped_vanishes=" + get("swapped_vanishes");
    case Analysis::AdjointCheck:
      return "worst_relative=" + get("worst_relative");
  }
  return "";
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream out;
  out << "scenario " << scenario << ": " << framemult::to_string(outcome) << " (seed " << seed << ", ladder";
  for (std::size_t i = 0; i < ladder.size(); ++i) out << (i ? "," : " ") << ladder[i];
  out << ")\n";
  for (const auto& ar : analyses) {
    out << "  " << framemult::to_string(ar.analysis) << ": " << framemult::to_string(ar.outcome);
    if (ar.status != "ok") {
      out << " [error] " << ar.error << "\n";
    } else {
      out << "  " << headline(ar.analysis, ar.result) << "\n";
    }
    for (const auto& c : ar.checks) {
      out << "    " << (c.ok ? "ok  " : "FAIL") << " " << c.path << " expected " << c.expected.dump() << ", got "
          << short_json(c.actual) << "\n";
    }
    if (!ar.note.empty()) out << "    note: " << ar.note << "\n";
  }
  if (wall_time_seconds) out << "  wall time: " << *wall_time_seconds << " s\n";
  return out.str();
}

json reports_to_json(const std::vector<Report>& reports) {
  json list = json::array();
  for (const auto& r : reports) list.push_back(r.to_json());
  return {{"format", kScenarioFormat}, {"tool", "framemult"}, {"version", kToolVersion}, {"reports", list}};
}

std::string reports_to_text(const std::vector<Report>& reports) {
  std::string out;
  for (const auto& r : reports) out += r.to_text();
  return out;
}

int combined_exit_code(const std::vector<Report>& reports) {
  int code = 0;
  for (const auto& r : reports) {
    int c = r.exit_code();
    if (c == 3 || (c == 1 && code == 0)) code = c;
  }
  return code;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp);
    f << content;
    if (!f) throw Error("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot move report into place at " + path);
  }
}

}  // namespace framemult
