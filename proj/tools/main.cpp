#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "framemult/error.hpp"
#include "framemult/scenarios.hpp"

namespace fm = framemult;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;

struct GlobalOptions {
  std::string ladder;
  std::optional<std::uint64_t> seed;
  std::string report_path;
  std::string format = "text";
  bool timing = false;
};

std::vector<std::int64_t> parse_ladder(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw fm::ParseError("--ladder", "'" + item + "' is not an integer");
    }
  }
  return out;
}

void apply_overrides(fm::Scenario& s, const GlobalOptions& g) {
  if (!g.ladder.empty()) {
    try {
      s.multiplier.ladder = fm::TruncationLadder(parse_ladder(g.ladder));
    } catch (const fm::PreconditionError& e) {
      throw fm::ParseError("--ladder", e.what());
    }
  }
  if (g.seed) s.seed.value = *g.seed;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw fm::ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json parse_inline(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw fm::ParseError(what, std::string("invalid JSON: ") + e.what());
  }
}

// "onb", a weight expression (weighted basis) or a JSON sequence object.
json sequence_argument(const std::string& text, const std::string& what) {
  if (text.empty() || text == "onb") return {{"kind", "onb"}};
  if (text.front() == '{') return parse_inline(text, what);
  if (text.front() == '@') return parse_inline(read_file(text.substr(1)), what);
  return {{"kind", "weighted_onb"}, {"weights", text}};
}

json symbol_argument(const std::string& text) {
  if (!text.empty() && (text.front() == '{' || text.front() == '[')) return parse_inline(text, "--symbol");
  return text;
}

int emit(const std::vector<fm::Report>& reports, const GlobalOptions& g) {
  std::string body;
  if (g.format == "json") {
    body = (reports.size() == 1 ? reports.front().to_json() : fm::reports_to_json(reports)).dump(2) + "\n";
  } else {
    body = fm::reports_to_text(reports);
  }
  if (!g.report_path.empty()) {
    fm::write_file_atomic(g.report_path, body);
    std::cout << fm::reports_to_text(reports);
  } else {
    std::cout << body;
  }
  return fm::combined_exit_code(reports);
}

std::vector<fm::Report> run_all(std::vector<fm::Scenario> scenarios, const GlobalOptions& g) {
  std::vector<fm::Report> reports;
  for (auto& s : scenarios) {
    apply_overrides(s, g);
    reports.push_back(fm::run(s, fm::RunOptions{g.timing}));
  }
  return reports;
}

fm::Scenario adhoc_scenario(const std::string& name, const std::string& symbol, const std::string& phi,
                            const std::string& psi, std::vector<std::string> analyses, bool identity_claimed) {
  json multiplier = {{"symbol", symbol_argument(symbol)}, {"phi", sequence_argument(phi, "--phi")}};
  multiplier["psi"] = psi.empty() ? multiplier["phi"] : sequence_argument(psi, "--psi");
  json doc = {{"format", fm::kScenarioFormat},
              {"name", name},
              {"multiplier", multiplier},
              {"analyses", analyses},
              {"options", {{"identity_claimed", identity_claimed}}}};
  return fm::Scenario::from_json(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame multiplier diagnostics over truncation ladders"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fm::kToolVersion));

  GlobalOptions g;
  auto add_globals = [&g](CLI::App* cmd) {
    cmd->add_option("--ladder", g.ladder, "Comma-separated truncation lengths, e.g. 64,256,1024,4096");
    cmd->add_option("--seed", g.seed, "Seed for every randomized probe");
    cmd->add_option("--report", g.report_path, "Write the report to this file (atomically)");
    cmd->add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--timing", g.timing, "Record wall time in reports");
  };

  std::vector<std::string> files;
  auto* run_cmd = app.add_subcommand("run", "Run the scenarios in one or more files");
  run_cmd->add_option("files", files, "Scenario files")->required();
  add_globals(run_cmd);

  std::string paper_name;
  bool paper_all = false;
  bool paper_list = false;
  auto* paper_cmd = app.add_subcommand("paper", "Run built-in scenarios");
  paper_cmd->add_option("name", paper_name, "Entry name (with or without the 'paper.' prefix)");
  paper_cmd->add_flag("--all", paper_all, "Run every built-in scenario");
  paper_cmd->add_flag("--list", paper_list, "List the built-in scenarios");
  paper_cmd->add_flag("--dump", "Print the scenario documents instead of running them");
  add_globals(paper_cmd);

  std::string symbol = "1";
  std::string phi = "onb";
  std::string psi;
  bool identity_claimed = false;
  std::vector<std::string> analyses;
  auto add_multiplier = [&](CLI::App* cmd) {
    cmd->add_option("--symbol", symbol, "Symbol: weight expression or JSON weight");
    cmd->add_option("--phi", phi, "Synthesis sequence: 'onb', a weight expression or a JSON sequence (@file to read)");
    cmd->add_option("--psi", psi, "Analysis sequence (defaults to phi)");
    add_globals(cmd);
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Run analyses on a multiplier given on the command line");
  add_multiplier(analyze_cmd);
  analyze_cmd->add_option("--analyses", analyses, "Analyses to run (default: scalars, frame bounds, convergence, necessary report)")
      ->delimiter(',');
  analyze_cmd->add_flag("--identity", identity_claimed, "Claim that the multiplier is the identity");

  bool with_sqrt = false;
  auto* canonical_cmd = app.add_subcommand("canonical", "Canonical reweighting to symbol (1)");
  add_multiplier(canonical_cmd);
  canonical_cmd->add_flag("--sqrt", with_sqrt, "Also run the square-root split (requires phi == psi)");

  auto* convergence_cmd = app.add_subcommand("convergence", "Unconditional-convergence diagnostics");
  add_multiplier(convergence_cmd);

  auto* invert_cmd = app.add_subcommand("invert", "Invertibility diagnostics");
  add_multiplier(invert_cmd);
  invert_cmd->add_flag("--identity", identity_claimed, "Claim that the multiplier is the identity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (run_cmd->parsed()) {
      std::vector<fm::Scenario> scenarios;
      for (const auto& f : files) {
        try {
          for (auto& s : fm::parse_scenarios(read_file(f))) scenarios.push_back(std::move(s));
        } catch (const fm::ParseError& e) {
          throw fm::ParseError(f, e.what());
        }
      }
      return emit(run_all(std::move(scenarios), g), g);
    }
    if (paper_cmd->parsed()) {
      if (paper_list) {
        for (const auto& s : fm::registry_list()) std::cout << s.name << "  " << s.description << "\n";
        return 0;
      }
      std::vector<fm::Scenario> selected;
      if (paper_all) {
        selected = fm::registry_list();
      } else if (!paper_name.empty()) {
        auto s = fm::registry_find(paper_name);
        if (!s) throw fm::ParseError("paper", "no built-in scenario named '" + paper_name + "'");
        selected.push_back(*s);
      } else {
        throw fm::ParseError("paper", "give an entry name, --all or --list");
      }
      if (paper_cmd->count("--dump") > 0) {
        json list = json::array();
        for (auto& s : selected) {
          apply_overrides(s, g);
          list.push_back(s.to_json());
        }
        json doc = selected.size() == 1 ? list.front() : json{{"format", fm::kScenarioFormat}, {"scenarios", list}};
        std::cout << doc.dump(2) << "\n";
        return 0;
      }
      return emit(run_all(std::move(selected), g), g);
    }
    if (analyze_cmd->parsed()) {
      if (analyses.empty()) analyses = {"classify_scalars", "frame_bounds", "convergence", "necessary_report"};
      return emit(run_all({adhoc_scenario("analyze", symbol, phi, psi, analyses, identity_claimed)}, g), g);
    }
    if (canonical_cmd->parsed()) {
      std::vector<std::string> list = {"canonicalize"};
      if (with_sqrt) list.push_back("sqrt_split");
      return emit(run_all({adhoc_scenario("canonical", symbol, phi, psi, list, false)}, g), g);
    }
    if (convergence_cmd->parsed()) {
      return emit(run_all({adhoc_scenario("convergence", symbol, phi, psi, {"convergence", "necessary_report"}, false)}, g), g);
    }
    if (invert_cmd->parsed()) {
      return emit(run_all({adhoc_scenario("invert", symbol, phi, psi, {"invertibility"}, identity_claimed)}, g), g);
    }
  } catch (const fm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const fm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
