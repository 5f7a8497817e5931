#pragma once

// Command-line front end: eval, check, enum, rule, kripke.
//
// Exit codes: 0 success / Verified, 1 usage or parse error, 2 fuel exhausted
// or Diverged, 3 Stuck, 4 Refuted (or a monotonicity counterexample),
// 5 Unknown.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meaning/meaning.hpp"

namespace meaning::cli {

enum class OutputMode { Human, Machine };

struct RunConfig {
  std::size_t fuel = 10000;
  std::size_t depth = 4;
  std::size_t searchDepth = 5;
  std::size_t instanceDepth = 2;
  OutputMode outputMode = OutputMode::Human;

  CheckConfig check() const { return CheckConfig{fuel, depth, Strategy::CallByName}; }

  nlohmann::json toJson() const {
    return {{"fuel", fuel},
            {"depth", depth},
            {"searchDepth", searchDepth},
            {"instanceDepth", instanceDepth},
            {"outputMode", outputMode == OutputMode::Human ? "human" : "machine"}};
  }
};

inline int exitCode(const Verdict& v) {
  switch (v.status) {
    case Verdict::Status::Verified: return 0;
    case Verdict::Status::Refuted: return 4;
    case Verdict::Status::Unknown: return 5;
    case Verdict::Status::Diverged: return 2;
  }
  return 1;
}

inline int exitCode(const EvalResult& r) {
  switch (r.kind) {
    case EvalResult::Kind::Canonical: return 0;
    case EvalResult::Kind::FuelExhausted: return 2;
    case EvalResult::Kind::Stuck: return 3;
  }
  return 1;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Term parseClosed(const std::string& text, const char* what) {
  Term t = parse(text);
  auto fv = freeVars(t);
  if (!fv.empty()) throw UsageError(std::string(what) + " '" + text + "' is not closed (free: " + *fv.begin() + ")");
  return t;
}

inline std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json document(const std::string& command, const RunConfig& cfg, nlohmann::json verdict,
                               nlohmann::json trace) {
  return {{"command", command}, {"config", cfg.toJson()}, {"verdict", std::move(verdict)}, {"trace", std::move(trace)}};
}

inline void printCounterexample(const Counterexample& c, std::ostream& out) {
  out << "counterexample:";
  for (const auto& [name, value] : c.bindings) out << ' ' << name << " = " << toString(value) << ';';
  out << '\n';
  if (c.failed) out << "  failed: " << toString(*c.failed) << '\n';
  if (c.value) out << "  value:  " << toString(*c.value) << '\n';
}

inline void printVerdict(const Verdict& v, std::ostream& out) {
  out << statusName(v.status);
  if (v.unknown()) out << " (depth bound " << v.bound << ")";
  out << '\n';
  if (!v.detail.empty()) out << v.detail << '\n';
  if (v.counterexample) printCounterexample(*v.counterexample, out);
  out << renderNumbered(v.trace);
}

}  // namespace detail

inline int cmdEval(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  Term t = detail::parseClosed(text, "term");
  auto r = eval(t, cfg.fuel);
  static const char* names[] = {"canonical", "fuel-exhausted", "stuck"};
  const char* status = names[static_cast<int>(r.kind)];
  if (cfg.outputMode == OutputMode::Machine) {
    out << detail::document("eval", cfg, {{"status", status}, {"term", toString(r.term)}, {"steps", r.steps}}, nullptr)
               .dump(2)
        << '\n';
  } else {
    out << status << ' ' << toString(r.term) << "\nsteps: " << r.steps << '\n';
  }
  return exitCode(r);
}

/// `<term> in <type>` or, with --binary, `<term> : <term2> in <type>`.
inline int cmdCheck(const std::vector<std::string>& args, bool binary, const RunConfig& cfg, std::ostream& out) {
  std::size_t in = 0;
  while (in < args.size() && args[in] != "in") ++in;
  if (in == args.size() || in + 2 != args.size()) throw UsageError("expected: check <term> [: <term2>] in <type>");
  std::vector<std::string> lhs(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(in));
  std::string first, second;
  if (lhs.size() == 1) {
    first = lhs[0];
  } else if (lhs.size() == 3 && lhs[1] == ":") {
    first = lhs[0];
    second = lhs[2];
  } else {
    throw UsageError("expected: check <term> [: <term2>] in <type>");
  }
  if (!second.empty() && !binary) throw UsageError("two terms require --binary");

  Term a = detail::parseClosed(args.back(), "type");
  Term m = detail::parseClosed(first, "term");
  Verdict v;
  if (binary) {
    Term n = second.empty() ? m : detail::parseClosed(second, "term");
    v = checkEqMember(m, n, a, cfg.check());
  } else {
    v = checkMember(m, a, cfg.check());
  }
  if (cfg.outputMode == OutputMode::Machine) {
    out << detail::document(binary ? "check --binary" : "check", cfg, toJson(v), toJson(v.trace)).dump(2) << '\n';
  } else {
    detail::printVerdict(v, out);
  }
  return exitCode(v);
}

inline int cmdEnum(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  Term a = detail::parseClosed(text, "type");
  auto e = enumerateCanonical(a, cfg.depth, cfg.check());
  if (cfg.outputMode == OutputMode::Machine) {
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : e.witnesses) ws.push_back(toString(w));
    nlohmann::json verdict = {{"status", e.diverged  ? "diverged"
                                         : e.notASet ? "not-a-set"
                                         : e.complete ? "complete"
                                                      : "incomplete"},
                              {"witnesses", ws}};
    if (!e.detail.empty()) verdict["detail"] = e.detail;
    out << detail::document("enum", cfg, verdict, nullptr).dump(2) << '\n';
  } else {
    for (const auto& w : e.witnesses) out << toString(w) << '\n';
    if (e.diverged) out << "diverged: " << e.detail << '\n';
    else if (e.notASet) out << "not a set: " << e.detail << '\n';
    else out << (e.complete ? "complete" : "incomplete") << '\n';
  }
  if (e.diverged) return 2;
  if (e.notASet) return 4;
  return 0;
}

inline int cmdRule(const std::string& input, const RunConfig& cfg, std::ostream& out) {
  std::vector<RuleScheme> rules;
  if (input.find("|-") == std::string::npos && std::filesystem::exists(input)) {
    rules = parseRuleFile(detail::readFile(input));
  } else {
    rules.push_back(parseRule(input));
  }
  if (rules.empty()) throw UsageError("no rules found");

  ReadingBounds bounds{cfg.searchDepth, cfg.instanceDepth, cfg.depth};
  nlohmann::json reports = nlohmann::json::array();
  int code = 0;
  for (const auto& rule : rules) {
    auto report = compareReadings(rule, bounds, cfg.check());
    const auto& d = report.derivation;
    if (code == 0) code = exitCode(report.admissibility);
    if (cfg.outputMode == OutputMode::Machine) {
      nlohmann::json verdict = {{"rule", toString(rule)},
                                {"derivable", d.derivable()},
                                {"exhaustive", d.exhaustive},
                                {"admissible", toJson(report.admissibility)},
                                {"flagged", report.flagged()}};
      if (!rule.name.empty()) verdict["name"] = rule.name;
      if (d.derivation) verdict["witness"] = toString(extractWitness(*d.derivation));
      reports.push_back({{"verdict", verdict}, {"trace", toJson(report.admissibility.trace)}});
      continue;
    }
    if (!rule.name.empty()) out << rule.name << ": ";
    out << toString(rule) << '\n';
    if (d.derivable()) {
      out << "derivable: yes\n" << renderDerivation(*d.derivation);
      out << "witness: " << toString(extractWitness(*d.derivation)) << '\n';
    } else {
      out << "derivable: no (" << (d.exhaustive ? "exhaustive" : "bounded") << " at search depth " << d.searchDepth
          << ")\n";
    }
    out << "admissible: ";
    if (report.admissibility.verified()) {
      out << "verified-at-bound (instanceDepth " << cfg.instanceDepth << ", witnessDepth " << cfg.depth << ")\n";
    } else {
      out << statusName(report.admissibility.status) << '\n';
      if (report.admissibility.counterexample) detail::printCounterexample(*report.admissibility.counterexample, out);
    }
    if (report.flagged()) out << "FLAGGED: admissible but not derivable\n";
    out << '\n';
  }
  if (cfg.outputMode == OutputMode::Machine) {
    nlohmann::json doc = detail::document("rule", cfg, nullptr, nullptr);
    if (reports.size() == 1) {
      doc["verdict"] = reports[0]["verdict"];
      doc["trace"] = reports[0]["trace"];
    } else {
      doc["verdict"] = nlohmann::json::array();
      doc["trace"] = nlohmann::json::array();
      for (auto& r : reports) {
        doc["verdict"].push_back(r["verdict"]);
        doc["trace"].push_back(r["trace"]);
      }
    }
    out << doc.dump(2) << '\n';
  }
  return code;
}

inline int cmdKripke(const std::string& path, const std::string& judgment, bool checkMono, const std::string& atWorld,
                     const RunConfig& cfg, std::ostream& out) {
  auto model = kripke::parseModel(detail::readFile(path));
  auto j = kripke::parseWJudgment(judgment);
  nlohmann::json forced = nlohmann::json::object();
  std::vector<std::string> worlds = atWorld.empty() ? model.worlds() : std::vector<std::string>{atWorld};
  for (const auto& w : worlds) forced[w] = kripke::forces(model, w, j);

  std::optional<kripke::MonotonicityFailure> failure;
  if (checkMono) failure = kripke::checkMonotone(model, j);

  if (cfg.outputMode == OutputMode::Machine) {
    nlohmann::json verdict = {{"judgment", kripke::toString(j)}, {"forces", forced}};
    if (checkMono) {
      verdict["monotone"] = failure ? nlohmann::json{{"status", "counterexample"},
                                                     {"lower", failure->lower},
                                                     {"upper", failure->upper}}
                                    : nlohmann::json{{"status", "pass"}};
    }
    out << detail::document("kripke", cfg, verdict, nullptr).dump(2) << '\n';
  } else {
    for (const auto& w : worlds)
      out << w << (forced[w].get<bool>() ? " forces " : " does not force ") << kripke::toString(j) << '\n';
    if (checkMono) {
      if (failure)
        out << "monotonicity: counterexample " << failure->lower << " <= " << failure->upper << '\n';
      else
        out << "monotonicity: pass\n";
    }
  }
  return failure ? 4 : 0;
}

inline int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meaning-explanation kernel: evaluation, realizability and PER checks, rule readings, Kripke worlds"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  bool machine = false;
  app.add_option("--fuel", cfg.fuel, "reduction steps per evaluation")->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "constructor depth for witness enumeration")->check(CLI::PositiveNumber);
  app.add_option("--search-depth", cfg.searchDepth, "derivation search depth")->check(CLI::PositiveNumber);
  app.add_option("--instance-depth", cfg.instanceDepth, "former depth of rule instantiations")
      ->check(CLI::PositiveNumber);
  app.add_flag("--machine", machine, "emit one JSON document");

  std::string evalTerm;
  auto* evalCmd = app.add_subcommand("eval", "evaluate a closed term to canonical form");
  evalCmd->add_option("term", evalTerm)->required();

  std::vector<std::string> checkArgs;
  bool binary = false;
  auto* checkCmd = app.add_subcommand("check", "check <term> [: <term2>] in <type>");
  checkCmd->add_flag("--binary", binary, "use the binary (PER) model");
  checkCmd->add_option("args", checkArgs)->required();

  std::string enumType;
  auto* enumCmd = app.add_subcommand("enum", "enumerate canonical witnesses of a type");
  enumCmd->add_option("type", enumType)->required();

  std::string ruleInput;
  auto* ruleCmd = app.add_subcommand("rule", "compare derivability and admissibility of a rule");
  ruleCmd->add_option("rule", ruleInput, "inline rule or rule file")->required();

  std::string modelPath, judgment, world;
  bool checkMono = false;
  auto* kripkeCmd = app.add_subcommand("kripke", "forcing and monotonicity over a finite world model");
  kripkeCmd->add_option("model", modelPath)->required();
  kripkeCmd->add_option("--judgment", judgment)->required();
  kripkeCmd->add_option("--world", world, "report a single world");
  kripkeCmd->add_flag("--check-monotone", checkMono);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  cfg.outputMode = machine ? OutputMode::Machine : OutputMode::Human;

  try {
    if (*evalCmd) return cmdEval(evalTerm, cfg, out);
    if (*checkCmd) return cmdCheck(checkArgs, binary, cfg, out);
    if (*enumCmd) return cmdEnum(enumType, cfg, out);
    if (*ruleCmd) return cmdRule(ruleInput, cfg, out);
    if (*kripkeCmd) return cmdKripke(modelPath, judgment, checkMono, world, cfg, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const kripke::ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace meaning::cli
