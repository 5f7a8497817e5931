#pragma once

// Judgments, derivation traces, and the four-valued verdict returned by the
// semantic checkers. Includes the JSON trace schema and the numbered
// derivation rendering.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "meaning/eval.hpp"
#include "meaning/term.hpp"

namespace meaning {

struct Judgment {
  enum class Kind {
    IsSet,     // terms = {A}
    Member,    // terms = {M, A}
    EqSet,     // terms = {A, B}
    EqMember,  // terms = {M, N, A}
    Eval,      // terms = {M, M'}
    Val,       // terms = {A, M}        VAL(A)(M)
    Exp,       // terms = {A, M}        EXP(A)(M)
    ValRel,    // terms = {A, M, N}     VAL(A)(M, N)
    ExpRel,    // terms = {A, M, N}     EXP(A)(M, N)
    True,      // terms = {P}           P true
    Hyp,       // parts = {antecedents..., consequent}
    Gen,       // binders, parts = {body}
    All,       // parts = premises read conjunctively
  };

  Kind kind = Kind::All;
  std::vector<Term> terms;
  std::vector<Judgment> parts;
  std::vector<std::string> binders;

  static Judgment isSet(Term a) { return {Kind::IsSet, {std::move(a)}, {}, {}}; }
  static Judgment member(Term m, Term a) { return {Kind::Member, {std::move(m), std::move(a)}, {}, {}}; }
  static Judgment eqSet(Term a, Term b) { return {Kind::EqSet, {std::move(a), std::move(b)}, {}, {}}; }
  static Judgment eqMember(Term m, Term n, Term a) {
    return {Kind::EqMember, {std::move(m), std::move(n), std::move(a)}, {}, {}};
  }
  static Judgment evalsTo(Term m, Term v) { return {Kind::Eval, {std::move(m), std::move(v)}, {}, {}}; }
  static Judgment val(Term a, Term m) { return {Kind::Val, {std::move(a), std::move(m)}, {}, {}}; }
  static Judgment exp(Term a, Term m) { return {Kind::Exp, {std::move(a), std::move(m)}, {}, {}}; }
  static Judgment valRel(Term a, Term m, Term n) {
    return {Kind::ValRel, {std::move(a), std::move(m), std::move(n)}, {}, {}};
  }
  static Judgment expRel(Term a, Term m, Term n) {
    return {Kind::ExpRel, {std::move(a), std::move(m), std::move(n)}, {}, {}};
  }
  static Judgment holds(Term p) { return {Kind::True, {std::move(p)}, {}, {}}; }
  static Judgment hyp(std::vector<Judgment> antecedents, Judgment consequent) {
    antecedents.push_back(std::move(consequent));
    return {Kind::Hyp, {}, std::move(antecedents), {}};
  }
  static Judgment gen(std::vector<std::string> binders, Judgment body) {
    return {Kind::Gen, {}, {std::move(body)}, std::move(binders)};
  }
  static Judgment all(std::vector<Judgment> parts) { return {Kind::All, {}, std::move(parts), {}}; }
};

inline const char* kindName(Judgment::Kind k) {
  using K = Judgment::Kind;
  switch (k) {
    case K::IsSet: return "IsSet";
    case K::Member: return "Member";
    case K::EqSet: return "EqSet";
    case K::EqMember: return "EqMember";
    case K::Eval: return "Eval";
    case K::Val: return "Val";
    case K::Exp: return "Exp";
    case K::ValRel: return "ValRel";
    case K::ExpRel: return "ExpRel";
    case K::True: return "True";
    case K::Hyp: return "Hyp";
    case K::Gen: return "Gen";
    case K::All: return "All";
  }
  return "?";
}

inline std::string toString(const Judgment& j) {
  using K = Judgment::Kind;
  auto t = [&](std::size_t i) { return toString(j.terms.at(i)); };
  switch (j.kind) {
    case K::IsSet: return "IsSet(" + t(0) + ")";
    case K::Member: return "Member(" + t(0) + ", " + t(1) + ")";
    case K::EqSet: return "EqSet(" + t(0) + ", " + t(1) + ")";
    case K::EqMember: return "EqMember(" + t(0) + ", " + t(1) + ", " + t(2) + ")";
    case K::Eval: return "Eval(" + t(0) + ", " + t(1) + ")";
    case K::Val: return "VAL(" + t(0) + ")(" + t(1) + ")";
    case K::Exp: return "EXP(" + t(0) + ")(" + t(1) + ")";
    case K::ValRel: return "VAL(" + t(0) + ")(" + t(1) + ", " + t(2) + ")";
    case K::ExpRel: return "EXP(" + t(0) + ")(" + t(1) + ", " + t(2) + ")";
    case K::True: return t(0) + " true";
    case K::Hyp: {
      std::string out = "(";
      for (std::size_t i = 0; i + 1 < j.parts.size(); ++i) {
        if (i) out += "; ";
        out += toString(j.parts[i]);
      }
      return out + " |- " + toString(j.parts.back()) + ")";
    }
    case K::Gen: {
      std::string out = "Gen ";
      for (std::size_t i = 0; i < j.binders.size(); ++i) out += (i ? "," : "") + j.binders[i];
      return out + ". " + toString(j.parts.at(0));
    }
    case K::All: {
      std::string out;
      for (std::size_t i = 0; i < j.parts.size(); ++i) out += (i ? ", " : "") + toString(j.parts[i]);
      return out;
    }
  }
  return "";
}

/// One derivation step: the judgment established, the rule justifying it,
/// and the sub-derivations of its premises.
struct Trace {
  Judgment judgment;
  std::string rule;
  std::vector<Trace> children;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }
};

/// Where a refutation happened: instance bindings collected from the
/// enclosing quantifiers, the judgment that failed, and the canonical value
/// that failed its VAL clause when there is one.
struct Counterexample {
  std::vector<std::pair<std::string, Term>> bindings;
  std::optional<Judgment> failed;
  std::optional<Term> value;
};

struct Verdict {
  enum class Status { Verified, Refuted, Unknown, Diverged };

  Status status = Status::Unknown;
  Trace trace;
  std::optional<Counterexample> counterexample;  // Refuted only
  std::size_t bound = 0;                          // depth exhausted, for Unknown
  std::string detail;                             // fuel report / partial evidence

  bool verified() const { return status == Status::Verified; }
  bool refuted() const { return status == Status::Refuted; }
  bool unknown() const { return status == Status::Unknown; }
  bool diverged() const { return status == Status::Diverged; }
  bool definitive() const { return verified() || refuted(); }
};

/// Binary checks share the verdict shape; counterexamples carry the pair.
using PairVerdict = Verdict;

inline const char* statusName(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Verified: return "verified";
    case Verdict::Status::Refuted: return "refuted";
    case Verdict::Status::Unknown: return "unknown";
    case Verdict::Status::Diverged: return "diverged";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::json toJson(const Judgment& j) {
  nlohmann::json out;
  out["kind"] = kindName(j.kind);
  if (!j.terms.empty()) {
    out["terms"] = nlohmann::json::array();
    for (const auto& t : j.terms) out["terms"].push_back(toString(t));
  }
  if (!j.binders.empty()) out["binders"] = j.binders;
  if (!j.parts.empty()) {
    out["parts"] = nlohmann::json::array();
    for (const auto& p : j.parts) out["parts"].push_back(toJson(p));
  }
  return out;
}

inline Judgment judgmentFromJson(const nlohmann::json& in) {
  using K = Judgment::Kind;
  static const std::pair<const char*, K> kinds[] = {
      {"IsSet", K::IsSet}, {"Member", K::Member}, {"EqSet", K::EqSet},   {"EqMember", K::EqMember},
      {"Eval", K::Eval},   {"Val", K::Val},       {"Exp", K::Exp},       {"ValRel", K::ValRel},
      {"ExpRel", K::ExpRel}, {"True", K::True},   {"Hyp", K::Hyp},       {"Gen", K::Gen},
      {"All", K::All}};
  Judgment j;
  const auto name = in.at("kind").get<std::string>();
  bool found = false;
  for (const auto& [n, k] : kinds) {
    if (name == n) {
      j.kind = k;
      found = true;
    }
  }
  if (!found) throw std::runtime_error("unknown judgment kind '" + name + "'");
  if (in.contains("terms"))
    for (const auto& t : in["terms"]) j.terms.push_back(parse(t.get<std::string>()));
  if (in.contains("binders")) j.binders = in["binders"].get<std::vector<std::string>>();
  if (in.contains("parts"))
    for (const auto& p : in["parts"]) j.parts.push_back(judgmentFromJson(p));
  return j;
}

inline nlohmann::json toJson(const Trace& t) {
  nlohmann::json out;
  out["judgment"] = toJson(t.judgment);
  out["rule"] = t.rule;
  out["children"] = nlohmann::json::array();
  for (const auto& c : t.children) out["children"].push_back(toJson(c));
  return out;
}

inline Trace traceFromJson(const nlohmann::json& in) {
  Trace t;
  t.judgment = judgmentFromJson(in.at("judgment"));
  t.rule = in.at("rule").get<std::string>();
  for (const auto& c : in.at("children")) t.children.push_back(traceFromJson(c));
  return t;
}

inline nlohmann::json toJson(const Counterexample& c) {
  nlohmann::json out;
  out["bindings"] = nlohmann::json::array();
  for (const auto& [name, value] : c.bindings)
    out["bindings"].push_back({{"name", name}, {"value", toString(value)}});
  if (c.failed) out["failed"] = toJson(*c.failed);
  if (c.value) out["value"] = toString(*c.value);
  return out;
}

inline nlohmann::json toJson(const Verdict& v) {
  nlohmann::json out;
  out["status"] = statusName(v.status);
  if (v.counterexample) out["counterexample"] = toJson(*v.counterexample);
  if (v.unknown()) out["bound"] = v.bound;
  if (!v.detail.empty()) out["detail"] = v.detail;
  return out;
}

// ---------------------------------------------------------------------------
// Numbered derivation rendering: one line per step in pre-order, indented by
// nesting, each justified by its rule.

namespace detail {
inline void render(const Trace& t, std::size_t indent, std::size_t& counter, std::ostringstream& out) {
  out << std::string(indent * 2, ' ') << '(' << ++counter << ") " << toString(t.judgment);
  if (!t.rule.empty()) out << "    [" << t.rule << ']';
  out << '\n';
  // A single child continues the chain at the same indentation.
  std::size_t childIndent = t.children.size() == 1 ? indent : indent + 1;
  for (const auto& c : t.children) render(c, childIndent, counter, out);
}
}  // namespace detail

inline std::string renderNumbered(const Trace& t) {
  std::ostringstream out;
  std::size_t counter = 0;
  detail::render(t, 0, counter, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// Replay: every recorded Eval step must reconfirm, and every VAL clause
// recorded must still match the head of its canonical form.

namespace detail {
inline bool valHeadMatches(const Term& type, const Term& value) {
  switch (type.tag()) {
    case Tag::True: return value.is(Tag::It);
    case Tag::False: return false;
    case Tag::Forall: return value.is(Tag::Lam);
    case Tag::Exists: return value.is(Tag::Pair);
    case Tag::Disj: return value.is(Tag::Inl) || value.is(Tag::Inr);
    default: return false;
  }
}

inline bool replayJudgment(const Judgment& j, std::size_t fuel, Strategy strategy, bool underHyp) {
  using K = Judgment::Kind;
  switch (j.kind) {
    case K::Eval: {
      // Evaluation premises inside a hypothesis mention hypothetical objects.
      if (underHyp) return true;
      auto r = eval(j.terms.at(0), fuel, strategy);
      return r.canonical() && alphaEq(r.term, j.terms.at(1));
    }
    case K::Val:
      return underHyp || valHeadMatches(j.terms.at(0), j.terms.at(1));
    case K::ValRel:
      return underHyp || (valHeadMatches(j.terms.at(0), j.terms.at(1)) &&
                          valHeadMatches(j.terms.at(0), j.terms.at(2)) &&
                          j.terms.at(1).tag() == j.terms.at(2).tag());
    case K::Hyp:
    case K::Gen:
      for (const auto& p : j.parts)
        if (!replayJudgment(p, fuel, strategy, true)) return false;
      return true;
    case K::All:
      for (const auto& p : j.parts)
        if (!replayJudgment(p, fuel, strategy, underHyp)) return false;
      return true;
    default:
      return true;
  }
}
}  // namespace detail

inline bool replay(const Trace& t, std::size_t fuel, Strategy strategy = Strategy::CallByName) {
  if (!detail::replayJudgment(t.judgment, fuel, strategy, false)) return false;
  for (const auto& c : t.children)
    if (!replay(c, fuel, strategy)) return false;
  return true;
}

}  // namespace meaning
