#pragma once

// Two readings of an inference rule over schematic propositions:
//   derivable:  a uniform derivation in the introduction-only calculus,
//                 valid for every instantiation of the metavariables;
//   admissible: for every ground instantiation (up to a bound) in which the
//                 premises have canonical verifications, the conclusion has one.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "meaning/judgment.hpp"
#include "meaning/term.hpp"
#include "meaning/unary.hpp"

namespace meaning {

/// premises |- conclusion, each judgment of the form `P true`. Metavariables
/// are the free (uppercase) variables and range over ground closed types.
struct RuleScheme {
  std::string name;
  std::vector<std::string> metavariables;
  std::vector<Judgment> premises;
  Judgment conclusion;
};

inline std::string toString(const RuleScheme& r) {
  std::string out;
  for (std::size_t i = 0; i < r.premises.size(); ++i) out += (i ? "; " : "") + toString(r.premises[i]);
  return out + (r.premises.empty() ? "|- " : " |- ") + toString(r.conclusion);
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string stripPrefix(std::string s, std::string_view prefix) {
  s = trim(s);
  if (s.rfind(prefix, 0) == 0) return trim(std::string_view(s).substr(prefix.size()));
  return s;
}

inline Judgment parseTruthJudgment(const std::string& text) {
  std::string s = trim(text);
  constexpr std::string_view suffix = "true";
  bool ok = s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0 &&
            std::isspace(static_cast<unsigned char>(s[s.size() - suffix.size() - 1]));
  if (!ok) throw ParseError("judgment '" + s + "' must have the form '<proposition> true'", 1, 1);
  return Judgment::holds(parse(s.substr(0, s.size() - suffix.size())));
}

}  // namespace detail

/// Parses `J1; J2 |- J` or `premises: J1; J2 |- conclusion: J`.
inline RuleScheme parseRule(std::string_view text, std::string name = "") {
  std::string s(text);
  auto turnstile = s.find("|-");
  if (turnstile == std::string::npos) throw ParseError("rule must contain '|-'", 1, 1);
  std::string lhs = detail::stripPrefix(s.substr(0, turnstile), "premises:");
  std::string rhs = detail::stripPrefix(s.substr(turnstile + 2), "conclusion:");

  RuleScheme rule;
  rule.name = std::move(name);
  std::stringstream ss(lhs);
  std::string piece;
  while (std::getline(ss, piece, ';')) {
    if (detail::trim(piece).empty()) continue;
    rule.premises.push_back(detail::parseTruthJudgment(piece));
  }
  rule.conclusion = detail::parseTruthJudgment(rhs);

  std::set<std::string> metas;
  auto collect = [&](const Judgment& j) {
    for (const auto& v : freeVars(j.terms.at(0))) {
      if (!std::isupper(static_cast<unsigned char>(v.front())))
        throw ParseError("metavariable '" + v + "' must start with an uppercase letter", 1, 1);
      metas.insert(v);
    }
  };
  for (const auto& p : rule.premises) collect(p);
  collect(rule.conclusion);
  rule.metavariables.assign(metas.begin(), metas.end());
  return rule;
}

/// Rule files: one rule per block, blocks separated by blank lines. A block may
/// carry a `name:` line; `#` starts a comment line.
inline std::vector<RuleScheme> parseRuleFile(std::string_view text) {
  std::vector<RuleScheme> rules;
  std::string name, body;
  auto flush = [&] {
    if (!detail::trim(body).empty()) rules.push_back(parseRule(body, name));
    name.clear();
    body.clear();
  };
  std::stringstream ss{std::string(text)};
  std::string line;
  while (std::getline(ss, line)) {
    std::string t = detail::trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    if (t[0] == '#') continue;
    if (t.rfind("name:", 0) == 0) {
      name = detail::trim(std::string_view(t).substr(5));
      continue;
    }
    body += t + ' ';
  }
  flush();
  return rules;
}

// ---------------------------------------------------------------------------
// Derivations in the introduction-only calculus.

struct Derivation {
  enum class Rule { Hypothesis, TrueIntro, ConjIntro, DisjIntroLeft, DisjIntroRight, ImpIntro };

  Rule rule;
  Term goal;
  std::string label;  // hypothesis used (Hypothesis) or discharged (ImpIntro)
  std::vector<Derivation> children;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }
  std::size_t height() const {
    std::size_t h = 0;
    for (const auto& c : children) h = std::max(h, c.height());
    return h + 1;
  }
};

inline const char* ruleName(Derivation::Rule r) {
  switch (r) {
    case Derivation::Rule::Hypothesis: return "hyp";
    case Derivation::Rule::TrueIntro: return "True-intro";
    case Derivation::Rule::ConjIntro: return "/\\-intro";
    case Derivation::Rule::DisjIntroLeft: return "\\/-intro-left";
    case Derivation::Rule::DisjIntroRight: return "\\/-intro-right";
    case Derivation::Rule::ImpIntro: return "=>-intro";
  }
  return "?";
}

/// Label of the i-th premise hypothesis (0-based).
inline std::string premiseLabel(std::size_t i) { return "p" + std::to_string(i + 1); }

struct DeriveResult {
  std::optional<Derivation> derivation;
  std::size_t searchDepth = 0;
  /// For failures: true when no branch was cut off by the depth bound, so the
  /// failure holds at every depth.
  bool exhaustive = false;

  bool derivable() const { return derivation.has_value(); }
};

namespace detail {

using Context = std::vector<std::pair<std::string, Term>>;

inline bool nonDependent(const Term& q) { return !familyDependent(q); }

struct Search {
  bool cutoff = false;

  std::optional<Derivation> run(Context& ctx, const Term& goal, std::size_t depth) {
    if (depth == 0) {
      cutoff = true;
      return std::nullopt;
    }
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
      if (alphaEq(it->second, goal)) return Derivation{Derivation::Rule::Hypothesis, goal, it->first, {}};
    switch (goal.tag()) {
      case Tag::True:
        return Derivation{Derivation::Rule::TrueIntro, goal, "", {}};
      case Tag::Exists: {
        if (!nonDependent(goal)) return std::nullopt;
        auto a = run(ctx, goal.kid(0), depth - 1);
        if (!a) return std::nullopt;
        auto b = run(ctx, goal.kid(1), depth - 1);
        if (!b) return std::nullopt;
        return Derivation{Derivation::Rule::ConjIntro, goal, "", {std::move(*a), std::move(*b)}};
      }
      case Tag::Disj: {
        if (auto a = run(ctx, goal.kid(0), depth - 1))
          return Derivation{Derivation::Rule::DisjIntroLeft, goal, "", {std::move(*a)}};
        if (auto b = run(ctx, goal.kid(1), depth - 1))
          return Derivation{Derivation::Rule::DisjIntroRight, goal, "", {std::move(*b)}};
        return std::nullopt;
      }
      case Tag::Forall: {
        if (!nonDependent(goal)) return std::nullopt;
        std::string label = "h" + std::to_string(ctx.size() + 1);
        ctx.emplace_back(label, goal.kid(0));
        auto body = run(ctx, goal.kid(1), depth - 1);
        ctx.pop_back();
        if (!body) return std::nullopt;
        return Derivation{Derivation::Rule::ImpIntro, goal, label, {std::move(*body)}};
      }
      default:
        // Metavariables and False have no introduction rule: hypothesis only.
        return std::nullopt;
    }
  }
};

}  // namespace detail

/// Bounded goal-directed search. The calculus has only introduction rules and
/// the hypothesis rule, and every rule shrinks the goal, so a failure in which
/// no branch reached the depth bound is definitive.
inline DeriveResult derive(const RuleScheme& rule, std::size_t searchDepth) {
  detail::Context ctx;
  for (std::size_t i = 0; i < rule.premises.size(); ++i) ctx.emplace_back(premiseLabel(i), rule.premises[i].terms.at(0));
  detail::Search search;
  DeriveResult out;
  out.searchDepth = searchDepth;
  out.derivation = search.run(ctx, rule.conclusion.terms.at(0), searchDepth);
  out.exhaustive = !out.derivation && !search.cutoff;
  return out;
}

/// Checks a derivation against a rule in one pass over the tree.
/// Returns an error message, or nullopt when the derivation is valid.
inline std::optional<std::string> checkDerivation(const Derivation& d, const RuleScheme& rule) {
  detail::Context ctx;
  for (std::size_t i = 0; i < rule.premises.size(); ++i) ctx.emplace_back(premiseLabel(i), rule.premises[i].terms.at(0));
  if (!alphaEq(d.goal, rule.conclusion.terms.at(0))) return "root does not conclude the rule's conclusion";

  std::optional<std::string> error;
  auto go = [&](auto& self, const Derivation& n) -> void {
    if (error) return;
    auto expectKids = [&](std::size_t k) {
      if (n.children.size() != k) error = std::string(ruleName(n.rule)) + " expects " + std::to_string(k) + " premises";
      return !error;
    };
    auto childIs = [&](std::size_t i, const Term& t) {
      if (!alphaEq(n.children[i].goal, t)) error = std::string(ruleName(n.rule)) + " premise has the wrong goal";
      return !error;
    };
    switch (n.rule) {
      case Derivation::Rule::Hypothesis: {
        if (!expectKids(0)) return;
        for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
          if (it->first == n.label) {
            if (!alphaEq(it->second, n.goal)) error = "hypothesis " + n.label + " does not match its goal";
            return;
          }
        }
        error = "hypothesis " + n.label + " is not in scope";
        return;
      }
      case Derivation::Rule::TrueIntro:
        if (expectKids(0) && !n.goal.is(Tag::True)) error = "True-intro must conclude True";
        return;
      case Derivation::Rule::ConjIntro:
        if (!n.goal.is(Tag::Exists) || !detail::nonDependent(n.goal)) {
          error = "/\\-intro must conclude a conjunction";
          return;
        }
        if (!expectKids(2) || !childIs(0, n.goal.kid(0)) || !childIs(1, n.goal.kid(1))) return;
        self(self, n.children[0]);
        self(self, n.children[1]);
        return;
      case Derivation::Rule::DisjIntroLeft:
      case Derivation::Rule::DisjIntroRight: {
        if (!n.goal.is(Tag::Disj)) {
          error = "\\/-intro must conclude a disjunction";
          return;
        }
        std::size_t side = n.rule == Derivation::Rule::DisjIntroLeft ? 0 : 1;
        if (!expectKids(1) || !childIs(0, n.goal.kid(side))) return;
        self(self, n.children[0]);
        return;
      }
      case Derivation::Rule::ImpIntro:
        if (!n.goal.is(Tag::Forall) || !detail::nonDependent(n.goal)) {
          error = "=>-intro must conclude an implication";
          return;
        }
        if (!expectKids(1) || !childIs(0, n.goal.kid(1))) return;
        ctx.emplace_back(n.label, n.goal.kid(0));
        self(self, n.children[0]);
        ctx.pop_back();
        return;
    }
  };
  go(go, d);
  return error;
}

/// Realizer of a derivation; free variables are the premise labels.
inline Term extractWitness(const Derivation& d) {
  switch (d.rule) {
    case Derivation::Rule::Hypothesis: return term::var(d.label);
    case Derivation::Rule::TrueIntro: return term::it();
    case Derivation::Rule::ConjIntro: return term::pair(extractWitness(d.children[0]), extractWitness(d.children[1]));
    case Derivation::Rule::DisjIntroLeft: return term::inl(extractWitness(d.children[0]));
    case Derivation::Rule::DisjIntroRight: return term::inr(extractWitness(d.children[0]));
    case Derivation::Rule::ImpIntro: return term::lam(d.label, extractWitness(d.children[0]));
  }
  return term::it();
}

inline std::string renderDerivation(const Derivation& d, std::size_t indent = 0) {
  std::string out = std::string(indent * 2, ' ') + toString(d.goal) + " true    [" + ruleName(d.rule);
  if (!d.label.empty()) out += " " + d.label;
  out += "]\n";
  for (const auto& c : d.children) out += renderDerivation(c, indent + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Admissibility.

/// Ground types built from True and False with /\, \/, => up to the given
/// former depth, ordered by depth, then former (/\, \/, =>), then components.
inline std::vector<Term> groundTypes(std::size_t maxDepth) {
  std::vector<Term> all;
  std::vector<std::size_t> depthOfIdx;
  if (maxDepth == 0) return all;
  all = {term::tTrue(), term::tFalse()};
  depthOfIdx = {1, 1};
  for (std::size_t d = 2; d <= maxDepth; ++d) {
    std::size_t prev = all.size();
    for (int op = 0; op < 3; ++op) {
      for (std::size_t i = 0; i < prev; ++i) {
        for (std::size_t k = 0; k < prev; ++k) {
          if (std::max(depthOfIdx[i], depthOfIdx[k]) != d - 1) continue;
          Term t = op == 0 ? term::conj(all[i], all[k]) : op == 1 ? term::disj(all[i], all[k]) : term::imp(all[i], all[k]);
          all.push_back(t);
          depthOfIdx.push_back(d);
        }
      }
    }
  }
  return all;
}

namespace detail {
/// Odometer step over instantiations; the first metavariable varies slowest.
inline bool advance(std::vector<std::size_t>& idx, std::size_t radix) {
  for (std::size_t pos = idx.size(); pos-- > 0;) {
    if (++idx[pos] < radix) return true;
    idx[pos] = 0;
  }
  return false;
}
}  // namespace detail

inline Term instantiate(const Term& schema, const std::vector<std::string>& metas, const std::vector<Term>& values) {
  Term out = schema;
  for (std::size_t i = 0; i < metas.size(); ++i) out = substitute(out, metas[i], values[i]);
  return out;
}

/// Material reading, certified only up to the stated bounds. Conclusions are
/// ground, so whether the conclusion has a verification does not depend on
/// which premise verifications were supplied; one tuple of premise witnesses
/// per instantiation is recorded.
inline Verdict admissible(const RuleScheme& rule, std::size_t instanceDepth, std::size_t witnessDepth,
                          const CheckConfig& cfg = {}) {
  const auto types = groundTypes(instanceDepth);
  const auto& metas = rule.metavariables;
  std::vector<Judgment> premises = rule.premises;
  Judgment root = Judgment::hyp(premises, rule.conclusion);

  std::vector<std::size_t> idx(metas.size(), 0);
  std::vector<Trace> instances;
  std::size_t count = 0;
  for (;;) {
    std::vector<Term> values;
    for (auto i : idx) values.push_back(types[i]);
    ++count;

    std::vector<std::pair<std::string, Term>> bindings;
    for (std::size_t i = 0; i < metas.size(); ++i) bindings.emplace_back(metas[i], values[i]);
    std::vector<Judgment> instPremises;
    for (const auto& p : premises) instPremises.push_back(Judgment::holds(instantiate(p.terms[0], metas, values)));
    Term concl = instantiate(rule.conclusion.terms[0], metas, values);
    Judgment instJ = Judgment::hyp(instPremises, Judgment::holds(concl));

    std::vector<Term> premiseWitnesses;
    std::optional<std::size_t> vacuousAt;
    for (std::size_t i = 0; i < instPremises.size(); ++i) {
      auto e = enumerateCanonical(instPremises[i].terms[0], witnessDepth, cfg);
      if (e.diverged) {
        Verdict v = detail::verdict(Verdict::Status::Diverged, Trace{instJ, "premise enumeration diverged", {}});
        v.detail = e.detail;
        return v;
      }
      if (e.witnesses.empty()) {
        vacuousAt = i;
        break;
      }
      premiseWitnesses.push_back(e.witnesses.front());
    }

    if (vacuousAt) {
      instances.push_back(Trace{instJ,
                                "vacuous: premise " + std::to_string(*vacuousAt + 1) +
                                    " has no canonical verification up to depth " + std::to_string(witnessDepth),
                                {}});
    } else {
      auto inh = inhabitedExact(concl, cfg);
      if (inh.kind == Inhabitation::Kind::Diverged) {
        Verdict v = detail::verdict(Verdict::Status::Diverged, Trace{instJ, "conclusion diverged", {}});
        v.detail = inh.detail;
        return v;
      }
      if (!inh.inhabited()) {
        Trace tr{root, "not admissible: premises verified, conclusion has no verification", {}};
        std::string why = "conclusion " + toString(concl) + " is " + inhabitationName(inh.kind);
        Trace witnessNode{instJ, why, {}};
        for (std::size_t i = 0; i < premiseWitnesses.size(); ++i)
          witnessNode.children.push_back(
              Trace{Judgment::member(premiseWitnesses[i], instPremises[i].terms[0]), "premise verification", {}});
        tr.children.push_back(std::move(witnessNode));
        Verdict v = detail::refutedAt(std::move(tr), Judgment::holds(concl));
        for (std::size_t i = 0; i < premiseWitnesses.size(); ++i)
          bindings.emplace_back("premise " + std::to_string(i + 1), premiseWitnesses[i]);
        v.counterexample->bindings = std::move(bindings);
        return v;
      }
      auto witnesses = enumerateCanonical(concl, formerDepth(concl), cfg).witnesses;
      std::string by = witnesses.empty() ? std::string("conclusion inhabited")
                                         : "conclusion verified by " + toString(witnesses.front());
      instances.push_back(Trace{instJ, by, {}});
    }

    if (!detail::advance(idx, types.size())) break;
  }

  Trace cert{root,
             "admissible at bound: instanceDepth=" + std::to_string(instanceDepth) +
                 ", witnessDepth=" + std::to_string(witnessDepth) + ", " + std::to_string(count) + " instantiations",
             std::move(instances)};
  Verdict v = detail::verdict(Verdict::Status::Verified, std::move(cert));
  v.bound = witnessDepth;
  v.detail = "verified at bound instanceDepth=" + std::to_string(instanceDepth) +
             ", witnessDepth=" + std::to_string(witnessDepth);
  return v;
}

struct ReadingsReport {
  DeriveResult derivation;
  Verdict admissibility;

  /// Admissible but not derivable: justified only by material consequence.
  bool flagged() const { return admissibility.verified() && !derivation.derivable(); }
};

struct ReadingBounds {
  std::size_t searchDepth = 5;
  std::size_t instanceDepth = 2;
  std::size_t witnessDepth = 3;
};

inline ReadingsReport compareReadings(const RuleScheme& rule, const ReadingBounds& bounds = {},
                                      const CheckConfig& cfg = {}) {
  return {derive(rule, bounds.searchDepth), admissible(rule, bounds.instanceDepth, bounds.witnessDepth, cfg)};
}

}  // namespace meaning
