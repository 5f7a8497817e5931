#pragma once

// Unary logical relations: VAL/EXP membership, set-hood, exact inhabitation
// for the ground fragment, and bounded enumeration of canonical witnesses.

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "meaning/eval.hpp"
#include "meaning/judgment.hpp"
#include "meaning/term.hpp"

namespace meaning {

struct CheckConfig {
  std::size_t fuel = 10000;  // reduction steps per evaluation
  std::size_t depth = 4;     // constructor depth for canonical enumeration
  Strategy strategy = Strategy::CallByName;
};

struct Inhabitation {
  enum class Kind { Inhabited, Uninhabited, NotGround, NotASet, Diverged };
  Kind kind;
  std::string detail;

  bool inhabited() const { return kind == Kind::Inhabited; }
  bool uninhabited() const { return kind == Kind::Uninhabited; }
  bool decided() const { return inhabited() || uninhabited(); }
};

inline const char* inhabitationName(Inhabitation::Kind k) {
  switch (k) {
    case Inhabitation::Kind::Inhabited: return "inhabited";
    case Inhabitation::Kind::Uninhabited: return "uninhabited";
    case Inhabitation::Kind::NotGround: return "not ground";
    case Inhabitation::Kind::NotASet: return "not a set";
    case Inhabitation::Kind::Diverged: return "diverged";
  }
  return "?";
}

/// Canonical witnesses of a type, sorted by termLess and pairwise non-alphaEq.
/// `complete` holds when the list exhausts the type's canonical members under
/// the enumeration convention below.
///
/// Enumeration convention:
///   True             {it}
///   A \/ B           inl a, inr b for enumerated a, b
///   exists x:A. B    <a, b> with b enumerated in B[a/x]
///   forall x:A. B    constant functions lam x. b for enumerated b in B, the
///                    identity when A and B evaluate to alpha-equal types, and
///                    the representative `lam x. x` when A is empty.
/// Function bodies are thus drawn from canonical witnesses; VAL only observes a
/// function on canonical inputs, and for ground types this representative set
/// decides inhabitation. Families that use their binder never report complete
/// for universal quantification.
struct Enumeration {
  std::vector<Term> witnesses;
  bool complete = false;
  bool diverged = false;
  bool notASet = false;
  std::string detail;

  bool ok() const { return !diverged && !notASet; }
};

// ---------------------------------------------------------------------------
// Verdict construction helpers shared by the semantic checkers.

namespace detail {

inline Verdict verdict(Verdict::Status s, Trace t) {
  Verdict v;
  v.status = s;
  v.trace = std::move(t);
  return v;
}

inline Verdict refutedAt(Trace t, Judgment failed, std::optional<Term> value = std::nullopt) {
  Verdict v = verdict(Verdict::Status::Refuted, std::move(t));
  v.counterexample = Counterexample{{}, std::move(failed), std::move(value)};
  return v;
}

/// Verdict for an evaluation that did not reach canonical form.
inline Verdict evalFailure(Judgment j, const Term& subject, const EvalResult& r) {
  Trace t{std::move(j), "", {}};
  if (r.exhausted()) {
    t.rule = "evaluation of " + toString(subject) + " ran out of fuel";
    Verdict v = verdict(Verdict::Status::Diverged, std::move(t));
    v.detail = describe(r);
    return v;
  }
  t.rule = "evaluation of " + toString(subject) + " is stuck";
  return refutedAt(std::move(t), Judgment::evalsTo(subject, r.term), r.term);
}

/// Re-roots a child verdict under a new judgment (status and counterexample preserved).
inline Verdict wrap(Judgment j, std::string rule, Verdict child) {
  Verdict v = child;
  v.trace = Trace{std::move(j), std::move(rule), {std::move(child.trace)}};
  return v;
}

/// Folds child verdicts: any Refuted wins, then Diverged, then Unknown.
inline Verdict conclude(Judgment j, std::string rule, std::vector<Verdict> kids) {
  Verdict out;
  out.status = Verdict::Status::Verified;
  const Verdict* refuted = nullptr;
  bool diverged = false, unknown = false;
  for (const auto& k : kids) {
    if (k.refuted() && !refuted) refuted = &k;
    diverged = diverged || k.diverged();
    if (k.unknown()) {
      unknown = true;
      out.bound = std::max(out.bound, k.bound);
    }
    if (!k.detail.empty() && !k.verified()) out.detail = k.detail;
  }
  if (refuted) {
    out.status = Verdict::Status::Refuted;
    out.counterexample = refuted->counterexample;
    out.detail.clear();
  } else if (diverged) {
    out.status = Verdict::Status::Diverged;
  } else if (unknown) {
    out.status = Verdict::Status::Unknown;
  }
  out.trace = Trace{std::move(j), std::move(rule), {}};
  for (auto& k : kids) out.trace.children.push_back(std::move(k.trace));
  return out;
}

/// Adds an instance binding to a refutation coming out of a quantifier.
inline void bindInstance(Verdict& v, std::string name, Term value) {
  if (!v.refuted()) return;
  if (!v.counterexample) v.counterexample = Counterexample{};
  auto& b = v.counterexample->bindings;
  b.insert(b.begin(), {std::move(name), std::move(value)});
}

inline bool familyDependent(const Term& quantifier) {
  return quantifier.name() != kUnusedBinder && occursFree(quantifier.name(), quantifier.kid(1));
}

inline Term instantiate(const Term& quantifier, const Term& w) {
  return substitute(quantifier.kid(1), quantifier.name(), w);
}

inline std::string cacheKey(const Term& a, std::size_t depth, const CheckConfig& cfg) {
  return alphaKey(a) + '|' + std::to_string(depth) + '|' + std::to_string(cfg.fuel) + '|' +
         (cfg.strategy == Strategy::CallByName ? 'n' : 'v');
}

inline void sortUnique(std::vector<Term>& ws) {
  std::stable_sort(ws.begin(), ws.end(), termLess);
  ws.erase(std::unique(ws.begin(), ws.end(), [](const Term& a, const Term& b) { return alphaEq(a, b); }),
           ws.end());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact inhabitation for ground types.

inline Inhabitation inhabitedExact(const Term& a, const CheckConfig& cfg = {}) {
  using K = Inhabitation::Kind;
  auto r = eval(a, cfg.fuel, cfg.strategy);
  if (r.exhausted()) return {K::Diverged, describe(r)};
  if (r.stuck()) return {K::NotASet, describe(r)};
  const Term& t = r.term;
  auto both = [&](const Inhabitation& l, const Inhabitation& rr, bool needBoth, bool implication) -> Inhabitation {
    for (K k : {K::NotASet, K::Diverged, K::NotGround}) {
      if (l.kind == k) return l;
      if (rr.kind == k) return rr;
    }
    bool answer = implication ? (l.uninhabited() || rr.inhabited())
                  : needBoth  ? (l.inhabited() && rr.inhabited())
                              : (l.inhabited() || rr.inhabited());
    return {answer ? K::Inhabited : K::Uninhabited, ""};
  };
  switch (t.tag()) {
    case Tag::True: return {K::Inhabited, ""};
    case Tag::False: return {K::Uninhabited, ""};
    case Tag::Disj: return both(inhabitedExact(t.kid(0), cfg), inhabitedExact(t.kid(1), cfg), false, false);
    case Tag::Exists:
    case Tag::Forall: {
      if (detail::familyDependent(t)) {
        // Still report ill-formed domains before declining.
        auto d = inhabitedExact(t.kid(0), cfg);
        if (d.kind == K::NotASet || d.kind == K::Diverged) return d;
        return {K::NotGround, "family of " + toString(t) + " uses its binder"};
      }
      return both(inhabitedExact(t.kid(0), cfg), inhabitedExact(t.kid(1), cfg), t.is(Tag::Exists),
                  t.is(Tag::Forall));
    }
    default:
      return {K::NotASet, toString(t) + " has no VAL clause"};
  }
}

/// Maximum nesting of type formers; True and False count 1.
inline std::size_t formerDepth(const Term& a) {
  if (!isTypeFormer(a)) return 1;
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.arity(); ++i) d = std::max(d, formerDepth(a.kid(i)));
  return d + 1;
}

// ---------------------------------------------------------------------------
// Canonical enumeration.

inline Enumeration enumerateCanonical(const Term& a, std::size_t depth, const CheckConfig& cfg = {});

namespace detail {

inline Enumeration enumerateUncached(const Term& a, std::size_t depth, const CheckConfig& cfg) {
  Enumeration out;
  auto bad = [&](const Enumeration& e) {
    out.diverged = e.diverged;
    out.notASet = e.notASet;
    out.detail = e.detail;
    out.witnesses.clear();
    out.complete = false;
    return out;
  };

  auto r = eval(a, cfg.fuel, cfg.strategy);
  if (r.exhausted()) {
    out.diverged = true;
    out.detail = describe(r);
    return out;
  }
  if (r.stuck() || !isTypeFormer(r.term)) {
    out.notASet = true;
    out.detail = r.stuck() ? describe(r) : toString(r.term) + " has no VAL clause";
    return out;
  }
  const Term& t = r.term;

  if (depth == 0) {
    out.complete = inhabitedExact(t, cfg).uninhabited();
    return out;
  }

  switch (t.tag()) {
    case Tag::True:
      out.witnesses = {term::it()};
      out.complete = true;
      break;
    case Tag::False:
      out.complete = true;
      break;
    case Tag::Disj: {
      auto l = enumerateCanonical(t.kid(0), depth - 1, cfg);
      if (!l.ok()) return bad(l);
      auto rr = enumerateCanonical(t.kid(1), depth - 1, cfg);
      if (!rr.ok()) return bad(rr);
      for (const auto& w : l.witnesses) out.witnesses.push_back(term::inl(w));
      for (const auto& w : rr.witnesses) out.witnesses.push_back(term::inr(w));
      out.complete = l.complete && rr.complete;
      break;
    }
    case Tag::Exists: {
      auto d = enumerateCanonical(t.kid(0), depth - 1, cfg);
      if (!d.ok()) return bad(d);
      out.complete = d.complete;
      for (const auto& w : d.witnesses) {
        auto b = enumerateCanonical(instantiate(t, w), depth - 1, cfg);
        if (!b.ok()) return bad(b);
        out.complete = out.complete && b.complete;
        for (const auto& v : b.witnesses) out.witnesses.push_back(term::pair(w, v));
      }
      break;
    }
    case Tag::Forall: {
      const Term& domain = t.kid(0);
      if (!familyDependent(t)) {
        auto b = enumerateCanonical(t.kid(1), depth - 1, cfg);
        if (!b.ok()) return bad(b);
        for (const auto& v : b.witnesses) out.witnesses.push_back(term::lam("x", v));
        auto dom = inhabitedExact(domain, cfg);
        if (dom.kind == Inhabitation::Kind::Diverged) return bad(Enumeration{{}, false, true, false, dom.detail});
        if (dom.kind == Inhabitation::Kind::NotASet) return bad(Enumeration{{}, false, false, true, dom.detail});
        bool needsVar = depth >= 2;
        auto de = eval(domain, cfg.fuel, cfg.strategy);
        auto ce = eval(t.kid(1), cfg.fuel, cfg.strategy);
        bool identity = de.canonical() && ce.canonical() && alphaEq(de.term, ce.term);
        if (needsVar && (identity || dom.uninhabited())) out.witnesses.push_back(term::lam("x", term::var("x")));
        out.complete = b.complete && dom.decided() && (needsVar || !(identity || dom.uninhabited()));
        // Non-ground domain: fall back on enumeration to decide emptiness.
        if (!dom.decided()) {
          auto d = enumerateCanonical(domain, depth - 1, cfg);
          if (!d.ok()) return bad(d);
          if (d.complete && d.witnesses.empty()) {
            if (needsVar) out.witnesses.push_back(term::lam("x", term::var("x")));
            out.complete = b.complete && needsVar;
          }
        }
        break;
      }
      // Dependent family: keep constants valid at every enumerated domain point.
      auto d = enumerateCanonical(domain, depth - 1, cfg);
      if (!d.ok()) return bad(d);
      out.complete = false;
      if (!d.complete) break;
      if (d.witnesses.empty()) {
        if (depth >= 2) out.witnesses.push_back(term::lam("x", term::var("x")));
        break;
      }
      std::vector<Term> common;
      for (std::size_t i = 0; i < d.witnesses.size(); ++i) {
        auto b = enumerateCanonical(instantiate(t, d.witnesses[i]), depth - 1, cfg);
        if (!b.ok()) return bad(b);
        if (i == 0) {
          common = b.witnesses;
          continue;
        }
        std::erase_if(common, [&](const Term& c) {
          return std::none_of(b.witnesses.begin(), b.witnesses.end(), [&](const Term& w) { return alphaEq(c, w); });
        });
      }
      for (const auto& v : common) out.witnesses.push_back(term::lam("x", v));
      break;
    }
    default:
      break;
  }
  sortUnique(out.witnesses);
  return out;
}

}  // namespace detail

inline Enumeration enumerateCanonical(const Term& a, std::size_t depth, const CheckConfig& cfg) {
  thread_local std::unordered_map<std::string, Enumeration> cache;
  auto key = detail::cacheKey(a, depth, cfg);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto e = detail::enumerateUncached(a, depth, cfg);
  if (cache.size() > 200000) cache.clear();
  cache.emplace(std::move(key), e);
  return e;
}

// ---------------------------------------------------------------------------
// Set-hood.

inline Verdict checkIsSet(const Term& a, const CheckConfig& cfg = {}) {
  using detail::conclude;
  Judgment j = Judgment::isSet(a);
  auto r = eval(a, cfg.fuel, cfg.strategy);
  if (!r.canonical()) return detail::evalFailure(j, a, r);
  const Term& t = r.term;
  std::vector<Verdict> kids;
  if (!t.same(a) && !alphaEq(t, a))
    kids.push_back(detail::verdict(Verdict::Status::Verified, Trace{Judgment::evalsTo(a, t), "eval", {}}));

  switch (t.tag()) {
    case Tag::True:
    case Tag::False:
      return conclude(j, std::string("VAL(") + toString(t) + ") is defined", std::move(kids));
    case Tag::Disj:
      kids.push_back(checkIsSet(t.kid(0), cfg));
      if (!kids.back().refuted()) kids.push_back(checkIsSet(t.kid(1), cfg));
      return conclude(j, "VAL(A \\/ B) is defined when A and B are sets", std::move(kids));
    case Tag::Forall:
    case Tag::Exists: {
      kids.push_back(checkIsSet(t.kid(0), cfg));
      if (!kids.back().verified()) return conclude(j, "domain must be a set", std::move(kids));
      if (!detail::familyDependent(t)) {
        kids.push_back(checkIsSet(t.kid(1), cfg));
        return conclude(j, "quantifier over a set with a constant family", std::move(kids));
      }
      auto dom = enumerateCanonical(t.kid(0), cfg.depth, cfg);
      if (dom.diverged) {
        Verdict v = conclude(j, "family instances", std::move(kids));
        v.status = Verdict::Status::Diverged;
        v.detail = dom.detail;
        return v;
      }
      for (const auto& w : dom.witnesses) {
        Verdict inst = checkIsSet(detail::instantiate(t, w), cfg);
        detail::bindInstance(inst, t.name(), w);
        bool stop = inst.refuted();
        kids.push_back(std::move(inst));
        if (stop) break;
      }
      Verdict v = conclude(j, "family is a set at every enumerated domain witness", std::move(kids));
      if (v.verified() && !dom.complete) {
        v.status = Verdict::Status::Unknown;
        v.bound = cfg.depth;
        v.detail = "domain enumeration incomplete at depth " + std::to_string(cfg.depth);
      }
      return v;
    }
    default: {
      Trace tr{j, toString(t) + " is canonical but has no VAL clause", {}};
      for (auto& k : kids) tr.children.push_back(std::move(k.trace));
      return detail::refutedAt(std::move(tr), Judgment::isSet(t), t);
    }
  }
}

// ---------------------------------------------------------------------------
// Membership.

namespace detail {
inline Verdict memberCore(const Term& m, const Term& a, const CheckConfig& cfg);
}

inline Verdict checkMember(const Term& m, const Term& a, const CheckConfig& cfg = {});

/// VAL(type)(value) for a canonical type former and a canonical value. The
/// returned trace is rooted at the unfolded clause.
inline Verdict checkVal(const Term& type, const Term& value, const CheckConfig& cfg = {}) {
  using detail::conclude;
  using detail::refutedAt;
  auto mismatch = [&](const std::string& why) {
    return refutedAt(Trace{Judgment::val(type, value), why, {}}, Judgment::val(type, value), value);
  };
  switch (type.tag()) {
    case Tag::True:
      if (value.is(Tag::It))
        return detail::verdict(Verdict::Status::Verified, Trace{Judgment::val(type, value), "VAL(True) = {it}", {}});
      return mismatch("VAL(True) = {it}");
    case Tag::False:
      return mismatch("VAL(False) is empty");
    case Tag::Disj: {
      if (!value.is(Tag::Inl) && !value.is(Tag::Inr)) return mismatch("VAL(A \\/ B) contains only inl/inr");
      bool left = value.is(Tag::Inl);
      const Term& side = type.kid(left ? 0 : 1);
      Verdict sub = detail::memberCore(value.kid(0), side, cfg);
      return conclude(Judgment::all({Judgment::member(value.kid(0), side)}),
                      left ? "VAL(A \\/ B) via inl" : "VAL(A \\/ B) via inr", {std::move(sub)});
    }
    case Tag::Exists: {
      if (!value.is(Tag::Pair)) return mismatch("VAL(exists) contains only pairs");
      const Term& first = value.kid(0);
      const Term& second = value.kid(1);
      Term family = detail::instantiate(type, first);
      std::vector<Verdict> kids;
      kids.push_back(detail::memberCore(first, type.kid(0), cfg));
      if (!kids.back().refuted()) {
        // A dependent instance at a non-canonical index has not been set-checked.
        kids.push_back(detail::familyDependent(type) ? checkMember(second, family, cfg)
                                                     : detail::memberCore(second, family, cfg));
      }
      return conclude(Judgment::all({Judgment::member(first, type.kid(0)), Judgment::member(second, family)}),
                      "VAL(exists x:A. B) pair clause", std::move(kids));
    }
    case Tag::Forall: {
      if (!value.is(Tag::Lam)) return mismatch("VAL(forall) contains only lambdas");
      const std::string& y = value.name();
      const Term& body = value.kid(0);
      const Term& domain = type.kid(0);
      bool dependent = detail::familyDependent(type);
      Term family = dependent ? substitute(type.kid(1), type.name(), term::var(y)) : type.kid(1);
      Judgment clause = Judgment::gen({y}, Judgment::hyp({Judgment::member(term::var(y), domain)},
                                                         Judgment::member(body, family)));

      auto inh = inhabitedExact(domain, cfg);
      Enumeration dom;
      bool empty = inh.uninhabited();
      if (!inh.decided()) {
        dom = enumerateCanonical(domain, cfg.depth, cfg);
        if (dom.diverged) {
          Verdict v = detail::verdict(Verdict::Status::Diverged, Trace{clause, "domain enumeration diverged", {}});
          v.detail = dom.detail;
          return v;
        }
        empty = dom.complete && dom.witnesses.empty();
      }
      if (empty) {
        // Material discharge: no canonical M with VAL(domain)(M) exists.
        Trace five{Judgment::gen({y}, Judgment::hyp({Judgment::all({Judgment::evalsTo(term::var(y), term::var("M")),
                                                                     Judgment::val(domain, term::var("M"))})},
                                                    Judgment::member(body, family))),
                   "discharged: VAL(" + toString(domain) + ") is empty, so there is no such M", {}};
        Trace four{Judgment::gen({y}, Judgment::hyp({Judgment::exp(domain, term::var(y))},
                                                    Judgment::member(body, family))),
                   "EXP(A)(M) iff Eval(M, M') and VAL(A)(M')", {std::move(five)}};
        Trace three{clause, "Member(M, A) iff EXP(A)(M)", {std::move(four)}};
        return detail::verdict(Verdict::Status::Verified, std::move(three));
      }
      if (inh.decided()) dom = enumerateCanonical(domain, cfg.depth, cfg);
      if (!dom.ok()) {
        Verdict v = detail::verdict(dom.diverged ? Verdict::Status::Diverged : Verdict::Status::Refuted,
                                    Trace{clause, "domain enumeration failed", {}});
        v.detail = dom.detail;
        return v;
      }
      std::vector<Verdict> kids;
      for (const auto& w : dom.witnesses) {
        Term instBody = substitute(body, y, w);
        Term instType = detail::instantiate(type, w);
        Verdict sub = dependent ? checkMember(instBody, instType, cfg) : detail::memberCore(instBody, instType, cfg);
        Verdict inst = detail::wrap(
            Judgment::hyp({Judgment::member(w, domain)}, Judgment::member(instBody, instType)),
            "instance " + y + " := " + toString(w), std::move(sub));
        detail::bindInstance(inst, y, w);
        bool stop = inst.refuted();
        kids.push_back(std::move(inst));
        if (stop) break;
      }
      std::size_t tested = kids.size();
      Verdict v = conclude(clause,
                           dom.complete ? "every canonical instance of the domain verified (enumeration complete)"
                                        : "enumerated instances of the domain",
                           std::move(kids));
      if (v.verified() && !dom.complete) {
        v.status = Verdict::Status::Unknown;
        v.bound = cfg.depth;
        v.detail = std::to_string(tested) + " enumerated instances passed; domain enumeration incomplete at depth " +
                   std::to_string(cfg.depth);
      }
      return v;
    }
    default:
      return mismatch(toString(type) + " has no VAL clause");
  }
}

namespace detail {

inline Verdict memberCore(const Term& m, const Term& a, const CheckConfig& cfg) {
  Judgment j = Judgment::member(m, a);
  auto ra = eval(a, cfg.fuel, cfg.strategy);
  if (!ra.canonical()) return evalFailure(j, a, ra);
  auto rm = eval(m, cfg.fuel, cfg.strategy);
  if (!rm.canonical()) {
    Verdict v = evalFailure(Judgment::exp(ra.term, m), m, rm);
    return wrap(j, "Member(M, A) iff Eval(A, A') and EXP(A')(M)", std::move(v));
  }
  std::vector<Judgment> premises;
  if (!alphaEq(ra.term, a)) premises.push_back(Judgment::evalsTo(a, ra.term));
  premises.push_back(Judgment::evalsTo(m, rm.term));
  premises.push_back(Judgment::val(ra.term, rm.term));
  Verdict val = checkVal(ra.term, rm.term, cfg);
  Verdict two = wrap(Judgment::all(std::move(premises)), "EXP(A)(M) iff Eval(M, M') and VAL(A)(M')", std::move(val));
  return wrap(j, "Member(M, A) iff Eval(A, A') and EXP(A')(M)", std::move(two));
}

}  // namespace detail

/// Member(M, A): A must be a set; M must evaluate into VAL of A's canonical form.
inline Verdict checkMember(const Term& m, const Term& a, const CheckConfig& cfg) {
  Verdict set = checkIsSet(a, cfg);
  if (!set.verified()) return detail::wrap(Judgment::member(m, a), "the type must be a set", std::move(set));
  return detail::memberCore(m, a, cfg);
}

}  // namespace meaning
