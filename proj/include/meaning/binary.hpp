#pragma once

// Binary logical relations: every set is read as a partial equivalence
// relation on canonical forms. EqSet compares relations, EqMember relates
// two witnesses, and universal quantification demands functionality.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "meaning/eval.hpp"
#include "meaning/judgment.hpp"
#include "meaning/term.hpp"
#include "meaning/unary.hpp"

namespace meaning {

inline PairVerdict checkEqSet(const Term& a, const Term& b, const CheckConfig& cfg = {});
inline PairVerdict checkEqMember(const Term& m, const Term& n, const Term& a, const CheckConfig& cfg = {});

/// Related pairs (y, z) of a set's PER, drawn from its enumerated canonical witnesses.
struct RelatedPairs {
  std::vector<std::pair<Term, Term>> pairs;
  bool complete = false;
  bool diverged = false;
  std::string detail;
};

namespace detail {
inline PairVerdict eqMemberCore(const Term& m, const Term& n, const Term& a, const CheckConfig& cfg);
inline PairVerdict eqSetCore(const Term& a, const Term& b, const CheckConfig& cfg);

inline void bindPair(Verdict& v, const std::string& y, const Term& left, const std::string& z, const Term& right) {
  bindInstance(v, z, right);
  bindInstance(v, y, left);
}

inline std::string secondBinder(const std::string& y) { return y == "y" ? "z" : y + "'"; }
}  // namespace detail

/// All ordered pairs of enumerated witnesses that the PER relates, including
/// non-diagonal ones.
inline RelatedPairs relatedPairs(const Term& a, const CheckConfig& cfg = {}) {
  RelatedPairs out;
  auto e = enumerateCanonical(a, cfg.depth, cfg);
  if (!e.ok()) {
    out.diverged = e.diverged;
    out.detail = e.detail;
    return out;
  }
  out.complete = e.complete;
  for (const auto& y : e.witnesses) {
    for (const auto& z : e.witnesses) {
      auto v = detail::eqMemberCore(y, z, a, cfg);
      if (v.verified()) {
        out.pairs.emplace_back(y, z);
      } else if (v.diverged()) {
        out.diverged = true;
        out.detail = v.detail;
      } else if (v.unknown()) {
        out.complete = false;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// EqSet.

namespace detail {

/// Family check shared by both quantifiers: instances at related domain points are equal sets.
inline PairVerdict familiesAgree(const Term& qa, const Term& qb, const CheckConfig& cfg, std::vector<Verdict> kids,
                                 const Judgment& j) {
  bool depA = familyDependent(qa), depB = familyDependent(qb);
  auto dom = inhabitedExact(qa.kid(0), cfg);
  if (dom.uninhabited())
    return conclude(j, "families agree vacuously: the domain " + toString(qa.kid(0)) + " is empty", std::move(kids));
  if (!depA && !depB && dom.inhabited()) {
    kids.push_back(eqSetCore(qa.kid(1), qb.kid(1), cfg));
    return conclude(j, "constant families over an inhabited domain must be equal sets", std::move(kids));
  }
  auto rel = relatedPairs(qa.kid(0), cfg);
  if (rel.diverged) {
    Verdict v = conclude(j, "related-pair enumeration diverged", std::move(kids));
    v.status = Verdict::Status::Diverged;
    v.detail = rel.detail;
    return v;
  }
  std::string y = qa.name() == kUnusedBinder ? "y" : qa.name();
  std::string z = secondBinder(y);
  for (const auto& [l, r] : rel.pairs) {
    Term ia = instantiate(qa, l), ib = instantiate(qb, r);
    Verdict inst = wrap(Judgment::hyp({Judgment::eqMember(l, r, qa.kid(0))}, Judgment::eqSet(ia, ib)),
                        "family instance at " + toString(l) + ", " + toString(r), eqSetCore(ia, ib, cfg));
    bindPair(inst, y, l, z, r);
    bool stop = inst.refuted();
    kids.push_back(std::move(inst));
    if (stop) break;
  }
  Verdict v = conclude(j, "families send related domain points to equal sets", std::move(kids));
  if (v.verified() && !rel.complete) {
    v.status = Verdict::Status::Unknown;
    v.bound = cfg.depth;
    v.detail = "domain enumeration incomplete at depth " + std::to_string(cfg.depth);
  }
  return v;
}

inline PairVerdict eqSetCore(const Term& a, const Term& b, const CheckConfig& cfg) {
  Judgment j = Judgment::eqSet(a, b);
  auto ra = eval(a, cfg.fuel, cfg.strategy);
  if (!ra.canonical()) return evalFailure(j, a, ra);
  auto rb = eval(b, cfg.fuel, cfg.strategy);
  if (!rb.canonical()) return evalFailure(j, b, rb);
  const Term& x = ra.term;
  const Term& y = rb.term;
  std::vector<Verdict> kids;
  if (!alphaEq(x, a) || !alphaEq(y, b)) {
    kids.push_back(verdict(Verdict::Status::Verified,
                           Trace{Judgment::all({Judgment::evalsTo(a, x), Judgment::evalsTo(b, y)}), "eval", {}}));
  }
  for (const Term* t : {&x, &y}) {
    if (!isTypeFormer(*t)) {
      Trace tr{j, toString(*t) + " has no VAL clause", {}};
      for (auto& k : kids) tr.children.push_back(std::move(k.trace));
      return refutedAt(std::move(tr), Judgment::isSet(*t), *t);
    }
  }

  // Relations on canonical forms of different shapes coincide only when both are empty.
  auto ix = inhabitedExact(x, cfg), iy = inhabitedExact(y, cfg);
  if (ix.uninhabited() && iy.uninhabited())
    return conclude(j, "VAL(A') = VAL(B'): both relations are empty", std::move(kids));
  if (ix.decided() && iy.decided() && ix.kind != iy.kind) {
    Trace tr{j, "VAL(A') != VAL(B'): exactly one relation is empty", {}};
    for (auto& k : kids) tr.children.push_back(std::move(k.trace));
    return refutedAt(std::move(tr), Judgment::eqSet(x, y));
  }
  if (x.tag() != y.tag()) {
    Trace tr{j, std::string("VAL(A') != VAL(B'): ") + tagName(x.tag()) + " and " + tagName(y.tag()) +
                    " relate canonical forms of different shapes",
             {}};
    for (auto& k : kids) tr.children.push_back(std::move(k.trace));
    return refutedAt(std::move(tr), Judgment::eqSet(x, y));
  }

  switch (x.tag()) {
    case Tag::True:
    case Tag::False:
      return conclude(j, std::string("VAL(") + toString(x) + ") = VAL(" + toString(y) + ")", std::move(kids));
    case Tag::Disj:
      kids.push_back(eqSetCore(x.kid(0), y.kid(0), cfg));
      if (!kids.back().refuted()) kids.push_back(eqSetCore(x.kid(1), y.kid(1), cfg));
      return conclude(j, "disjunctions with equal components", std::move(kids));
    case Tag::Forall:
    case Tag::Exists: {
      kids.push_back(eqSetCore(x.kid(0), y.kid(0), cfg));
      if (!kids.back().verified()) return conclude(j, "domains must be equal sets", std::move(kids));
      return familiesAgree(x, y, cfg, std::move(kids), j);
    }
    default:
      return conclude(j, "", std::move(kids));
  }
}

}  // namespace detail

/// EqSet(A, B): both evaluate to sets with identical relations.
inline PairVerdict checkEqSet(const Term& a, const Term& b, const CheckConfig& cfg) {
  return detail::eqSetCore(a, b, cfg);
}

/// IsSet(A) in the binary model: the diagonal EqSet(A, A).
inline PairVerdict checkIsSetBinary(const Term& a, const CheckConfig& cfg = {}) {
  return detail::wrap(Judgment::isSet(a), "IsSet(A) iff EqSet(A, A)", detail::eqSetCore(a, a, cfg));
}

// ---------------------------------------------------------------------------
// EqMember.

/// VAL(type)(left, right) for a canonical type former and canonical values.
inline PairVerdict checkValRel(const Term& type, const Term& left, const Term& right, const CheckConfig& cfg = {}) {
  using detail::conclude;
  using detail::refutedAt;
  Judgment here = Judgment::valRel(type, left, right);
  auto mismatch = [&](const std::string& why) { return refutedAt(Trace{here, why, {}}, here); };
  switch (type.tag()) {
    case Tag::True:
      if (left.is(Tag::It) && right.is(Tag::It))
        return detail::verdict(Verdict::Status::Verified, Trace{here, "VAL(True) = {(it, it)}", {}});
      {
        Verdict v = mismatch("VAL(True) = {(it, it)}");
        v.counterexample->value = left.is(Tag::It) ? right : left;
        return v;
      }
    case Tag::False:
      return mismatch("VAL(False) is empty");
    case Tag::Disj: {
      bool inl = left.is(Tag::Inl) && right.is(Tag::Inl);
      bool inr = left.is(Tag::Inr) && right.is(Tag::Inr);
      if (!inl && !inr) return mismatch("VAL(A \\/ B) relates inl with inl and inr with inr only");
      const Term& side = type.kid(inl ? 0 : 1);
      Verdict sub = detail::eqMemberCore(left.kid(0), right.kid(0), side, cfg);
      return conclude(Judgment::all({Judgment::eqMember(left.kid(0), right.kid(0), side)}),
                      inl ? "VAL(A \\/ B) inl clause" : "VAL(A \\/ B) inr clause", {std::move(sub)});
    }
    case Tag::Exists: {
      if (!left.is(Tag::Pair) || !right.is(Tag::Pair)) return mismatch("VAL(exists) relates pairs only");
      Term family = detail::instantiate(type, left.kid(0));
      std::vector<Verdict> kids;
      kids.push_back(detail::eqMemberCore(left.kid(0), right.kid(0), type.kid(0), cfg));
      if (!kids.back().refuted()) {
        kids.push_back(detail::familyDependent(type) ? checkEqMember(left.kid(1), right.kid(1), family, cfg)
                                                     : detail::eqMemberCore(left.kid(1), right.kid(1), family, cfg));
      }
      return conclude(Judgment::all({Judgment::eqMember(left.kid(0), right.kid(0), type.kid(0)),
                                     Judgment::eqMember(left.kid(1), right.kid(1), family)}),
                      "VAL(exists x:A. B) pair clause", std::move(kids));
    }
    case Tag::Forall: {
      if (!left.is(Tag::Lam) || !right.is(Tag::Lam)) return mismatch("VAL(forall) relates lambdas only");
      const Term& domain = type.kid(0);
      const std::string y = "y";
      const std::string z = "z";
      Term bodyL = substitute(left.kid(0), left.name(), term::var(y));
      Term bodyR = substitute(right.kid(0), right.name(), term::var(z));
      Term family = detail::instantiate(type, term::var(y));
      Judgment clause = Judgment::gen({y, z}, Judgment::hyp({Judgment::eqMember(term::var(y), term::var(z), domain)},
                                                            Judgment::eqMember(bodyL, bodyR, family)));
      auto inh = inhabitedExact(domain, cfg);
      bool empty = inh.uninhabited();
      RelatedPairs rel;
      if (!empty) {
        rel = relatedPairs(domain, cfg);
        if (rel.diverged) {
          Verdict v = detail::verdict(Verdict::Status::Diverged, Trace{clause, "related-pair enumeration diverged", {}});
          v.detail = rel.detail;
          return v;
        }
        empty = !inh.decided() && rel.complete && rel.pairs.empty();
      }
      if (empty) {
        return detail::verdict(
            Verdict::Status::Verified,
            Trace{clause, "discharged: VAL(" + toString(domain) + ") is empty, so there are no related y, z", {}});
      }
      std::vector<Verdict> kids;
      for (const auto& [l, r] : rel.pairs) {
        Term il = substitute(left.kid(0), left.name(), l);
        Term ir = substitute(right.kid(0), right.name(), r);
        Term fam = detail::instantiate(type, l);
        Verdict sub = detail::familyDependent(type) ? checkEqMember(il, ir, fam, cfg)
                                                    : detail::eqMemberCore(il, ir, fam, cfg);
        Verdict inst = detail::wrap(
            Judgment::hyp({Judgment::eqMember(l, r, domain)}, Judgment::eqMember(il, ir, fam)),
            "instance y := " + toString(l) + ", z := " + toString(r), std::move(sub));
        detail::bindPair(inst, y, l, z, r);
        bool stop = inst.refuted();
        kids.push_back(std::move(inst));
        if (stop) break;
      }
      std::size_t tested = kids.size();
      Verdict v = conclude(clause,
                           rel.complete ? "functional at every related pair of the domain (enumeration complete)"
                                        : "functional at the enumerated related pairs",
                           std::move(kids));
      if (v.verified() && !rel.complete) {
        v.status = Verdict::Status::Unknown;
        v.bound = cfg.depth;
        v.detail = std::to_string(tested) + " related pairs passed; domain enumeration incomplete at depth " +
                   std::to_string(cfg.depth);
      }
      return v;
    }
    default:
      return mismatch(toString(type) + " has no VAL clause");
  }
}

namespace detail {

inline PairVerdict eqMemberCore(const Term& m, const Term& n, const Term& a, const CheckConfig& cfg) {
  Judgment j = Judgment::eqMember(m, n, a);
  const std::string rule = "EqMember(M, N, A) iff Eval(A, A'), Eval(M, M'), Eval(N, N'), VAL(A')(M', N')";
  auto ra = eval(a, cfg.fuel, cfg.strategy);
  if (!ra.canonical()) return evalFailure(j, a, ra);
  auto rm = eval(m, cfg.fuel, cfg.strategy);
  if (!rm.canonical()) return wrap(j, rule, evalFailure(Judgment::expRel(ra.term, m, n), m, rm));
  auto rn = eval(n, cfg.fuel, cfg.strategy);
  if (!rn.canonical()) return wrap(j, rule, evalFailure(Judgment::expRel(ra.term, m, n), n, rn));
  std::vector<Judgment> premises;
  if (!alphaEq(ra.term, a)) premises.push_back(Judgment::evalsTo(a, ra.term));
  premises.push_back(Judgment::evalsTo(m, rm.term));
  premises.push_back(Judgment::evalsTo(n, rn.term));
  premises.push_back(Judgment::valRel(ra.term, rm.term, rn.term));
  Verdict val = checkValRel(ra.term, rm.term, rn.term, cfg);
  return wrap(j, rule,
              wrap(Judgment::all(std::move(premises)), "EXP(A)(M, N) iff evaluation then VAL(A)(M', N')",
                   std::move(val)));
}

}  // namespace detail

/// EqMember(M, N, A). A must be a set in the binary model (EqSet(A, A)),
/// which includes its families sending related inputs to equal sets.
inline PairVerdict checkEqMember(const Term& m, const Term& n, const Term& a, const CheckConfig& cfg) {
  Verdict set = detail::eqSetCore(a, a, cfg);
  if (!set.verified())
    return detail::wrap(Judgment::eqMember(m, n, a), "the type must be a set (EqSet(A, A))", std::move(set));
  return detail::eqMemberCore(m, n, a, cfg);
}

/// Member(M, A) in the binary model: the diagonal EqMember(M, M, A).
inline PairVerdict checkMemberBinary(const Term& m, const Term& a, const CheckConfig& cfg = {}) {
  return detail::wrap(Judgment::member(m, a), "Member(M, A) iff EqMember(M, M, A)", checkEqMember(m, m, a, cfg));
}

/// Functionality of `f` as a witness of `forall binder : domain . family`:
/// reflexive membership at the quantifier.
inline PairVerdict checkFunctionality(const Term& f, const Term& domain, const std::string& binder,
                                      const Term& family, const CheckConfig& cfg = {}) {
  Term pi = term::forall(domain, binder, family);
  auto rf = eval(f, cfg.fuel, cfg.strategy);
  Judgment j = Judgment::eqMember(f, f, pi);
  if (!rf.canonical()) return detail::evalFailure(j, f, rf);
  if (!rf.term.is(Tag::Lam))
    return detail::refutedAt(Trace{j, "functionality is defined for lambdas only", {}}, j, rf.term);
  return checkEqMember(f, f, pi, cfg);
}

}  // namespace meaning
