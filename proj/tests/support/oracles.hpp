#pragma once

// Brute-force reference semantics for ground types, independent of the
// checkers under test: witnesses come from an explicit pool of closed
// canonical terms instead of the enumeration convention, and VAL is a direct
// recursive reading over that pool.

#include <cstddef>
#include <string>
#include <vector>

#include "meaning/eval.hpp"
#include "meaning/term.hpp"

namespace meaning::oracle {

namespace t = meaning::term;

/// Closed canonical terms up to constructor depth 3 (depth 1..3 are nested).
/// Function bodies range over it, the bound variable, injections, pairs,
/// nested lambdas and case dispatch on the argument.
inline std::vector<Term> pool(std::size_t maxDepth) {
  std::vector<Term> d1 = {t::it()};
  std::vector<Term> d2 = {t::inl(t::it()), t::inr(t::it()), t::pair(t::it(), t::it()), t::lam("x", t::it()),
                          t::lam("x", t::var("x"))};
  std::vector<Term> out = d1;
  if (maxDepth >= 2) out.insert(out.end(), d2.begin(), d2.end());
  if (maxDepth < 3) return out;

  std::vector<Term> upTo2 = d1;
  upTo2.insert(upTo2.end(), d2.begin(), d2.end());
  for (const auto& a : d2) {
    out.push_back(t::inl(a));
    out.push_back(t::inr(a));
  }
  for (const auto& a : upTo2)
    for (const auto& b : upTo2)
      if (depthOf(a) == 2 || depthOf(b) == 2) out.push_back(t::pair(a, b));

  Term x = t::var("x");
  std::vector<Term> leaves = {t::it(), x};
  std::vector<Term> bodies = {t::inl(t::it()), t::inl(x),          t::inr(t::it()),          t::inr(x),
                              t::pair(t::it(), t::it()), t::pair(t::it(), x), t::pair(x, t::it()), t::pair(x, x),
                              t::lam("y", t::it()),      t::lam("y", x),      t::lam("y", t::var("y"))};
  for (const auto& l : {t::it(), t::var("a"), x})
    for (const auto& r : {t::it(), t::var("b"), x}) bodies.push_back(t::caseOf(x, "a", l, "b", r));
  for (const auto& b : bodies) out.push_back(t::lam("x", b));
  return out;
}

inline constexpr std::size_t kFuel = 1000;

/// VAL/EXP membership of a closed term in a ground type, quantifying over
/// the pool for function domains.
inline bool member(const Term& m, const Term& type, const std::vector<Term>& domainPool) {
  auto r = eval(m, kFuel);
  if (!r.canonical()) return false;
  const Term& v = r.term;
  switch (type.tag()) {
    case Tag::True: return v.is(Tag::It);
    case Tag::False: return false;
    case Tag::Disj:
      if (v.is(Tag::Inl)) return member(v.kid(0), type.kid(0), domainPool);
      if (v.is(Tag::Inr)) return member(v.kid(0), type.kid(1), domainPool);
      return false;
    case Tag::Exists:
      return v.is(Tag::Pair) && member(v.kid(0), type.kid(0), domainPool) &&
             member(v.kid(1), type.kid(1), domainPool);
    case Tag::Forall:
      if (!v.is(Tag::Lam)) return false;
      for (const auto& d : domainPool)
        if (member(d, type.kid(0), domainPool) && !member(substitute(v.kid(0), v.name(), d), type.kid(1), domainPool))
          return false;
      return true;
    default:
      return false;
  }
}

/// Binary reading of the same ground semantics.
inline bool related(const Term& m, const Term& n, const Term& type, const std::vector<Term>& domainPool) {
  auto rm = eval(m, kFuel);
  auto rn = eval(n, kFuel);
  if (!rm.canonical() || !rn.canonical()) return false;
  const Term& a = rm.term;
  const Term& b = rn.term;
  switch (type.tag()) {
    case Tag::True: return a.is(Tag::It) && b.is(Tag::It);
    case Tag::False: return false;
    case Tag::Disj:
      if (a.is(Tag::Inl) && b.is(Tag::Inl)) return related(a.kid(0), b.kid(0), type.kid(0), domainPool);
      if (a.is(Tag::Inr) && b.is(Tag::Inr)) return related(a.kid(0), b.kid(0), type.kid(1), domainPool);
      return false;
    case Tag::Exists:
      return a.is(Tag::Pair) && b.is(Tag::Pair) && related(a.kid(0), b.kid(0), type.kid(0), domainPool) &&
             related(a.kid(1), b.kid(1), type.kid(1), domainPool);
    case Tag::Forall:
      if (!a.is(Tag::Lam) || !b.is(Tag::Lam)) return false;
      for (const auto& y : domainPool)
        for (const auto& z : domainPool)
          if (related(y, z, type.kid(0), domainPool) &&
              !related(substitute(a.kid(0), a.name(), y), substitute(b.kid(0), b.name(), z), type.kid(1), domainPool))
            return false;
      return true;
    default:
      return false;
  }
}

/// Members of a ground type found in the pool.
inline std::vector<Term> members(const Term& type, const std::vector<Term>& candidates,
                                 const std::vector<Term>& domainPool) {
  std::vector<Term> out;
  for (const auto& c : candidates)
    if (member(c, type, domainPool)) out.push_back(c);
  return out;
}

inline bool inhabited(const Term& type, std::size_t poolDepth = 3) {
  auto p = pool(poolDepth);
  return !members(type, p, p).empty();
}

}  // namespace meaning::oracle
