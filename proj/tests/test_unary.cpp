#include <gtest/gtest.h>

#include "meaning/rules.hpp"
#include "meaning/unary.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace meaning;
namespace t = meaning::term;

namespace {

CheckConfig atDepth(std::size_t depth, std::size_t fuel = 10000) {
  CheckConfig c;
  c.depth = depth;
  c.fuel = fuel;
  return c;
}

// Flattened pre-order listing of a trace.
void flatten(const Trace& tr, std::vector<const Trace*>& out) {
  out.push_back(&tr);
  for (const auto& c : tr.children) flatten(c, out);
}

}  // namespace

TEST(IsSet, Examples) {
  EXPECT_TRUE(checkIsSet(t::tTrue()).verified());
  EXPECT_TRUE(checkIsSet(t::it()).refuted());
  EXPECT_TRUE(checkIsSet(t::imp(t::tFalse(), t::tTrue())).verified());
}

TEST(IsSet, IllFormedComponents) {
  EXPECT_TRUE(checkIsSet(t::imp(t::tTrue(), t::it())).refuted());
  EXPECT_TRUE(checkIsSet(t::lam("x", t::var("x"))).refuted());
  EXPECT_TRUE(checkIsSet(t::fst(t::it())).refuted());
  EXPECT_TRUE(checkIsSet(gen::omega(), atDepth(4, 200)).diverged());
}

TEST(IsSet, DependentFamily) {
  Term fam = t::caseOf(t::var("x"), "a", t::tTrue(), "b", t::tFalse());
  EXPECT_TRUE(checkIsSet(t::forall(t::disj(t::tTrue(), t::tTrue()), "x", fam)).verified());
  Term bad = t::caseOf(t::var("x"), "a", t::tTrue(), "b", t::it());
  EXPECT_TRUE(checkIsSet(t::exists(t::disj(t::tTrue(), t::tTrue()), "x", bad)).refuted());
}

TEST(Member, WorkedExampleTrace) {
  Term w = t::lam("x", t::pair(t::it(), t::it()));
  Term ty = t::imp(t::tFalse(), t::tTrue());
  Verdict v = checkMember(w, ty);
  ASSERT_TRUE(v.verified());

  std::vector<const Trace*> steps;
  flatten(v.trace, steps);
  ASSERT_EQ(steps.size(), 5u);
  Term pair = t::pair(t::it(), t::it());
  Judgment consequent = Judgment::member(pair, t::tTrue());
  Term x = t::var("x");
  std::vector<Judgment> expected = {
      Judgment::member(w, ty),
      Judgment::all({Judgment::evalsTo(w, w), Judgment::val(ty, w)}),
      Judgment::gen({"x"}, Judgment::hyp({Judgment::member(x, t::tFalse())}, consequent)),
      Judgment::gen({"x"}, Judgment::hyp({Judgment::exp(t::tFalse(), x)}, consequent)),
      Judgment::gen({"x"}, Judgment::hyp({Judgment::all({Judgment::evalsTo(x, t::var("M")),
                                                          Judgment::val(t::tFalse(), t::var("M"))})},
                                         consequent)),
  };
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(toString(steps[i]->judgment), toString(expected[i])) << "step " << i + 1;
  EXPECT_NE(steps[4]->rule.find("VAL(False) is empty"), std::string::npos);
  EXPECT_TRUE(steps[4]->children.empty());
  EXPECT_TRUE(replay(v.trace, 1000));

  std::string rendered = renderNumbered(v.trace);
  EXPECT_EQ(std::count(rendered.begin(), rendered.end(), '\n'), 5);
  EXPECT_EQ(rendered.rfind("(1) ", 0), 0u);
  EXPECT_NE(rendered.find("(5) "), std::string::npos);
}

TEST(Member, Examples) {
  EXPECT_TRUE(checkMember(t::it(), t::tTrue()).verified());
  Verdict no = checkMember(t::it(), t::tFalse());
  ASSERT_TRUE(no.refuted());
  ASSERT_TRUE(no.counterexample.has_value());
  ASSERT_TRUE(no.counterexample->value.has_value());
  EXPECT_TRUE(no.counterexample->value->is(Tag::It));
  EXPECT_TRUE(checkMember(t::lam("x", t::var("x")), t::imp(t::tTrue(), t::tTrue()), atDepth(1)).verified());
}

TEST(Member, NotASetIsRefuted) {
  EXPECT_TRUE(checkMember(t::it(), t::it()).refuted());
  EXPECT_TRUE(checkMember(t::it(), t::lam("x", t::tTrue())).refuted());
}

TEST(Member, StuckAndDivergentWitnesses) {
  EXPECT_TRUE(checkMember(t::fst(t::it()), t::tTrue()).refuted());
  EXPECT_TRUE(checkMember(gen::omega(), t::tTrue(), atDepth(4, 100)).diverged());
  EXPECT_TRUE(checkMember(t::it(), gen::omega(), atDepth(4, 100)).diverged());
}

TEST(Member, CaseAnalysisWitness) {
  Term sw = t::lam("x", t::caseOf(t::var("x"), "a", t::inr(t::var("a")), "b", t::inl(t::var("b"))));
  Term ty = t::imp(t::disj(t::tTrue(), t::tFalse()), t::disj(t::tFalse(), t::tTrue()));
  EXPECT_TRUE(checkMember(sw, ty).verified());
  EXPECT_TRUE(checkMember(sw, t::imp(t::disj(t::tTrue(), t::tTrue()), t::disj(t::tTrue(), t::tFalse()))).refuted());
}

TEST(Member, DependentFamilyInstances) {
  Term fam = t::caseOf(t::var("x"), "a", t::tTrue(), "b", t::disj(t::tTrue(), t::tTrue()));
  Term ty = t::forall(t::disj(t::tTrue(), t::tTrue()), "x", fam);
  Term good = t::lam("x", t::caseOf(t::var("x"), "a", t::it(), "b", t::inl(t::it())));
  EXPECT_TRUE(checkMember(good, ty).verified());
  EXPECT_TRUE(checkMember(t::lam("x", t::it()), ty).refuted());
  Term dep = t::exists(t::disj(t::tTrue(), t::tTrue()), "x", fam);
  EXPECT_TRUE(checkMember(t::pair(t::inr(t::it()), t::inl(t::it())), dep).verified());
  EXPECT_TRUE(checkMember(t::pair(t::inl(t::it()), t::inl(t::it())), dep).refuted());
}

TEST(Member, InhabitedDomainBeyondBoundIsUnknown) {
  // Depth 1 cannot enumerate the witnesses of True => True.
  Term ty = t::imp(t::imp(t::tTrue(), t::tTrue()), t::tTrue());
  Verdict v = checkMember(t::lam("f", t::app(t::var("f"), t::it())), ty, atDepth(1));
  EXPECT_TRUE(v.unknown());
  EXPECT_TRUE(checkMember(t::lam("f", t::app(t::var("f"), t::it())), ty, atDepth(3)).verified());
}

TEST(InhabitedExact, Examples) {
  EXPECT_TRUE(inhabitedExact(t::imp(t::tFalse(), t::tTrue())).inhabited());
  EXPECT_TRUE(inhabitedExact(t::imp(t::tTrue(), t::tFalse())).uninhabited());
  EXPECT_TRUE(inhabitedExact(t::tFalse()).uninhabited());
  EXPECT_EQ(inhabitedExact(t::forall(t::tTrue(), "x", t::var("x"))).kind, Inhabitation::Kind::NotGround);
  EXPECT_EQ(inhabitedExact(t::it()).kind, Inhabitation::Kind::NotASet);
}

// Brute force over a pool of depth-3 candidates agrees with the derived
// uninhabitation of True => False.
TEST(InhabitedExact, BruteForceOracle) {
  EXPECT_FALSE(oracle::inhabited(t::imp(t::tTrue(), t::tFalse())));
  EXPECT_TRUE(oracle::inhabited(t::imp(t::tFalse(), t::tTrue())));
  for (std::size_t d = 1; d <= 2; ++d) {
    for (const auto& a : groundTypes(d)) ASSERT_EQ(inhabitedExact(a).inhabited(), oracle::inhabited(a)) << toString(a);
  }
}

TEST(Enumerate, Examples) {
  auto dis = enumerateCanonical(t::disj(t::tTrue(), t::tTrue()), 2);
  ASSERT_EQ(dis.witnesses.size(), 2u);
  EXPECT_TRUE(alphaEq(dis.witnesses[0], t::inl(t::it())));
  EXPECT_TRUE(alphaEq(dis.witnesses[1], t::inr(t::it())));
  EXPECT_TRUE(dis.complete);

  for (std::size_t d : {0u, 1u, 5u, 10u}) {
    auto f = enumerateCanonical(t::tFalse(), d);
    EXPECT_TRUE(f.witnesses.empty());
    EXPECT_TRUE(f.complete);
  }

  auto prod = enumerateCanonical(t::conj(t::tTrue(), t::tTrue()), 2);
  ASSERT_EQ(prod.witnesses.size(), 1u);
  EXPECT_TRUE(alphaEq(prod.witnesses[0], t::pair(t::it(), t::it())));
  EXPECT_TRUE(prod.complete);
}

TEST(Enumerate, ShallowBoundIsIncomplete) {
  auto e = enumerateCanonical(t::disj(t::tTrue(), t::tTrue()), 1);
  EXPECT_TRUE(e.witnesses.empty());
  EXPECT_FALSE(e.complete);
}

TEST(Enumerate, NotASet) {
  EXPECT_TRUE(enumerateCanonical(t::it(), 3).notASet);
}

// Every enumerated witness is a member under the brute-force reading, the
// list is sorted and free of alpha-duplicates.
TEST(Enumerate, SoundAgainstOracle) {
  auto pool = oracle::pool(3);
  for (std::size_t d = 1; d <= 2; ++d) {
    for (const auto& a : groundTypes(d)) {
      auto e = enumerateCanonical(a, formerDepth(a) + 1);
      ASSERT_TRUE(e.ok());
      for (std::size_t i = 0; i < e.witnesses.size(); ++i) {
        ASSERT_TRUE(oracle::member(e.witnesses[i], a, pool)) << toString(e.witnesses[i]) << " in " << toString(a);
        ASSERT_TRUE(checkMember(e.witnesses[i], a).verified());
        if (i > 0) {
          ASSERT_TRUE(termLess(e.witnesses[i - 1], e.witnesses[i]));
        }
      }
    }
  }
}

TEST(Property, OracleEquivalenceUpToDepthTwo) {
  for (std::size_t d = 1; d <= 2; ++d) {
    for (const auto& a : groundTypes(d)) {
      auto e = enumerateCanonical(a, formerDepth(a));
      ASSERT_EQ(inhabitedExact(a).inhabited(), !e.witnesses.empty()) << toString(a);
    }
  }
}

TEST(Property, MaterialDischarge) {
  gen::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    Term b = gen::groundType(rng, 3);
    Term body = gen::anyClosed(rng, 5);
    Verdict v = checkMember(t::lam("x", body), t::imp(t::tFalse(), b), atDepth(4, 200));
    ASSERT_TRUE(v.verified()) << toString(body) << " : False => " << toString(b);
  }
  Term fam = t::caseOf(t::var("x"), "a", t::tFalse(), "b", t::tFalse());
  EXPECT_TRUE(checkMember(t::lam("x", gen::omega()), t::imp(t::tFalse(), t::imp(t::tTrue(), t::tFalse()))).verified());
  EXPECT_TRUE(checkMember(t::lam("x", t::fst(t::it())), t::forall(t::tFalse(), "x", fam)).verified());
}

TEST(Property, ExpValFactoring) {
  gen::Rng rng(32);
  auto pool = oracle::pool(3);
  for (int i = 0; i < 600; ++i) {
    Term a = gen::groundType(rng, 2);
    Term m = gen::coin(rng) ? gen::pick(rng, pool) : gen::strategyNeutral(rng, 3);
    CheckConfig cfg = atDepth(3, 500);
    Verdict whole = checkMember(m, a, cfg);
    auto rm = eval(m, cfg.fuel);
    auto ra = eval(a, cfg.fuel);
    bool factored = rm.canonical() && ra.canonical() && checkVal(ra.term, rm.term, cfg).verified();
    ASSERT_EQ(whole.verified(), factored) << toString(m) << " in " << toString(a);
  }
}

TEST(Property, VerifiedTracesReplay) {
  std::size_t verified = 0;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (const auto& a : groundTypes(d)) {
      for (const auto& m : enumerateCanonical(a, 3).witnesses) {
        Verdict v = checkMember(m, a, atDepth(3));
        ASSERT_TRUE(v.verified()) << toString(m) << " in " << toString(a);
        ++verified;
        ASSERT_TRUE(replay(v.trace, 1000)) << toString(m) << " in " << toString(a);
        ASSERT_TRUE(replay(v.trace, 1000, Strategy::CallByValue));
      }
    }
  }
  EXPECT_GT(verified, 200u);
}

TEST(Property, MonotoneRefinement) {
  gen::Rng rng(34);
  auto pool = oracle::pool(3);
  for (int i = 0; i < 400; ++i) {
    Term a = gen::groundType(rng, 3);
    Term m = gen::coin(rng) ? gen::pick(rng, pool) : gen::anyClosed(rng, 4);
    Verdict small = checkMember(m, a, atDepth(2, 50));
    if (!small.definitive()) continue;
    for (auto cfg : {atDepth(3, 50), atDepth(2, 500), atDepth(4, 1000)}) {
      Verdict big = checkMember(m, a, cfg);
      ASSERT_EQ(big.status, small.status) << toString(m) << " in " << toString(a);
    }
  }
}

// The VAL-level reading agrees with the brute-force oracle whenever the
// checker is definitive.
TEST(Property, AgreesWithOracle) {
  gen::Rng rng(35);
  auto pool = oracle::pool(3);
  for (int i = 0; i < 600; ++i) {
    Term a = gen::groundType(rng, 2);
    Term m = gen::pick(rng, pool);
    Verdict v = checkMember(m, a, atDepth(3));
    ASSERT_TRUE(v.definitive()) << toString(m) << " in " << toString(a);
    ASSERT_EQ(v.verified(), oracle::member(m, a, pool)) << toString(m) << " in " << toString(a);
  }
}
