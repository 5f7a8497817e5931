#pragma once

// Fueled big-step evaluation to canonical form. Evaluation is weak: nothing
// reduces under Lam, inside Pair/Inl/Inr, or inside type formers.

#include <cstddef>
#include <string>

#include "meaning/term.hpp"

namespace meaning {

enum class Strategy {
  CallByName,
  CallByValue,  // arguments evaluated to canonical form before substitution
};

struct EvalResult {
  enum class Kind { Canonical, FuelExhausted, Stuck };

  Kind kind = Kind::Stuck;
  Term term;               // the canonical form, the pending redex, or the stuck subterm
  std::size_t steps = 0;   // beta/projection/case steps taken

  bool canonical() const { return kind == Kind::Canonical; }
  bool exhausted() const { return kind == Kind::FuelExhausted; }
  bool stuck() const { return kind == Kind::Stuck; }
};

namespace detail {

class Evaluator {
 public:
  Evaluator(std::size_t fuel, Strategy strategy) : fuel_(fuel), strategy_(strategy) {}

  EvalResult run(Term t) {
    EvalResult r = whnf(std::move(t));
    r.steps = used_;
    return r;
  }

 private:
  EvalResult fail(EvalResult::Kind k, Term t) { return {k, std::move(t), used_}; }

  bool tick() {
    if (used_ >= fuel_) return false;
    ++used_;
    return true;
  }

  EvalResult whnf(Term t) {
    for (;;) {
      if (isCanonical(t)) return {EvalResult::Kind::Canonical, t, used_};
      switch (t.tag()) {
        case Tag::App: {
          EvalResult fn = whnf(t.kid(0));
          if (!fn.canonical()) return fn;
          if (!fn.term.is(Tag::Lam)) return fail(EvalResult::Kind::Stuck, term::app(fn.term, t.kid(1)));
          Term arg = t.kid(1);
          if (strategy_ == Strategy::CallByValue) {
            EvalResult a = whnf(arg);
            if (!a.canonical()) return a;
            arg = a.term;
          }
          if (!tick()) return fail(EvalResult::Kind::FuelExhausted, term::app(fn.term, arg));
          t = substitute(fn.term.kid(0), fn.term.name(), arg);
          continue;
        }
        case Tag::Fst:
        case Tag::Snd: {
          EvalResult p = whnf(t.kid(0));
          if (!p.canonical()) return p;
          Term redex = t.is(Tag::Fst) ? term::fst(p.term) : term::snd(p.term);
          if (!p.term.is(Tag::Pair)) return fail(EvalResult::Kind::Stuck, redex);
          if (!tick()) return fail(EvalResult::Kind::FuelExhausted, redex);
          t = p.term.kid(t.is(Tag::Fst) ? 0 : 1);
          continue;
        }
        case Tag::Case: {
          EvalResult s = whnf(t.kid(0));
          if (!s.canonical()) return s;
          Term redex = term::caseOf(s.term, t.name(), t.kid(1), t.name2(), t.kid(2));
          if (!s.term.is(Tag::Inl) && !s.term.is(Tag::Inr)) return fail(EvalResult::Kind::Stuck, redex);
          Term payload = s.term.kid(0);
          if (strategy_ == Strategy::CallByValue) {
            EvalResult a = whnf(payload);
            if (!a.canonical()) return a;
            payload = a.term;
          }
          if (!tick()) return fail(EvalResult::Kind::FuelExhausted, redex);
          t = s.term.is(Tag::Inl) ? substitute(t.kid(1), t.name(), payload)
                                  : substitute(t.kid(2), t.name2(), payload);
          continue;
        }
        default:
          // Free variable: open terms cannot make progress.
          return fail(EvalResult::Kind::Stuck, t);
      }
    }
  }

  std::size_t fuel_;
  Strategy strategy_;
  std::size_t used_ = 0;
};

}  // namespace detail

/// Evaluates `t` to canonical form using at most `fuel` reduction steps.
inline EvalResult eval(const Term& t, std::size_t fuel, Strategy strategy = Strategy::CallByName) {
  return detail::Evaluator(fuel, strategy).run(t);
}

inline std::string describe(const EvalResult& r) {
  switch (r.kind) {
    case EvalResult::Kind::Canonical:
      return "canonical " + toString(r.term) + " (" + std::to_string(r.steps) + " steps)";
    case EvalResult::Kind::FuelExhausted:
      return "fuel exhausted after " + std::to_string(r.steps) + " steps at " + toString(r.term);
    case EvalResult::Kind::Stuck:
      return "stuck at " + toString(r.term);
  }
  return "";
}

}  // namespace meaning
