#pragma once

// Untyped term language shared by witnesses and types: syntax tree,
// capture-avoiding substitution, alpha-equivalence, parsing and printing.

#include <cctype>
#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace meaning {

enum class Tag {
  Var,
  Lam,
  App,
  Pair,
  Fst,
  Snd,
  Inl,
  Inr,
  Case,
  It,
  True,
  False,
  Forall,
  Exists,
  Disj,
};

/// Binder name used for families that ignore their argument.
inline constexpr std::string_view kUnusedBinder = "_";

class Term;

namespace detail {
struct Node;
}

/// Immutable, cheaply copyable handle to a syntax tree.
///
/// Field layout per tag:
///   Var            name
///   Lam            name = binder, kids = {body}
///   App            kids = {fn, arg}
///   Pair           kids = {fst, snd}
///   Fst/Snd/Inl/Inr kids = {arg}
///   Case           name = left binder, name2 = right binder,
///                  kids = {scrutinee, leftBody, rightBody}
///   Forall/Exists  name = binder, kids = {domain, family}
///   Disj           kids = {left, right}
class Term {
 public:
  Term();  // It

  Tag tag() const;
  const std::string& name() const;
  const std::string& name2() const;
  const Term& kid(std::size_t i) const;
  std::size_t arity() const;

  bool is(Tag t) const { return tag() == t; }

  /// Pointer identity, not alpha-equivalence.
  bool same(const Term& other) const { return node_ == other.node_; }

 private:
  explicit Term(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  friend Term make(Tag, std::string, std::string, std::vector<Term>);

  std::shared_ptr<const detail::Node> node_;
};

namespace detail {
struct Node {
  Tag tag;
  std::string name;
  std::string name2;
  std::vector<Term> kids;
};
}  // namespace detail

inline Term make(Tag tag, std::string name, std::string name2, std::vector<Term> kids) {
  return Term(std::make_shared<const detail::Node>(
      detail::Node{tag, std::move(name), std::move(name2), std::move(kids)}));
}

namespace detail {
inline const Term& itSingleton() {
  static const Term it = make(Tag::It, "", "", {});
  return it;
}
}  // namespace detail

inline Term::Term() : node_(detail::itSingleton().node_) {}
inline Tag Term::tag() const { return node_->tag; }
inline const std::string& Term::name() const { return node_->name; }
inline const std::string& Term::name2() const { return node_->name2; }
inline const Term& Term::kid(std::size_t i) const { return node_->kids.at(i); }
inline std::size_t Term::arity() const { return node_->kids.size(); }

// Constructors.
namespace term {
inline Term var(std::string x) { return make(Tag::Var, std::move(x), "", {}); }
inline Term lam(std::string x, Term body) { return make(Tag::Lam, std::move(x), "", {std::move(body)}); }
inline Term app(Term f, Term a) { return make(Tag::App, "", "", {std::move(f), std::move(a)}); }
inline Term pair(Term a, Term b) { return make(Tag::Pair, "", "", {std::move(a), std::move(b)}); }
inline Term fst(Term p) { return make(Tag::Fst, "", "", {std::move(p)}); }
inline Term snd(Term p) { return make(Tag::Snd, "", "", {std::move(p)}); }
inline Term inl(Term m) { return make(Tag::Inl, "", "", {std::move(m)}); }
inline Term inr(Term m) { return make(Tag::Inr, "", "", {std::move(m)}); }
inline Term caseOf(Term scrutinee, std::string x, Term left, std::string y, Term right) {
  return make(Tag::Case, std::move(x), std::move(y),
              {std::move(scrutinee), std::move(left), std::move(right)});
}
inline Term it() { return detail::itSingleton(); }
inline Term tTrue() { return make(Tag::True, "", "", {}); }
inline Term tFalse() { return make(Tag::False, "", "", {}); }
inline Term forall(Term domain, std::string x, Term family) {
  return make(Tag::Forall, std::move(x), "", {std::move(domain), std::move(family)});
}
inline Term exists(Term domain, std::string x, Term family) {
  return make(Tag::Exists, std::move(x), "", {std::move(domain), std::move(family)});
}
inline Term disj(Term a, Term b) { return make(Tag::Disj, "", "", {std::move(a), std::move(b)}); }

// Sugar: non-dependent quantifiers.
inline Term imp(Term a, Term b) { return forall(std::move(a), std::string(kUnusedBinder), std::move(b)); }
inline Term conj(Term a, Term b) { return exists(std::move(a), std::string(kUnusedBinder), std::move(b)); }
}  // namespace term

/// Introduction forms and type formers. Eliminators and variables are never canonical.
inline bool isCanonical(const Term& t) {
  switch (t.tag()) {
    case Tag::Lam:
    case Tag::Pair:
    case Tag::Inl:
    case Tag::Inr:
    case Tag::It:
    case Tag::True:
    case Tag::False:
    case Tag::Forall:
    case Tag::Exists:
    case Tag::Disj:
      return true;
    default:
      return false;
  }
}

inline bool isTypeFormer(const Term& t) {
  switch (t.tag()) {
    case Tag::True:
    case Tag::False:
    case Tag::Forall:
    case Tag::Exists:
    case Tag::Disj:
      return true;
    default:
      return false;
  }
}

inline const char* tagName(Tag t) {
  switch (t) {
    case Tag::Var: return "Var";
    case Tag::Lam: return "Lam";
    case Tag::App: return "App";
    case Tag::Pair: return "Pair";
    case Tag::Fst: return "Fst";
    case Tag::Snd: return "Snd";
    case Tag::Inl: return "Inl";
    case Tag::Inr: return "Inr";
    case Tag::Case: return "Case";
    case Tag::It: return "It";
    case Tag::True: return "True";
    case Tag::False: return "False";
    case Tag::Forall: return "Forall";
    case Tag::Exists: return "Exists";
    case Tag::Disj: return "Disj";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Free variables.

namespace detail {
inline void collectFree(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto under = [&](const std::string& x, const Term& body) {
    bound.push_back(x);
    collectFree(body, bound, out);
    bound.pop_back();
  };
  switch (t.tag()) {
    case Tag::Var:
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == t.name()) return;
      out.insert(t.name());
      return;
    case Tag::Lam:
      under(t.name(), t.kid(0));
      return;
    case Tag::Case:
      collectFree(t.kid(0), bound, out);
      under(t.name(), t.kid(1));
      under(t.name2(), t.kid(2));
      return;
    case Tag::Forall:
    case Tag::Exists:
      collectFree(t.kid(0), bound, out);
      under(t.name(), t.kid(1));
      return;
    default:
      for (std::size_t i = 0; i < t.arity(); ++i) collectFree(t.kid(i), bound, out);
      return;
  }
}
}  // namespace detail

inline std::set<std::string> freeVars(const Term& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  detail::collectFree(t, bound, out);
  return out;
}

inline bool occursFree(const std::string& x, const Term& t) { return freeVars(t).count(x) != 0; }

inline bool isClosed(const Term& t) { return freeVars(t).empty(); }

// ---------------------------------------------------------------------------
// Substitution.

namespace detail {

inline std::string freshName(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty() || stem == kUnusedBinder) stem = "v";
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

inline Term subst(const Term& t, const std::string& x, const Term& v, const std::set<std::string>& vFree);

// Substitute under a binder `y` scoping `body`; returns {binder', body'}.
inline std::pair<std::string, Term> substUnder(const std::string& y, const Term& body, const std::string& x,
                                               const Term& v, const std::set<std::string>& vFree) {
  if (y == x) return {y, body};
  if (vFree.count(y) && occursFree(x, body)) {
    std::set<std::string> avoid = vFree;
    auto bodyFree = freeVars(body);
    avoid.insert(bodyFree.begin(), bodyFree.end());
    avoid.insert(x);
    std::string fresh = freshName(y, avoid);
    Term renamed = subst(body, y, term::var(fresh), {fresh});
    return {fresh, subst(renamed, x, v, vFree)};
  }
  return {y, subst(body, x, v, vFree)};
}

inline Term subst(const Term& t, const std::string& x, const Term& v, const std::set<std::string>& vFree) {
  switch (t.tag()) {
    case Tag::Var:
      return t.name() == x ? v : t;
    case Tag::It:
    case Tag::True:
    case Tag::False:
      return t;
    case Tag::Lam: {
      auto [y, body] = substUnder(t.name(), t.kid(0), x, v, vFree);
      if (y == t.name() && body.same(t.kid(0))) return t;
      return term::lam(y, body);
    }
    case Tag::Case: {
      Term s = subst(t.kid(0), x, v, vFree);
      auto [l, lb] = substUnder(t.name(), t.kid(1), x, v, vFree);
      auto [r, rb] = substUnder(t.name2(), t.kid(2), x, v, vFree);
      return term::caseOf(s, l, lb, r, rb);
    }
    case Tag::Forall:
    case Tag::Exists: {
      Term d = subst(t.kid(0), x, v, vFree);
      auto [y, fam] = substUnder(t.name(), t.kid(1), x, v, vFree);
      return make(t.tag(), y, "", {d, fam});
    }
    default: {
      std::vector<Term> kids;
      kids.reserve(t.arity());
      bool changed = false;
      for (std::size_t i = 0; i < t.arity(); ++i) {
        kids.push_back(subst(t.kid(i), x, v, vFree));
        changed = changed || !kids.back().same(t.kid(i));
      }
      if (!changed) return t;
      return make(t.tag(), t.name(), t.name2(), std::move(kids));
    }
  }
}
}  // namespace detail

/// [value/binder]body, renaming bound variables of `body` where they would capture.
inline Term substitute(const Term& body, const std::string& binder, const Term& value) {
  if (binder == kUnusedBinder) return body;
  return detail::subst(body, binder, value, freeVars(value));
}

// ---------------------------------------------------------------------------
// Alpha-equivalence and a canonical nameless key.

namespace detail {
using Env = std::vector<std::pair<std::string, std::string>>;

inline bool alpha(const Term& a, const Term& b, Env& env) {
  if (a.same(b) && env.empty()) return true;
  if (a.tag() != b.tag()) return false;
  auto under = [&](const std::string& x, const Term& l, const std::string& y, const Term& r) {
    // '_' is never referenced, so a pair of them binds nothing.
    if (x == kUnusedBinder && y == kUnusedBinder) return alpha(l, r, env);
    env.emplace_back(x, y);
    bool ok = alpha(l, r, env);
    env.pop_back();
    return ok;
  };
  switch (a.tag()) {
    case Tag::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        bool left = it->first == a.name();
        bool right = it->second == b.name();
        if (left || right) return left && right;
      }
      return a.name() == b.name();
    }
    case Tag::Lam:
      return under(a.name(), a.kid(0), b.name(), b.kid(0));
    case Tag::Case:
      return alpha(a.kid(0), b.kid(0), env) && under(a.name(), a.kid(1), b.name(), b.kid(1)) &&
             under(a.name2(), a.kid(2), b.name2(), b.kid(2));
    case Tag::Forall:
    case Tag::Exists:
      return alpha(a.kid(0), b.kid(0), env) && under(a.name(), a.kid(1), b.name(), b.kid(1));
    default:
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!alpha(a.kid(i), b.kid(i), env)) return false;
      return true;
  }
}

inline void nameless(const Term& t, std::vector<std::string>& bound, std::string& out) {
  auto under = [&](const std::string& x, const Term& body) {
    bound.push_back(x);
    nameless(body, bound, out);
    bound.pop_back();
  };
  switch (t.tag()) {
    case Tag::Var: {
      for (std::size_t i = bound.size(); i-- > 0;) {
        if (bound[i] == t.name()) {
          out += '#';
          out += std::to_string(bound.size() - 1 - i);
          return;
        }
      }
      out += '$';
      out += t.name();
      return;
    }
    case Tag::It: out += 'i'; return;
    case Tag::True: out += 'T'; return;
    case Tag::False: out += 'F'; return;
    case Tag::Lam: out += "L("; under(t.name(), t.kid(0)); out += ')'; return;
    case Tag::App: out += "A("; nameless(t.kid(0), bound, out); out += ','; nameless(t.kid(1), bound, out); out += ')'; return;
    case Tag::Pair: out += "P("; nameless(t.kid(0), bound, out); out += ','; nameless(t.kid(1), bound, out); out += ')'; return;
    case Tag::Fst: out += "f("; nameless(t.kid(0), bound, out); out += ')'; return;
    case Tag::Snd: out += "s("; nameless(t.kid(0), bound, out); out += ')'; return;
    case Tag::Inl: out += "l("; nameless(t.kid(0), bound, out); out += ')'; return;
    case Tag::Inr: out += "r("; nameless(t.kid(0), bound, out); out += ')'; return;
    case Tag::Disj: out += "D("; nameless(t.kid(0), bound, out); out += ','; nameless(t.kid(1), bound, out); out += ')'; return;
    case Tag::Case:
      out += "C(";
      nameless(t.kid(0), bound, out);
      out += ',';
      under(t.name(), t.kid(1));
      out += ',';
      under(t.name2(), t.kid(2));
      out += ')';
      return;
    case Tag::Forall:
    case Tag::Exists:
      out += t.is(Tag::Forall) ? "Pi(" : "Sg(";
      nameless(t.kid(0), bound, out);
      out += ',';
      under(t.name(), t.kid(1));
      out += ')';
      return;
  }
}
}  // namespace detail

inline bool alphaEq(const Term& a, const Term& b) {
  detail::Env env;
  return detail::alpha(a, b, env);
}

/// De Bruijn rendering; two terms are alpha-equivalent iff their keys are equal.
inline std::string alphaKey(const Term& t) {
  std::vector<std::string> bound;
  std::string out;
  detail::nameless(t, bound, out);
  return out;
}

/// Constructor nesting depth: atoms and variables count 1.
inline std::size_t depthOf(const Term& t) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < t.arity(); ++i) d = std::max(d, depthOf(t.kid(i)));
  return d + 1;
}

inline std::size_t sizeOf(const Term& t) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < t.arity(); ++i) n += sizeOf(t.kid(i));
  return n;
}

/// Total order used wherever enumeration output must be canonical:
/// by constructor depth, then size, then alpha key. Alpha-equivalent terms compare equal.
inline bool termLess(const Term& a, const Term& b) {
  auto da = depthOf(a), db = depthOf(b);
  if (da != db) return da < db;
  auto sa = sizeOf(a), sb = sizeOf(b);
  if (sa != sb) return sa < sb;
  return alphaKey(a) < alphaKey(b);
}

// ---------------------------------------------------------------------------
// Printing.

namespace detail {

// Precedence levels: 0 binder forms, 1 =>, 2 \/, 3 /\, 4 application, 5 prefix, 6 atom.
inline void print(const Term& t, int prec, std::string& out) {
  auto open = [&](int level) {
    if (prec > level) out += '(';
  };
  auto close = [&](int level) {
    if (prec > level) out += ')';
  };
  switch (t.tag()) {
    case Tag::Var: out += t.name(); return;
    case Tag::It: out += "it"; return;
    case Tag::True: out += "True"; return;
    case Tag::False: out += "False"; return;
    case Tag::Lam:
      open(0);
      out += "lam " + t.name() + ". ";
      print(t.kid(0), 0, out);
      close(0);
      return;
    case Tag::App:
      open(4);
      print(t.kid(0), 4, out);
      out += ' ';
      print(t.kid(1), 6, out);
      close(4);
      return;
    case Tag::Pair:
      out += '<';
      print(t.kid(0), 0, out);
      out += ", ";
      print(t.kid(1), 0, out);
      out += '>';
      return;
    case Tag::Fst:
    case Tag::Snd:
    case Tag::Inl:
    case Tag::Inr: {
      static constexpr const char* kw[] = {"fst ", "snd ", "inl ", "inr "};
      int idx = t.is(Tag::Fst) ? 0 : t.is(Tag::Snd) ? 1 : t.is(Tag::Inl) ? 2 : 3;
      open(5);
      out += kw[idx];
      print(t.kid(0), 5, out);
      close(5);
      return;
    }
    case Tag::Case:
      open(0);
      out += "case ";
      print(t.kid(0), 0, out);
      out += " of inl " + t.name() + " -> ";
      print(t.kid(1), 1, out);  // a nested case here would capture the '|'

      out += " | inr " + t.name2() + " -> ";
      print(t.kid(2), 0, out);
      close(0);
      return;
    case Tag::Disj:
      open(2);
      print(t.kid(0), 3, out);
      out += " \\/ ";
      print(t.kid(1), 2, out);
      close(2);
      return;
    case Tag::Forall:
    case Tag::Exists: {
      bool dependent = t.name() != kUnusedBinder && occursFree(t.name(), t.kid(1));
      bool isForall = t.is(Tag::Forall);
      if (!dependent) {
        int level = isForall ? 1 : 3;
        open(level);
        print(t.kid(0), level + 1, out);
        out += isForall ? " => " : " /\\ ";
        print(t.kid(1), level, out);
        close(level);
        return;
      }
      open(0);
      out += isForall ? "forall " : "exists ";
      out += t.name() + " : ";
      print(t.kid(0), 0, out);
      out += " . ";
      print(t.kid(1), 0, out);
      close(0);
      return;
    }
  }
}
}  // namespace detail

inline std::string toString(const Term& t) {
  std::string out;
  detail::print(t, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing.

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

enum class Tok { Ident, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> toks;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  static constexpr std::string_view multi[] = {"=>", "->", "/\\", "\\/"};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, cc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      toks.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cc});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (auto m : multi) {
      if (src.substr(i, m.size()) == m) {
        toks.push_back({Tok::Sym, std::string(m), l, cc});
        advance(m.size());
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("().,<>:|").find(c) != std::string_view::npos) {
      toks.push_back({Tok::Sym, std::string(1, c), l, cc});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, cc);
  }
  toks.push_back({Tok::End, "", line, col});
  return toks;
}

inline bool isKeyword(const std::string& s) {
  static const std::set<std::string> kws = {"it",  "True",  "False", "lam", "fst",    "snd",   "inl",
                                            "inr", "case",  "of",    "forall", "exists"};
  return kws.count(s) != 0;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Term parseAll() {
    Term t = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool atSym(std::string_view s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool atWord(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    throw ParseError(t.kind == Tok::End ? msg + " (at end of input)" : msg, t.line, t.column);
  }

  void expectSym(std::string_view s) {
    if (!atSym(s)) fail("expected '" + std::string(s) + "'");
    ++pos_;
  }
  void expectWord(std::string_view s) {
    if (!atWord(s)) fail("expected '" + std::string(s) + "'");
    ++pos_;
  }
  std::string binder() {
    if (peek().kind != Tok::Ident || isKeyword(peek().text)) fail("expected a variable name");
    return toks_[pos_++].text;
  }

  bool atBinderForm() const { return atWord("lam") || atWord("case") || atWord("forall") || atWord("exists"); }

  Term expr() {
    if (atWord("lam")) {
      ++pos_;
      std::string x = binder();
      expectSym(".");
      return term::lam(x, expr());
    }
    if (atWord("forall") || atWord("exists")) {
      bool isForall = atWord("forall");
      ++pos_;
      std::string x = binder();
      expectSym(":");
      Term dom = expr();
      expectSym(".");
      Term fam = expr();
      return isForall ? term::forall(dom, x, fam) : term::exists(dom, x, fam);
    }
    if (atWord("case")) {
      ++pos_;
      Term s = expr();
      expectWord("of");
      expectWord("inl");
      std::string x = binder();
      expectSym("->");
      Term l = expr();
      expectSym("|");
      expectWord("inr");
      std::string y = binder();
      expectSym("->");
      Term r = expr();
      return term::caseOf(s, x, l, y, r);
    }
    return arrow();
  }

  Term arrow() {
    Term lhs = disjunction();
    if (atSym("=>")) {
      ++pos_;
      return term::imp(lhs, atBinderForm() ? expr() : arrow());
    }
    return lhs;
  }

  Term disjunction() {
    Term lhs = conjunction();
    if (atSym("\\/")) {
      ++pos_;
      return term::disj(lhs, atBinderForm() ? expr() : disjunction());
    }
    return lhs;
  }

  Term conjunction() {
    Term lhs = application();
    if (atSym("/\\")) {
      ++pos_;
      return term::conj(lhs, atBinderForm() ? expr() : conjunction());
    }
    return lhs;
  }

  Term application() {
    if (atBinderForm()) return expr();
    Term fn = prefix();
    for (;;) {
      if (atBinderForm()) return term::app(fn, expr());
      if (!startsAtom()) return fn;
      fn = term::app(fn, atom());
    }
  }

  Term prefix() {
    if (atWord("fst")) { ++pos_; return term::fst(prefixOperand()); }
    if (atWord("snd")) { ++pos_; return term::snd(prefixOperand()); }
    if (atWord("inl")) { ++pos_; return term::inl(prefixOperand()); }
    if (atWord("inr")) { ++pos_; return term::inr(prefixOperand()); }
    return atom();
  }

  Term prefixOperand() { return atBinderForm() ? expr() : prefix(); }

  bool startsAtom() const {
    if (peek().kind == Tok::Ident) {
      const auto& s = peek().text;
      return !isKeyword(s) || s == "it" || s == "True" || s == "False";
    }
    return atSym("(") || atSym("<");
  }

  Term atom() {
    if (atSym("(")) {
      ++pos_;
      Term t = expr();
      expectSym(")");
      return t;
    }
    if (atSym("<")) {
      ++pos_;
      Term a = expr();
      expectSym(",");
      Term b = expr();
      expectSym(">");
      return term::pair(a, b);
    }
    if (peek().kind == Tok::Ident) {
      const std::string s = peek().text;
      if (s == "it") { ++pos_; return term::it(); }
      if (s == "True") { ++pos_; return term::tTrue(); }
      if (s == "False") { ++pos_; return term::tFalse(); }
      if (s == kUnusedBinder) fail("'_' cannot be referenced");
      if (!isKeyword(s)) { ++pos_; return term::var(s); }
    }
    fail(peek().kind == Tok::End ? "expected a term" : "unexpected '" + peek().text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};
}  // namespace detail

/// Parses the ASCII concrete syntax. Open terms are accepted.
inline Term parse(std::string_view text) { return detail::Parser(text).parseAll(); }

}  // namespace meaning
