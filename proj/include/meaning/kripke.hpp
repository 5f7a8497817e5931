#pragma once

// Finite posets of knowledge states. Forcing of inference rules (valid at a
// single world) versus hypothetical judgments (valid at every future world),
// and an exhaustive monotonicity check.

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace meaning::kripke {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Verification {
  std::string world;
  std::string atom;
  std::string token;
};

/// A finite partial order of worlds with monotone verification sets.
///
/// The order is the reflexive-transitive closure of the given pairs and must
/// be antisymmetric. Tokens recorded at a world are present at every later
/// world, so u <= v implies verifications(u, a) is a subset of verifications(v, a).
class WorldModel {
 public:
  WorldModel(std::vector<std::string> worlds, const std::vector<std::pair<std::string, std::string>>& order,
             std::vector<std::string> atoms, const std::vector<Verification>& verifications)
      : worlds_(std::move(worlds)), atoms_(std::move(atoms)) {
    for (std::size_t i = 0; i < worlds_.size(); ++i) {
      if (!worldIndex_.emplace(worlds_[i], i).second) throw ModelError("duplicate world '" + worlds_[i] + "'");
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (!atomIndex_.emplace(atoms_[i], i).second) throw ModelError("duplicate atom '" + atoms_[i] + "'");
    }
    const std::size_t n = worlds_.size();
    leq_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
    for (const auto& [u, v] : order) leq_[world(u)][world(v)] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq_[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (leq_[k][j]) leq_[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (leq_[i][j] && leq_[j][i])
          throw ModelError("order is not antisymmetric: '" + worlds_[i] + "' and '" + worlds_[j] + "'");

    tokens_.assign(n, std::vector<std::set<std::string>>(atoms_.size()));
    for (const auto& v : verifications) {
      std::size_t w = world(v.world), a = atom(v.atom);
      for (std::size_t later = 0; later < n; ++later)
        if (leq_[w][later]) tokens_[later][a].insert(v.token);
    }
  }

  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::vector<std::string>& atoms() const { return atoms_; }

  std::size_t world(const std::string& name) const {
    auto it = worldIndex_.find(name);
    if (it == worldIndex_.end()) throw ModelError("unknown world '" + name + "'");
    return it->second;
  }
  std::size_t atom(const std::string& name) const {
    auto it = atomIndex_.find(name);
    if (it == atomIndex_.end()) throw ModelError("unknown atom '" + name + "'");
    return it->second;
  }

  bool leq(std::size_t u, std::size_t v) const { return leq_[u][v]; }

  const std::set<std::string>& verifications(std::size_t w, std::size_t a) const { return tokens_[w][a]; }

  /// Every verification recorded in the model, at the world where it appears
  /// (including upward copies).
  std::vector<Verification> allVerifications() const {
    std::vector<Verification> out;
    for (std::size_t w = 0; w < worlds_.size(); ++w)
      for (std::size_t a = 0; a < atoms_.size(); ++a)
        for (const auto& t : tokens_[w][a]) out.push_back({worlds_[w], atoms_[a], t});
    return out;
  }

  std::vector<std::pair<std::string, std::string>> orderPairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t u = 0; u < worlds_.size(); ++u)
      for (std::size_t v = 0; v < worlds_.size(); ++v)
        if (u != v && leq_[u][v]) out.emplace_back(worlds_[u], worlds_[v]);
    return out;
  }

  /// A copy with one more verification (propagated to later worlds).
  WorldModel withVerification(const Verification& v) const {
    auto vs = allVerifications();
    vs.push_back(v);
    return WorldModel(worlds_, orderPairs(), atoms_, vs);
  }

 private:
  std::vector<std::string> worlds_;
  std::vector<std::string> atoms_;
  std::map<std::string, std::size_t> worldIndex_;
  std::map<std::string, std::size_t> atomIndex_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::set<std::string>>> tokens_;
};

/// Atom(a), RuleValid(J1, J2), or HypForced(J1, J2).
class WJudgment {
 public:
  enum class Kind { Atom, RuleValid, HypForced };

  static WJudgment atom(std::string name) { return WJudgment(Kind::Atom, std::move(name), nullptr, nullptr); }
  static WJudgment ruleValid(WJudgment from, WJudgment to) {
    return WJudgment(Kind::RuleValid, "", std::make_shared<const WJudgment>(std::move(from)),
                     std::make_shared<const WJudgment>(std::move(to)));
  }
  static WJudgment hypForced(WJudgment from, WJudgment to) {
    return WJudgment(Kind::HypForced, "", std::make_shared<const WJudgment>(std::move(from)),
                     std::make_shared<const WJudgment>(std::move(to)));
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const WJudgment& from() const { return *from_; }
  const WJudgment& to() const { return *to_; }

 private:
  WJudgment(Kind k, std::string name, std::shared_ptr<const WJudgment> from, std::shared_ptr<const WJudgment> to)
      : kind_(k), name_(std::move(name)), from_(std::move(from)), to_(std::move(to)) {}

  Kind kind_;
  std::string name_;
  std::shared_ptr<const WJudgment> from_;
  std::shared_ptr<const WJudgment> to_;
};

inline std::string toString(const WJudgment& j) {
  auto operand = [](const WJudgment& k) {
    return k.kind() == WJudgment::Kind::Atom ? toString(k) : "(" + toString(k) + ")";
  };
  switch (j.kind()) {
    case WJudgment::Kind::Atom: return j.name();
    case WJudgment::Kind::RuleValid: return "rule " + operand(j.from()) + " " + operand(j.to());
    case WJudgment::Kind::HypForced: return "hyp " + operand(j.from()) + " " + operand(j.to());
  }
  return "";
}

/// w forces j. A compound judgment has an experience at a world exactly when
/// it is forced there, so "a transformation of experiences of J1 into
/// experiences of J2" exists iff J1 has none or J2 has one.
inline bool forces(const WorldModel& m, std::size_t w, const WJudgment& j) {
  switch (j.kind()) {
    case WJudgment::Kind::Atom:
      return !m.verifications(w, m.atom(j.name())).empty();
    case WJudgment::Kind::RuleValid:
      return !forces(m, w, j.from()) || forces(m, w, j.to());
    case WJudgment::Kind::HypForced:
      for (std::size_t v = 0; v < m.worlds().size(); ++v)
        if (m.leq(w, v) && forces(m, v, j.from()) && !forces(m, v, j.to())) return false;
      return true;
  }
  return false;
}

inline bool forces(const WorldModel& m, const std::string& w, const WJudgment& j) { return forces(m, m.world(w), j); }

/// u <= v with u forcing j and v not.
struct MonotonicityFailure {
  std::string lower;
  std::string upper;
};

/// Exhaustive over ordered pairs; nullopt means j is monotone in the model.
inline std::optional<MonotonicityFailure> checkMonotone(const WorldModel& m, const WJudgment& j) {
  const std::size_t n = m.worlds().size();
  std::vector<bool> forced(n);
  for (std::size_t w = 0; w < n; ++w) forced[w] = forces(m, w, j);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (m.leq(u, v) && forced[u] && !forced[v]) return MonotonicityFailure{m.worlds()[u], m.worlds()[v]};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text formats.

namespace detail {
inline std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream ss{std::string(line)};
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}
}  // namespace detail

/// Model files, one directive per line, `#` comments:
///   worlds u v w        declare worlds (may repeat)
///   atoms A B           declare atoms (may repeat)
///   order u v           u <= v (closed reflexively and transitively)
///   verify v A t1       token t1 verifies A at v (and at every later world)
inline WorldModel parseModel(std::string_view text) {
  std::vector<std::string> worlds, atoms;
  std::vector<std::pair<std::string, std::string>> order;
  std::vector<Verification> verifications;
  std::istringstream ss{std::string(text)};
  std::string line;
  int lineNo = 0;
  while (std::getline(ss, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto w = detail::words(line);
    if (w.empty()) continue;
    auto err = [&](const std::string& msg) { return ModelError("line " + std::to_string(lineNo) + ": " + msg); };
    if (w[0] == "worlds") {
      worlds.insert(worlds.end(), w.begin() + 1, w.end());
    } else if (w[0] == "atoms") {
      atoms.insert(atoms.end(), w.begin() + 1, w.end());
    } else if (w[0] == "order") {
      if (w.size() != 3) throw err("expected 'order <world> <world>'");
      order.emplace_back(w[1], w[2]);
    } else if (w[0] == "verify") {
      if (w.size() != 4) throw err("expected 'verify <world> <atom> <token>'");
      verifications.push_back({w[1], w[2], w[3]});
    } else {
      throw err("unknown directive '" + w[0] + "'");
    }
  }
  return WorldModel(std::move(worlds), order, std::move(atoms), verifications);
}

inline std::string toText(const WorldModel& m) {
  std::string out = "worlds";
  for (const auto& w : m.worlds()) out += " " + w;
  out += "\natoms";
  for (const auto& a : m.atoms()) out += " " + a;
  out += '\n';
  for (const auto& [u, v] : m.orderPairs()) out += "order " + u + " " + v + "\n";
  for (const auto& v : m.allVerifications()) out += "verify " + v.world + " " + v.atom + " " + v.token + "\n";
  return out;
}

namespace detail {
class JudgmentParser {
 public:
  explicit JudgmentParser(std::string_view s) {
    std::string cur;
    for (char c : s) {
      if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) toks_.push_back(std::move(cur));
        cur.clear();
        if (c != ' ' && !std::isspace(static_cast<unsigned char>(c))) toks_.emplace_back(1, c);
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) toks_.push_back(cur);
  }

  WJudgment parseAll() {
    auto j = parse();
    if (pos_ != toks_.size()) throw ModelError("trailing input in judgment: '" + toks_[pos_] + "'");
    return j;
  }

 private:
  WJudgment parse() {
    if (pos_ >= toks_.size()) throw ModelError("unexpected end of judgment");
    std::string t = toks_[pos_++];
    if (t == "(") {
      auto j = parse();
      if (pos_ >= toks_.size() || toks_[pos_] != ")") throw ModelError("expected ')' in judgment");
      ++pos_;
      return j;
    }
    if (t == "rule" || t == "hyp") {
      auto from = parse();
      auto to = parse();
      return t == "rule" ? WJudgment::ruleValid(std::move(from), std::move(to))
                         : WJudgment::hypForced(std::move(from), std::move(to));
    }
    if (t == ")") throw ModelError("unexpected ')' in judgment");
    return WJudgment::atom(t);
  }

  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
};
}  // namespace detail

/// `A`, `rule J1 J2`, `hyp J1 J2`, with parentheses for nesting.
inline WJudgment parseWJudgment(std::string_view text) { return detail::JudgmentParser(text).parseAll(); }

}  // namespace meaning::kripke
