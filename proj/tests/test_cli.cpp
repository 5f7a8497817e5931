#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace meaning;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "meaning");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::runCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(MEANING_SOURCE_DIR) + "/samples/" + name; }

}  // namespace

TEST(Eval, Examples) {
  Outcome w = run({"eval", "lam x. <it,it>"});
  EXPECT_EQ(w.code, 0);
  EXPECT_NE(w.out.find("canonical lam x. <it, it>"), std::string::npos);
  EXPECT_NE(w.out.find("steps: 0"), std::string::npos);

  Outcome id = run({"eval", "(lam x. x) it"});
  EXPECT_EQ(id.code, 0);
  EXPECT_EQ(id.out.rfind("canonical it\n", 0), 0u);

  EXPECT_EQ(run({"eval", "(lam x. x x) (lam x. x x)", "--fuel", "100"}).code, 2);
  EXPECT_EQ(run({"--fuel", "100", "eval", "(lam x. x x) (lam x. x x)"}).code, 2);
  EXPECT_EQ(run({"eval", "fst inl it"}).code, 3);
}

TEST(Eval, Errors) {
  Outcome bad = run({"eval", "lam x."});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("parse error"), std::string::npos);
  EXPECT_EQ(run({"eval", "x"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frob"}).code, 1);
  EXPECT_EQ(run({"eval", "it", "--fuel", "0"}).code, 1);
}

TEST(Check, WorkedExampleRendersFiveSteps) {
  Outcome r = run({"check", "lam x. <it,it>", "in", "False => True"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("verified\n", 0), 0u);
  for (int i = 1; i <= 5; ++i) EXPECT_NE(r.out.find("(" + std::to_string(i) + ") "), std::string::npos);
  EXPECT_EQ(r.out.find("(6) "), std::string::npos);
  EXPECT_NE(r.out.find("VAL(False) is empty"), std::string::npos);
}

TEST(Check, Examples) {
  EXPECT_EQ(run({"check", "--binary", "it", ":", "it", "in", "True"}).code, 0);
  EXPECT_EQ(run({"check", "it", "in", "False"}).code, 4);
  EXPECT_EQ(run({"check", "--depth", "1", "lam f. f it", "in", "(True => True) => True"}).code, 5);
  EXPECT_EQ(run({"check", "--fuel", "50", "(lam x. x x) (lam x. x x)", "in", "True"}).code, 2);
  EXPECT_EQ(run({"check", "--binary", "inl it", ":", "inr it", "in", "True \\/ True"}).code, 4);
}

TEST(Check, UsageErrors) {
  EXPECT_EQ(run({"check", "it", "True"}).code, 1);
  EXPECT_EQ(run({"check", "it", ":", "it", "in", "True"}).code, 1);
  EXPECT_EQ(run({"check", "it", "in", "x"}).code, 1);
  EXPECT_EQ(run({"check", "it", "in", "(True"}).code, 1);
}

TEST(Enum, Examples) {
  Outcome r = run({"enum", "True \\/ True", "--depth", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "inl it\ninr it\ncomplete\n");
  EXPECT_EQ(run({"enum", "False"}).out, "complete\n");
  EXPECT_EQ(run({"enum", "it"}).code, 4);
}

TEST(Rule, Examples) {
  Outcome elim = run({"rule", "P /\\ Q true |- P true"});
  EXPECT_EQ(elim.code, 0);
  EXPECT_NE(elim.out.find("derivable: no"), std::string::npos);
  EXPECT_NE(elim.out.find("admissible: verified-at-bound"), std::string::npos);
  EXPECT_NE(elim.out.find("FLAGGED"), std::string::npos);

  Outcome orElim = run({"rule", "P \\/ Q true |- P true"});
  EXPECT_EQ(orElim.code, 4);
  EXPECT_NE(orElim.out.find("P = False; Q = True; premise 1 = inr it;"), std::string::npos);

  Outcome file = run({"rule", sample("readings.rules")});
  EXPECT_EQ(file.code, 4);
  EXPECT_NE(file.out.find("and-elim-left: "), std::string::npos);
  EXPECT_NE(file.out.find("weakening-k: "), std::string::npos);

  EXPECT_EQ(run({"rule", "P true"}).code, 1);
}

TEST(Kripke, Examples) {
  Outcome hyp = run({"kripke", sample("chain.model"), "--judgment", "hyp A B", "--check-monotone"});
  EXPECT_EQ(hyp.code, 0);
  EXPECT_NE(hyp.out.find("monotonicity: pass"), std::string::npos);

  Outcome rule = run({"kripke", sample("chain.model"), "--judgment", "rule A B", "--check-monotone"});
  EXPECT_EQ(rule.code, 4);
  EXPECT_NE(rule.out.find("u forces rule A B"), std::string::npos);
  EXPECT_NE(rule.out.find("v does not force rule A B"), std::string::npos);
  EXPECT_NE(rule.out.find("counterexample u <= v"), std::string::npos);

  EXPECT_EQ(run({"kripke", sample("missing.model"), "--judgment", "A"}).code, 1);
  EXPECT_EQ(run({"kripke", sample("chain.model"), "--judgment", "C"}).code, 1);
}

TEST(Machine, DocumentSchema) {
  Outcome r = run({"--machine", "check", "lam x. <it,it>", "in", "False => True"});
  ASSERT_EQ(r.code, 0);
  json doc = json::parse(r.out);
  for (const char* key : {"command", "config", "verdict", "trace"}) EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc["command"], "check");
  EXPECT_EQ(doc["config"]["fuel"], 10000);
  EXPECT_EQ(doc["verdict"]["status"], "verified");

  // The trace round-trips through the documented tree schema.
  Trace tr = traceFromJson(doc["trace"]);
  EXPECT_EQ(tr.size(), 5u);
  EXPECT_EQ(toJson(tr), doc["trace"]);
  for (json* node = &doc["trace"]; node;) {
    for (const char* key : {"judgment", "rule", "children"}) ASSERT_TRUE(node->contains(key));
    node = (*node)["children"].empty() ? nullptr : &(*node)["children"][0];
  }
}

TEST(Machine, OtherCommands) {
  for (auto args : std::vector<std::vector<std::string>>{
           {"--machine", "eval", "(lam x. x) it"},
           {"--machine", "enum", "True \\/ True"},
           {"--machine", "rule", "P /\\ Q true |- P true"},
           {"--machine", "kripke", sample("chain.model"), "--judgment", "rule A B", "--check-monotone"}}) {
    Outcome r = run(args);
    json doc = json::parse(r.out);
    for (const char* key : {"command", "config", "verdict", "trace"}) EXPECT_TRUE(doc.contains(key)) << key;
  }
}

// Human and machine modes report the same verdict and exit code.
TEST(Property, HumanAndMachineAgree) {
  gen::Rng rng(71);
  auto pool = oracle::pool(3);
  for (int i = 0; i < 200; ++i) {
    std::string type = toString(gen::groundType(rng, 3));
    std::string term = toString(gen::coin(rng) ? gen::pick(rng, pool) : gen::anyClosed(rng, 4));
    bool binary = gen::coin(rng);
    std::vector<std::string> args = {"--fuel", "300", "--depth", "3", "check"};
    if (binary) args.push_back("--binary");
    args.insert(args.end(), {term, "in", type});
    Outcome human = run(args);
    args.insert(args.begin(), "--machine");
    Outcome machine = run(args);
    ASSERT_EQ(human.code, machine.code) << term << " in " << type;
    json doc = json::parse(machine.out);
    std::string status = doc["verdict"]["status"];
    ASSERT_EQ(human.out.rfind(status, 0), 0u) << human.out;
  }
}

TEST(Property, ExitCodeIsAFunctionOfTheVerdict) {
  Verdict v;
  for (auto [s, code] : {std::pair{Verdict::Status::Verified, 0}, {Verdict::Status::Refuted, 4},
                         {Verdict::Status::Unknown, 5}, {Verdict::Status::Diverged, 2}}) {
    v.status = s;
    EXPECT_EQ(cli::exitCode(v), code);
  }
}
