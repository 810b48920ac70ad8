#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "aqlab/paradox.hpp"
#include "support/bigint_oracle.hpp"
#include "support/gen.hpp"

using namespace aqlab;
using namespace aqlab::paradox;

namespace {
std::string data_path(const std::string& rel) { return std::string(AQLAB_TEST_DATA_DIR) + "/" + rel; }
std::string slurp(const std::string& path) {
  std::ifstream f(path);
  EXPECT_TRUE(f.good()) << path;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool admits_claim(const ReasoningTrace& t, const std::string& lhs, const std::string& rhs) {
  for (const auto& s : t.steps)
    if (s.claim.lhs.raw == lhs && s.claim.rhs.raw == rhs &&
        s.decision != Decision::rejected)
      return true;
  return false;
}
}  // namespace

TEST(Paradox, NaiveDerivesTheAbsurdChain) {
  ReasoningTrace t = run_paradox(Policy::named(PolicyMode::naive));
  for (const auto& s : t.steps) EXPECT_EQ(s.decision, Decision::admitted);
  EXPECT_EQ(t.verdict, ReasoningTrace::Verdict::consistent);
  EXPECT_TRUE(admits_claim(t, "1", "2"));  // the absurd conclusion is on record
  EXPECT_EQ(chain_text(t), slurp(data_path("golden/paradox_naive.golden")));
}

TEST(Paradox, SumtermRejectsPreciselyTheCongruenceStep) {
  ReasoningTrace t = run_paradox(Policy::named(PolicyMode::sumterm));
  ASSERT_EQ(t.steps.size(), 5u);
  EXPECT_EQ(t.steps[0].decision, Decision::admitted);
  EXPECT_EQ(t.steps[1].decision, Decision::admitted);
  EXPECT_EQ(t.steps[2].decision, Decision::rejected);
  EXPECT_EQ(t.steps[2].note, "1+2 not =_AQ 2+1");
  EXPECT_EQ(t.steps[3].decision, Decision::admitted);
  EXPECT_EQ(t.steps[4].decision, Decision::rejected);
  EXPECT_EQ(t.verdict, ReasoningTrace::Verdict::step_rejected);
  EXPECT_EQ(t.first_rejected, 3u);
  EXPECT_FALSE(admits_claim(t, "1", "2"));
  EXPECT_EQ(t.annotated_text(), slurp(data_path("golden/paradox_sumterm.golden")));
}

TEST(Paradox, FoundationalSpecOverrulesTheConclusion) {
  ReasoningTrace t = run_paradox(Policy::named(PolicyMode::foundational));
  EXPECT_EQ(t.verdict, ReasoningTrace::Verdict::contradiction);
  EXPECT_EQ(t.verdict_detail, "1 = 2");
  EXPECT_FALSE(admits_claim(t, "1", "2"));
  // the naive steps themselves were admitted; only the closed identity fell
  EXPECT_EQ(t.steps[2].decision, Decision::admitted);
  EXPECT_EQ(t.annotated_text(), slurp(data_path("golden/paradox_foundational.golden")));
}

TEST(Paradox, PragmaticWarnsAndCarriesOn) {
  ReasoningTrace t = run_paradox(Policy::named(PolicyMode::pragmatic));
  EXPECT_EQ(t.steps[2].decision, Decision::warned);
  EXPECT_NE(t.steps[2].note.find("l_s"), std::string::npos);
  EXPECT_TRUE(admits_claim(t, "1", "2"));
  EXPECT_EQ(t.annotated_text(), slurp(data_path("golden/paradox_pragmatic.golden")));
  // lint level 0 silences the warning
  Policy silent = Policy::named(PolicyMode::pragmatic);
  silent.lint_level = 0;
  ReasoningTrace t2 = run_paradox(silent);
  EXPECT_EQ(t2.steps[2].decision, Decision::admitted);
}

TEST(Paradox, NaiveWithFoundationalCheckDetectsTheContradiction) {
  // the naive reasoner admits everything; switching the foundational check on
  // turns the recorded absurdity into a detected contradiction
  Policy p = Policy::named(PolicyMode::naive);
  p.foundational_check = true;
  ReasoningTrace t = run_paradox(p);
  EXPECT_EQ(t.verdict, ReasoningTrace::Verdict::contradiction);
  EXPECT_EQ(t.verdict_detail, "1 = 2");
}

TEST(Scripts, CompoundSplitArguments) {
  Script s = parse_script(
      "(1+2)+3 =_AQ ((1+2))+3 BY aq\n"
      "l_s((1+2)+3) =_AQ l_s(((1+2))+3) BY cong\n"
      "l_s((1+2)+3) =_AQ 1+2 BY def-ls\n"
      "l_s(l_s((1+2)+3)) =_AQ 1 BY def-ls\n");
  ReasoningTrace t = run_script(s, Policy::named(PolicyMode::sumterm));
  for (const auto& step : t.steps)
    EXPECT_EQ(step.decision, Decision::admitted) << step.claim.render() << ": " << step.note;
}

TEST(Paradox, SignaturePoliciesRejectAtStepOne) {
  for (PolicyMode m : {PolicyMode::no_split, PolicyMode::fixed_signature}) {
    ReasoningTrace t = run_paradox(Policy::named(m));
    EXPECT_EQ(t.steps[0].decision, Decision::rejected);
    EXPECT_NE(t.steps[0].note.find("SignatureViolation"), std::string::npos);
    EXPECT_EQ(t.steps[1].decision, Decision::admitted);  // 1+2 = 2+1 is fine arithmetic
    EXPECT_FALSE(admits_claim(t, "1", "2"));
    EXPECT_EQ(t.verdict, ReasoningTrace::Verdict::step_rejected);
    EXPECT_EQ(t.first_rejected, 1u);
  }
  ReasoningTrace t = run_paradox(Policy::named(PolicyMode::no_split));
  EXPECT_EQ(t.annotated_text(), slurp(data_path("golden/paradox_no_split.golden")));
  ReasoningTrace t2 = run_paradox(Policy::named(PolicyMode::fixed_signature));
  EXPECT_EQ(t2.annotated_text(), slurp(data_path("golden/paradox_fixed_signature.golden")));
}

TEST(CheckStep, SpecExamples) {
  // congruence of l_s under an =_AQ premise is fine for the sumterm solution
  Script ctx = parse_script("1+2 =_AQ 1+(2) BY aq\n");
  Script claim = parse_script("l_s(1+2) =_AQ l_s(1+(2)) BY cong\n");
  StepOutcome o1 = check_step(claim.claims[0], Policy::named(PolicyMode::sumterm), ctx.claims);
  EXPECT_EQ(o1.decision, Decision::admitted);

  // the same shape with a merely semantic premise draws the pragmatic lint
  Script ctx2 = parse_script("1+2 = 2+1 BY eval\n");
  Script claim2 = parse_script("l_s(1+2) = l_s(2+1) BY cong\n");
  StepOutcome o2 = check_step(claim2.claims[0], Policy::named(PolicyMode::pragmatic), ctx2.claims);
  EXPECT_EQ(o2.decision, Decision::warned);

  // and any l_s claim is out under the fixed signature
  StepOutcome o3 =
      check_step(claim2.claims[0], Policy::named(PolicyMode::fixed_signature), ctx2.claims);
  EXPECT_EQ(o3.decision, Decision::rejected);
  EXPECT_NE(o3.note.find("SignatureViolation"), std::string::npos);
}

TEST(BracketParadox, DerivesAbsurdityAtAqLevel) {
  ReasoningTrace t = run_bracket_paradox(EqLevel::aq);
  EXPECT_EQ(t.verdict, ReasoningTrace::Verdict::contradiction);
  EXPECT_EQ(t.verdict_detail, "0 = 1");
  EXPECT_TRUE(admits_claim(t, "#_bp(0)", "#_bp((0))"));
  EXPECT_EQ(t.annotated_text(), slurp(data_path("golden/bracket_aq.golden")));
}

TEST(BracketParadox, BlockedAtAqBpLevel) {
  ReasoningTrace t = run_bracket_paradox(EqLevel::aq_bp);
  EXPECT_TRUE(t.consistent());
  EXPECT_EQ(t.verdict, ReasoningTrace::Verdict::step_rejected);
  EXPECT_EQ(t.first_rejected, 3u);
  EXPECT_EQ(t.steps[2].note, "0 not =_AQ^bp (0)");
  EXPECT_FALSE(admits_claim(t, "#_bp(0)", "#_bp((0))"));
  EXPECT_EQ(t.annotated_text(), slurp(data_path("golden/bracket_aq_bp.golden")));
}

TEST(BracketParadox, SpaceCountingRebreaksAqBp) {
  ReasoningTrace t = run_bracket_paradox(EqLevel::aq_bp, CountingOp::sp);
  EXPECT_EQ(t.verdict, ReasoningTrace::Verdict::contradiction);
  EXPECT_EQ(t.verdict_detail, "2 = 0");
  EXPECT_TRUE(admits_claim(t, "#_sp(1 + 2)", "#_sp(1+2)"));
  EXPECT_EQ(t.annotated_text(), slurp(data_path("golden/space_aq_bp.golden")));
}

TEST(Regress, DefaultReport) {
  RegressReport rep = regress_report();
  ASSERT_EQ(rep.levels.size(), 4u);
  EXPECT_FALSE(rep.levels[0].consistent);  // value broken by splits
  EXPECT_FALSE(rep.levels[1].consistent);  // aq broken by #_bp
  EXPECT_EQ(rep.levels[1].breaker, "#_bp");
  EXPECT_FALSE(rep.levels[2].consistent);  // aq_bp broken by #_sp
  EXPECT_EQ(rep.levels[2].breaker, "#_sp");
  EXPECT_TRUE(rep.levels[3].consistent);  // signs are fully concrete
  EXPECT_NE(rep.resolution.find("conventionalism"), std::string::npos);
  EXPECT_EQ(rep.to_text(), slurp(data_path("golden/regress.golden")));
}

TEST(Regress, AllOperatorsDisabled) {
  RegressReport rep = regress_report(false, false, false);
  for (const auto& l : rep.levels) EXPECT_TRUE(l.consistent);
  EXPECT_EQ(rep.to_text(), slurp(data_path("golden/regress_disabled.golden")));
}

TEST(Scripts, ParseErrors) {
  EXPECT_THROW(parse_script("1 = 2\n"), error);                 // missing BY
  EXPECT_THROW(parse_script("1 = 2 BY wat\n"), error);          // unknown rule
  EXPECT_THROW(parse_script("1 2 BY eval\n"), error);           // no eqsym
  EXPECT_THROW(parse_script("1 = @ BY eval\n"), error);         // bad term
}

TEST(Scripts, FuzzedInputEitherParsesOrThrowsCleanly) {
  std::mt19937_64 rng(12345);
  const std::string alphabet = "0123456789+-()xX =_AQ^bp[]/,;ls#\nBYcongtrevl";
  for (int i = 0; i < 3000; ++i) {
    std::string text;
    std::size_t len = rng() % 64;
    for (std::size_t j = 0; j < len; ++j) text += alphabet[rng() % alphabet.size()];
    try {
      Script s = parse_script(text);
      run_script(s, Policy::named(PolicyMode::foundational));
      run_script(s, Policy::named(PolicyMode::sumterm));
    } catch (const error&) {
      // rejection with a structured error is the only acceptable failure
    }
  }
}

TEST(Scripts, UnparseableCountingArgumentsAreRejectedNotThrown) {
  Script s = parse_script(
      "#_bp(()) = 1 BY count\n"
      "#_bp(()) = #_bp((())) BY cong\n");
  ReasoningTrace t = run_script(s, Policy::named(PolicyMode::naive));
  EXPECT_EQ(t.steps[0].decision, Decision::admitted);  // counting is sign-level
  EXPECT_EQ(t.steps[1].decision, Decision::rejected);  // nothing can equate ()
}

TEST(Scripts, LetBinderEqualsIsNotTheClaimEquality) {
  Script s = parse_script("let x = 1+2 in (3+x) =_AQ 3+1+2 BY aq\n");
  ASSERT_EQ(s.claims.size(), 1u);
  EXPECT_EQ(s.claims[0].lhs.raw, "let x = 1+2 in (3+x)");
  EXPECT_EQ(s.claims[0].rhs.raw, "3+1+2");
  ReasoningTrace t = run_script(s, Policy::named(PolicyMode::naive));
  EXPECT_EQ(t.steps[0].decision, Decision::admitted);
}

TEST(Policies, SoundOnesNeverAdmitFalseClosedIdentities) {
  // randomized adversarial scripts: true facts, false eval attempts, and the
  // unsound congruence pattern
  std::mt19937_64 rng(103);
  testgen::GenOptions o;
  o.max_depth = 2;
  o.max_arity = 3;
  o.max_magnitude = 40;
  for (int round = 0; round < 60; ++round) {
    std::ostringstream script;
    AQ a = testgen::random_closed_aq(rng, o);
    AQ b = testgen::random_closed_aq(rng, o);
    std::string ra = render_text(a);
    std::string rb = render_text(b);
    std::string va = sem::evaluate_decimal(a).to_string();
    script << ra << " = " << va << " BY eval\n";
    script << ra << " = " << rb << " BY eval\n";  // usually false, then rejected
    script << "1+2 = 2+1 BY eval\n";
    script << "l_s(1+2) = l_s(2+1) BY cong\n";
    script << "1 = l_s(1+2) BY def-ls\n";
    script << "l_s(2+1) = 2 BY def-ls\n";
    script << "1 = 2 BY trans\n";
    Script s = parse_script(script.str());
    for (PolicyMode m : {PolicyMode::sumterm, PolicyMode::foundational, PolicyMode::no_split,
                         PolicyMode::fixed_signature}) {
      ReasoningTrace t = run_script(s, Policy::named(m));
      for (const auto& step : t.steps) {
        if (step.decision == Decision::rejected) continue;
        const auto& c = step.claim;
        if (c.lhs.kind != STerm::Kind::leaf || c.rhs.kind != STerm::Kind::leaf) continue;
        if (!c.lhs.baq.aq.is_closed() || !c.rhs.baq.aq.is_closed()) continue;
        EXPECT_TRUE(oracle::eval_aq(c.lhs.baq.aq) == oracle::eval_aq(c.rhs.baq.aq))
            << "policy admitted a false identity: " << c.render();
      }
    }
  }
}

TEST(Policies, AgreeOnSplitFreeScripts) {
  // identical admitted sets under every policy when no split/counting
  // operator occurs
  std::vector<std::string> scripts;
  scripts.push_back(slurp(data_path("scripts/pure_arith.script")));
  std::mt19937_64 rng(107);
  testgen::GenOptions o;
  o.max_depth = 2;
  o.max_arity = 3;
  o.max_magnitude = 30;
  for (int round = 0; round < 40; ++round) {
    std::ostringstream script;
    AQ a = testgen::random_closed_aq(rng, o);
    std::string ra = render_text(a);
    std::string va = sem::evaluate_decimal(a).to_string();
    script << ra << " = " << va << " BY eval\n";
    script << va << " = " << ra << " BY sym\n";
    script << ra << " = " << va << " BY table2\n";
    script << ra << " = " << ra << " BY refl\n";
    AQ b = testgen::random_closed_aq(rng, o);
    script << render_text(b) << " = " << va << " BY eval\n";  // may be false
    scripts.push_back(script.str());
  }
  const PolicyMode all_modes[] = {PolicyMode::naive,     PolicyMode::sumterm,
                                  PolicyMode::foundational, PolicyMode::pragmatic,
                                  PolicyMode::no_split,  PolicyMode::fixed_signature};
  for (const std::string& text : scripts) {
    Script s = parse_script(text);
    std::vector<std::vector<Decision>> outcomes;
    for (PolicyMode m : all_modes) {
      ReasoningTrace t = run_script(s, Policy::named(m));
      std::vector<Decision> ds;
      for (const auto& step : t.steps) ds.push_back(step.decision);
      outcomes.push_back(ds);
    }
    for (std::size_t i = 1; i < outcomes.size(); ++i)
      EXPECT_EQ(outcomes[i], outcomes[0]) << "policies disagree on a split-free script";
  }
}

namespace {
/// Upgrades semantic equality signs to =_AQ wherever the claim's sides are
/// the same AQ, the refinement move of delayed contradiction tolerance.
Script upgrade_script(const Script& s) {
  Script out = s;
  for (Claim& c : out.claims) {
    if (c.level != EqLevel::value) continue;
    if (c.rule == RuleName::eval || c.rule == RuleName::table2 || c.rule == RuleName::count)
      continue;
    try {
      if (eq_aq(reasoner_detail::sterm_aq(c.lhs), reasoner_detail::sterm_aq(c.rhs)))
        c.level = EqLevel::aq;
    } catch (const error&) {
    }
  }
  return out;
}
}  // namespace

TEST(Policies, DelayedRefinementOnTheScriptCorpus) {
  for (const char* name : {"scripts/pure_arith.script", "scripts/split_aq.script",
                           "scripts/mixed_let.script", "scripts/values_chain.script",
                           "scripts/canonical.script"}) {
    Script s = parse_script(slurp(data_path(name)));
    ReasoningTrace pragmatic = run_script(s, Policy::named(PolicyMode::pragmatic));
    bool clean = true;
    for (const auto& step : pragmatic.steps)
      if (step.decision != Decision::admitted) clean = false;
    if (!clean) continue;  // warned or rejected scripts are exempt
    Script upgraded = upgrade_script(s);
    ReasoningTrace sumterm = run_script(upgraded, Policy::named(PolicyMode::sumterm));
    for (std::size_t i = 0; i < sumterm.steps.size(); ++i)
      EXPECT_NE(sumterm.steps[i].decision, Decision::rejected)
          << name << " step " << i + 1 << ": " << sumterm.steps[i].note;
  }
}

namespace {
/// Minimal test-side reader for the mistakes corpus: +, *, unary -, brackets,
/// and the relations = and >.
struct MistakeParser {
  std::string_view s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && s[i] == ' ') ++i;
  }
  oracle::BigInt primary() {
    skip();
    if (s[i] == '(') {
      ++i;
      oracle::BigInt v = expr();
      skip();
      ++i;  // ')'
      return v;
    }
    if (s[i] == '-') {
      ++i;
      return -primary();
    }
    std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    return oracle::BigInt::from_decimal(s.substr(start, i - start));
  }
  oracle::BigInt factor() {
    oracle::BigInt v = primary();
    skip();
    while (i < s.size() && s[i] == '*') {
      ++i;
      v = v * primary();
      skip();
    }
    return v;
  }
  oracle::BigInt expr() {
    oracle::BigInt v = factor();
    skip();
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      char op = s[i++];
      oracle::BigInt w = factor();
      v = op == '+' ? v + w : v - w;
      skip();
    }
    return v;
  }
};

bool mistake_claim_holds(const std::string& line) {
  std::size_t gt = line.find(" > ");
  std::size_t eq = line.find(" = ");
  if (gt != std::string::npos) {
    MistakeParser l{std::string_view(line).substr(0, gt)};
    MistakeParser r{std::string_view(line).substr(gt + 3)};
    return l.expr() > r.expr();
  }
  MistakeParser l{std::string_view(line).substr(0, eq)};
  MistakeParser r{std::string_view(line).substr(eq + 3)};
  return l.expr() == r.expr();
}
}  // namespace

TEST(Mistakes, CorpusClaimsAreAllRefutedByTheOracle) {
  std::istringstream in(slurp(data_path("mistakes.txt")));
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    EXPECT_FALSE(mistake_claim_holds(line)) << line;
    ++checked;
  }
  EXPECT_EQ(checked, 4);  // the four catalogued wrong inferences
}
