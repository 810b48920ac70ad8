#include <gtest/gtest.h>

#include "aqlab/parse.hpp"
#include "aqlab/render.hpp"
#include "aqlab/semantics.hpp"
#include "support/bigint_oracle.hpp"
#include "support/gen.hpp"

using namespace aqlab;

TEST(EqAq, SpecDatumSuite) {
  EXPECT_TRUE(eq_aq(parse_aq("0"), parse_aq("(0)")));
  EXPECT_TRUE(eq_aq(parse_aq("(0)"), parse_aq("((0))")));
  EXPECT_TRUE(eq_aq(parse_aq("1+2"), parse_aq("1+(2)")));
  EXPECT_TRUE(eq_aq(parse_aq("1+2"), parse_aq("(1+2)")));
  EXPECT_TRUE(eq_aq(parse_aq("1+2"), parse_aq("((1)+2)")));
  EXPECT_FALSE(eq_aq(parse_aq("1+2"), parse_aq("2+1")));
  EXPECT_FALSE(eq_aq(parse_aq("1+2+5"), parse_aq("(1+2)+5")));
}

TEST(EqAq, IsAnEquivalenceRelation) {
  std::mt19937_64 rng(41);
  testgen::GenOptions o;
  for (int i = 0; i < 300; ++i) {
    AQ a = testgen::random_closed_aq(rng, o);
    // three different signs for the same AQ
    AQ x = parse_aq(render_text(a, RenderStyle::minimal));
    AQ y = parse_aq(render_text(a, RenderStyle::fully_bracketed));
    AQ z = parse_aq(render_text(a, RenderStyle::spaced));
    EXPECT_TRUE(eq_aq(x, x));
    EXPECT_EQ(eq_aq(x, y), eq_aq(y, x));
    if (eq_aq(x, y) && eq_aq(y, z)) {
      EXPECT_TRUE(eq_aq(x, z));
    }
    AQ other = testgen::random_closed_aq(rng, o);
    EXPECT_EQ(eq_aq(a, other), eq_aq(other, a));
  }
}

TEST(EqAqBp, SpecExamples) {
  EXPECT_FALSE(eq_aq_bp(parse("0"), parse("(0)")));
  EXPECT_TRUE(eq_aq_bp(parse("1 + 2"), parse("1+2")));
  EXPECT_TRUE(eq_aq_bp(parse("(0)"), parse("(0)")));
}

TEST(EqAqBp, RefinesEqAq) {
  std::mt19937_64 rng(43);
  testgen::GenOptions o;
  for (int i = 0; i < 200; ++i) {
    AQ a = testgen::random_closed_aq(rng, o);
    BracketedAQ x = parse(render_text(a, RenderStyle::minimal));
    BracketedAQ y = parse(render_text(a, RenderStyle::fully_bracketed));
    if (eq_aq_bp(x, y)) {
      EXPECT_TRUE(eq_aq(x.aq, y.aq));
    }
    // and bp distinguishes per-node placement, not just totals
  }
  BracketedAQ left = parse("(0)+1");
  BracketedAQ right = parse("0+(1)");
  EXPECT_TRUE(eq_aq(left.aq, right.aq));
  EXPECT_EQ(left.total_redundant(), right.total_redundant());
  EXPECT_FALSE(eq_aq_bp(left, right));
}

TEST(Sumterm, ArityTwoExactly) {
  EXPECT_TRUE(is_sumterm(parse_aq("1+2")));
  EXPECT_FALSE(is_sumterm(parse_aq("1+2+3")));
  EXPECT_FALSE(is_sumterm(parse_aq("5")));
  EXPECT_FALSE(is_sumterm(AQ::negate(parse_aq("1+2"))));
}

TEST(Split, SpecExamples) {
  EXPECT_TRUE(eq_aq(split_left(parse_aq("1+2")), parse_aq("1")));
  EXPECT_TRUE(eq_aq(split_right(parse_aq("1+2")), parse_aq("2")));
  EXPECT_TRUE(eq_aq(split_left(parse_aq("1+2+3")), parse_aq("0")));
  EXPECT_TRUE(eq_aq(split_right(parse_aq("1+2+3")), parse_aq("0")));
  EXPECT_TRUE(eq_aq(split_left(parse_aq("(1+2)+3")), parse_aq("1+2")));
}

TEST(Split, CongruentAtTheAqLevel) {
  std::mt19937_64 rng(47);
  testgen::GenOptions o;
  for (int i = 0; i < 300; ++i) {
    AQ a = testgen::random_closed_aq(rng, o);
    AQ x = parse_aq(render_text(a, RenderStyle::minimal));
    AQ y = parse_aq(render_text(a, RenderStyle::fully_bracketed));
    ASSERT_TRUE(eq_aq(x, y));
    EXPECT_TRUE(eq_aq(split_left(x), split_left(y)));
    EXPECT_TRUE(eq_aq(split_right(x), split_right(y)));
  }
}

TEST(Split, NotCongruentAcrossLevels) {
  // the paradox blocker: semantically equal, split-distinct
  AQ x = parse_aq("1+2");
  AQ y = parse_aq("2+1");
  EXPECT_TRUE(sem::evaluate_decimal(x) == sem::evaluate_decimal(y));
  EXPECT_FALSE(eq_aq(split_left(x), split_left(y)));
}

TEST(PolyInfix, NestingLawHoldsAtValueLevelOnly) {
  std::mt19937_64 rng(53);
  testgen::GenOptions o;
  o.max_depth = 2;
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<int> arity(3, 6);
    int n = arity(rng);
    std::vector<AQ> kids;
    for (int k = 0; k < n; ++k) kids.push_back(testgen::random_closed_aq(rng, o));
    AQ flat = AQ::sum(kids);
    std::vector<AQ> nested_kids(kids.begin(), kids.end() - 2);
    nested_kids.push_back(AQ::sum({kids[kids.size() - 2], kids.back()}));
    AQ nested = AQ::sum(nested_kids);
    EXPECT_TRUE(sem::evaluate_decimal(flat) == sem::evaluate_decimal(nested));
    EXPECT_FALSE(eq_aq(flat, nested));
  }
}

TEST(Summand, SpecExamples) {
  AQ p = parse_aq("1+2+5");
  EXPECT_TRUE(eq_aq(summand(p, 2), parse_aq("2")));
  EXPECT_EQ(length(p), 3u);
  AQ st = parse_aq("1+2");
  EXPECT_TRUE(eq_aq(summand(st, 1), split_left(st)));
  EXPECT_TRUE(eq_aq(summand(st, 2), split_right(st)));
  try {
    summand(parse_aq("7"), 1);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_a_poly_infix_sum);
  }
  try {
    summand(p, 4);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::index_out_of_range);
  }
  EXPECT_THROW(summand(p, 0), error);
}

TEST(Substitute, SpecExamples) {
  EXPECT_TRUE(eq_aq(substitute(parse_aq("3+X"), "X", parse_aq("1+2")),
                    AQ::sum({AQ::constant("3"), parse_aq("1+2")})));
  EXPECT_TRUE(eq_aq(substitute(parse_aq("X"), "X", parse_aq("5")), parse_aq("5")));
  EXPECT_TRUE(eq_aq(substitute(parse_aq("3+Y"), "X", parse_aq("1+2")), parse_aq("3+Y")));
}

TEST(LetIn, SpecExamples) {
  EXPECT_TRUE(eq_aq(let_in("x", parse_aq("1+2"), parse_aq("3+x")), parse_aq("3+1+2")));
  EXPECT_TRUE(eq_aq(let_in("x", parse_aq("5"), parse_aq("3+x")), parse_aq("3+5")));
  EXPECT_TRUE(eq_aq(substitute(parse_aq("3+X"), "X", parse_aq("1+2")),
                    let_in("X", parse_aq("1+2"), parse_aq("3+X"), /*binding_is_unit=*/true)));
}

TEST(LetIn, SubstitutionLawOnRandomTriples) {
  std::mt19937_64 rng(59);
  testgen::GenOptions body_opts;
  body_opts.var_prob = 0.3;
  body_opts.vars = {"X"};
  testgen::GenOptions t_opts;
  t_opts.max_depth = 3;
  for (int i = 0; i < 300; ++i) {
    AQ body = testgen::random_aq(rng, body_opts);
    AQ t = testgen::random_closed_aq(rng, t_opts);
    EXPECT_TRUE(eq_aq(substitute(body, "X", t), let_in("X", t, body, true)));
  }
}

TEST(Sumtuple, ValidityByEvaluation) {
  EXPECT_TRUE(sumtuple_valid(parse_sumtuple("plus(2,3;5)")));
  EXPECT_FALSE(sumtuple_valid(parse_sumtuple("plus(2,3;6)")));
  EXPECT_TRUE(sumtuple_valid(parse_sumtuple("+(2,1;3)")));
  EXPECT_TRUE(sumtuple_valid(Sumtuple{parse_aq("1+2"), parse_aq("-3"), parse_aq("0")}));
  try {
    sumtuple_valid(Sumtuple{parse_aq("x"), parse_aq("1"), parse_aq("2")});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::open_term);
  }
}

TEST(EqAq, ImpliesSemanticEqualityOnClosedTerms) {
  std::mt19937_64 rng(61);
  testgen::GenOptions o;
  for (int i = 0; i < 200; ++i) {
    AQ a = testgen::random_closed_aq(rng, o);
    AQ b = parse_aq(render_text(a, RenderStyle::fully_bracketed));
    ASSERT_TRUE(eq_aq(a, b));
    EXPECT_TRUE(oracle::eval_aq(a) == oracle::eval_aq(b));
  }
  // ... but not the other way around
  EXPECT_TRUE(oracle::eval_aq(parse_aq("1+2")) == oracle::eval_aq(parse_aq("2+1")));
  EXPECT_FALSE(eq_aq(parse_aq("1+2"), parse_aq("2+1")));
}
