#include <gtest/gtest.h>

#include "aqlab/parse.hpp"
#include "aqlab/render.hpp"
#include "support/gen.hpp"

using namespace aqlab;

TEST(Parse, FlatChainVersusNested) {
  AQ flat = parse_aq("1+2+5");
  ASSERT_TRUE(flat.is_sum());
  EXPECT_EQ(flat.arity(), 3u);
  AQ nested = parse_aq("(1+2)+5");
  ASSERT_TRUE(nested.is_sum());
  EXPECT_EQ(nested.arity(), 2u);
  EXPECT_TRUE(nested.children()[0].is_sum());
  EXPECT_FALSE(eq_aq(flat, nested));
}

TEST(Parse, RedundancyOfWholeExpressionPairs) {
  BracketedAQ a = parse("0");
  BracketedAQ b = parse("(0)");
  BracketedAQ c = parse("((0))");
  EXPECT_TRUE(eq_aq(a.aq, b.aq));
  EXPECT_TRUE(eq_aq(b.aq, c.aq));
  EXPECT_EQ(a.total_redundant(), 0);
  EXPECT_EQ(b.total_redundant(), 1);
  EXPECT_EQ(c.total_redundant(), 2);
  EXPECT_EQ(b.redundancy.at(Path{}), 1);
  EXPECT_EQ(c.redundancy.at(Path{}), 2);
}

TEST(Parse, MinusChainAbbreviation) {
  AQ a = parse_aq("1-2-3+4");
  AQ expected = AQ::sum({AQ::constant("1"), AQ::negate(AQ::constant("2")),
                         AQ::negate(AQ::constant("3")), AQ::constant("4")});
  EXPECT_TRUE(eq_aq(a, expected));
}

TEST(Parse, FunctionNotationsPresentTheSameSumterm) {
  AQ infix = parse_aq("2+3");
  EXPECT_TRUE(eq_aq(parse_aq("plus(2,3)"), infix));
  EXPECT_TRUE(eq_aq(parse_aq("+(2,3)"), infix));
}

TEST(Parse, AffirmativeGrammarQuestions) {
  // (1)+2, ((1))+2, (1+2), +(2,3)+4 are all accepted and mean what they say
  EXPECT_TRUE(eq_aq(parse_aq("(1)+2"), parse_aq("1+2")));
  EXPECT_TRUE(eq_aq(parse_aq("((1))+2"), parse_aq("1+2")));
  EXPECT_TRUE(eq_aq(parse_aq("(1+2)"), parse_aq("1+2")));
  EXPECT_TRUE(eq_aq(parse_aq("+(2,3)+4"), parse_aq("(2+3)+4")));
  EXPECT_TRUE(eq_aq(parse_aq("plus(2,3)+4"), parse_aq("(2+3)+4")));
}

TEST(ParseMeta, ChainedSubstitutionsAndNestedLet) {
  EXPECT_TRUE(eq_aq(parse_aq("[1/X][2/Y] plus(X,Y)"), parse_aq("1+2")));
  EXPECT_TRUE(eq_aq(parse_aq("3+(let x = 1 in x)"), parse_aq("3+1")));
  EXPECT_TRUE(eq_aq(parse_aq("let x = 1+2 in let y = 4 in x+y"),
                    parse_aq("1+2+4")));
}

TEST(Parse, RedundantPairAroundNegatedArgument) {
  BracketedAQ b = parse("17+(-1)");
  AQ expected = AQ::sum({AQ::constant("17"), AQ::negate(AQ::constant("1"))});
  EXPECT_TRUE(eq_aq(b.aq, expected));
  EXPECT_EQ(b.total_redundant(), 1);
  EXPECT_EQ(b.redundancy.at(Path{1}), 1);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse("007"), error);
  EXPECT_THROW(parse("1+"), error);
  EXPECT_THROW(parse("((1)"), error);
  EXPECT_THROW(parse("1--2"), error);
  EXPECT_THROW(parse("plus(1)"), error);
  EXPECT_THROW(parse(""), error);
  EXPECT_THROW(parse("plus(2,3;5)"), error);  // tuples are not AQs
  try {
    parse("1+");
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::parse_error);
  }
}

TEST(ParseMeta, SubstitutionBindsTheFollowingAtomOnly) {
  EXPECT_TRUE(eq_aq(parse_aq("[1+2/X] 3+X"), parse_aq("3+X")));
  EXPECT_TRUE(eq_aq(parse_aq("[1+2/X] (3+X)"), parse_aq("3+(1+2)")));
}

TEST(ParseMeta, SubstitutionIntroducesABracketPair) {
  // [t/x]P[X] =_AQ P[(t)]: the implant counts as a bracketed unit
  BracketedAQ b = parse("[5/X] (3+X)");
  EXPECT_TRUE(eq_aq(b.aq, parse_aq("3+5")));
  EXPECT_EQ(b.redundancy.at(Path{1}), 1);
}

TEST(ParseMeta, LetSplicesBareSumBindings) {
  EXPECT_TRUE(eq_aq(parse_aq("let x = 1+2 in (3+x)"), parse_aq("3+1+2")));
  EXPECT_TRUE(eq_aq(parse_aq("let x = 5 in (3+x)"), parse_aq("3+5")));
  // a bracketed binding is a unit and behaves like substitution
  EXPECT_TRUE(eq_aq(parse_aq("let x = (1+2) in (3+x)"), parse_aq("3+(1+2)")));
}

TEST(ParseMeta, SubstitutionLetLaw) {
  AQ body = parse_aq("3+X");
  AQ t = parse_aq("1+2");
  EXPECT_TRUE(eq_aq(substitute(body, "X", t), let_in("X", t, body, /*binding_is_unit=*/true)));
}

TEST(Parse, FuzzedInputEitherParsesOrThrowsCleanly) {
  std::mt19937_64 rng(4242);
  const std::string alphabet = "0123456789+-() xXletin[]/,;=@";
  for (int i = 0; i < 5000; ++i) {
    std::string text;
    std::size_t len = rng() % 48;
    for (std::size_t j = 0; j < len; ++j) text += alphabet[rng() % alphabet.size()];
    try {
      BracketedAQ b = parse(text);
      // whatever parsed must round-trip through the minimal rendering
      EXPECT_TRUE(eq_aq(parse(render(b.aq)).aq, b.aq)) << text;
    } catch (const error&) {
    }
  }
}

TEST(Render, SpecExamples) {
  EXPECT_EQ(render_text(parse_aq("1+2")), "1+2");
  EXPECT_EQ(render_text(AQ::sum({parse_aq("1+2"), AQ::constant("5")})), "(1+2)+5");
  EXPECT_EQ(render_text(AQ::negate(parse_aq("1+2"))), "-(1+2)");
}

TEST(Render, Styles) {
  AQ a = parse_aq("1+2");
  EXPECT_EQ(render_text(a, RenderStyle::fully_bracketed), "((1)+(2))");
  EXPECT_EQ(render_text(a, RenderStyle::spaced), "1 + 2");
  EXPECT_EQ(render_text(parse_aq("1-2"), RenderStyle::spaced), "1 - 2");
}

TEST(Render, MinimalUsesMinusAbbreviation) {
  EXPECT_EQ(render_text(AQ::sum({AQ::constant("17"), AQ::negate(AQ::constant("1"))})), "17-1");
  EXPECT_EQ(render_text(AQ::sum({AQ::negate(AQ::constant("1")), AQ::constant("2")})), "-1+2");
  EXPECT_EQ(render_text(AQ::negate(AQ::negate(AQ::constant("2")))), "-(-2)");
}

TEST(Render, RoundTripAllStyles) {
  std::mt19937_64 rng(23);
  testgen::GenOptions o;
  for (int i = 0; i < 400; ++i) {
    AQ a = testgen::random_closed_aq(rng, o);
    for (auto style :
         {RenderStyle::minimal, RenderStyle::spaced, RenderStyle::fully_bracketed}) {
      BracketedAQ back = parse(render(a, style));
      EXPECT_TRUE(eq_aq(back.aq, a)) << render_text(a, style);
    }
    // minimal rendering inverts parsing exactly, not just up to =_AQ
    EXPECT_TRUE(parse(render(a)).aq == a);
    EXPECT_EQ(parse(render(a)).total_redundant(), 0);
  }
}

TEST(Render, RoundTripWithVariables) {
  std::mt19937_64 rng(29);
  testgen::GenOptions o;
  o.var_prob = 0.25;
  for (int i = 0; i < 200; ++i) {
    AQ a = testgen::random_aq(rng, o);
    EXPECT_TRUE(eq_aq(parse(render(a, RenderStyle::minimal)).aq, a));
  }
}

TEST(Render, MinimalNeverHasMoreBracketsThanFullyBracketed) {
  std::mt19937_64 rng(31);
  testgen::GenOptions o;
  for (int i = 0; i < 200; ++i) {
    AQ a = testgen::random_closed_aq(rng, o);
    EXPECT_LE(count_bracket_pairs(render(a, RenderStyle::minimal)),
              count_bracket_pairs(render(a, RenderStyle::fully_bracketed)));
  }
}

TEST(Render, BracketAccountingInvariant) {
  // total pairs in a plain infix sign = structural pairs of the minimal
  // rendering + recorded redundancy
  std::mt19937_64 rng(37);
  testgen::GenOptions o;
  for (int i = 0; i < 200; ++i) {
    AQ a = testgen::random_closed_aq(rng, o);
    std::size_t structural = count_bracket_pairs(render(a, RenderStyle::minimal));
    for (auto style : {RenderStyle::minimal, RenderStyle::fully_bracketed}) {
      Sign s = render(a, style);
      BracketedAQ b = parse(s);
      EXPECT_EQ(count_bracket_pairs(s),
                structural + static_cast<std::size_t>(b.total_redundant()))
          << s.text();
    }
  }
}
