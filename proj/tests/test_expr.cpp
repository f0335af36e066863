#include <gtest/gtest.h>

#include "projclass/antiderivative.hpp"
#include "projclass/context.hpp"
#include "projclass/zero_test.hpp"

using namespace projclass;

namespace {

Context xy() { return Context({"x", "y"}, {"a", "b"}); }
Expr P(const std::string& s) { return xy().parse(s); }

}  // namespace

TEST(Expr, ExpandsSquares) {
  EXPECT_EQ(to_string(P("(x+y)^2")), "x^2 + 2*x*y + y^2");
  EXPECT_EQ(P("(x+y)^2"), P("x^2+2*x*y+y^2"));
}

TEST(Expr, CombinesLikeTermsAndPowers) {
  EXPECT_EQ(P("x*x^(1/2)"), P("x^(3/2)"));
  EXPECT_TRUE((P("x+y") - P("y+x")).is_zero());
  EXPECT_TRUE((P("2*x+2*y") / P("x+y") - Expr(2)).is_zero());
  EXPECT_EQ(P("sqrt(24)"), P("24^(1/2)"));
  EXPECT_EQ(P("sqrt(4)"), Expr(2));
  EXPECT_EQ(P("(-8)^(1/3)"), Expr(-2));
}

TEST(Expr, ExpLnRules) {
  EXPECT_EQ(P("exp(2*ln(x) + y)"), P("x^2*exp(y)"));
  EXPECT_EQ(P("ln(exp(x))"), P("x"));
  EXPECT_EQ(P("exp(x)*exp(y)"), P("exp(x+y)"));
  EXPECT_EQ(P("exp(x)^2"), P("exp(2*x)"));
  EXPECT_TRUE(P("ln(1)").is_zero());
  EXPECT_TRUE(P("sin(0)").is_zero());
  EXPECT_EQ(P("cos(0)"), Expr(1));
  EXPECT_EQ(P("sin(-x)"), P("-sin(x)"));
}

TEST(Expr, PowerOfPowerRespectsRealBranches) {
  EXPECT_EQ(to_string(P("(x^2)^(1/2)")), "(x^2)^(1/2)");
  EXPECT_EQ(P("(x^(-1))^(1/2)"), P("x^(-1/2)"));
  EXPECT_EQ(P("(x^3)^(1/3)"), P("x"));
}

TEST(Expr, PrintParseRoundTrip) {
  const char* cases[] = {"(3/2)^(1/2)",        "x^(-2/3)",         "-3/2*x*y^2 + x - 1", "exp(2*x)*sin(x - y)",
                         "(x + y)^(-1)*a",      "(x*y)^(1/2)",      "(-x*y)^(1/2)",       "ln(x + 2*y)^3",
                         "(x^2 + 1)^(1/2) - b", "2^(1/2)*x + 3^(1/3)", "cos(x)^(-2)",     "-(x - y)^(2/3)"};
  for (const char* c : cases) {
    Expr e = P(c);
    EXPECT_EQ(P(to_string(e)), e) << c << " -> " << to_string(e);
  }
}

TEST(Expr, ParseErrors) {
  EXPECT_THROW(P("x +"), ParseError);
  EXPECT_THROW(P("z"), UndeclaredIdentifier);
  try {
    P("x + z");
    FAIL();
  } catch (const UndeclaredIdentifier& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(P("x^y"), ParseError);
  EXPECT_THROW(P("1/0"), ParseError);
}

TEST(Expr, Differentiate) {
  EXPECT_EQ(differentiate(P("x^3*y"), "x"), P("3*x^2*y"));
  EXPECT_EQ(differentiate(P("ln(x)"), "x"), P("x^(-1)"));
  EXPECT_EQ(differentiate(P("exp(a*x)"), "x"), P("a*exp(a*x)"));
  EXPECT_EQ(differentiate(P("sin(x)"), "x"), P("cos(x)"));
  EXPECT_TRUE(differentiate(P("y^2"), "x").is_zero());
}

TEST(Expr, Antiderivative) {
  EXPECT_EQ(*antiderivative(P("x^2"), "x"), P("x^3/3"));
  EXPECT_EQ(*antiderivative(P("1/(2*x+1)"), "x"), P("ln(2*x+1)/2"));
  EXPECT_EQ(*antiderivative(P("exp(2*x)*y"), "x"), P("y*exp(2*x)/2"));
  EXPECT_EQ(*antiderivative(P("x^2/(x+y)"), "x"), P("(x+y)^2/2 - 2*y*(x+y) + y^2*ln(x+y)"));
  EXPECT_EQ(*antiderivative(P("(x^2+2*x*y+y^2)*(x+y)^(-3)"), "x"), P("ln(x+y)"));
  EXPECT_FALSE(antiderivative(P("exp(x^2)"), "x").has_value());
  EXPECT_FALSE(antiderivative(P("ln(x)"), "x").has_value());
}

TEST(ZeroTest, ExactAndSampled) {
  Context c = xy();
  auto r = is_identically_zero(P("(x+y)^2 - x^2 - 2*x*y - y^2"), c);
  EXPECT_EQ(r.verdict, Verdict::Zero);
  r = is_identically_zero(P("1/(x-y) + 1/(y-x)"), c);
  EXPECT_EQ(r.verdict, Verdict::Zero);
  r = is_identically_zero(P("sin(x)^2 + cos(x)^2 - 1"), c);
  EXPECT_EQ(r.verdict, Verdict::Zero);
  EXPECT_FALSE(r.exact);
  r = is_identically_zero(P("sin(x)^2 + cos(x)^2 - 1 + 10^(-20)*x"), c);
  EXPECT_EQ(r.verdict, Verdict::NonZero);
  ASSERT_TRUE(r.witness.has_value());
}

TEST(ZeroTest, DeterministicAcrossThreads) {
  Context c = xy();
  ZeroTestPolicy p;
  p.threads = 1;
  auto a = is_identically_zero(P("exp(x) - 1 - y"), c, p);
  p.threads = 8;
  auto b = is_identically_zero(P("exp(x) - 1 - y"), c, p);
  ASSERT_TRUE(a.witness && b.witness);
  EXPECT_EQ(a.witness->to_string(), b.witness->to_string());
}
