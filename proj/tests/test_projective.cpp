#include <gtest/gtest.h>

#include "projclass/metrisability.hpp"
#include "support.hpp"

namespace projclass {
namespace {

using testing::all_zero;
using testing::hydro_connection;
using testing::RandomPoly;

Expr X() { return sym("X"); }
Expr Y() { return sym("Y"); }

bool same(const Expr& a, const Expr& b) { return exact_rational_zero(a - b).value_or(false); }

Context painleve_context() { return Context({"x", "y"}, {"al", "be", "ga", "de"}); }
std::array<Expr, 4> symbolic_params() { return {sym("al"), sym("be"), sym("ga"), sym("de")}; }

TEST(OdeDictionary, FlatConnection) {
  ProjectiveODE o = ode_from_connection(Connection2D());
  for (const Expr& a : o.A) EXPECT_TRUE(a.is_zero());
  Connection2D t = thomas_connection(o);
  for (const Expr& g : t.conn.g) EXPECT_TRUE(g.is_zero());
}

TEST(OdeDictionary, ClassTwoNormalForm) {
  Context ctx({"X", "Y"});
  Expr P = X() * Y() + Y(), Q = Expr(2) + X() * Y() * Y();
  ProjectiveODE o = ode_from_connection(normal_form_rank2(ctx, 0, P, Q).connection);
  EXPECT_TRUE(same(o.A[0], -differentiate(P, "X") / Q));
  EXPECT_TRUE(same(o.A[1], -(differentiate(P, "Y") + differentiate(Q, "X")) / Q));
  EXPECT_TRUE(same(o.A[2], -differentiate(Q, "Y") / Q));
  EXPECT_TRUE(o.A[3].is_zero());
}

TEST(OdeDictionary, HydroConnectionGivesLnABOde) {
  Context ctx({"X", "Y"});
  Expr A = X() + Expr(2) * Y(), B = Expr(1) + X() * Y();
  ProjectiveODE o = ode_from_connection(hydro_connection(A, B));
  Expr Z = ln(A * B);
  EXPECT_TRUE(all_zero({o.A[0], o.A[1] - differentiate(Z, "X"), o.A[2] + differentiate(Z, "Y"), o.A[3]}, ctx));
  ProjectiveODE direct = characteristic_ode(HydroSystem2::from_ab(ctx, A, B));
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(all_zero({o.A[i] - direct.A[i]}, ctx)) << i;
}

TEST(Thomas, PainleveOneHasSingleSymbol) {
  Context ctx({"x", "y"});
  Connection2D c = thomas_connection(painleve_structure(ctx, 1, {Expr(0), Expr(0), Expr(0), Expr(0)}));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int d = 0; d < 2; ++d) {
        if (a == 1 && b == 0 && d == 0) {
          EXPECT_TRUE(same(c.gamma(a, b, d), -(Expr(6) * sym("y") * sym("y") + sym("x"))));
        } else {
          EXPECT_TRUE(c.gamma(a, b, d).is_zero());
        }
      }
}

TEST(Thomas, RoundTripAndTraceFree) {
  RandomPoly gen(21);
  for (int i = 0; i < 50; ++i) {
    ProjectiveODE o = gen.ode(2);
    Connection2D c = thomas_connection(o);
    ProjectiveODE back = ode_from_connection(c);
    for (int k = 0; k < 4; ++k) EXPECT_TRUE(same(back.A[k], o.A[k])) << i;
    for (int a = 0; a < 2; ++a) EXPECT_TRUE((c.gamma(0, 0, a) + c.gamma(1, 1, a)).is_zero()) << i;
  }
}

TEST(ProjectiveChange, ZeroIsIdentity) {
  RandomPoly gen(22);
  Connection2D c = gen.connection();
  Connection2D d = projective_change(c, {Expr(0), Expr(0)});
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(c.conn.g[i], d.conn.g[i]);
}

TEST(ProjectiveChange, OdeCoefficientsAreInvariant) {
  RandomPoly gen(23);
  for (int i = 0; i < 50; ++i) {
    Connection2D c = gen.connection(2);
    Connection2D d = projective_change(c, {gen.poly(2), gen.poly(2)});
    ProjectiveODE a = ode_from_connection(c), b = ode_from_connection(d);
    for (int k = 0; k < 4; ++k) EXPECT_TRUE(same(a.A[k], b.A[k])) << i << " A" << k;
  }
}

TEST(Curvature, FlatConnectionIsFlat) {
  CurvatureData d = curvature_data(Connection2D());
  for (const Expr& e : d.riemann.entries()) EXPECT_TRUE(e.is_zero());
  EXPECT_TRUE(d.beta.is_zero());
  for (const Expr& e : d.cotton.entries()) EXPECT_TRUE(e.is_zero());
}

TEST(Curvature, DecompositionReassemblesRiemann) {
  RandomPoly gen(24);
  for (int i = 0; i < 10; ++i) {
    Connection2D c = gen.connection(2);
    CurvatureData d = curvature_data(c);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int cc = 0; cc < 2; ++cc)
          for (int e = 0; e < 2; ++e) {
            Expr rebuilt(0);
            if (a == cc) rebuilt += d.schouten(b, e);
            if (b == cc) rebuilt -= d.schouten(a, e);
            if (e == cc) rebuilt += d.skew(a, b);
            EXPECT_TRUE(same(d.riemann(a, b, cc, e), rebuilt)) << i;
          }
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) EXPECT_TRUE(same(d.skew(a, b), d.schouten(b, a) - d.schouten(a, b)));
  }
}

TEST(Curvature, ExampleBetas) {
  Context ctx({"X", "Y"});
  EXPECT_TRUE(is_identically_zero(curvature_data(hydro_connection(Expr(Rational(-1, 2)), Expr(Rational(1, 2)))).beta, ctx)
                  .is_zero());
  EXPECT_TRUE(is_identically_zero(curvature_data(hydro_connection(X() + Y(), X() + Y())).beta, ctx).is_zero());
  for (int c : {2, 3, -2}) {
    Expr cc(c);
    Expr beta = curvature_data(hydro_connection(cc * X() + Y(), X() + cc * Y())).beta;
    Expr oracle = -cc * (cc * cc - Expr(1)) * (X() * X() - Y() * Y()) /
                  (pow(X() + cc * Y(), 2) * pow(cc * X() + Y(), 2));
    EXPECT_TRUE(is_identically_zero(beta, ctx).is_nonzero()) << c;
    EXPECT_TRUE(same(beta, oracle)) << c;
  }
}

TEST(Liouville, Examples) {
  Context ctx({"x", "y"});
  auto zero = liouville_invariants(ProjectiveODE{ctx, {Expr(0), Expr(0), Expr(0), Expr(0)}});
  EXPECT_TRUE(zero[0].is_zero() && zero[1].is_zero());
  auto p1 = liouville_invariants(painleve_structure(ctx, 1, {Expr(0), Expr(0), Expr(0), Expr(0)}));
  EXPECT_EQ(p1[0], Expr(-12));
  EXPECT_TRUE(p1[1].is_zero());
  auto p6 = liouville_invariants(painleve_structure(ctx, 6, {Expr(0), Expr(0), Expr(0), Expr(Rational(1, 2))}));
  Context box = ctx;
  box.add_locus(sym("x") - Expr(1)).add_locus(sym("y") - Expr(1)).add_locus(sym("y") - sym("x"));
  EXPECT_TRUE(all_zero({p6[0], p6[1]}, box));
}

TEST(Liouville, FlatExactlyWhenThreeKillingForms) {
  const std::pair<Connection2D, bool> catalog[] = {
      {hydro_connection(Expr(Rational(-1, 2)), Expr(Rational(1, 2))), true},
      {hydro_connection(Y(), X()), true},
      {hydro_connection(X() + Y(), X() + Y()), false},
      {hydro_connection(Expr(3) * X() + Y(), X() + Expr(3) * Y()), false},
  };
  for (const auto& [c, flat] : catalog) {
    auto L = liouville_invariants(ode_from_connection(c));
    bool zero = all_zero({L[0], L[1]}, c.ctx);
    EXPECT_EQ(zero, flat);
    EXPECT_EQ(count_killing_forms(c).count == 3, flat);
  }
}

TEST(Nu5, FlatIsZero) { EXPECT_TRUE(nu5(Connection2D()).is_zero()); }

TEST(Nu5, MatchesOracleValues) {
  Context ctx({"x", "y"});
  Expr x = sym("x"), y = sym("y");
  Expr v = nu5(thomas_connection(ProjectiveODE{ctx, {x * y, y * y, x, Expr(0)}}));
  const std::tuple<Rational, Rational, Rational> points[] = {
      {1, 1, Rational(-16, 27)}, {2, 1, Rational(832, 27)}, {Rational(3, 2), Rational(5, 2), Rational(-24899, 144)}};
  for (const auto& [px, py, expected] : points) {
    Expr at = substitute(v, {{"x", Expr(px)}, {"y", Expr(py)}});
    ASSERT_TRUE(at.is_number());
    EXPECT_EQ(at.number(), expected);
  }
}

TEST(Nu5, VanishesForPainleve) {
  Context ctx = painleve_context();
  ctx.add_locus(sym("x") - Expr(1)).add_locus(sym("y") - Expr(1)).add_locus(sym("y") - sym("x"));
  for (int which = 1; which <= 6; ++which) {
    Expr v = nu5(thomas_connection(painleve_structure(ctx, which, symbolic_params())));
    EXPECT_TRUE(is_identically_zero(v, ctx).is_zero()) << "P" << which;
  }
}

TEST(Nu5, RequiresSpecialConnection) {
  EXPECT_THROW(nu5(hydro_connection(Expr(2) * X() + Y(), X() + Expr(2) * Y())), NonSpecialConnection);
}

}  // namespace
}  // namespace projclass
