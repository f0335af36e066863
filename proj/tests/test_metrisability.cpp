#include <gtest/gtest.h>

#include "projclass/hydro.hpp"
#include "support.hpp"

namespace projclass {
namespace {

using testing::all_zero;
using testing::RandomPoly;

Expr x() { return sym("x"); }
Expr y() { return sym("y"); }
Expr p() { return sym("p"); }
Expr q(long n, long d = 1) { return Expr(Rational(n, d)); }

std::vector<Expr> as_vector(const std::array<Expr, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

/// Painlevé context with symbolic parameters and y' = p.
Context painleve_context() {
  Context ctx({"x", "y"}, {"al", "be", "ga", "de"});
  ctx.add_locus(x() - Expr(1)).add_locus(y() - Expr(1)).add_locus(y() - x());
  return ctx;
}

Context with_p(const Context& ctx) {
  Context out = ctx;
  out.variables.push_back("p");
  return out;
}

ZeroTestPolicy painleve_six_box() {
  ZeroTestPolicy pol;
  pol.boxes["x"] = {Rational(3, 2), Rational(2)};
  pol.boxes["y"] = {Rational(5, 2), Rational(3)};
  return pol;
}

std::array<Expr, 4> zeros() { return {Expr(0), Expr(0), Expr(0), Expr(0)}; }

TEST(Residual, ZeroSigma) {
  RandomPoly gen(31);
  auto r = metrisability_residual(gen.ode(), SigmaCandidate{Expr(0), Expr(0), Expr(0)});
  for (const Expr& e : r) EXPECT_TRUE(e.is_zero());
}

TEST(Residual, PainleveThreeMetricFamily) {
  Context ctx = painleve_context();
  ProjectiveODE o = painleve_structure(ctx, 3, {sym("al"), Expr(0), sym("ga"), Expr(0)});
  SigmaCandidate s = metric_to_sigma(metric_piii(ctx, sym("al"), sym("ga"), Expr(1), Expr(2)), ctx);
  EXPECT_TRUE(all_zero(as_vector(metrisability_residual(o, s)), ctx));
}

TEST(Residual, PainleveOneDegenerateSolution) {
  Context ctx({"x", "y"});
  auto r = metrisability_residual(painleve_structure(ctx, 1, zeros()), SigmaCandidate{Expr(1), Expr(0), Expr(0)});
  for (const Expr& e : r) EXPECT_TRUE(e.is_zero());
}

TEST(PainleveCatalog, Coefficients) {
  Context ctx({"x", "y"}, {"al", "be", "ga", "de"});
  ProjectiveODE p1 = painleve_structure(ctx, 1, zeros());
  EXPECT_EQ(p1.A[0], Expr(6) * y() * y() + x());
  EXPECT_TRUE(p1.A[1].is_zero() && p1.A[2].is_zero() && p1.A[3].is_zero());
  ProjectiveODE p4 = painleve_structure(ctx, 4, {sym("al"), sym("be"), Expr(0), Expr(0)});
  EXPECT_TRUE(all_zero({p4.A[2] - Expr(1) / (Expr(2) * y()),
                        p4.A[0] - (q(3, 2) * pow(y(), 3) + Expr(4) * x() * y() * y() +
                                   Expr(2) * (x() * x() - sym("al")) * y() + sym("be") / y())},
                       painleve_context()));
  ProjectiveODE p6 = painleve_structure(ctx, 6, {sym("al"), sym("be"), sym("ga"), sym("de")});
  Expr one(1);
  EXPECT_TRUE(all_zero({p6.A[2] - q(1, 2) * (one / y() + one / (y() - one) + one / (y() - x())),
                        p6.A[1] + one / x() + one / (x() - one) + one / (y() - x()), p6.A[3]},
                       painleve_context()));
  EXPECT_THROW(painleve_structure(ctx, 7, zeros()), DomainError);
}

TEST(DegenerateBranch, PainleveCatalogMatchesPrintedSolutions) {
  Context ctx = painleve_context();
  std::array<Expr, 4> generic{sym("al"), sym("be"), sym("ga"), sym("de")};
  for (int which = 1; which <= 6; ++which) {
    ZeroTestPolicy pol = which == 6 ? painleve_six_box() : ZeroTestPolicy{};
    ProjectiveODE o = painleve_structure(ctx, which, generic);
    DegenerateBranch d = degenerate_branch(o, pol);
    EXPECT_TRUE(d.condition.is_zero() || is_identically_zero(d.condition, ctx, pol).is_zero()) << which;
    Expr reference = painleve_degenerate_psi1(ctx, which);
    auto r = metrisability_residual(o, SigmaCandidate{reference, Expr(0), Expr(0)});
    EXPECT_TRUE(all_zero(as_vector(r), ctx, pol)) << "P" << which;
    if (d.psi1) {
      Expr ratio = *d.psi1 / reference;
      EXPECT_TRUE(all_zero({differentiate(ratio, "x"), differentiate(ratio, "y")}, ctx, pol)) << "P" << which;
    }
  }
}

TEST(DegenerateBranch, ClosedFormsForPainleveThreeAndFive) {
  Context ctx = painleve_context();
  for (int which : {3, 5}) {
    DegenerateBranch d = degenerate_branch(painleve_structure(ctx, which, {sym("al"), sym("be"), sym("ga"), sym("de")}));
    EXPECT_EQ(d.status, "closed form") << which;
    ASSERT_TRUE(d.psi1.has_value());
  }
}

TEST(DegenerateBranch, ImpliesKillingForm) {
  Context ctx = painleve_context();
  const std::array<Expr, 4> params{q(1, 2), q(3, 2), q(2), q(-1, 3)};
  for (int which = 1; which <= 6; ++which) {
    ZeroTestPolicy pol = which == 6 ? painleve_six_box() : ZeroTestPolicy{};
    ProjectiveODE o = painleve_structure(ctx, which, params);
    EXPECT_NO_THROW(degenerate_branch(o, pol)) << which;
    EXPECT_GE(count_killing_forms(thomas_connection(o), pol).count, 1) << "P" << which;
  }
}

TEST(DegenerateBranch, ExponentialSolution) {
  Context ctx({"x", "y"});
  ProjectiveODE o{ctx, {Expr(0), Expr(0), Expr(1), Expr(0)}};
  DegenerateBranch d = degenerate_branch(o);
  EXPECT_TRUE(d.condition.is_zero());
  ASSERT_TRUE(d.psi1.has_value());
  EXPECT_EQ(*d.psi1, exp(q(4, 3) * y()));
  EXPECT_TRUE(all_zero(as_vector(metrisability_residual(o, SigmaCandidate{*d.psi1, Expr(0), Expr(0)})), ctx));
}

TEST(DegenerateBranch, NoSolutionWhenConditionFails) {
  Context ctx({"x", "y"});
  ProjectiveODE o{ctx, {x() * y(), y() * y(), x(), Expr(0)}};
  EXPECT_THROW(degenerate_branch(o), DomainError);
  EXPECT_TRUE(is_identically_zero(differentiate(o.A[1], "y") - Expr(2) * differentiate(o.A[2], "x"), ctx).is_nonzero());
}

TEST(MetricDictionary, IdentityAndDegenerate) {
  Context ctx({"x", "y"});
  MetricCandidate g = sigma_to_metric(SigmaCandidate{Expr(1), Expr(0), Expr(1)}, ctx);
  EXPECT_EQ(g.E, Expr(1));
  EXPECT_TRUE(g.F.is_zero());
  EXPECT_EQ(g.G, Expr(1));
  EXPECT_THROW(sigma_to_metric(SigmaCandidate{x(), y(), y() * y() / x()}, ctx), DomainError);
  EXPECT_THROW(metric_to_sigma(MetricCandidate{Expr(1), Expr(1), Expr(1)}, ctx), DomainError);
}

TEST(MetricDictionary, PainleveFiveRoundTrip) {
  Context ctx = painleve_context();
  MetricCandidate g = metric_pv(ctx, Expr(1), Expr(1), Expr(1), Expr(1));
  MetricCandidate back = sigma_to_metric(metric_to_sigma(g, ctx), ctx);
  EXPECT_TRUE(all_zero({back.E - g.E, back.F - g.F, back.G - g.G}, ctx));
  ProjectiveODE o = painleve_structure(ctx, 5, {Expr(1), Expr(1), Expr(0), Expr(0)});
  EXPECT_TRUE(all_zero(as_vector(metrisability_residual(o, metric_to_sigma(g, ctx))), ctx));
}

TEST(FirstIntegral, EqualSigmasGiveOne) {
  SigmaCandidate s{x(), y(), Expr(2)};
  QuadraticIntegral I = ratio_first_integral(s, s);
  EXPECT_EQ(I.value(), Expr(1));
}

TEST(FirstIntegral, ProjectivelyEquivalentPair) {
  Context ctx({"x", "y"});
  ZeroTestPolicy pol;
  pol.boxes["x"] = {Rational(3), Rational(4)};
  pol.boxes["y"] = {Rational(1), Rational(2)};
  Expr h = Expr(-1) / (Expr(2) * (x() - y()));
  ProjectiveODE o{ctx, {h, h, h, h}};
  MetricCandidate h1{x() - y(), Expr(0), x() - y()};
  MetricCandidate h2{(Expr(1) / y() - Expr(1) / x()) / x(), Expr(0), (Expr(1) / y() - Expr(1) / x()) / y()};
  SigmaCandidate s1 = metric_to_sigma(h1, ctx, pol), s2 = metric_to_sigma(h2, ctx, pol);
  EXPECT_TRUE(all_zero(as_vector(metrisability_residual(o, s1)), ctx, pol));
  EXPECT_TRUE(all_zero(as_vector(metrisability_residual(o, s2)), ctx, pol));
  QuadraticIntegral I = ratio_first_integral(s2, s1);
  Expr printed = (y() + x() * p() * p()) / (Expr(1) + p() * p());
  EXPECT_TRUE(all_zero({I.value() - printed, conservation_residual(printed, o)}, with_p(ctx), pol));
}

TEST(FirstIntegral, PainleveThreeFamilyRatio) {
  Context ctx = painleve_context();
  ProjectiveODE o = painleve_structure(ctx, 3, {sym("al"), Expr(0), sym("ga"), Expr(0)});
  SigmaCandidate a = metric_to_sigma(metric_piii(ctx, sym("al"), sym("ga"), Expr(1), Expr(0)), ctx);
  SigmaCandidate b = metric_to_sigma(metric_piii(ctx, sym("al"), sym("ga"), Expr(1), Expr(1)), ctx);
  QuadraticIntegral I = ratio_first_integral(a, b);
  EXPECT_TRUE(all_zero({conservation_residual(I.value(), o)}, with_p(ctx)));
}

TEST(FirstIntegral, PrintedPainleveIntegrals) {
  Context ctx = painleve_context();
  Expr al = sym("al"), be = sym("be"), ga = sym("ga");
  ProjectiveODE p3 = painleve_structure(ctx, 3, {al, Expr(0), ga, Expr(0)});
  Expr r = p() / y();
  Expr I3 = x() * x() * r * r + Expr(2) * x() * r - Expr(2) * al * x() * y() - ga * x() * x() * y() * y();
  ProjectiveODE p5 = painleve_structure(ctx, 5, {al, be, Expr(0), Expr(0)});
  Expr s = x() * p() / (y() - Expr(1));
  Expr I5 = s * s / y() + Expr(2) * be / y() - Expr(2) * al * y();
  EXPECT_TRUE(all_zero({conservation_residual(I3, p3), conservation_residual(I5, p5)}, with_p(ctx)));
  EXPECT_TRUE(conservation_residual(Expr(7), p3).is_zero());
}

TEST(FirstIntegral, KillingVectorIntegrals) {
  Context ctx = painleve_context();
  Expr al = sym("al"), be = sym("be"), ga = sym("ga");
  ProjectiveODE p3 = painleve_structure(ctx, 3, {al, Expr(0), ga, Expr(0)});
  QuadraticIntegral i3 = killing_vector_first_integral(metric_piii(ctx, al, ga, Expr(1), Expr(2)), {x(), -y()});
  ProjectiveODE p5 = painleve_structure(ctx, 5, {al, be, Expr(0), Expr(0)});
  QuadraticIntegral i5 = killing_vector_first_integral(metric_pv(ctx, al, be, Expr(1), Expr(1)), {x(), Expr(0)});
  EXPECT_TRUE(all_zero({conservation_residual(i3.value(), p3), conservation_residual(i5.value(), p5)}, with_p(ctx)));
  ProjectiveODE flat{ctx, zeros()};
  QuadraticIntegral i0 = killing_vector_first_integral(MetricCandidate{Expr(1), Expr(0), Expr(1)}, {Expr(1), Expr(0)});
  EXPECT_EQ(i0.value(), Expr(1) + p() * p());
  EXPECT_TRUE(conservation_residual(i0.value(), flat).is_zero());
}

TEST(FirstIntegral, RatiosOfMetrisabilitySolutionsAreConserved) {
  Context ctx = painleve_context();
  Expr al = sym("al"), be = sym("be"), ga = sym("ga");
  ProjectiveODE p3 = painleve_structure(ctx, 3, {al, Expr(0), ga, Expr(0)});
  SigmaCandidate deg{painleve_degenerate_psi1(ctx, 3), Expr(0), Expr(0)};
  SigmaCandidate met = metric_to_sigma(metric_piii(ctx, al, ga, Expr(2), Expr(1)), ctx);
  ProjectiveODE p5 = painleve_structure(ctx, 5, {al, be, Expr(0), Expr(0)});
  SigmaCandidate deg5{painleve_degenerate_psi1(ctx, 5), Expr(0), Expr(0)};
  SigmaCandidate met5 = metric_to_sigma(metric_pv(ctx, al, be, Expr(1), Expr(2)), ctx);
  EXPECT_TRUE(all_zero({conservation_residual(ratio_first_integral(deg, met).value(), p3),
                        conservation_residual(ratio_first_integral(deg5, met5).value(), p5)},
                       with_p(ctx)));
}

TEST(Invariance, LeviCivitaSigmaUnderProjectiveChange) {
  RandomPoly gen(32);
  Context ctx({"X", "Y"});
  for (int i = 0; i < 5; ++i) {
    Expr E = Expr(10) + gen.positive(1), G = Expr(10) + gen.positive(1), F = gen.positive(1) / Expr(4);
    MetricCandidate g{E, F, G};
    Connection2D lc = levi_civita(ctx, g);
    Expr det = g.det();
    std::array<Expr, 3> sigma{G / det, -F / det, E / det};
    Tensor<Expr> op = metrisability_operator(lc, sigma);
    EXPECT_TRUE(all_zero(op.entries(), ctx)) << i;

    Expr f = gen.poly(2) / Expr(8);
    Connection2D changed = projective_change(lc, {differentiate(f, "X"), differentiate(f, "Y")});
    Expr w = exp(Expr(-2) * f);
    Tensor<Expr> op2 = metrisability_operator(changed, {w * sigma[0], w * sigma[1], w * sigma[2]});
    EXPECT_TRUE(all_zero(op2.entries(), ctx)) << i;

    ProjectiveODE o = ode_from_connection(changed);
    EXPECT_TRUE(all_zero(as_vector(metrisability_residual(o, metric_to_sigma(g, ctx))), ctx)) << i;
  }
}

std::vector<std::array<int, 6>> constant_tuples() { return {{1, 2, 1, 3, 1, 2}, {2, 1, 3, 1, 2, 1}, {3, 3, 1, 2, 2, 3}}; }

TEST(FlatFamilies, PainleveThree) {
  Context ctx({"x", "y"});
  ProjectiveODE o = painleve_structure(ctx, 3, zeros());
  Expr lx = ln(x()), ly = ln(y());
  for (const auto& C : constant_tuples()) {
    auto c = [&](int i) { return Expr(C[static_cast<std::size_t>(i - 1)]); };
    Expr P = Expr(3) * c(6) - Expr(2) * c(5) * ly + Expr(3) * c(3) * ly * ly;
    Expr Q = Expr(6) * c(4) - Expr(3) * c(2) * ly + Expr(2) * lx * (c(5) - Expr(3) * c(3) * ly);
    Expr R = c(1) + c(2) * lx + c(3) * lx * lx;
    Expr D = Expr(-12) * R * P + Q * Q;
    Expr w = pow(D, -2);
    MetricCandidate g{Expr(432) * P * w / (x() * x()), Expr(216) * Q * w / (x() * y()), Expr(1296) * R * w / (y() * y())};
    EXPECT_TRUE(all_zero(as_vector(metrisability_residual(o, metric_to_sigma(g, ctx))), ctx));
  }
}

TEST(FlatFamilies, PainleveFive) {
  Context ctx({"x", "y"});
  ZeroTestPolicy pol;
  pol.boxes["y"] = {Rational(1, 9), Rational(1, 2)};
  ProjectiveODE o = painleve_structure(ctx, 5, zeros());
  Expr lx = ln(x());
  Expr sy = sqrt(y());
  Expr at = ln((Expr(1) + sy) / (Expr(1) - sy)) / Expr(2);
  Expr ym = y() - Expr(1);
  for (const auto& C : constant_tuples()) {
    auto c = [&](int i) { return Expr(C[static_cast<std::size_t>(i - 1)]); };
    Expr D = Expr(9) * (c(1) * c(1) - c(3) * c(6)) + Expr(9) * (c(4) * c(4) - Expr(4) * c(3) * c(5)) * at * at +
             Expr(6) * at * (Expr(2) * c(2) * c(3) - Expr(3) * c(1) * c(4) + (c(2) * c(4) - Expr(6) * c(1) * c(5)) * lx) +
             lx * (Expr(6) * c(1) * c(2) - Expr(9) * c(4) * c(6) + (c(2) * c(2) - Expr(9) * c(5) * c(6)) * lx);
    Expr w = Expr(27) * pow(D, -2);
    Expr E = (Expr(3) * c(6) - Expr(4) * c(2) * at + Expr(12) * c(5) * at * at) / (x() * x());
    Expr F = -(Expr(3) * c(1) + c(2) * lx - Expr(3) * at * (c(4) + Expr(2) * c(5) * lx)) / (x() * ym * sy);
    Expr G = Expr(3) * (c(3) + lx * (c(4) + c(5) * lx)) / (ym * ym * y());
    MetricCandidate g{w * E, w * F, w * G};
    EXPECT_TRUE(all_zero(as_vector(metrisability_residual(o, metric_to_sigma(g, ctx, pol))), ctx, pol));
  }
}

}  // namespace
}  // namespace projclass
