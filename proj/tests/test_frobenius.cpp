#include <gtest/gtest.h>

#include "projclass/frobenius.hpp"
#include "support.hpp"

namespace projclass {
namespace {

using testing::all_zero;

Expr t1() { return sym("t1"); }
Expr t2() { return sym("t2"); }
Expr q(long n, long d = 1) { return Expr(Rational(n, d)); }

std::vector<Prepotential2D> catalog() {
  return {Prepotential2D::power(4),       Prepotential2D::power(5),    Prepotential2D::power(Rational(5, 2)),
          Prepotential2D::power_log(),    Prepotential2D::log(),       Prepotential2D::exponential(),
          Prepotential2D::trivial(),      Prepotential2D::cubic()};
}

std::vector<Expr> flatten(const Tensor<Expr>& t) { return t.entries(); }

TEST(Catalog, PrintedPrepotentials) {
  Expr base = q(1, 2) * t1() * t1() * t2();
  Expr K = sym("K");
  EXPECT_EQ(Prepotential2D::power(4, K).prepotential(), base + K * pow(t2(), 4));
  EXPECT_EQ(Prepotential2D::power_log(K).prepotential(), base + K * t2() * t2() * ln(t2()));
  EXPECT_EQ(Prepotential2D::log(K).prepotential(), base + K * ln(t2()));
  EXPECT_EQ(Prepotential2D::exponential(sym("r"), K).prepotential(), base + K * exp(Expr(2) * t2() / sym("r")));
  EXPECT_EQ(Prepotential2D::trivial().prepotential(), base);
  EXPECT_EQ(Prepotential2D::cubic(sym("c"), K).prepotential(),
            base + sym("c") / Expr(6) * pow(t1(), 3) + K / Expr(6) * pow(t2(), 3));
  EXPECT_EQ(to_string(CatalogKind::PowerLog), "power-log");
  EXPECT_THROW(Prepotential2D::free(pow(t2(), 4)).euler(), DomainError);
}

TEST(Catalog, EtaIsFirstRowOfStructureConstants) {
  for (const auto& F : catalog()) {
    FrobeniusData d = frobenius_data(F);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        EXPECT_EQ(d.eta_lo[a][b], d.c(0, a, b)) << to_string(F.kind);
        EXPECT_TRUE(d.eta_lo[a][b].is_number()) << to_string(F.kind);
      }
  }
}

TEST(Wdvv, CatalogSatisfiesBothEquations) {
  for (const auto& F : catalog()) {
    WdvvResidual w = wdvv_residual(F);
    Context ctx = F.context();
    EXPECT_TRUE(all_zero(flatten(w.associativity), ctx)) << to_string(F.kind);
    ASSERT_TRUE(w.euler.has_value());
    EXPECT_TRUE(all_zero(flatten(*w.euler), ctx)) << to_string(F.kind);
  }
  Prepotential2D sym_k = Prepotential2D::exponential(sym("r"), sym("K"));
  EXPECT_TRUE(all_zero(flatten(*wdvv_residual(sym_k).euler), sym_k.context()));
}

TEST(Wdvv, FreePrepotentialIsAssociative) {
  Prepotential2D F = Prepotential2D::free(exp(t2()) * t2() + pow(t2(), 7));
  WdvvResidual w = wdvv_residual(F);
  EXPECT_TRUE(all_zero(flatten(w.associativity), F.context()));
  EXPECT_FALSE(w.euler.has_value());
}

TEST(Wdvv, WrongChargeIsDetected) {
  Prepotential2D F = Prepotential2D::power(4);
  F.d2 = Rational(1, 3);
  WdvvResidual w = wdvv_residual(F);
  ASSERT_TRUE(w.euler.has_value());
  EXPECT_FALSE(all_zero(flatten(*w.euler), F.context()));
}

TEST(PrimaryFlow, VelocityMatrix) {
  Matrix2 v = primary_flow_matrix(Prepotential2D::power(4));
  EXPECT_TRUE(v[0][0].is_zero());
  EXPECT_EQ(v[0][1], Expr(24) * t2());
  EXPECT_EQ(v[1][0], Expr(1));
  EXPECT_TRUE(v[1][1].is_zero());
}

TEST(PrimaryFlow, Velocities) {
  HydroSystem2 s = primary_flow(Prepotential2D::power(4));
  ASSERT_TRUE(s.lambda.has_value());
  Expr l = sqrt(Expr(24) * t2());
  const auto& lam = *s.lambda;
  EXPECT_TRUE(all_zero({lam[0] * lam[0] - l * l, lam[0] + lam[1]}, s.ctx));
  HydroSystem2 c = primary_flow(Prepotential2D::free(pow(t2(), 3) / Expr(3)));
  ASSERT_TRUE(c.lambda.has_value());
  EXPECT_TRUE(all_zero({(*c.lambda)[0] * (*c.lambda)[0] - Expr(2), (*c.lambda)[0] + (*c.lambda)[1]}, c.ctx));
}

TEST(PrimaryFlow, RejectsDegenerateEntries) {
  EXPECT_THROW(primary_flow(Prepotential2D::trivial()), CoincidentSpeeds);
  EXPECT_THROW(primary_flow(Prepotential2D::cubic()), DomainError);
}

TEST(PrimaryFlow, Trihamiltonian) {
  const Prepotential2D flows[] = {Prepotential2D::power(4), Prepotential2D::power(5), Prepotential2D::power_log(),
                                  Prepotential2D::log(), Prepotential2D::exponential()};
  for (const auto& F : flows) {
    EXPECT_EQ(hamiltonian_count(primary_flow(F)).count, 3) << to_string(F.kind) << " " << F.k.get_str();
  }
}

TEST(Trimetric, MembersAreKillingForms) {
  const std::array<Expr, 3> choices[] = {{Expr(1), Expr(0), Expr(0)}, {Expr(0), Expr(1), Expr(0)},
                                         {Expr(0), Expr(0), Expr(1)}, {Expr(2), Expr(-1), Expr(3)}};
  for (const auto& F : {Prepotential2D::power(4), Prepotential2D::log()}) {
    HydroSystem2 s = primary_flow(F);
    Connection2D conn = characteristic_connection(s);
    for (const auto& C : choices) {
      HamiltonianMetric m = trimetric_family(s, C[0], C[1], C[2]);
      auto K = metric_to_killing(m, s);
      auto r = killing_residual(conn, K);
      EXPECT_TRUE(all_zero({r(0, 0), r(0, 1), r(1, 1)}, s.ctx)) << to_string(F.kind);
      auto h = hamiltonian_residuals(m, s);
      EXPECT_TRUE(all_zero({h[0], h[1], h[2]}, s.ctx)) << to_string(F.kind);
    }
  }
}

TEST(ThirdMetric, WitnessVanishesForPowerEntries) {
  for (const auto& F : {Prepotential2D::power(4), Prepotential2D::power(5), Prepotential2D::power_log(),
                        Prepotential2D::log(), Prepotential2D::exponential()}) {
    EXPECT_TRUE(is_identically_zero(third_flatness_witness(F), F.context()).is_zero()) << to_string(F.kind);
  }
  Prepotential2D no_k = Prepotential2D::cubic(sym("c"), Expr(0));
  EXPECT_TRUE(is_identically_zero(third_flatness_witness(no_k), no_k.context()).is_zero());
}

TEST(ThirdMetric, CubicEntryWitnessWithInverseEtaRaising) {
  Prepotential2D F = Prepotential2D::cubic(sym("c"), sym("K"));
  EXPECT_TRUE(is_identically_zero(third_flatness_witness(F), F.context()).is_zero());
}

TEST(ThirdMetric, TildeConnectionIsLeviCivitaOfH) {
  for (const auto& F : catalog()) {
    FrobeniusData d = frobenius_data(F);
    Tensor<Expr> lc = contravariant_connection(d.h_up, {"t1", "t2"});
    EXPECT_TRUE(all_zero(flatten(lc - d.gamma_h), d.ctx)) << to_string(F.kind);
  }
}

TEST(ThirdMetric, IntersectionFormConnection) {
  for (const auto& F : catalog()) {
    FrobeniusData d = frobenius_data(F);
    Tensor<Expr> lc = contravariant_connection(d.g_up, {"t1", "t2"});
    EXPECT_TRUE(all_zero(flatten(lc - d.gamma_g), d.ctx)) << to_string(F.kind);
  }
}

TEST(FlatPencil, LinearInLambda) {
  for (const auto& F : {Prepotential2D::power(4), Prepotential2D::exponential(), Prepotential2D::log()}) {
    FrobeniusData d = frobenius_data(F);
    for (const Rational& lam : {Rational(1, 2), Rational(2), Rational(-3)}) {
      EXPECT_TRUE(all_zero(flat_pencil_residual(d, lam), d.ctx)) << to_string(F.kind);
    }
  }
}

}  // namespace
}  // namespace projclass
