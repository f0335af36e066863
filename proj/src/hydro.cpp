#include "projclass/hydro.hpp"

#include "projclass/antiderivative.hpp"

namespace projclass {

namespace {

Expr half(const Expr& e) { return e * Expr(Rational(1, 2)); }

Frame coordinate_frame(const Context& ctx) {
  Frame f;
  f.vars = {ctx.variables.at(0), ctx.variables.at(1)};
  return f;
}

}  // namespace

HydroSystem2 HydroSystem2::from_velocities(const Context& ctx, const Expr& l1, const Expr& l2,
                                           std::optional<Frame> frame) {
  HydroSystem2 s;
  s.ctx = ctx;
  s.frame = frame ? *frame : coordinate_frame(ctx);
  s.lambda = std::array<Expr, 2>{l1, l2};
  if ((l1 - l2).is_zero()) throw CoincidentSpeeds("characteristic velocities coincide identically");
  SymbolicCalculus calc{s.frame};
  s.A = calc.d(l1, 1) / (l2 - l1);
  s.B = calc.d(l2, 0) / (l1 - l2);
  s.ctx.add_locus(l1 - l2);
  return s;
}

HydroSystem2 HydroSystem2::from_ab(const Context& ctx, const Expr& A, const Expr& B) {
  HydroSystem2 s;
  s.ctx = ctx;
  s.frame = coordinate_frame(ctx);
  s.A = A;
  s.B = B;
  return s;
}

HydroSystem2 HydroSystem2::elastic_medium(const Context& ctx, const Expr& G, const std::string& z) {
  Expr dG = substitute(differentiate(G, z), {{z, ctx.var(0) - ctx.var(1)}});
  Expr l = Expr(1) / dG;
  return from_velocities(ctx, l, -l);
}

Connection2D characteristic_connection(const HydroSystem2& sys, const ZeroTestPolicy& policy) {
  if (sys.lambda) {
    const auto& l = *sys.lambda;
    if (!is_identically_zero(l[0] - l[1], sys.ctx, policy).is_nonzero()) {
      throw CoincidentSpeeds("characteristic velocities coincide on the sampling box");
    }
  }
  auto v = are_identically_zero({sys.A, sys.B}, sys.ctx, policy);
  if (!v[0].is_nonzero() || !v[1].is_nonzero()) {
    throw DegenerateCharacteristic("A or B is not NonZero on the sampling box (A " + to_string(v[0].verdict) + ", B " +
                                   to_string(v[1].verdict) + ")");
  }
  Connection2D c(sys.ctx.with_loci({sys.A, sys.B}));
  c.frame = sys.frame;
  SymbolicCalculus calc = sys.calculus();
  const Expr& A = sys.A;
  const Expr& B = sys.B;
  c.set(0, 0, 0, calc.d(A, 0) / A - Expr(2) * B);
  c.set(1, 1, 1, calc.d(B, 1) / B - Expr(2) * A);
  c.set(0, 0, 1, -(half(calc.d(A, 1) / A) + A));
  c.set(1, 0, 1, -(half(calc.d(B, 0) / B) + B));
  return c;
}

KillingCount hamiltonian_count(const HydroSystem2& sys, const ZeroTestPolicy& policy) {
  return count_killing_forms(characteristic_connection(sys, policy), policy);
}

HamiltonianMetric killing_to_metric(const std::array<Expr, 2>& K, const HydroSystem2& sys,
                                    const ZeroTestPolicy& policy) {
  auto v = are_identically_zero({sys.A, sys.B, K[0], K[1]}, sys.ctx, policy);
  if (!v[0].is_nonzero() || !v[1].is_nonzero()) throw DomainError("A or B is not NonZero");
  if (!v[2].is_nonzero() || !v[3].is_nonzero()) throw DomainError("Killing form component is not NonZero");
  return {K[1] / sys.B, K[0] / sys.A};
}

std::array<Expr, 2> metric_to_killing(const HamiltonianMetric& m, const HydroSystem2& sys) {
  return {sys.A * m.f, sys.B * m.k};
}

std::array<Expr, 3> hamiltonian_residuals(const HamiltonianMetric& m, const HydroSystem2& sys) {
  SymbolicCalculus c = sys.calculus();
  const Expr& A = sys.A;
  const Expr& B = sys.B;
  return {c.d(m.k, 1) + Expr(2) * A * m.k, c.d(m.f, 0) + Expr(2) * B * m.f,
          (c.d(A, 1) + A * A) * m.f + (c.d(B, 0) + B * B) * m.k + half(A * c.d(m.f, 1)) + half(B * c.d(m.k, 0))};
}

bool DictionaryCheck::hamiltonian_holds() const {
  for (const auto& r : hamiltonian) {
    if (!r.is_zero()) return false;
  }
  return true;
}

bool DictionaryCheck::killing_holds() const {
  for (const auto& r : killing) {
    if (!r.is_zero()) return false;
  }
  return true;
}

DictionaryCheck dictionary_check(const HamiltonianMetric& m, const HydroSystem2& sys, const ZeroTestPolicy& policy) {
  Connection2D c = characteristic_connection(sys, policy);
  Tensor<Expr> k = killing_residual(c, metric_to_killing(m, sys));
  auto h = hamiltonian_residuals(m, sys);
  auto v = are_identically_zero({h[0], h[1], h[2], k(0, 0), k(0, 1), k(1, 1)}, c.ctx, policy);
  DictionaryCheck out;
  for (std::size_t i = 0; i < 3; ++i) {
    out.hamiltonian[i] = v[i];
    out.killing[i] = v[3 + i];
  }
  return out;
}

MetricH projective_metric_h(const HydroSystem2& sys, const ZeroTestPolicy& policy) {
  Expr ab = sys.A * sys.B;
  if (!is_identically_zero(ab, sys.ctx, policy).is_nonzero()) throw DomainError("AB is not NonZero");
  SymbolicCalculus c = sys.calculus();
  MetricH out;
  out.h = MetricCandidate{Expr(0), ab, Expr(0)};
  out.upsilon = {half(c.d(sys.B, 0) / sys.B) + sys.B, half(c.d(sys.A, 1) / sys.A) + sys.A};
  return out;
}

ProjectiveODE characteristic_ode(const HydroSystem2& sys) {
  SymbolicCalculus c = sys.calculus();
  Expr ab = sys.A * sys.B;
  Expr zx = c.d(ab, 0) / ab;
  Expr zy = c.d(ab, 1) / ab;
  return ProjectiveODE{sys.ctx, {Expr(0), zx, -zy, Expr(0)}};
}

Expr liouville_curvature(const HydroSystem2& sys) {
  SymbolicCalculus c = sys.calculus();
  Expr ab = sys.A * sys.B;
  return c.d(c.d(ab, 1) / ab, 0) / ab;
}

Connection2D levi_civita(const Context& ctx, const MetricCandidate& g, std::optional<Frame> frame) {
  Connection2D c(ctx);
  if (frame) c.frame = *frame;
  SymbolicCalculus calc = c.calculus();
  Expr det = g.det();
  std::array<std::array<Expr, 2>, 2> lo{{{g.E, g.F}, {g.F, g.G}}};
  std::array<std::array<Expr, 2>, 2> up{{{g.G / det, -g.F / det}, {-g.F / det, g.E / det}}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int d = b; d < 2; ++d) {
        Expr v(0);
        for (int e = 0; e < 2; ++e) {
          Expr s = calc.d(lo[e][d], b) + calc.d(lo[e][b], d) - calc.d(lo[b][d], e);
          v += up[a][e] * s;
        }
        c.set(a, b, d, half(v));
      }
  return c;
}

RiemannInvariants riemann_invariants_2(const Context& ctx, const std::array<std::array<Expr, 2>, 2>& v,
                                       const ZeroTestPolicy& policy) {
  const std::string& t1 = ctx.variables.at(0);
  const std::string& t2 = ctx.variables.at(1);
  auto z = are_identically_zero({v[0][1], v[1][0], v[0][0], v[1][1], v[1][0] - Expr(1)}, ctx, policy);
  if (z[0].is_zero() && z[1].is_zero()) {
    if (!is_identically_zero(v[0][0] - v[1][1], ctx, policy).is_nonzero()) {
      throw CoincidentSpeeds("diagonal velocity matrix has coincident eigenvalues");
    }
    return {{ctx.var(0), ctx.var(1)}, {v[0][0], v[1][1]}};
  }
  if (z[2].is_zero() && z[3].is_zero() && z[4].is_zero() && !depends_on(v[0][1], t1)) {
    if (!is_identically_zero(v[0][1], ctx, policy).is_nonzero()) {
      throw CoincidentSpeeds("two identical characteristic velocities");
    }
    Expr lam = sqrt(v[0][1]);
    auto L = antiderivative(lam, t2);
    if (!L) throw Unavailable("quadrature of the characteristic velocity leaves the expression class");
    return {{ctx.var(0) + *L, ctx.var(0) - *L}, {lam, -lam}};
  }
  throw Unavailable("velocity matrix is neither diagonal nor of symmetric-flow shape");
}

HydroSystem2 hydro_from_invariants(const Context& ctx, const RiemannInvariants& ri) {
  Frame fr = coordinate_frame(ctx);
  std::array<std::array<Expr, 2>, 2> J;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) J[i][k] = differentiate(ri.R[i], fr.vars[k]);
  Expr det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  std::array<std::array<Expr, 2>, 2> jinv;
  jinv[0][0] = J[1][1] / det;
  jinv[0][1] = -J[0][1] / det;
  jinv[1][0] = -J[1][0] / det;
  jinv[1][1] = J[0][0] / det;
  bool identity = jinv[0][0].is_one() && jinv[1][1].is_one() && jinv[0][1].is_zero() && jinv[1][0].is_zero();
  if (!identity) fr.jinv = jinv;
  HydroSystem2 s = HydroSystem2::from_velocities(ctx, ri.lambda[0], ri.lambda[1], fr);
  if (!identity) s.riemann = ri.R;
  return s;
}

}  // namespace projclass
