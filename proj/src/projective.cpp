#include "projclass/projective.hpp"

namespace projclass {

Connection2D::Connection2D() : Connection2D(Context({"X", "Y"})) {}

Connection2D::Connection2D(Context c) : ctx(std::move(c)) {
  if (ctx.variables.size() < 2) throw DomainError("a connection needs two coordinate variables");
  frame.vars = {ctx.variables[0], ctx.variables[1]};
  conn.g.fill(Expr(0));
  conn.volume = Expr(1);
}

Connection2D zoll_connection(const Context& ctx, const Expr& F, const Expr& H) {
  const std::string& xv = ctx.variables.at(0);
  Expr x = sym(xv), one(1);
  Expr dF = differentiate(F, xv), dH = differentiate(H, xv);
  Expr a1 = dF / (F - one) - Expr(2) * cos(x) / sin(x);
  Expr a2 = (dH * sin(x) * cos(x) - Expr(2) * H) / (cos(x) * (F - one));
  Expr a3 = -(H * H + one) * sin(x) * cos(x) / pow(F - one, 2);
  Connection2D c(ctx);
  c.set(0, 0, 0, a1);
  c.set(0, 0, 1, a2 / Expr(2));
  c.set(0, 1, 1, a3);
  return c;
}

Geometry<JetCalculus> Connection2D::geometry_at(const SamplePoint& p, int order) const {
  JetCalculus calc(frame, p, order);
  Connection<Jet> j;
  for (std::size_t i = 0; i < 8; ++i) j.g[i] = taylor(conn.g[i], p, frame.vars, order);
  j.volume = taylor(conn.volume, p, frame.vars, order);
  return Geometry<JetCalculus>(std::move(calc), std::move(j));
}

ProjectiveODE ode_from_connection(const Connection2D& c) { return ProjectiveODE{c.ctx, ode_coefficients(c.conn)}; }

Connection2D thomas_connection(const ProjectiveODE& ode) {
  Connection2D c(ode.ctx);
  const auto& A = ode.A;
  c.set(0, 0, 0, A[1] * Expr(Rational(1, 3)));
  c.set(1, 1, 1, A[2] * Expr(Rational(-1, 3)));
  c.set(0, 0, 1, A[2] * Expr(Rational(1, 3)));
  c.set(1, 0, 1, A[1] * Expr(Rational(-1, 3)));
  c.set(1, 0, 0, -A[0]);
  c.set(0, 1, 1, A[3]);
  return c;
}

Connection2D projective_change(const Connection2D& c, const std::array<Expr, 2>& upsilon) {
  Connection2D out = c;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int d = 0; d < 2; ++d) {
        Expr v = c.gamma(a, b, d);
        if (a == d) v += upsilon[b];
        if (a == b) v += upsilon[d];
        out.conn.gamma(a, b, d) = v;
      }
  return out;
}

CurvatureData curvature_data(const Connection2D& c) {
  Geometry<SymbolicCalculus> g = c.geometry();
  return CurvatureData{g.riemann(), g.ricci(), g.schouten(), g.skew(), g.beta(), g.theta(), g.cotton()};
}

std::array<Expr, 2> liouville_invariants(const ProjectiveODE& ode) {
  SymbolicCalculus calc;
  calc.frame.vars = {ode.ctx.variables.at(0), ode.ctx.variables.at(1)};
  return liouville(ode.A, calc);
}

Expr nu5(const Connection2D& c, const ZeroTestPolicy& policy) {
  Geometry<SymbolicCalculus> g = c.geometry();
  ZeroResult b = is_identically_zero(g.beta(), c.ctx, policy);
  if (!b.is_zero()) throw NonSpecialConnection("ν5 requires a connection with symmetric Ricci tensor (β = " + to_string(b.verdict) + ")");
  return g.nu5();
}

}  // namespace projclass
