#include "projclass/metrisability.hpp"

#include "projclass/antiderivative.hpp"

namespace projclass {

namespace {

Expr q(long n, long d = 1) { return Expr(Rational(n, d)); }

const std::string& xname(const Context& ctx) { return ctx.variables.at(0); }
const std::string& yname(const Context& ctx) { return ctx.variables.at(1); }

}  // namespace

std::array<Expr, 4> metrisability_residual(const ProjectiveODE& ode, const SigmaCandidate& s) {
  const std::string& x = xname(ode.ctx);
  const std::string& y = yname(ode.ctx);
  const auto& A = ode.A;
  auto dx = [&](const Expr& e) { return differentiate(e, x); };
  auto dy = [&](const Expr& e) { return differentiate(e, y); };
  return {dx(s.psi1) - (q(2, 3) * A[1] * s.psi1 - q(2) * A[0] * s.psi2),
          dy(s.psi3) - (q(2) * A[3] * s.psi2 - q(2, 3) * A[2] * s.psi3),
          dy(s.psi1) + q(2) * dx(s.psi2) - (q(4, 3) * A[2] * s.psi1 - q(2, 3) * A[1] * s.psi2 - q(2) * A[0] * s.psi3),
          dx(s.psi3) + q(2) * dy(s.psi2) - (q(2) * A[3] * s.psi1 - q(4, 3) * A[1] * s.psi3 + q(2, 3) * A[2] * s.psi2)};
}

DegenerateBranch degenerate_branch(const ProjectiveODE& ode, const ZeroTestPolicy& policy) {
  const std::string& x = xname(ode.ctx);
  const std::string& y = yname(ode.ctx);
  DegenerateBranch out;
  out.condition = differentiate(ode.A[1], y) - q(2) * differentiate(ode.A[2], x);
  auto v = are_identically_zero({out.condition, ode.A[3]}, ode.ctx, policy);
  if (!v[0].is_zero()) throw DomainError("degenerate branch condition is " + to_string(v[0].verdict));
  if (!v[1].is_zero()) throw DomainError("degenerate branch requires A3 = 0, found " + to_string(v[1].verdict));
  out.status = "closed form unavailable";
  auto fx = antiderivative(q(2, 3) * ode.A[1], x);
  if (!fx) return out;
  Expr rest = q(4, 3) * ode.A[2] - differentiate(*fx, y);
  if (!is_identically_zero(differentiate(rest, x), ode.ctx, policy).is_zero()) return out;
  auto fy = antiderivative(rest, y);
  if (!fy) return out;
  Expr psi1 = exp(*fx + *fy);
  auto r = metrisability_residual(ode, SigmaCandidate{psi1, Expr(0), Expr(0)});
  for (const ZeroResult& z : are_identically_zero({r[0], r[1], r[2], r[3]}, ode.ctx, policy)) {
    if (!z.is_zero()) return out;
  }
  out.psi1 = psi1;
  out.status = "closed form";
  return out;
}

MetricCandidate sigma_to_metric(const SigmaCandidate& s, const Context& ctx, const ZeroTestPolicy& policy) {
  Expr d = s.delta();
  if (!is_identically_zero(d, ctx, policy).is_nonzero()) throw DomainError("σ is degenerate (Δ not NonZero)");
  Expr d2 = d * d;
  return {s.psi1 / d2, s.psi2 / d2, s.psi3 / d2};
}

SigmaCandidate metric_to_sigma(const MetricCandidate& g, const Context& ctx, const ZeroTestPolicy& policy) {
  Expr d = g.det();
  if (!is_identically_zero(d, ctx, policy).is_nonzero()) throw DomainError("metric is degenerate (det g not NonZero)");
  Expr w = pow(d, Rational(-2, 3));
  return {g.E * w, g.F * w, g.G * w};
}

QuadraticIntegral ratio_first_integral(const SigmaCandidate& s1, const SigmaCandidate& s2, const std::string& p) {
  Expr P = sym(p);
  return {s1.psi1 + q(2) * s1.psi2 * P + s1.psi3 * P * P, s2.psi1 + q(2) * s2.psi2 * P + s2.psi3 * P * P};
}

Expr conservation_residual(const Expr& I, const ProjectiveODE& ode, const std::string& p) {
  Expr P = sym(p);
  const auto& A = ode.A;
  Expr lam = A[3] * P * P * P + A[2] * P * P + A[1] * P + A[0];
  return differentiate(I, xname(ode.ctx)) + P * differentiate(I, yname(ode.ctx)) + lam * differentiate(I, p);
}

QuadraticIntegral killing_vector_first_integral(const MetricCandidate& g, const std::array<Expr, 2>& K,
                                                const std::string& p) {
  Expr P = sym(p);
  Expr k1 = g.E * K[0] + g.F * K[1];
  Expr k2 = g.F * K[0] + g.G * K[1];
  Expr den = k1 + k2 * P;
  return {g.E + q(2) * g.F * P + g.G * P * P, den * den};
}

ProjectiveODE painleve_structure(const Context& ctx, int which, const std::array<Expr, 4>& params) {
  Expr x = ctx.var(0), y = ctx.var(1);
  const auto& [al, be, ga, de] = params;
  ProjectiveODE o{ctx, {Expr(0), Expr(0), Expr(0), Expr(0)}};
  Expr one(1);
  switch (which) {
    case 1:
      o.A[0] = q(6) * y * y + x;
      break;
    case 2:
      o.A[0] = q(2) * y * y * y + x * y + al;
      break;
    case 3:
      o.A[2] = one / y;
      o.A[1] = -one / x;
      o.A[0] = al * y * y / x + be / x + ga * y * y * y + de / y;
      break;
    case 4:
      o.A[2] = one / (q(2) * y);
      o.A[0] = q(3, 2) * y * y * y + q(4) * x * y * y + q(2) * (x * x - al) * y + be / y;
      break;
    case 5:
      o.A[2] = one / (q(2) * y) + one / (y - one);
      o.A[1] = -one / x;
      o.A[0] = (y - one) * (y - one) / (x * x) * (al * y + be / y) + ga * y / x + de * y * (y + one) / (y - one);
      break;
    case 6:
      o.A[2] = q(1, 2) * (one / y + one / (y - one) + one / (y - x));
      o.A[1] = -(one / x + one / (x - one) + one / (y - x));
      o.A[0] = y * (y - one) * (y - x) / (x * x * (x - one) * (x - one)) *
               (al + be * x / (y * y) + ga * (x - one) / ((y - one) * (y - one)) +
                de * x * (x - one) / ((y - x) * (y - x)));
      break;
    default:
      throw DomainError("Painlevé equation index must be 1..6");
  }
  return o;
}

Expr painleve_degenerate_psi1(const Context& ctx, int which) {
  Expr x = ctx.var(0), y = ctx.var(1);
  Expr one(1);
  switch (which) {
    case 1:
    case 2:
      return one;
    case 3:
      return pow(y, Rational(4, 3)) / pow(x, Rational(2, 3));
    case 4:
      return pow(y, Rational(2, 3));
    case 5:
      return pow(one - y, Rational(4, 3)) * pow(y, Rational(2, 3)) / pow(x, Rational(2, 3));
    case 6:
      return pow(x - y, Rational(2, 3)) * pow((y - one) * y / ((x - one) * x), Rational(2, 3));
    default:
      throw DomainError("Painlevé equation index must be 1..6");
  }
}

MetricCandidate metric_piii(const Context& ctx, const Expr& alpha, const Expr& gamma, const Expr& A, const Expr& B) {
  Expr x = ctx.var(0), y = ctx.var(1);
  Expr xy = x * y;
  Expr s = A - B + q(2) * A * alpha * xy + A * gamma * xy * xy;
  Expr s2 = s * s;
  return {(B - A * xy * (q(2) * alpha + gamma * xy)) / (A * A * x * x * s2), Expr(1) / (A * xy * s2),
          Expr(1) / (A * y * y * s2)};
}

MetricCandidate metric_pv(const Context& ctx, const Expr& alpha, const Expr& beta, const Expr& A, const Expr& B) {
  Expr x = ctx.var(0), y = ctx.var(1);
  Expr s = B * y + q(2) * A * (beta - alpha * y * y);
  Expr ym = y - Expr(1);
  return {y / (A * A * x * x * s), Expr(0), y / (A * ym * ym * s * s)};
}

Tensor<Expr> metrisability_operator(const Connection2D& c, const std::array<Expr, 3>& sigma_up) {
  Geometry<SymbolicCalculus> g = c.geometry();
  Tensor<Expr> s({Slot::Up, Slot::Up}, Expr(0));
  s(0, 0) = sigma_up[0];
  s(0, 1) = sigma_up[1];
  s(1, 0) = sigma_up[1];
  s(1, 1) = sigma_up[2];
  Tensor<Expr> d = g.nabla(s);
  std::array<Expr, 2> div{d(0, 0, 0) + d(1, 1, 0), d(0, 0, 1) + d(1, 1, 1)};
  Tensor<Expr> out = d;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int cc = 0; cc < 2; ++cc) {
        Expr v = d(a, b, cc);
        if (a == b) v -= q(1, 3) * div[static_cast<std::size_t>(cc)];
        if (a == cc) v -= q(1, 3) * div[static_cast<std::size_t>(b)];
        out(a, b, cc) = v;
      }
  return out;
}

}  // namespace projclass
