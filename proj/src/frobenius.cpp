#include "projclass/frobenius.hpp"

#include "projclass/antiderivative.hpp"

namespace projclass {

namespace {

const std::array<std::string, 2> kVars{"t1", "t2"};

Expr t1() { return sym("t1"); }
Expr t2() { return sym("t2"); }

Expr d(const Expr& e, int a) { return differentiate(e, kVars[a]); }

Matrix2 inverse(const Matrix2& m) {
  Expr det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

Tensor<Expr> zero_tensor(std::vector<Slot> v) { return Tensor<Expr>(std::move(v), Expr(0)); }

// Square root taken factor by factor; valid where every base is positive.
Expr positive_sqrt(const Expr& e) {
  auto [coef, mono] = split_coefficient(e);
  Expr out = sqrt(Expr(coef));
  std::vector<Expr> factors = mono.kind() == Expr::Kind::Mul ? mono.args() : std::vector<Expr>{mono};
  for (const Expr& f : factors) {
    if (f.is_one()) continue;
    auto [base, q] = split_power(f);
    if (base.kind() == Expr::Kind::Func && base.func() == FuncKind::Exp) {
      out *= exp(base.base() * Expr(q / Rational(2)));
    } else {
      out *= pow(base, q / Rational(2));
    }
  }
  return out;
}

}  // namespace

std::string to_string(CatalogKind k) {
  switch (k) {
    case CatalogKind::Power:
      return "power";
    case CatalogKind::PowerLog:
      return "power-log";
    case CatalogKind::Log:
      return "log";
    case CatalogKind::Exponential:
      return "exponential";
    case CatalogKind::Trivial:
      return "trivial";
    case CatalogKind::Cubic:
      return "cubic";
    case CatalogKind::Free:
      return "free";
  }
  return "free";
}

Prepotential2D Prepotential2D::power(const Rational& k, const Expr& K) {
  if (k == 1 || k == 0 || k == 2) throw DomainError("power prepotential needs k outside {0, 1, 2}");
  Prepotential2D p;
  p.kind = CatalogKind::Power;
  p.K = K;
  p.k = k;
  p.f = K * pow(t2(), k);
  p.d2 = Rational(2) / (k - 1);
  return p;
}

Prepotential2D Prepotential2D::power_log(const Expr& K) {
  Prepotential2D p;
  p.kind = CatalogKind::PowerLog;
  p.K = K;
  p.f = K * t2() * t2() * ln(t2());
  p.d2 = Rational(2);
  return p;
}

Prepotential2D Prepotential2D::log(const Expr& K) {
  Prepotential2D p;
  p.kind = CatalogKind::Log;
  p.K = K;
  p.f = K * ln(t2());
  p.d2 = Rational(-2);
  return p;
}

Prepotential2D Prepotential2D::exponential(const Expr& r, const Expr& K) {
  if (r.is_zero()) throw DomainError("exponential prepotential needs r != 0");
  Prepotential2D p;
  p.kind = CatalogKind::Exponential;
  p.K = K;
  p.r = r;
  p.f = K * exp(Expr(2) * t2() / r);
  return p;
}

Prepotential2D Prepotential2D::trivial() {
  Prepotential2D p;
  p.kind = CatalogKind::Trivial;
  p.r = Expr(0);
  return p;
}

Prepotential2D Prepotential2D::cubic(const Expr& c, const Expr& K) {
  Prepotential2D p;
  p.kind = CatalogKind::Cubic;
  p.K = K;
  p.c = c;
  p.f = K * pow(t2(), 3) * Expr(Rational(1, 6));
  p.d2 = Rational(1);
  return p;
}

Prepotential2D Prepotential2D::free(const Expr& f) {
  Prepotential2D p;
  p.kind = CatalogKind::Free;
  p.f = f;
  return p;
}

Expr Prepotential2D::prepotential() const {
  Expr F = Expr(Rational(1, 2)) * t1() * t1() * t2() + f;
  if (kind == CatalogKind::Cubic) F += c * pow(t1(), 3) * Expr(Rational(1, 6));
  return F;
}

std::array<Expr, 2> Prepotential2D::euler() const {
  if (!has_euler()) throw DomainError("free-form prepotential carries no Euler field");
  if (d2) return {t1(), Expr(*d2) * t2()};
  return {t1(), r};
}

Rational Prepotential2D::charge() const {
  if (!has_euler()) throw DomainError("free-form prepotential carries no Euler field");
  return d2 ? Rational(1 - *d2) : Rational(1);
}

Context Prepotential2D::context() const {
  Context ctx({"t1", "t2"});
  for (const Expr& e : {f, K, r, c}) {
    for (const std::string& s : free_symbols(e)) {
      if (!ctx.declares(s)) ctx.add_parameter(s);
    }
  }
  return ctx;
}

FrobeniusData frobenius_data(const Prepotential2D& P) {
  FrobeniusData D;
  D.ctx = P.context();
  Expr F = P.prepotential();
  D.c = zero_tensor({Slot::Down, Slot::Down, Slot::Down});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) D.c(a, b, c) = d(d(d(F, a), b), c);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) D.eta_lo[a][b] = D.c(0, a, b);
  D.eta_up = inverse(D.eta_lo);
  D.c_up = zero_tensor({Slot::Down, Slot::Up, Slot::Up});
  D.c_mixed = zero_tensor({Slot::Up, Slot::Down, Slot::Down});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        Expr up(0), mixed(0);
        for (int e = 0; e < 2; ++e) {
          mixed += D.eta_up[a][e] * D.c(e, b, c);
          for (int f = 0; f < 2; ++f) up += D.eta_up[b][e] * D.eta_up[c][f] * D.c(a, e, f);
        }
        D.c_up(a, b, c) = up;
        D.c_mixed(a, b, c) = mixed;
      }
  D.euler = P.euler();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Expr g(0);
      for (int e = 0; e < 2; ++e) g += D.euler[e] * D.c_up(e, a, b);
      D.g_up[a][b] = g;
    }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Expr h(0);
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) h += D.g_up[a][c] * D.g_up[b][e] * D.eta_lo[e][c];
      D.h_up[a][b] = h;
    }
  Rational half_dm1 = (P.charge() - 1) / Rational(2);
  for (int c = 0; c < 2; ++c)
    for (int b = 0; b < 2; ++b) D.r[c][b] = (b == c ? Expr(half_dm1) : Expr(0)) + d(D.euler[c], b);
  D.gamma_g = zero_tensor({Slot::Up, Slot::Up, Slot::Down});
  D.gamma_h = zero_tensor({Slot::Up, Slot::Up, Slot::Down});
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c)
      for (int a = 0; a < 2; ++a) {
        Expr gg(0), gh(0);
        for (int dd = 0; dd < 2; ++dd) gg += D.r[c][dd] * D.c_up(a, b, dd);
        for (int e = 0; e < 2; ++e)
          for (int g = 0; g < 2; ++g) {
            Expr inner(0);
            for (int f = 0; f < 2; ++f) inner += D.c_mixed(c, e, f) * D.r[f][g];
            for (int dd = 0; dd < 2; ++dd) inner += D.c_mixed(dd, e, g) * D.r[c][dd];
            gh += D.euler[e] * inner * D.c_up(a, b, g);
          }
        D.gamma_g(b, c, a) = gg;
        D.gamma_h(b, c, a) = gh;
      }
  return D;
}

WdvvResidual wdvv_residual(const Prepotential2D& P) {
  Expr F = P.prepotential();
  Tensor<Expr> c({Slot::Down, Slot::Down, Slot::Down}, Expr(0));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int e = 0; e < 2; ++e) c(a, b, e) = d(d(d(F, a), b), e);
  Matrix2 eta;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) eta[a][b] = c(0, a, b);
  Matrix2 eta_up = inverse(eta);
  WdvvResidual out;
  out.associativity = zero_tensor({Slot::Down, Slot::Down, Slot::Down, Slot::Down});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int cc = 0; cc < 2; ++cc)
        for (int dd = 0; dd < 2; ++dd) {
          Expr v(0);
          for (int e = 0; e < 2; ++e)
            for (int f = 0; f < 2; ++f)
              v += c(a, b, f) * eta_up[f][e] * c(e, cc, dd) - c(a, dd, f) * eta_up[f][e] * c(e, cc, b);
          out.associativity(a, b, cc, dd) = v;
        }
  if (P.has_euler()) {
    auto E = P.euler();
    Expr lie = E[0] * d(F, 0) + E[1] * d(F, 1) - Expr(3 - P.charge()) * F;
    Tensor<Expr> t = zero_tensor({Slot::Down, Slot::Down, Slot::Down});
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int e = 0; e < 2; ++e) t(a, b, e) = d(d(d(lie, a), b), e);
    out.euler = t;
  }
  return out;
}

Matrix2 primary_flow_matrix(const Prepotential2D& P) {
  Expr f3 = differentiate(differentiate(differentiate(P.f, "t2"), "t2"), "t2");
  return {{{Expr(0), f3}, {Expr(1), Expr(0)}}};
}

HydroSystem2 primary_flow(const Prepotential2D& P, const ZeroTestPolicy& policy) {
  if (P.kind == CatalogKind::Cubic) {
    throw DomainError("the cubic prepotential has no primary flow of the form t1^2 t2 / 2 + f(t2)");
  }
  Context ctx = P.context();
  Matrix2 v = primary_flow_matrix(P);
  Expr f3 = v[0][1];
  if (!is_identically_zero(f3, ctx, policy).is_nonzero()) {
    throw CoincidentSpeeds("two identical characteristic velocities");
  }
  Expr lam = positive_sqrt(f3);
  if (!is_identically_zero(lam * lam - f3, ctx, policy).is_zero()) {
    throw Unavailable("square root of f''' does not stay in the expression class");
  }
  auto L = antiderivative(lam, "t2");
  if (!L) throw Unavailable("quadrature of the characteristic velocity leaves the expression class");
  RiemannInvariants ri{{t1() + *L, t1() - *L}, {lam, -lam}};
  return hydro_from_invariants(ctx, ri);
}

HamiltonianMetric trimetric_family(const HydroSystem2& sys, const Expr& C1, const Expr& C2, const Expr& C3,
                                   const ZeroTestPolicy& policy) {
  if (!sys.lambda) throw DomainError("trimetric family needs the characteristic velocities");
  std::array<Expr, 2> R = sys.riemann ? *sys.riemann : std::array<Expr, 2>{sys.ctx.var(0), sys.ctx.var(1)};
  std::array<Expr, 2> q;
  for (int i = 0; i < 2; ++i) q[i] = C1 + C2 * R[i] + C3 * R[i] * R[i];
  auto v = are_identically_zero({q[0], q[1]}, sys.ctx, policy);
  if (!v[0].is_nonzero() || !v[1].is_nonzero()) throw DomainError("quadratic factor of the trimetric family vanishes");
  return {q[0] * (*sys.lambda)[0], q[1] * (*sys.lambda)[1]};
}

Expr third_flatness_witness(const Prepotential2D& P) {
  FrobeniusData D = frobenius_data(P);
  return d(D.gamma_h(0, 1, 0), 1) - d(D.gamma_h(0, 1, 1), 0);
}

Tensor<Expr> contravariant_connection(const Matrix2& g_up, const std::array<std::string, 2>& vars) {
  Matrix2 lo = inverse(g_up);
  auto dv = [&](const Expr& e, int a) { return differentiate(e, vars[a]); };
  Tensor<Expr> out = zero_tensor({Slot::Up, Slot::Up, Slot::Down});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        Expr v(0);
        for (int l = 0; l < 2; ++l) {
          Expr chris(0);
          for (int m = 0; m < 2; ++m) chris += g_up[j][m] * (dv(lo[m][l], k) + dv(lo[m][k], l) - dv(lo[l][k], m));
          v += g_up[i][l] * chris;
        }
        out(i, j, k) = -v * Expr(Rational(1, 2));
      }
  return out;
}

std::vector<Expr> flat_pencil_residual(const FrobeniusData& D, const Rational& lambda) {
  Matrix2 pencil;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) pencil[a][b] = D.eta_up[a][b] + Expr(lambda) * D.g_up[a][b];
  Tensor<Expr> gp = contravariant_connection(pencil, kVars);
  Tensor<Expr> ge = contravariant_connection(D.eta_up, kVars);
  Tensor<Expr> gg = contravariant_connection(D.g_up, kVars);
  std::vector<Expr> out;
  for (std::size_t i = 0; i < gp.size(); ++i) out.push_back(gp[i] - ge[i] - Expr(lambda) * gg[i]);
  return out;
}

}  // namespace projclass
