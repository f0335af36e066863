#pragma once

#include <array>

#include "projclass/geometry.hpp"
#include "projclass/zero_test.hpp"

namespace projclass {

/// A symbolic torsion-free connection on a coordinate patch. The first two
/// context variables are the coordinates; `frame` may express derivations in
/// other coordinates.
struct Connection2D {
  Context ctx;
  Frame frame;
  Connection<Expr> conn;

  Connection2D();
  /// Connection with all symbols zero and ε12 = 1 over ctx.variables[0..1].
  explicit Connection2D(Context c);

  const Expr& gamma(int a, int b, int c) const { return conn.gamma(a, b, c); }
  void set(int a, int b, int c, const Expr& v) { conn.set(a, b, c, v); }
  SymbolicCalculus calculus() const { return SymbolicCalculus{frame}; }
  Geometry<SymbolicCalculus> geometry() const { return Geometry<SymbolicCalculus>(calculus(), conn); }
  /// Jet expansion of the connection and frame around `p`.
  Geometry<JetCalculus> geometry_at(const SamplePoint& p, int order) const;
};

/// y'' = A0 + A1 y' + A2 y'^2 + A3 y'^3 over ctx.variables[0..1] = (x, y).
struct ProjectiveODE {
  Context ctx;
  std::array<Expr, 4> A;
};

struct CurvatureData {
  Tensor<Expr> riemann;
  Tensor<Expr> ricci;
  Tensor<Expr> schouten;
  Tensor<Expr> skew;
  Expr beta;
  Tensor<Expr> theta;
  Tensor<Expr> cotton;
};

ProjectiveODE ode_from_connection(const Connection2D& c);
Connection2D thomas_connection(const ProjectiveODE& ode);
Connection2D projective_change(const Connection2D& c, const std::array<Expr, 2>& upsilon);
CurvatureData curvature_data(const Connection2D& c);
std::array<Expr, 2> liouville_invariants(const ProjectiveODE& ode);
/// Axisymmetric connection near the round sphere with profile functions F(X)
/// and H(X): Γ^1_11 = A1, Γ^1_12 = A2 / 2, Γ^1_22 = A3.
Connection2D zoll_connection(const Context& ctx, const Expr& F, const Expr& H);
/// ν5 of a special connection; throws NonSpecialConnection unless β is Zero.
Expr nu5(const Connection2D& c, const ZeroTestPolicy& policy = {});

}  // namespace projclass
