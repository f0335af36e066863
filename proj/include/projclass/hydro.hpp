#pragma once

#include <array>
#include <optional>

#include "projclass/killing.hpp"
#include "projclass/metrisability.hpp"

namespace projclass {

/// Two-component system in Riemann invariants. `frame` expresses the
/// derivations along the Riemann invariants in the context variables.
struct HydroSystem2 {
  Context ctx;
  Frame frame;
  std::optional<std::array<Expr, 2>> lambda;
  /// Riemann invariants as functions of the context variables, when these
  /// are not the Riemann invariants themselves.
  std::optional<std::array<Expr, 2>> riemann;
  Expr A, B;

  /// From the characteristic velocities; A and B follow from them.
  static HydroSystem2 from_velocities(const Context& ctx, const Expr& l1, const Expr& l2,
                                      std::optional<Frame> frame = std::nullopt);
  static HydroSystem2 from_ab(const Context& ctx, const Expr& A, const Expr& B);
  /// u_t = h^2(v) v_x, v_t = u_x in Riemann invariants u = X + Y, v = G(X - Y):
  /// λ1 = -λ2 = 1 / G'(X - Y). `G` is an expression in the symbol `z`.
  static HydroSystem2 elastic_medium(const Context& ctx, const Expr& G, const std::string& z = "z");

  SymbolicCalculus calculus() const { return SymbolicCalculus{frame}; }
};

/// Diagonal flat metric k^{-1} dX^2 + f^{-1} dY^2.
struct HamiltonianMetric {
  Expr k, f;
};

/// Throws CoincidentSpeeds or DegenerateCharacteristic on bad input.
Connection2D characteristic_connection(const HydroSystem2& sys, const ZeroTestPolicy& policy = {});
KillingCount hamiltonian_count(const HydroSystem2& sys, const ZeroTestPolicy& policy = {});

HamiltonianMetric killing_to_metric(const std::array<Expr, 2>& K, const HydroSystem2& sys,
                                    const ZeroTestPolicy& policy = {});
std::array<Expr, 2> metric_to_killing(const HamiltonianMetric& m, const HydroSystem2& sys);

struct DictionaryCheck {
  /// ∂2 k + 2Ak, ∂1 f + 2Bf and the flatness condition.
  std::array<ZeroResult, 3> hamiltonian;
  /// ∇_(a K_b) for K = (Af, Bk).
  std::array<ZeroResult, 3> killing;
  bool hamiltonian_holds() const;
  bool killing_holds() const;
};

std::array<Expr, 3> hamiltonian_residuals(const HamiltonianMetric& m, const HydroSystem2& sys);
DictionaryCheck dictionary_check(const HamiltonianMetric& m, const HydroSystem2& sys, const ZeroTestPolicy& policy = {});

struct MetricH {
  /// h = AB dX⊙dY with h(∂_X, ∂_Y) = AB.
  MetricCandidate h;
  std::array<Expr, 2> upsilon;
};

MetricH projective_metric_h(const HydroSystem2& sys, const ZeroTestPolicy& policy = {});

/// Y'' = (∂_X Z) Y' - (∂_Y Z) Y'^2 with Z = ln(AB).
ProjectiveODE characteristic_ode(const HydroSystem2& sys);

/// (AB)^{-1} ∂1 ∂2 ln(AB); constant exactly in the trihamiltonian case.
Expr liouville_curvature(const HydroSystem2& sys);

/// Levi-Civita connection of E dx^2 + 2F dx dy + G dy^2 along `frame`.
Connection2D levi_civita(const Context& ctx, const MetricCandidate& g, std::optional<Frame> frame = std::nullopt);

struct RiemannInvariants {
  std::array<Expr, 2> R;
  std::array<Expr, 2> lambda;
};

/// Riemann invariants of ∂_T t = v ∂_X t in the variables ctx.variables[0..1].
/// Throws CoincidentSpeeds or Unavailable.
RiemannInvariants riemann_invariants_2(const Context& ctx, const std::array<std::array<Expr, 2>, 2>& v,
                                       const ZeroTestPolicy& policy = {});

/// System in the coordinates of `ctx` with derivations along the given
/// Riemann invariants.
HydroSystem2 hydro_from_invariants(const Context& ctx, const RiemannInvariants& ri);

}  // namespace projclass
