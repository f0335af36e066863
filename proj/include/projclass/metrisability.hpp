#pragma once

#include <array>
#include <optional>
#include <string>

#include "projclass/projective.hpp"

namespace projclass {

/// σ_11, σ_12, σ_22.
struct SigmaCandidate {
  Expr psi1, psi2, psi3;
  Expr delta() const { return psi1 * psi3 - psi2 * psi2; }
};

/// g_11, g_12, g_22.
struct MetricCandidate {
  Expr E, F, G;
  Expr det() const { return E * G - F * F; }
};

/// numerator / denominator, both expressions in (x, y, p) with p = y'.
struct QuadraticIntegral {
  Expr numerator;
  Expr denominator;
  Expr value() const { return numerator / denominator; }
};

/// Left minus right sides of the four metrisability equations.
std::array<Expr, 4> metrisability_residual(const ProjectiveODE& ode, const SigmaCandidate& s);

struct DegenerateBranch {
  /// ∂_y A1 - 2 ∂_x A2.
  Expr condition;
  std::optional<Expr> psi1;
  std::string status;
};

/// Degenerate solution ψ2 = ψ3 = 0; throws DomainError when the condition is
/// not Zero or A3 does not vanish.
DegenerateBranch degenerate_branch(const ProjectiveODE& ode, const ZeroTestPolicy& policy = {});

MetricCandidate sigma_to_metric(const SigmaCandidate& s, const Context& ctx, const ZeroTestPolicy& policy = {});
SigmaCandidate metric_to_sigma(const MetricCandidate& g, const Context& ctx, const ZeroTestPolicy& policy = {});

QuadraticIntegral ratio_first_integral(const SigmaCandidate& s1, const SigmaCandidate& s2, const std::string& p = "p");

/// d/dx of I along y'' = A3 p^3 + A2 p^2 + A1 p + A0.
Expr conservation_residual(const Expr& I, const ProjectiveODE& ode, const std::string& p = "p");

/// (E + 2F p + G p^2) / (K_1 + K_2 p)^2 with K lowered by g.
QuadraticIntegral killing_vector_first_integral(const MetricCandidate& g, const std::array<Expr, 2>& K,
                                                const std::string& p = "p");

/// Painlevé equation `which` (1..6) with parameters (α, β, γ, δ) over the
/// variables ctx.variables[0..1] = (x, y).
ProjectiveODE painleve_structure(const Context& ctx, int which, const std::array<Expr, 4>& params);

/// Degenerate ψ1 of Painlevé `which`, up to a constant factor.
Expr painleve_degenerate_psi1(const Context& ctx, int which);

/// Two-parameter metric family of PIII with β = δ = 0.
MetricCandidate metric_piii(const Context& ctx, const Expr& alpha, const Expr& gamma, const Expr& A, const Expr& B);
/// Diagonal metric family of PV with γ = δ = 0.
MetricCandidate metric_pv(const Context& ctx, const Expr& alpha, const Expr& beta, const Expr& A, const Expr& B);

/// Trace-free part of ∇_a σ^bc for an upper-index σ; index order (a, b, c).
Tensor<Expr> metrisability_operator(const Connection2D& c, const std::array<Expr, 3>& sigma_up);

}  // namespace projclass
