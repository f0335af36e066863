#pragma once

#include <array>
#include <optional>
#include <vector>

#include "projclass/hydro.hpp"

namespace projclass {

enum class CatalogKind { Power, PowerLog, Log, Exponential, Trivial, Cubic, Free };

std::string to_string(CatalogKind k);

/// Two-dimensional prepotential in flat coordinates (t1, t2). Except for
/// Cubic, F = t1^2 t2 / 2 + f(t2).
struct Prepotential2D {
  CatalogKind kind = CatalogKind::Free;
  Expr K{1}, r{1}, c{1};
  /// Exponent of the Power entry.
  Rational k{4};
  Expr f{0};
  /// E = t1 d1 + d2 t2 d2 when set; E = t1 d1 + r d2 for Exponential and Trivial.
  std::optional<Rational> d2;

  static Prepotential2D power(const Rational& k, const Expr& K = Expr(1));
  static Prepotential2D power_log(const Expr& K = Expr(1));
  static Prepotential2D log(const Expr& K = Expr(1));
  static Prepotential2D exponential(const Expr& r = Expr(1), const Expr& K = Expr(1));
  static Prepotential2D trivial();
  static Prepotential2D cubic(const Expr& c = Expr(1), const Expr& K = Expr(1));
  /// F = t1^2 t2 / 2 + f(t2) without Euler data.
  static Prepotential2D free(const Expr& f);

  Expr prepotential() const;
  bool has_euler() const { return kind != CatalogKind::Free; }
  /// Throws DomainError for Free.
  std::array<Expr, 2> euler() const;
  /// Charge d with E F = (3 - d) F up to quadratic terms.
  Rational charge() const;
  /// Context over (t1, t2) declaring any other symbol as a parameter.
  Context context() const;
};

using Matrix2 = std::array<std::array<Expr, 2>, 2>;

struct FrobeniusData {
  Context ctx;
  Matrix2 eta_lo, eta_up;
  /// c_abc.
  Tensor<Expr> c;
  /// c_a^bc, index order (a, b, c).
  Tensor<Expr> c_up;
  /// c^c_ab, index order (c, a, b).
  Tensor<Expr> c_mixed;
  std::array<Expr, 2> euler;
  Matrix2 g_up, h_up;
  /// 𝓡^c_b as [c][b].
  Matrix2 r;
  /// Γ^{bc}_a of g and Γ̃^{bc}_a of h, index order (b, c, a).
  Tensor<Expr> gamma_g, gamma_h;
};

/// Requires Euler data.
FrobeniusData frobenius_data(const Prepotential2D& F);

struct WdvvResidual {
  /// c_ab^e c_ecd - c_ad^e c_ecb, index order (a, b, c, d).
  Tensor<Expr> associativity;
  /// Third derivatives of E F - (3 - d) F; absent without Euler data.
  std::optional<Tensor<Expr>> euler;
};

WdvvResidual wdvv_residual(const Prepotential2D& F);

/// Velocity matrix of d_T t1 = f'''(t2) d_X t2, d_T t2 = d_X t1.
Matrix2 primary_flow_matrix(const Prepotential2D& F);

/// The primary flow in Riemann invariants; throws CoincidentSpeeds when
/// f''' is not NonZero and DomainError for the Cubic entry.
HydroSystem2 primary_flow(const Prepotential2D& F, const ZeroTestPolicy& policy = {});

/// Diagonal metric ((C1 + C2 R^i + C3 (R^i)^2) λ^i)^{-1} dR^i dR^i.
HamiltonianMetric trimetric_family(const HydroSystem2& sys, const Expr& C1, const Expr& C2, const Expr& C3,
                                   const ZeroTestPolicy& policy = {});

/// d_2 Γ̃_1^{12} - d_1 Γ̃_2^{12}.
Expr third_flatness_witness(const Prepotential2D& F);

/// Contravariant Levi-Civita connection Γ^{ij}_k = -G^{il} Γ^j_{lk} of the
/// inverse metric G^{ij}; index order (i, j, k).
Tensor<Expr> contravariant_connection(const Matrix2& g_up, const std::array<std::string, 2>& vars);

/// Entries of Γ(η + λ g) - Γ(η) - λ Γ(g).
std::vector<Expr> flat_pencil_residual(const FrobeniusData& data, const Rational& lambda);

}  // namespace projclass
