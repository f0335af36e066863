#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "projclass/projective.hpp"

namespace projclass {

/// Ψ = (K_1, K_2, μ), a section of Λ¹ ⊕ Λ².
struct ProlongationSection {
  Expr k1, k2, mu;
};

struct ObstructionSet {
  Expr beta;
  Tensor<Expr> f_up;
  Tensor<Expr> m;
  Tensor<Expr> n;
  std::array<std::array<Expr, 3>, 3> matrix_m;
  Expr i_n;
  Tensor<Expr> t;
  /// U, V, W and I_S are filled only when requested.
  std::optional<Tensor<Expr>> u, v, w;
  std::optional<std::array<Expr, 2>> i_s;
  /// det 𝓜 - I_N and det T - β I_N.
  ZeroResult det_m_identity;
  ZeroResult det_t_identity;
};

ObstructionSet obstruction_set(const Connection2D& c, const ZeroTestPolicy& policy = {}, bool with_w = false);

/// D_a Ψ as [a][row] with rows (K_1, K_2, μ).
std::array<std::array<Expr, 3>, 2> prolongation_apply(const Connection2D& c, const ProlongationSection& psi);

/// Verdicts consulted by the counting decision tree.
struct KillingEvidence {
  ZeroResult beta, l1, l2, i_n, w111, w222;
  std::array<ZeroResult, 4> t;
  /// Tests whose outcome decided the count, in order.
  std::vector<std::string> fired;
};

struct KillingCount {
  int count = 0;
  KillingEvidence evidence;
};

/// Number of independent Killing forms on the sampling box. Throws
/// UnclassifiedStratum when a consulted verdict is Indeterminate or mixed.
KillingCount count_killing_forms(const Connection2D& c, const ZeroTestPolicy& policy = {});

struct RankReport {
  int rank = 0;
  std::vector<int> per_point;
};

/// Numeric rank of (V, D V, D D V) at the sample points; throws DomainError if
/// the ranks disagree.
RankReport rank_stack_check(const Connection2D& c, const ZeroTestPolicy& policy = {});

struct Reconstruction {
  /// Null direction of 𝓜.
  std::array<Expr, 3> direction;
  /// ω with D_a n = -ω_a n; closed when a scale exists.
  std::array<Expr, 2> omega;
  ZeroResult closure;
  /// λ n with D(λ n) = 0 when the quadrature succeeds.
  std::optional<ProlongationSection> section;
  std::string status;
};

/// Parallel section from the null space of 𝓜; requires rank 𝓜 = 2.
Reconstruction reconstruct_candidate(const Connection2D& c, const ZeroTestPolicy& policy = {});

struct NormalForm {
  Connection2D connection;
  /// Killing forms e^{cY} dX and P dX + Q dY.
  std::array<std::array<Expr, 2>, 2> killing_forms;
  /// e^{-cY}(P + p Q) in the variables (X, Y, p).
  Expr ode_integral;
  /// β of the connection; Zero marks the degenerate sub-case with more than two Killing forms.
  ZeroResult beta;
};

/// Connection with exactly two Killing forms; c is 0 or 1.
NormalForm normal_form_rank2(const Context& ctx, int c, const Expr& P, const Expr& Q,
                             const ZeroTestPolicy& policy = {});

/// Symmetrized covariant derivative ∇_(a K_b) of a one-form.
Tensor<Expr> killing_residual(const Connection2D& c, const std::array<Expr, 2>& k);

}  // namespace projclass
