#pragma once

#include <array>
#include <optional>
#include <vector>

#include "projclass/tensor.hpp"

namespace projclass {

/// Torsion-free connection Γ^a_{bc} (symmetric in b, c) and volume form ε_12.
template <class S>
struct Connection {
  std::array<S, 8> g;
  S volume;

  S& gamma(int a, int b, int c) { return g[static_cast<std::size_t>(4 * a + 2 * b + c)]; }
  const S& gamma(int a, int b, int c) const { return g[static_cast<std::size_t>(4 * a + 2 * b + c)]; }
  void set(int a, int b, int c, const S& v) {
    gamma(a, b, c) = v;
    gamma(a, c, b) = v;
  }
};

/// A section of the dual prolongation bundle with extra lower indices: the
/// vector part carries one trailing upper index.
template <class S>
struct DualSection {
  Tensor<S> vec;
  Tensor<S> scalar;
};

/// Curvature, prolongation and obstruction tensors of a connection, computed
/// lazily. `Calc` supplies the scalar type and its derivations.
template <class Calc>
class Geometry {
 public:
  using S = typename Calc::Scalar;

  Geometry(Calc calc, Connection<S> conn) : calc_(std::move(calc)), conn_(std::move(conn)) {
    einv_ = calc_.constant(1) / conn_.volume;
  }

  const Calc& calc() const { return calc_; }
  const Connection<S>& connection() const { return conn_; }
  const S& gamma(int a, int b, int c) const { return conn_.gamma(a, b, c); }
  S zero() const { return calc_.zero(); }
  S delta(int a, int b) const { return calc_.constant(a == b ? 1 : 0); }
  S eps_lo(int a, int b) const {
    if (a == b) return zero();
    return a == 0 ? conn_.volume : -conn_.volume;
  }
  S eps_up(int a, int b) const {
    if (a == b) return zero();
    return a == 0 ? einv_ : -einv_;
  }
  Tensor<S> make(std::vector<Slot> v) const { return Tensor<S>(std::move(v), zero()); }

  /// Covariant derivative; the new lower index is prepended.
  Tensor<S> nabla(const Tensor<S>& t) const {
    std::vector<Slot> v{Slot::Down};
    v.insert(v.end(), t.valence().begin(), t.valence().end());
    Tensor<S> r = make(v);
    for (std::size_t f = 0; f < t.size(); ++f) {
      std::vector<int> idx = t.unflatten(f);
      for (int a = 0; a < 2; ++a) {
        S acc = calc_.d(t[f], a);
        for (int s = 0; s < t.rank(); ++s) {
          std::vector<int> j = idx;
          for (int e = 0; e < 2; ++e) {
            j[s] = e;
            const S& te = t.at(j);
            if (t.valence()[s] == Slot::Up) {
              acc = acc + gamma(idx[s], a, e) * te;
            } else {
              acc = acc - gamma(e, a, idx[s]) * te;
            }
          }
        }
        std::vector<int> out{a};
        out.insert(out.end(), idx.begin(), idx.end());
        r.at(out) = acc;
      }
    }
    return r;
  }

  /// Raises slot `s` with V^a = ε^ab V_b.
  Tensor<S> raise(const Tensor<S>& t, int s) const {
    if (t.valence()[static_cast<std::size_t>(s)] != Slot::Down) throw DomainError("raise needs a lower slot");
    std::vector<Slot> v = t.valence();
    v[static_cast<std::size_t>(s)] = Slot::Up;
    Tensor<S> r = make(v);
    for (std::size_t f = 0; f < r.size(); ++f) {
      std::vector<int> idx = r.unflatten(f);
      int a = idx[static_cast<std::size_t>(s)];
      idx[static_cast<std::size_t>(s)] = 1 - a;
      r[f] = eps_up(a, 1 - a) * t.at(idx);
    }
    return r;
  }

  /// Lowers slot `s` with V_a = V^b ε_ba.
  Tensor<S> lower(const Tensor<S>& t, int s) const {
    if (t.valence()[static_cast<std::size_t>(s)] != Slot::Up) throw DomainError("lower needs an upper slot");
    std::vector<Slot> v = t.valence();
    v[static_cast<std::size_t>(s)] = Slot::Down;
    Tensor<S> r = make(v);
    for (std::size_t f = 0; f < r.size(); ++f) {
      std::vector<int> idx = r.unflatten(f);
      int a = idx[static_cast<std::size_t>(s)];
      idx[static_cast<std::size_t>(s)] = 1 - a;
      r[f] = t.at(idx) * eps_lo(1 - a, a);
    }
    return r;
  }

  /// R_ab^c_d.
  const Tensor<S>& riemann() {
    if (!riemann_) {
      Tensor<S> r = make({Slot::Down, Slot::Down, Slot::Up, Slot::Down});
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) {
              S v = calc_.d(gamma(c, b, d), a) - calc_.d(gamma(c, a, d), b);
              for (int e = 0; e < 2; ++e) v = v + gamma(c, a, e) * gamma(e, b, d) - gamma(c, b, e) * gamma(e, a, d);
              r(a, b, c, d) = v;
            }
      riemann_ = std::move(r);
    }
    return *riemann_;
  }

  /// R_ab = R_ca^c_b.
  const Tensor<S>& ricci() {
    if (!ricci_) {
      const Tensor<S>& R = riemann();
      Tensor<S> r = make({Slot::Down, Slot::Down});
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) r(a, b) = R(0, a, 0, b) + R(1, a, 1, b);
      ricci_ = std::move(r);
    }
    return *ricci_;
  }

  /// P_ab = (2/3) R_ab + (1/3) R_ba.
  const Tensor<S>& schouten() {
    if (!schouten_) {
      const Tensor<S>& R = ricci();
      Tensor<S> p = make({Slot::Down, Slot::Down});
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) p(a, b) = R(a, b) * Rational(2, 3) + R(b, a) * Rational(1, 3);
      schouten_ = std::move(p);
    }
    return *schouten_;
  }

  /// B_ab = P_ba - P_ab.
  const Tensor<S>& skew() {
    if (!skew_) {
      const Tensor<S>& P = schouten();
      Tensor<S> b = make({Slot::Down, Slot::Down});
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) b(a, c) = P(c, a) - P(a, c);
      skew_ = std::move(b);
    }
    return *skew_;
  }

  /// β = B_ab ε^ab.
  const S& beta() {
    if (!beta_) {
      const Tensor<S>& B = skew();
      beta_ = B(0, 1) * eps_up(0, 1) + B(1, 0) * eps_up(1, 0);
    }
    return *beta_;
  }

  /// θ_a = d_a ln ε_12 - Γ^d_da.
  const Tensor<S>& theta() {
    if (!theta_) {
      Tensor<S> t = make({Slot::Down});
      for (int a = 0; a < 2; ++a) t(a) = calc_.d(conn_.volume, a) * einv_ - gamma(0, 0, a) - gamma(1, 1, a);
      theta_ = std::move(t);
    }
    return *theta_;
  }

  /// P^b_a = ε^bc P_ca, stored with index order (b, a).
  const Tensor<S>& schouten_mixed() {
    if (!schouten_mixed_) {
      const Tensor<S>& P = schouten();
      Tensor<S> m = make({Slot::Up, Slot::Down});
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a) m(b, a) = eps_up(b, 0) * P(0, a) + eps_up(b, 1) * P(1, a);
      schouten_mixed_ = std::move(m);
    }
    return *schouten_mixed_;
  }

  const Tensor<S>& nabla_p() { return cached(nabla_p_, [&] { return nabla(schouten()); }); }
  const Tensor<S>& nabla2_p() { return cached(nabla2_p_, [&] { return nabla(nabla_p()); }); }
  const Tensor<S>& nabla_b() { return cached(nabla_b_, [&] { return nabla(skew()); }); }
  const Tensor<S>& nabla2_b() { return cached(nabla2_b_, [&] { return nabla(nabla_b()); }); }
  const Tensor<S>& nabla3_b() { return cached(nabla3_b_, [&] { return nabla(nabla2_b()); }); }

  /// Cotton form L_b = ε^cd ∇_c P_db.
  const Tensor<S>& cotton() {
    if (!cotton_) {
      const Tensor<S>& dP = nabla_p();
      Tensor<S> l = make({Slot::Down});
      for (int b = 0; b < 2; ++b) l(b) = eps_up(0, 1) * dP(0, 1, b) + eps_up(1, 0) * dP(1, 0, b);
      cotton_ = std::move(l);
    }
    return *cotton_;
  }

  /// Y_cdb = (∇_c P_db - ∇_d P_cb) / 2.
  const Tensor<S>& cotton_y() {
    if (!cotton_y_) {
      const Tensor<S>& dP = nabla_p();
      Tensor<S> y = make({Slot::Down, Slot::Down, Slot::Down});
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          for (int b = 0; b < 2; ++b) y(c, d, b) = (dP(c, d, b) - dP(d, c, b)) * Rational(1, 2);
      cotton_y_ = std::move(y);
    }
    return *cotton_y_;
  }
  const Tensor<S>& nabla_y() { return cached(nabla_y_, [&] { return nabla(cotton_y()); }); }
  const Tensor<S>& nabla2_y() { return cached(nabla2_y_, [&] { return nabla(nabla_y()); }); }

  /// ν5 = L^a L^b ∇_a L_b with L^a = ε^ab L_b.
  S nu5() {
    const Tensor<S>& L = cotton();
    Tensor<S> dL = nabla(L);
    std::array<S, 2> up{eps_up(0, 1) * L(1), eps_up(1, 0) * L(0)};
    S v = zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) v = v + up[a] * up[b] * dL(a, b);
    return v;
  }

  /// F^a = (1/3) ε^ab (L_b - ε^cd ∇_b B_cd).
  const Tensor<S>& f_up() {
    if (!f_up_) {
      const Tensor<S>& L = cotton();
      const Tensor<S>& dB = nabla_b();
      Tensor<S> f = make({Slot::Up});
      for (int a = 0; a < 2; ++a) {
        S v = zero();
        for (int b = 0; b < 2; ++b) {
          if (a == b) continue;
          S inner = L(b) - (eps_up(0, 1) * dB(b, 0, 1) + eps_up(1, 0) * dB(b, 1, 0));
          v = v + eps_up(a, b) * inner;
        }
        f(a) = v * Rational(1, 3);
      }
      f_up_ = std::move(f);
    }
    return *f_up_;
  }

  /// F_a = F^b ε_ba.
  const Tensor<S>& f_down() {
    if (!f_down_) {
      const Tensor<S>& F = f_up();
      Tensor<S> f = make({Slot::Down});
      for (int a = 0; a < 2; ++a) f(a) = F(0) * eps_lo(0, a) + F(1) * eps_lo(1, a);
      f_down_ = std::move(f);
    }
    return *f_down_;
  }

  /// M_a^b, stored with index order (a, b).
  const Tensor<S>& m() {
    if (!m_) {
      const Tensor<S>& dY = nabla_y();
      const Tensor<S>& ddB = nabla2_b();
      const Tensor<S>& Pm = schouten_mixed();
      const S& bt = beta();
      Tensor<S> out = make({Slot::Down, Slot::Up});
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          S v = zero();
          for (int c = 0; c < 2; ++c) {
            if (b == c) continue;
            for (int d = 0; d < 2; ++d) {
              int e = 1 - d;
              v = v + eps_up(b, c) * eps_up(d, e) * (dY(a, d, e, c) - ddB(a, c, d, e));
            }
          }
          v = v * Rational(1, 3) + bt * Pm(b, a);
          if (a == b) v = v + bt * bt * Rational(1, 2);
          out(a, b) = v;
        }
      m_ = std::move(out);
    }
    return *m_;
  }

  /// N_a = -F_a + ε^bc ∇_a B_bc.
  const Tensor<S>& n() {
    if (!n_) {
      const Tensor<S>& F = f_down();
      const Tensor<S>& dB = nabla_b();
      Tensor<S> out = make({Slot::Down});
      for (int a = 0; a < 2; ++a) out(a) = -F(a) + eps_up(0, 1) * dB(a, 0, 1) + eps_up(1, 0) * dB(a, 1, 0);
      n_ = std::move(out);
    }
    return *n_;
  }

  /// Rows (F^1, F^2, β), (M_1^1, M_1^2, N_1), (M_2^1, M_2^2, N_2).
  std::array<std::array<S, 3>, 3> matrix_m() {
    const Tensor<S>& F = f_up();
    const Tensor<S>& M = m();
    const Tensor<S>& N = n();
    return {{{F(0), F(1), beta()}, {M(0, 0), M(0, 1), N(0)}, {M(1, 0), M(1, 1), N(1)}}};
  }

  /// I_N = ε_cd ε^be M_e^c (N_b F^d - β M_b^d / 2).
  const S& i_n() {
    if (!i_n_) {
      const Tensor<S>& F = f_up();
      const Tensor<S>& M = m();
      const Tensor<S>& N = n();
      const S& bt = beta();
      S v = zero();
      for (int c = 0; c < 2; ++c) {
        int d = 1 - c;
        for (int b = 0; b < 2; ++b) {
          int e = 1 - b;
          v = v + eps_lo(c, d) * eps_up(b, e) * M(e, c) * (N(b) * F(d) - bt * M(b, d) * Rational(1, 2));
        }
      }
      i_n_ = v;
    }
    return *i_n_;
  }

  /// T_a^b = N_a F^b - β M_a^b, index order (a, b).
  const Tensor<S>& t() {
    if (!t_) {
      const Tensor<S>& F = f_up();
      const Tensor<S>& M = m();
      const Tensor<S>& N = n();
      const S& bt = beta();
      Tensor<S> out = make({Slot::Down, Slot::Up});
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out(a, b) = N(a) * F(b) - bt * M(a, b);
      t_ = std::move(out);
    }
    return *t_;
  }

  /// det T = (1/2) ε^ab ε_cd T_a^c T_b^d.
  S det_t() {
    const Tensor<S>& T = t();
    S v = zero();
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) {
        int b = 1 - a, d = 1 - c;
        v = v + eps_up(a, b) * eps_lo(c, d) * T(a, c) * T(b, d);
      }
    return v * Rational(1, 2);
  }

  S det_m() {
    auto M = matrix_m();
    return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
           M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  }

  /// M_ae = M_a^f ε_fe.
  Tensor<S> m_lowered() {
    const Tensor<S>& M = m();
    Tensor<S> out = make({Slot::Down, Slot::Down});
    for (int a = 0; a < 2; ++a)
      for (int e = 0; e < 2; ++e) out(a, e) = M(a, 0) * eps_lo(0, e) + M(a, 1) * eps_lo(1, e);
    return out;
  }

  /// U^e_bc and V_bc: vector and scalar parts of D_b D_c V for the section
  /// V = (F^1, F^2, β) of the dual prolongation bundle. Index order of U is
  /// (e, b, c).
  const Tensor<S>& u() {
    if (!u_) second_dual();
    return *u_;
  }
  const Tensor<S>& v() {
    if (!v_) second_dual();
    return *v_;
  }

  /// W_abc = F_e M_a^e V_(bc) - F_e U^e_(bc) N_a + β M_ae U^e_(bc).
  const Tensor<S>& w() {
    if (!w_) {
      const Tensor<S>& F = f_down();
      const Tensor<S>& M = m();
      const Tensor<S>& N = n();
      Tensor<S> Ml = m_lowered();
      Tensor<S> Vs = symmetrize(v(), 0, 1);
      Tensor<S> Us = symmetrize(u(), 1, 2);
      const S& bt = beta();
      Tensor<S> out = make({Slot::Down, Slot::Down, Slot::Down});
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c) {
            S val = zero();
            for (int e = 0; e < 2; ++e) {
              val = val + F(e) * M(a, e) * Vs(b, c) - F(e) * Us(e, b, c) * N(a) + bt * Ml(a, e) * Us(e, b, c);
            }
            out(a, b, c) = val;
          }
      w_ = std::move(out);
    }
    return *w_;
  }

  void second_dual() {
    DualSection<S> d2 = dual_d(dual_d(dual_v()));
    Tensor<S> uu = make({Slot::Up, Slot::Down, Slot::Down});
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) uu(e, b, c) = d2.vec(b, c, e);
    u_ = std::move(uu);
    v_ = d2.scalar;
  }

  /// The section V = (F^1, F^2, β) of the dual prolongation bundle.
  DualSection<S> dual_v() {
    Tensor<S> s = make({});
    s[0] = beta();
    return {f_up(), s};
  }

  /// Dual prolongation derivative; prepends a lower index to both parts.
  DualSection<S> dual_d(const DualSection<S>& x) {
    const Tensor<S>& Pm = schouten_mixed();
    const Tensor<S>& th = theta();
    const S& bt = beta();
    DualSection<S> r{nabla(x.vec), nabla(x.scalar)};
    for (std::size_t f = 0; f < r.vec.size(); ++f) {
      std::vector<int> idx = r.vec.unflatten(f);
      int a = idx.front(), b = idx.back();
      std::vector<int> rest(idx.begin() + 1, idx.end() - 1);
      S coef = Pm(b, a);
      if (a == b) coef = coef + bt * Rational(1, 2);
      r.vec[f] = r.vec[f] + x.scalar.at(rest) * coef;
    }
    for (std::size_t f = 0; f < r.scalar.size(); ++f) {
      std::vector<int> idx = r.scalar.unflatten(f);
      int a = idx.front();
      std::vector<int> rest(idx.begin() + 1, idx.end());
      S v = r.scalar[f] - x.scalar.at(rest) * th(a);
      for (int b = 0; b < 2; ++b) {
        std::vector<int> vi = rest;
        vi.push_back(b);
        v = v + x.vec.at(vi) * eps_lo(a, b);
      }
      r.scalar[f] = v;
    }
    return r;
  }

  /// Rows V, D_1V, D_2V, D_1D_1V, D_(1D_2)V, D_2D_2V.
  std::array<std::array<S, 3>, 6> rank_stack() {
    DualSection<S> v0 = dual_v();
    DualSection<S> v1 = dual_d(v0);
    DualSection<S> v2 = dual_d(v1);
    std::array<std::array<S, 3>, 6> rows;
    rows[0] = {v0.vec(0), v0.vec(1), v0.scalar[0]};
    rows[1] = {v1.vec(0, 0), v1.vec(0, 1), v1.scalar(0)};
    rows[2] = {v1.vec(1, 0), v1.vec(1, 1), v1.scalar(1)};
    rows[3] = {v2.vec(0, 0, 0), v2.vec(0, 0, 1), v2.scalar(0, 0)};
    rows[4] = {(v2.vec(0, 1, 0) + v2.vec(1, 0, 0)) * Rational(1, 2), (v2.vec(0, 1, 1) + v2.vec(1, 0, 1)) * Rational(1, 2),
               (v2.scalar(0, 1) + v2.scalar(1, 0)) * Rational(1, 2)};
    rows[5] = {v2.vec(1, 1, 0), v2.vec(1, 1, 1), v2.scalar(1, 1)};
    return rows;
  }

  /// Connection matrix of the prolongation connection on (K_1, K_2, μ):
  /// D_a Φ = d_a Φ + A_a Φ.
  std::array<std::array<S, 3>, 3> prolongation_matrix(int a) {
    const Tensor<S>& Pm = schouten_mixed();
    const Tensor<S>& th = theta();
    const S& bt = beta();
    std::array<std::array<S, 3>, 3> A;
    for (int b = 0; b < 2; ++b) {
      for (int e = 0; e < 2; ++e) A[b][e] = -gamma(e, a, b);
      A[b][2] = -eps_lo(a, b);
      S coef = Pm(b, a);
      if (a == b) coef = coef + bt * Rational(1, 2);
      A[2][b] = -coef;
    }
    A[2][2] = th(a);
    return A;
  }

  /// Curvature D_1 D_2 - D_2 D_1 of the prolongation connection.
  std::array<std::array<S, 3>, 3> prolongation_curvature() {
    auto A0 = prolongation_matrix(0);
    auto A1 = prolongation_matrix(1);
    std::array<std::array<S, 3>, 3> out;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        S v = calc_.d(A1[i][j], 0) - calc_.d(A0[i][j], 1);
        for (int k = 0; k < 3; ++k) v = v + A0[i][k] * A1[k][j] - A1[i][k] * A0[k][j];
        out[i][j] = v;
      }
    return out;
  }

  /// D_a applied to Ψ = (K_1, K_2, μ); entry [a][row].
  std::array<std::array<S, 3>, 2> prolongation_apply(const std::array<S, 3>& psi) {
    std::array<std::array<S, 3>, 2> out;
    for (int a = 0; a < 2; ++a) {
      auto A = prolongation_matrix(a);
      for (int i = 0; i < 3; ++i) {
        S v = calc_.d(psi[i], a);
        for (int j = 0; j < 3; ++j) v = v + A[i][j] * psi[j];
        out[a][i] = v;
      }
    }
    return out;
  }

 private:
  template <class F>
  const Tensor<S>& cached(std::optional<Tensor<S>>& slot, F&& f) {
    if (!slot) slot = f();
    return *slot;
  }

  Calc calc_;
  Connection<S> conn_;
  S einv_;
  std::optional<Tensor<S>> riemann_, ricci_, schouten_, skew_, theta_, schouten_mixed_, nabla_p_, nabla2_p_, nabla_b_,
      nabla2_b_, nabla3_b_, cotton_, cotton_y_, nabla_y_, nabla2_y_, f_up_, f_down_, m_, n_, t_, u_, v_, w_;
  std::optional<S> beta_, i_n_;
};

/// A-coefficients of the geodesic ODE y'' = A0 + A1 y' + A2 y'^2 + A3 y'^3.
template <class S>
std::array<S, 4> ode_coefficients(const Connection<S>& c) {
  return {-c.gamma(1, 0, 0), c.gamma(0, 0, 0) - c.gamma(1, 0, 1) * Rational(2), c.gamma(0, 0, 1) * Rational(2) - c.gamma(1, 1, 1),
          c.gamma(0, 1, 1)};
}

/// Liouville invariants (L1, L2) of the ODE with coefficients A, with d(·,0)
/// and d(·,1) the x and y derivatives.
template <class Calc>
std::array<typename Calc::Scalar, 2> liouville(const std::array<typename Calc::Scalar, 4>& A, const Calc& c) {
  auto dx = [&](const auto& e) { return c.d(e, 0); };
  auto dy = [&](const auto& e) { return c.d(e, 1); };
  const auto& A0 = A[0];
  const auto& A1 = A[1];
  const auto& A2 = A[2];
  const auto& A3 = A[3];
  auto L1 = dy(dx(A1)) * Rational(2, 3) - dx(dx(A2)) * Rational(1, 3) - dy(dy(A0)) + A0 * dy(A2) + A2 * dy(A0) -
            A3 * dx(A0) - A0 * dx(A3) * Rational(2) - A1 * dy(A1) * Rational(2, 3) + A1 * dx(A2) * Rational(1, 3);
  auto L2 = dy(dx(A2)) * Rational(2, 3) - dy(dy(A1)) * Rational(1, 3) - dx(dx(A3)) - A3 * dx(A1) - A1 * dx(A3) +
            A0 * dy(A3) + A3 * dy(A0) * Rational(2) + A2 * dx(A2) * Rational(2, 3) - A2 * dy(A1) * Rational(1, 3);
  return {L1, L2};
}

}  // namespace projclass
