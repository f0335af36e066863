#include "projclass/killing.hpp"

#include <sstream>

#include "projclass/antiderivative.hpp"
#include "projclass/linalg.hpp"

namespace projclass {

namespace {

constexpr double kRankThreshold = 1e-20;

std::vector<Tracked> values(std::initializer_list<const Jet*> js) {
  std::vector<Tracked> out;
  for (const Jet* j : js) out.push_back(j->value());
  return out;
}

bool unusable(const ZeroResult& r) { return r.verdict == Verdict::Indeterminate || r.mixed; }

std::string describe(const std::string& name, const ZeroResult& r) {
  std::string s = name + "=" + to_string(r.verdict);
  if (r.mixed) s += "(mixed)";
  return s;
}

[[noreturn]] void unclassified(const std::string& name, const ZeroResult& r) {
  throw UnclassifiedStratum("verdict for " + describe(name, r) + " does not classify the sampling box (" +
                            std::to_string(r.points_used) + " points used, " + std::to_string(r.points_failed) +
                            " failed)");
}

void consult(KillingEvidence& ev, const std::string& name, const ZeroResult& r) {
  if (unusable(r)) unclassified(name, r);
  ev.fired.push_back(describe(name, r));
}

}  // namespace

ObstructionSet obstruction_set(const Connection2D& c, const ZeroTestPolicy& policy, bool with_w) {
  Geometry<SymbolicCalculus> g = c.geometry();
  ObstructionSet o;
  o.beta = g.beta();
  o.f_up = g.f_up();
  o.m = g.m();
  o.n = g.n();
  o.matrix_m = g.matrix_m();
  o.i_n = g.i_n();
  o.t = g.t();
  if (with_w) {
    o.u = g.u();
    o.v = g.v();
    o.w = g.w();
    o.i_s = std::array<Expr, 2>{(*o.w)(0, 0, 0), (*o.w)(1, 1, 1)};
  }
  auto checks = sample_verdicts(c.ctx, policy, 2, [&](const SamplePoint& p) {
    Geometry<JetCalculus> j = c.geometry_at(p, 3);
    Jet dm = j.det_m() - j.i_n();
    Jet dt = j.det_t() - j.beta() * j.i_n();
    return values({&dm, &dt});
  });
  o.det_m_identity = checks[0];
  o.det_t_identity = checks[1];
  return o;
}

std::array<std::array<Expr, 3>, 2> prolongation_apply(const Connection2D& c, const ProlongationSection& psi) {
  Geometry<SymbolicCalculus> g = c.geometry();
  return g.prolongation_apply({psi.k1, psi.k2, psi.mu});
}

KillingCount count_killing_forms(const Connection2D& c, const ZeroTestPolicy& policy) {
  KillingCount out;
  KillingEvidence& ev = out.evidence;
  auto first = sample_verdicts(c.ctx, policy, 7, [&](const SamplePoint& p) {
    Geometry<JetCalculus> g = c.geometry_at(p, 3);
    auto A = ode_coefficients(g.connection());
    auto L = liouville(A, g.calc());
    const Tensor<Jet>& T = g.t();
    return values({&g.beta(), &L[0], &L[1], &T[0], &T[1], &T[2], &T[3]});
  });
  ev.beta = first[0];
  ev.l1 = first[1];
  ev.l2 = first[2];
  for (int i = 0; i < 4; ++i) ev.t[static_cast<std::size_t>(i)] = first[static_cast<std::size_t>(3 + i)];

  consult(ev, "beta", ev.beta);
  if (ev.beta.is_zero()) {
    consult(ev, "L1", ev.l1);
    if (ev.l1.is_zero()) {
      consult(ev, "L2", ev.l2);
      if (ev.l2.is_zero()) {
        out.count = 3;
        return out;
      }
    }
  } else {
    bool all_zero = true;
    for (int i = 0; i < 4 && all_zero; ++i) {
      const ZeroResult& r = ev.t[static_cast<std::size_t>(i)];
      consult(ev, "T" + std::to_string(i / 2 + 1) + std::to_string(i % 2 + 1), r);
      all_zero = r.is_zero();
    }
    if (all_zero) {
      out.count = 2;
      return out;
    }
  }

  auto second = sample_verdicts(c.ctx, policy, 3, [&](const SamplePoint& p) {
    Geometry<JetCalculus> g = c.geometry_at(p, 4);
    const Tensor<Jet>& W = g.w();
    return values({&g.i_n(), &W(0, 0, 0), &W(1, 1, 1)});
  });
  ev.i_n = second[0];
  ev.w111 = second[1];
  ev.w222 = second[2];
  consult(ev, "I_N", ev.i_n);
  if (ev.i_n.is_zero()) {
    consult(ev, "W111", ev.w111);
    if (ev.w111.is_zero()) {
      consult(ev, "W222", ev.w222);
      if (ev.w222.is_zero()) {
        out.count = 1;
        return out;
      }
    }
  }
  out.count = 0;
  return out;
}

RankReport rank_stack_check(const Connection2D& c, const ZeroTestPolicy& policy) {
  auto outcomes = sample_points(c.ctx, policy, [&](const SamplePoint& p) {
    Geometry<JetCalculus> g = c.geometry_at(p, 4);
    auto rows = g.rank_stack();
    std::vector<std::vector<Tracked>> vals;
    for (const auto& row : rows) vals.push_back({row[0].value(), row[1].value(), row[2].value()});
    int r = numeric_rank(denoised(vals, policy.relative_tolerance), kRankThreshold);
    return std::vector<Tracked>{Tracked::constant(r)};
  });
  RankReport rep;
  for (const SampleOutcome& o : outcomes) {
    if (!o.ok) throw DomainError("rank stack could not be evaluated at a sample point");
    rep.per_point.push_back(static_cast<int>(o.values[0].value.to_double()));
  }
  rep.rank = rep.per_point.front();
  for (int r : rep.per_point) {
    if (r != rep.rank) throw DomainError("numeric rank of the stacked derivatives differs across sample points");
  }
  return rep;
}

Reconstruction reconstruct_candidate(const Connection2D& c, const ZeroTestPolicy& policy) {
  auto ranks = sample_points(c.ctx, policy, [&](const SamplePoint& p) {
    Geometry<JetCalculus> g = c.geometry_at(p, 3);
    auto M = g.matrix_m();
    std::vector<std::vector<Tracked>> vals;
    for (const auto& row : M) vals.push_back({row[0].value(), row[1].value(), row[2].value()});
    return std::vector<Tracked>{Tracked::constant(numeric_rank(denoised(vals, policy.relative_tolerance), kRankThreshold))};
  });
  for (const SampleOutcome& o : ranks) {
    if (!o.ok) throw DomainError("matrix 𝓜 could not be evaluated at a sample point");
    int r = static_cast<int>(o.values[0].value.to_double());
    if (r != 2) throw DomainError("rank of 𝓜 is " + std::to_string(r) + ", not 2, at " + o.point.to_string());
  }

  Geometry<SymbolicCalculus> g = c.geometry();
  auto M = g.matrix_m();
  auto cross = [](const std::array<Expr, 3>& a, const std::array<Expr, 3>& b) {
    return std::array<Expr, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  Reconstruction rec;
  bool found = false;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pr : pairs) {
    auto n = cross(M[static_cast<std::size_t>(pr[0])], M[static_cast<std::size_t>(pr[1])]);
    auto v = are_identically_zero({n[0], n[1], n[2]}, c.ctx, policy);
    for (std::size_t k = 0; k < 3 && !found; ++k) {
      if (!v[k].is_nonzero() || v[k].mixed) continue;
      const Expr pivot = n[k];
      for (auto& e : n) e = e / pivot;
      rec.direction = n;
      found = true;
      auto Dn = g.prolongation_apply(n);
      for (int a = 0; a < 2; ++a) rec.omega[static_cast<std::size_t>(a)] = -Dn[static_cast<std::size_t>(a)][k];
    }
    if (found) break;
  }
  if (!found) throw DomainError("no null direction of 𝓜 is nonzero on the sampling box");

  const std::string& X = c.frame.vars[0];
  const std::string& Y = c.frame.vars[1];
  SymbolicCalculus calc = c.calculus();
  rec.closure = is_identically_zero(calc.d(rec.omega[1], 0) - calc.d(rec.omega[0], 1), c.ctx, policy);
  if (!rec.closure.is_zero()) {
    rec.status = "not closed";
    return rec;
  }
  rec.status = "consistent, closed form unavailable";
  if (c.frame.jinv) return rec;
  auto phi1 = antiderivative(rec.omega[0], X);
  if (!phi1) return rec;
  Expr rest = rec.omega[1] - differentiate(*phi1, Y);
  if (!is_identically_zero(differentiate(rest, X), c.ctx, policy).is_zero()) return rec;
  Expr rest_y = substitute(rest, {{X, Expr(1)}});
  auto phi2 = antiderivative(rest_y, Y);
  if (!phi2) return rec;
  Expr lambda = exp(*phi1 + *phi2);
  ProlongationSection s{lambda * rec.direction[0], lambda * rec.direction[1], lambda * rec.direction[2]};
  auto res = g.prolongation_apply({s.k1, s.k2, s.mu});
  std::vector<Expr> flat;
  for (const auto& row : res) flat.insert(flat.end(), row.begin(), row.end());
  auto verdicts = are_identically_zero(flat, c.ctx, policy);
  for (const auto& v : verdicts) {
    if (!v.is_zero()) return rec;
  }
  rec.section = s;
  rec.status = "closed form";
  return rec;
}

NormalForm normal_form_rank2(const Context& ctx, int c, const Expr& P, const Expr& Q, const ZeroTestPolicy& policy) {
  if (c != 0 && c != 1) throw DomainError("normal form constant must be 0 or 1");
  if (is_identically_zero(Q, ctx, policy).is_zero()) throw DomainError("Q vanishes identically");
  Connection2D conn(ctx);
  const std::string& X = conn.frame.vars[0];
  const std::string& Y = conn.frame.vars[1];
  Expr cc(c);
  conn.set(0, 0, 1, cc * Expr(Rational(1, 2)));
  conn.set(1, 0, 0, differentiate(P, X) / Q);
  conn.set(1, 0, 1, (differentiate(P, Y) + differentiate(Q, X) - cc * P) / (Expr(2) * Q));
  conn.set(1, 1, 1, differentiate(Q, Y) / Q);
  NormalForm nf{conn, {{{exp(cc * sym(Y)), Expr(0)}, {P, Q}}}, exp(-cc * sym(Y)) * (P + sym("p") * Q), {}};
  nf.beta = is_identically_zero(curvature_data(conn).beta, ctx, policy);
  return nf;
}

Tensor<Expr> killing_residual(const Connection2D& c, const std::array<Expr, 2>& k) {
  Geometry<SymbolicCalculus> g = c.geometry();
  Tensor<Expr> K({Slot::Down}, Expr(0));
  K(0) = k[0];
  K(1) = k[1];
  return symmetrize(g.nabla(K), 0, 1);
}

}  // namespace projclass
