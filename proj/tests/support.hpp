#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "projclass/hydro.hpp"

namespace projclass::testing {

/// Seeded generator of small random polynomials in two variables.
class RandomPoly {
 public:
  explicit RandomPoly(std::uint64_t seed, std::array<std::string, 2> vars = {"X", "Y"})
      : rng_(seed), vars_(std::move(vars)) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Sum of monomials of total degree <= degree with coefficients in [-3, 3].
  Expr poly(int degree = 2) {
    Expr x = sym(vars_[0]), y = sym(vars_[1]);
    Expr out(0);
    for (int i = 0; i <= degree; ++i)
      for (int j = 0; i + j <= degree; ++j) {
        int c = integer(-3, 3);
        if (c != 0) out += Expr(c) * pow(x, i) * pow(y, j);
      }
    return out;
  }

  /// Positive on the default box [1, 3]^2.
  Expr positive(int degree = 1) {
    Expr x = sym(vars_[0]), y = sym(vars_[1]);
    Expr out(integer(1, 3));
    for (int i = 0; i <= degree; ++i)
      for (int j = 0; i + j <= degree; ++j) {
        if (i + j == 0) continue;
        int c = integer(0, 2);
        if (c != 0) out += Expr(c) * pow(x, i) * pow(y, j);
      }
    return out;
  }

  Connection2D connection(int degree = 1) {
    Connection2D c;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int d = b; d < 2; ++d) c.set(a, b, d, poly(degree));
    return c;
  }

  ProjectiveODE ode(int degree = 1) {
    ProjectiveODE o;
    o.ctx = Context({"x", "y"});
    RandomPoly inner(rng_(), {"x", "y"});
    for (auto& a : o.A) a = inner.poly(degree);
    return o;
  }

 private:
  std::mt19937_64 rng_;
  std::array<std::string, 2> vars_;
};

/// Zero verdicts of jet-valued quantities evaluated at the sample points.
inline std::vector<ZeroResult> pointwise(const Connection2D& c, int order,
                                         const std::function<std::vector<Jet>(Geometry<JetCalculus>&)>& f,
                                         const ZeroTestPolicy& policy = {}) {
  std::size_t count = 0;
  auto outcomes = sample_points(c.ctx, policy, [&](const SamplePoint& p) {
    Geometry<JetCalculus> g = c.geometry_at(p, order);
    std::vector<Tracked> out;
    for (const Jet& j : f(g)) out.push_back(j.value());
    count = out.size();
    return out;
  });
  return classify_samples(outcomes, policy, count);
}

inline bool all_zero(const std::vector<ZeroResult>& rs) {
  for (const auto& r : rs) {
    if (!r.is_zero()) return false;
  }
  return !rs.empty();
}

inline bool all_zero(const std::vector<Expr>& es, const Context& ctx, const ZeroTestPolicy& policy = {}) {
  return all_zero(are_identically_zero(es, ctx, policy));
}

inline std::string verdicts(const std::vector<ZeroResult>& rs) {
  std::string s;
  for (const auto& r : rs) s += to_string(r.verdict) + (r.mixed ? "(mixed) " : " ");
  return s;
}

/// Connection of a hydrodynamic system given directly by A and B.
inline Connection2D hydro_connection(const Expr& A, const Expr& B, const Context& ctx = Context({"X", "Y"})) {
  return characteristic_connection(HydroSystem2::from_ab(ctx, A, B));
}

}  // namespace projclass::testing
