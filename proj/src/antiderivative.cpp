#include "projclass/antiderivative.hpp"

#include <functional>
#include <unordered_set>
#include <vector>

namespace projclass {

namespace {

std::optional<Expr> term_antiderivative(const Expr& t, const std::string& var) {
  if (!depends_on(t, var)) return t * sym(var);
  auto [c, key] = split_coefficient(t);
  std::vector<Expr> factors = key.kind() == Expr::Kind::Mul ? key.args() : std::vector<Expr>{key};
  std::vector<Expr> rest{Expr(c)};
  std::optional<Expr> dependent;
  for (const Expr& f : factors) {
    if (!depends_on(f, var)) {
      rest.push_back(f);
    } else if (dependent) {
      return std::nullopt;
    } else {
      dependent = f;
    }
  }
  Expr coefficient = mul(std::move(rest));
  const Expr& f = *dependent;
  if (f.kind() == Expr::Kind::Func && f.func() == FuncKind::Exp) {
    Expr a = differentiate(f.args()[0], var);
    if (depends_on(a, var)) return std::nullopt;
    return coefficient * f / a;
  }
  auto [u, q] = split_power(f);
  if (u.kind() == Expr::Kind::Func) return std::nullopt;
  Expr a = differentiate(u, var);
  if (a.is_zero() || depends_on(a, var)) return std::nullopt;
  if (q == -1) return coefficient * ln(u) / a;
  Rational q1 = q + 1;
  return coefficient * pow(u, q1) / (Expr(q1) * a);
}

std::optional<Expr> termwise(const Expr& e, const std::string& var) {
  std::vector<Expr> terms = e.kind() == Expr::Kind::Add ? e.args() : std::vector<Expr>{e};
  std::vector<Expr> out;
  for (const Expr& t : terms) {
    auto r = term_antiderivative(t, var);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return add(std::move(out));
}

/// First sum raised to a power that is affine in `var` with a var-free slope.
std::optional<Expr> affine_base(const Expr& e, const std::string& var) {
  std::unordered_set<const ExprNode*> seen;
  std::optional<Expr> found;
  std::function<void(const Expr&)> walk = [&](const Expr& x) {
    if (found || !seen.insert(x.node()).second || !depends_on(x, var)) return;
    if (x.kind() == Expr::Kind::Pow && x.base().kind() == Expr::Kind::Add) {
      Expr a = differentiate(x.base(), var);
      if (!a.is_zero() && !depends_on(a, var)) {
        found = x.base();
        return;
      }
    }
    if (x.kind() != Expr::Kind::Num && x.kind() != Expr::Kind::Sym) {
      for (const Expr& c : x.args()) walk(c);
    }
  };
  walk(e);
  return found;
}

}  // namespace

std::optional<Expr> antiderivative(const Expr& e, const std::string& var) {
  if (auto r = termwise(e, var)) return r;
  // Rewrite in u = a*var + b so that polynomial prefactors become powers of u.
  auto u = affine_base(e, var);
  if (!u) return std::nullopt;
  const std::string t = "__affine_" + var;
  Expr a = differentiate(*u, var);
  Expr b = substitute(*u, {{var, Expr(0)}});
  Expr rebased = substitute(e, {{var, (sym(t) - b) / a}});
  if (depends_on(rebased, var)) return std::nullopt;
  auto r = termwise(rebased, t);
  if (!r) return std::nullopt;
  return substitute(*r / a, {{t, *u}});
}

}  // namespace projclass
