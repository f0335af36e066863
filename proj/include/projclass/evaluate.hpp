#pragma once

#include <array>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "projclass/context.hpp"
#include "projclass/jet.hpp"
#include "projclass/tracked.hpp"

namespace projclass {

/// Exact rational coordinates for the declared identifiers.
struct SamplePoint {
  std::vector<std::pair<std::string, Rational>> coords;

  const Rational* find(const std::string& name) const;
  const Rational& at(const std::string& name) const;
  void set(const std::string& name, const Rational& v);
  std::string to_string() const;
};

/// Evaluates `e` bottom-up in the numeric algebra `Num`, which must provide
/// +, -, *, / and exp/log/sin/cos/pow(Num, Rational) found by lookup.
template <class Num>
Num evaluate_in(const Expr& e, const std::function<Num(const std::string&)>& leaf,
                const std::function<Num(const Rational&)>& constant) {
  std::unordered_map<const void*, Num> memo;
  std::function<Num(const Expr&)> go = [&](const Expr& x) -> Num {
    auto it = memo.find(x.node());
    if (it != memo.end()) return it->second;
    Num r;
    switch (x.kind()) {
      case Expr::Kind::Num:
        r = constant(x.number());
        break;
      case Expr::Kind::Sym:
        r = leaf(x.name());
        break;
      case Expr::Kind::Add: {
        r = go(x.args()[0]);
        for (std::size_t i = 1; i < x.args().size(); ++i) r = r + go(x.args()[i]);
        break;
      }
      case Expr::Kind::Mul: {
        r = go(x.args()[0]);
        for (std::size_t i = 1; i < x.args().size(); ++i) r = r * go(x.args()[i]);
        if (x.number() != 1) r = r * x.number();
        break;
      }
      case Expr::Kind::Pow: {
        Num b = go(x.base());
        const Rational& q = x.exponent();
        if (q.get_den() == 1 && q.get_num().fits_slong_p() && abs(q.get_num()) <= 64) {
          long n = q.get_num().get_si();
          unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
          Num acc = b;
          Num base = b;
          bool have = false;
          while (m > 0) {
            if (m & 1UL) {
              acc = have ? acc * base : base;
              have = true;
            }
            m >>= 1;
            if (m > 0) base = base * base;
          }
          r = n < 0 ? constant(Rational(1)) / acc : acc;
        } else {
          r = pow(b, q);
        }
        break;
      }
      case Expr::Kind::Func: {
        Num u = go(x.args()[0]);
        switch (x.func()) {
          case FuncKind::Ln:
            r = log(u);
            break;
          case FuncKind::Exp:
            r = exp(u);
            break;
          case FuncKind::Sin:
            r = sin(u);
            break;
          case FuncKind::Cos:
            r = cos(u);
            break;
        }
        break;
      }
    }
    memo.emplace(x.node(), r);
    return r;
  };
  return go(e);
}

/// Value with magnitude bound at the current working precision.
Tracked evaluate_tracked(const Expr& e, const SamplePoint& p);

/// Value at `precision` bits, computed with guard bits.
BigFloat evaluate_bigfloat(const Expr& e, const SamplePoint& p, mpfr_prec_t precision);

/// Taylor expansion in `vars` around `p`; other symbols are constants.
Jet taylor(const Expr& e, const SamplePoint& p, const std::array<std::string, 2>& vars, int order);

}  // namespace projclass
