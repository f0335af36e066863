#pragma once

#include "projclass/bigfloat.hpp"

namespace projclass {

/// A value paired with a bound on the magnitude of the quantities that
/// produced it. Rounding error in `value` is of order 2^-prec * `mag`.
struct Tracked {
  static constexpr mpfr_prec_t kMagPrecision = 32;

  BigFloat value;
  BigFloat mag{kMagPrecision};

  Tracked() = default;
  Tracked(BigFloat v, BigFloat m) : value(std::move(v)), mag(std::move(m)) {}

  static Tracked constant(const Rational& q) {
    BigFloat v = BigFloat::from_rational(q);
    return Tracked(v, abs(v).rounded(kMagPrecision));
  }

  /// |value| / mag, or 0 when mag vanishes.
  BigFloat ratio() const;
};

Tracked operator+(const Tracked& a, const Tracked& b);
Tracked operator-(const Tracked& a, const Tracked& b);
Tracked operator-(const Tracked& a);
Tracked operator*(const Tracked& a, const Tracked& b);
Tracked operator*(const Tracked& a, const Rational& q);
/// Throws EvaluationError(Pole) on an exactly vanishing divisor.
Tracked operator/(const Tracked& a, const Tracked& b);
Tracked exp(const Tracked& a);
Tracked log(const Tracked& a);
Tracked sin(const Tracked& a);
Tracked cos(const Tracked& a);
Tracked pow(const Tracked& a, const Rational& q);

}  // namespace projclass
