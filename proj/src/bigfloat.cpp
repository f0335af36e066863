#include "projclass/bigfloat.hpp"

#include <cstdlib>
#include <memory>

#include "projclass/tracked.hpp"

namespace projclass {

namespace {
thread_local mpfr_prec_t tl_precision = 320;
}

mpfr_prec_t working_precision() noexcept { return tl_precision; }

PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(tl_precision) { tl_precision = bits; }
PrecisionScope::~PrecisionScope() { tl_precision = saved_; }

std::string BigFloat::to_string(int digits) const {
  char* out = nullptr;
  mpfr_asprintf(&out, "%.*Re", digits - 1, v_);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  if (x.sign() <= 0) {
    throw EvaluationError(x.is_zero() ? EvaluationError::Reason::Pole : EvaluationError::Reason::Branch,
                          "logarithm of non-positive value");
  }
  BigFloat r(x.precision());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat sin(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat cos(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) { return pow(x, Rational(1, 2)); }

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat pow(const BigFloat& x, const Rational& q) {
  const mpz_class& p = q.get_num();
  const mpz_class& d = q.get_den();
  BigFloat r(x.precision());
  if (x.is_zero()) {
    if (sgn(p) < 0) throw EvaluationError(EvaluationError::Reason::Pole, "zero raised to a negative power");
    if (sgn(p) == 0) mpfr_set_si(r.raw(), 1, MPFR_RNDN);
    return r;
  }
  if (d == 1) {
    mpfr_pow_z(r.raw(), x.raw(), p.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  if (!d.fits_ulong_p()) throw EvaluationError(EvaluationError::Reason::Branch, "root index too large");
  bool negative = x.sign() < 0;
  if (negative && mpz_even_p(d.get_mpz_t())) {
    throw EvaluationError(EvaluationError::Reason::Branch, "even root of a negative value");
  }
  BigFloat ax = abs(x);
  BigFloat root(x.precision());
  mpfr_rootn_ui(root.raw(), ax.raw(), d.get_ui(), MPFR_RNDN);
  mpfr_pow_z(r.raw(), root.raw(), p.get_mpz_t(), MPFR_RNDN);
  if (negative && mpz_odd_p(p.get_mpz_t())) mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

BigFloat Tracked::ratio() const {
  if (mag.is_zero()) return BigFloat(kMagPrecision);
  return abs(value).rounded(kMagPrecision) / mag;
}

namespace {
BigFloat mag_of(const BigFloat& v) { return abs(v).rounded(Tracked::kMagPrecision); }
}  // namespace

Tracked operator+(const Tracked& a, const Tracked& b) { return Tracked(a.value + b.value, a.mag + b.mag); }
Tracked operator-(const Tracked& a, const Tracked& b) { return Tracked(a.value - b.value, a.mag + b.mag); }
Tracked operator-(const Tracked& a) { return Tracked(-a.value, a.mag); }
Tracked operator*(const Tracked& a, const Tracked& b) { return Tracked(a.value * b.value, a.mag * b.mag); }
Tracked operator*(const Tracked& a, const Rational& q) {
  return Tracked(a.value * q, a.mag * Rational(abs(q)));
}

Tracked operator/(const Tracked& a, const Tracked& b) {
  if (b.value.is_zero()) throw EvaluationError(EvaluationError::Reason::Pole, "division by zero");
  BigFloat v = a.value / b.value;
  BigFloat bm = mag_of(b.value);
  BigFloat m = (a.mag + mag_of(v) * b.mag) / bm;
  return Tracked(std::move(v), std::move(m));
}

Tracked exp(const Tracked& a) {
  BigFloat v = exp(a.value);
  BigFloat one = BigFloat::from_long(1, Tracked::kMagPrecision);
  return Tracked(v, mag_of(v) * (one + a.mag));
}

Tracked log(const Tracked& a) {
  BigFloat v = log(a.value);
  return Tracked(v, mag_of(v) + a.mag / mag_of(a.value));
}

Tracked sin(const Tracked& a) {
  BigFloat v = sin(a.value);
  return Tracked(v, mag_of(v) + a.mag);
}

Tracked cos(const Tracked& a) {
  BigFloat v = cos(a.value);
  return Tracked(v, mag_of(v) + a.mag);
}

Tracked pow(const Tracked& a, const Rational& q) {
  BigFloat v = pow(a.value, q);
  BigFloat one = BigFloat::from_long(1, Tracked::kMagPrecision);
  BigFloat rel = a.mag / mag_of(a.value) * Rational(abs(q));
  return Tracked(v, mag_of(v) * (one + rel));
}

}  // namespace projclass
