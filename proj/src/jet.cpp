#include "projclass/jet.hpp"

#include <algorithm>

namespace projclass {

Jet Jet::constant(const Tracked& v, int order) {
  Jet j;
  j.order_ = order;
  j.c_.assign(size_for(order), Tracked());
  j.c_[0] = v;
  return j;
}

Jet Jet::variable(int axis, const Tracked& v, int order) {
  Jet j = constant(v, order);
  if (order >= 1) j.coeff(axis == 0 ? 1 : 0, axis == 0 ? 0 : 1) = Tracked::constant(1);
  return j;
}

Tracked Jet::derivative(int i, int j) const {
  mpz_class f = 1;
  for (int k = 2; k <= i; ++k) f *= k;
  for (int k = 2; k <= j; ++k) f *= k;
  return coeff(i, j) * Rational(f);
}

Jet Jet::partial(int axis) const {
  Jet r;
  r.order_ = std::max(order_ - 1, 0);
  r.c_.assign(size_for(r.order_), Tracked());
  if (order_ == 0) return r;
  for (int k = 0; k <= r.order_; ++k) {
    for (int j = 0; j <= k; ++j) {
      int i = k - j;
      r.coeff(i, j) = axis == 0 ? coeff(i + 1, j) * Rational(i + 1) : coeff(i, j + 1) * Rational(j + 1);
    }
  }
  return r;
}

Jet Jet::truncated(int order) const {
  if (order >= order_) return *this;
  Jet r;
  r.order_ = order;
  r.c_.assign(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(size_for(order)));
  return r;
}

Jet& Jet::operator+=(const Jet& o) { return *this = *this + o; }
Jet& Jet::operator-=(const Jet& o) { return *this = *this - o; }

Jet operator+(const Jet& a, const Jet& b) {
  Jet r = a.truncated(std::min(a.order_, b.order_));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r = a.truncated(std::min(a.order_, b.order_));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
  return r;
}

Jet operator-(const Jet& a) {
  Jet r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

Jet operator*(const Jet& a, const Rational& q) {
  Jet r = a;
  for (auto& c : r.c_) c = c * q;
  return r;
}

void Jet::fma_component(Tracked* out, const Tracked* a, int p, const Tracked* b, int q, const Rational& s) {
  for (int ja = 0; ja <= p; ++ja) {
    for (int jb = 0; jb <= q; ++jb) {
      Tracked t = a[ja] * b[jb];
      out[ja + jb] = out[ja + jb] + (s == 1 ? t : t * s);
    }
  }
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r = Jet::constant(Tracked(), std::min(a.order_, b.order_));
  r.c_[0] = Tracked();
  for (int k = 0; k <= r.order_; ++k) {
    for (int p = 0; p <= k; ++p) {
      Jet::fma_component(r.component(k), a.component(p), p, b.component(k - p), k - p, Rational(1));
    }
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  int n = std::min(a.order_, b.order_);
  Jet q = Jet::constant(Tracked(), n);
  const Tracked& b0 = b.c_[0];
  for (int k = 0; k <= n; ++k) {
    Tracked* qk = q.component(k);
    const Tracked* ak = a.component(k);
    for (int j = 0; j <= k; ++j) qk[j] = ak[j];
    for (int j = 1; j <= k; ++j) Jet::fma_component(qk, b.component(j), j, q.component(k - j), k - j, Rational(-1));
    for (int j = 0; j <= k; ++j) qk[j] = qk[j] / b0;
  }
  return q;
}

Jet exp(const Jet& u) {
  Jet g = Jet::constant(exp(u.c_[0]), u.order_);
  for (int k = 1; k <= u.order_; ++k) {
    for (int j = 1; j <= k; ++j) {
      Jet::fma_component(g.component(k), u.component(j), j, g.component(k - j), k - j, Rational(j, k));
    }
  }
  return g;
}

Jet log(const Jet& u) {
  Jet g = Jet::constant(log(u.c_[0]), u.order_);
  const Tracked& u0 = u.c_[0];
  for (int k = 1; k <= u.order_; ++k) {
    Tracked* gk = g.component(k);
    const Tracked* uk = u.component(k);
    for (int j = 0; j <= k; ++j) gk[j] = uk[j];
    for (int j = 1; j < k; ++j) Jet::fma_component(gk, g.component(j), j, u.component(k - j), k - j, Rational(-j, k));
    for (int j = 0; j <= k; ++j) gk[j] = gk[j] / u0;
  }
  return g;
}

Jet pow(const Jet& u, const Rational& a) {
  Jet g = Jet::constant(pow(u.c_[0], a), u.order_);
  const Tracked& u0 = u.c_[0];
  for (int k = 1; k <= u.order_; ++k) {
    Tracked* gk = g.component(k);
    for (int j = 1; j <= k; ++j) {
      Rational s = (a * j - (k - j)) / k;
      if (s != 0) Jet::fma_component(gk, u.component(j), j, g.component(k - j), k - j, s);
    }
    for (int j = 0; j <= k; ++j) gk[j] = gk[j] / u0;
  }
  return g;
}

void Jet::sincos(const Jet& u, Jet& s, Jet& c) {
  s = Jet::constant(sin(u.c_[0]), u.order_);
  c = Jet::constant(cos(u.c_[0]), u.order_);
  for (int k = 1; k <= u.order_; ++k) {
    for (int j = 1; j <= k; ++j) {
      fma_component(s.component(k), u.component(j), j, c.component(k - j), k - j, Rational(j, k));
      fma_component(c.component(k), u.component(j), j, s.component(k - j), k - j, Rational(-j, k));
    }
  }
}

Jet sin(const Jet& u) {
  Jet s, c;
  Jet::sincos(u, s, c);
  return s;
}

Jet cos(const Jet& u) {
  Jet s, c;
  Jet::sincos(u, s, c);
  return c;
}

}  // namespace projclass
