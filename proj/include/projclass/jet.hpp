#pragma once

#include <vector>

#include "projclass/tracked.hpp"

namespace projclass {

/// Truncated bivariate Taylor series sum c_ij x^i y^j, i + j <= order,
/// stored by homogeneous degree.
class Jet {
 public:
  Jet() = default;
  static Jet constant(const Tracked& v, int order);
  static Jet constant(const Rational& q, int order) { return constant(Tracked::constant(q), order); }
  /// The coordinate function `axis` (0 or 1) expanded around `v`.
  static Jet variable(int axis, const Tracked& v, int order);

  int order() const { return order_; }
  const Tracked& value() const { return c_[0]; }
  const Tracked& coeff(int i, int j) const { return c_[index(i, j)]; }
  Tracked& coeff(int i, int j) { return c_[index(i, j)]; }
  /// Partial derivative d^i/dx^i d^j/dy^j at the expansion point.
  Tracked derivative(int i, int j) const;

  /// Derivative along `axis`; the result has order one less.
  Jet partial(int axis) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Rational& q);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet exp(const Jet& u);
  friend Jet log(const Jet& u);
  friend Jet sin(const Jet& u);
  friend Jet cos(const Jet& u);
  friend Jet pow(const Jet& u, const Rational& q);

 private:
  static std::size_t index(int i, int j) {
    std::size_t k = static_cast<std::size_t>(i + j);
    return k * (k + 1) / 2 + static_cast<std::size_t>(j);
  }
  static std::size_t size_for(int order) { return index(0, order) + 1; }
  Tracked* component(int k) { return c_.data() + index(k, 0); }
  const Tracked* component(int k) const { return c_.data() + index(k, 0); }
  /// out_{p+q} += s * a_p * b_q over homogeneous components.
  static void fma_component(Tracked* out, const Tracked* a, int p, const Tracked* b, int q, const Rational& s);
  static void sincos(const Jet& u, Jet& s, Jet& c);

  int order_ = 0;
  std::vector<Tracked> c_;
};

}  // namespace projclass
