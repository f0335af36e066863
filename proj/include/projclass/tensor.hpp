#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "projclass/evaluate.hpp"
#include "projclass/expr.hpp"
#include "projclass/jet.hpp"

namespace projclass {

enum class Slot : std::uint8_t { Up, Down };

/// Tensor over a two-dimensional base with scalars of type S. Entries are
/// stored row-major with index values 0 and 1.
template <class S>
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::vector<Slot> valence, const S& fill)
      : valence_(std::move(valence)), data_(std::size_t{1} << valence_.size(), fill) {}

  int rank() const { return static_cast<int>(valence_.size()); }
  const std::vector<Slot>& valence() const { return valence_; }
  std::size_t size() const { return data_.size(); }

  S& operator[](std::size_t flat) { return data_[flat]; }
  const S& operator[](std::size_t flat) const { return data_[flat]; }

  template <class... I>
  S& operator()(I... idx) {
    return data_[flatten({static_cast<int>(idx)...})];
  }
  template <class... I>
  const S& operator()(I... idx) const {
    return data_[flatten({static_cast<int>(idx)...})];
  }
  S& at(const std::vector<int>& idx) { return data_[flatten(idx)]; }
  const S& at(const std::vector<int>& idx) const { return data_[flatten(idx)]; }

  static std::size_t flatten(std::initializer_list<int> idx) {
    std::size_t f = 0;
    for (int i : idx) f = (f << 1) | static_cast<std::size_t>(i);
    return f;
  }
  static std::size_t flatten(const std::vector<int>& idx) {
    std::size_t f = 0;
    for (int i : idx) f = (f << 1) | static_cast<std::size_t>(i);
    return f;
  }
  std::vector<int> unflatten(std::size_t f) const {
    std::vector<int> idx(valence_.size());
    for (std::size_t k = idx.size(); k-- > 0;) {
      idx[k] = static_cast<int>(f & 1U);
      f >>= 1;
    }
    return idx;
  }

  const std::vector<S>& entries() const { return data_; }

 private:
  std::vector<Slot> valence_;
  std::vector<S> data_;
};

/// Applies `f` entrywise, producing a tensor of the same valence.
template <class S, class F>
auto map_entries(const Tensor<S>& t, F&& f) {
  using R = decltype(f(t[0]));
  Tensor<R> out(t.valence(), f(t[0]));
  for (std::size_t i = 1; i < t.size(); ++i) out[i] = f(t[i]);
  return out;
}

template <class S>
Tensor<S> operator+(const Tensor<S>& a, const Tensor<S>& b) {
  Tensor<S> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class S>
Tensor<S> operator-(const Tensor<S>& a, const Tensor<S>& b) {
  Tensor<S> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class S>
Tensor<S> scale(const Tensor<S>& a, const S& s) {
  Tensor<S> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] * s;
  return r;
}

template <class S>
Tensor<S> tensor_product(const Tensor<S>& a, const Tensor<S>& b) {
  std::vector<Slot> v = a.valence();
  v.insert(v.end(), b.valence().begin(), b.valence().end());
  Tensor<S> r(v, a[0]);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[(i << b.rank()) | j] = a[i] * b[j];
  }
  return r;
}

/// Symmetrizes over slots i and j: (T_ij + T_ji)/2.
template <class S>
Tensor<S> symmetrize(const Tensor<S>& t, int i, int j) {
  Tensor<S> r = t;
  for (std::size_t f = 0; f < t.size(); ++f) {
    std::vector<int> idx = t.unflatten(f);
    std::swap(idx[i], idx[j]);
    r[f] = (t[f] + t.at(idx)) * Rational(1, 2);
  }
  return r;
}

/// Antisymmetrizes over slots i and j: (T_ij - T_ji)/2.
template <class S>
Tensor<S> antisymmetrize(const Tensor<S>& t, int i, int j) {
  Tensor<S> r = t;
  for (std::size_t f = 0; f < t.size(); ++f) {
    std::vector<int> idx = t.unflatten(f);
    std::swap(idx[i], idx[j]);
    r[f] = (t[f] - t.at(idx)) * Rational(1, 2);
  }
  return r;
}

/// Contracts an upper slot with a lower slot.
template <class S>
Tensor<S> contract(const Tensor<S>& t, int i, int j) {
  if (t.valence()[i] == t.valence()[j]) throw DomainError("contraction needs one upper and one lower slot");
  std::vector<Slot> v;
  for (int k = 0; k < t.rank(); ++k) {
    if (k != i && k != j) v.push_back(t.valence()[k]);
  }
  Tensor<S> r(v, t[0]);
  for (std::size_t f = 0; f < r.size(); ++f) {
    std::vector<int> rest = r.unflatten(f);
    std::vector<int> idx;
    for (int e = 0; e < 2; ++e) {
      idx.clear();
      std::size_t p = 0;
      for (int k = 0; k < t.rank(); ++k) idx.push_back(k == i || k == j ? e : rest[p++]);
      r[f] = e == 0 ? t.at(idx) : r[f] + t.at(idx);
    }
  }
  return r;
}

/// Derivations along which tensors are differentiated. The frame matrix
/// `jinv[k][a]` expresses d_a = sum_k jinv[k][a] d/d vars[k]; absent means
/// coordinate derivatives.
struct Frame {
  std::array<std::string, 2> vars{"X", "Y"};
  std::optional<std::array<std::array<Expr, 2>, 2>> jinv;
};

struct SymbolicCalculus {
  using Scalar = Expr;
  Frame frame;

  Expr zero() const { return Expr(0); }
  Expr constant(const Rational& q) const { return Expr(q); }
  Expr d(const Expr& e, int a) const {
    if (!frame.jinv) return differentiate(e, frame.vars[a]);
    const auto& j = *frame.jinv;
    return j[0][a] * differentiate(e, frame.vars[0]) + j[1][a] * differentiate(e, frame.vars[1]);
  }
};

struct JetCalculus {
  using Scalar = Jet;
  int order = 4;
  std::optional<std::array<std::array<Jet, 2>, 2>> jinv;

  JetCalculus() = default;
  /// Expands the frame of `frame` around `p` to the given order.
  JetCalculus(const Frame& frame, const SamplePoint& p, int order_) : order(order_) {
    if (frame.jinv) {
      std::array<std::array<Jet, 2>, 2> j;
      for (int k = 0; k < 2; ++k) {
        for (int a = 0; a < 2; ++a) j[k][a] = taylor((*frame.jinv)[k][a], p, frame.vars, order);
      }
      jinv = j;
    }
  }

  Jet zero() const { return Jet::constant(Rational(0), order); }
  Jet constant(const Rational& q) const { return Jet::constant(q, order); }
  Jet d(const Jet& e, int a) const {
    if (!jinv) return e.partial(a);
    const auto& j = *jinv;
    return j[0][a] * e.partial(0) + j[1][a] * e.partial(1);
  }
};

}  // namespace projclass
