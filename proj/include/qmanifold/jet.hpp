#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "qmanifold/tensor.hpp"

namespace qmf {

/// Second-order Taylor data of a scalar field in three variables: value,
/// gradient and Hessian. Arithmetic propagates all three exactly (to
/// rounding), which is forward-mode differentiation truncated at order two.
///
/// The Hessian is only ever written through `set_hess`, which stores both
/// (i,j) and (j,i), so it stays bitwise symmetric.
template <class T = double>
struct Jet2 {
  T value{};
  std::array<T, kDim> grad{};
  std::array<std::array<T, kDim>, kDim> hess{};

  static constexpr Jet2 constant(T c) {
    Jet2 j;
    j.value = c;
    return j;
  }

  /// The coordinate function x^{index+1} evaluated at `at`.
  static constexpr Jet2 variable(std::size_t index, T at) {
    Jet2 j;
    j.value = at;
    j.grad[index] = T(1);
    return j;
  }

  constexpr void set_hess(std::size_t i, std::size_t j, T v) {
    hess[i][j] = v;
    hess[j][i] = v;
  }

  constexpr bool is_constant() const {
    for (std::size_t i = 0; i < kDim; ++i) {
      if (grad[i] != T(0)) return false;
      for (std::size_t j = 0; j < kDim; ++j)
        if (hess[i][j] != T(0)) return false;
    }
    return true;
  }

  bool all_finite() const {
    if (!std::isfinite(value)) return false;
    for (std::size_t i = 0; i < kDim; ++i) {
      if (!std::isfinite(grad[i])) return false;
      for (std::size_t j = 0; j < kDim; ++j)
        if (!std::isfinite(hess[i][j])) return false;
    }
    return true;
  }
};

using Jet = Jet2<double>;

/// Composes a scalar function f with the jet u, given f(u), f'(u), f''(u):
///   ∂(f∘u) = f' ∂u,  ∂∂(f∘u) = f'' ∂u ∂uᵀ + f' ∂∂u.
template <class T>
constexpr Jet2<T> chain(const Jet2<T>& u, T f, T df, T d2f) {
  Jet2<T> r;
  r.value = f;
  for (std::size_t i = 0; i < kDim; ++i) r.grad[i] = df * u.grad[i];
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = i; j < kDim; ++j)
      r.set_hess(i, j, d2f * u.grad[i] * u.grad[j] + df * u.hess[i][j]);
  return r;
}

template <class T>
constexpr Jet2<T> operator+(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r;
  r.value = a.value + b.value;
  for (std::size_t i = 0; i < kDim; ++i) {
    r.grad[i] = a.grad[i] + b.grad[i];
    for (std::size_t j = i; j < kDim; ++j) r.set_hess(i, j, a.hess[i][j] + b.hess[i][j]);
  }
  return r;
}

template <class T>
constexpr Jet2<T> operator-(const Jet2<T>& a) {
  Jet2<T> r;
  r.value = -a.value;
  for (std::size_t i = 0; i < kDim; ++i) {
    r.grad[i] = -a.grad[i];
    for (std::size_t j = i; j < kDim; ++j) r.set_hess(i, j, -a.hess[i][j]);
  }
  return r;
}

template <class T>
constexpr Jet2<T> operator-(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r;
  r.value = a.value - b.value;
  for (std::size_t i = 0; i < kDim; ++i) {
    r.grad[i] = a.grad[i] - b.grad[i];
    for (std::size_t j = i; j < kDim; ++j) r.set_hess(i, j, a.hess[i][j] - b.hess[i][j]);
  }
  return r;
}

template <class T>
constexpr Jet2<T> operator*(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r;
  r.value = a.value * b.value;
  for (std::size_t i = 0; i < kDim; ++i) r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = i; j < kDim; ++j)
      r.set_hess(i, j,
                 a.value * b.hess[i][j] + b.value * a.hess[i][j] + a.grad[i] * b.grad[j] +
                     a.grad[j] * b.grad[i]);
  return r;
}

/// 1/b as a jet; the caller checks b.value != 0.
template <class T>
constexpr Jet2<T> reciprocal(const Jet2<T>& b) {
  const T inv = T(1) / b.value;
  return chain(b, inv, -inv * inv, T(2) * inv * inv * inv);
}

template <class T>
constexpr Jet2<T> operator/(const Jet2<T>& a, const Jet2<T>& b) {
  return a * reciprocal(b);
}

template <class T>
constexpr Jet2<T> operator*(T s, const Jet2<T>& a) {
  return Jet2<T>::constant(s) * a;
}

template <class T>
Jet2<T> sin(const Jet2<T>& u) {
  const T s = std::sin(u.value), c = std::cos(u.value);
  return chain(u, s, c, -s);
}

template <class T>
Jet2<T> cos(const Jet2<T>& u) {
  const T s = std::sin(u.value), c = std::cos(u.value);
  return chain(u, c, -s, -c);
}

template <class T>
Jet2<T> sinh(const Jet2<T>& u) {
  const T s = std::sinh(u.value), c = std::cosh(u.value);
  return chain(u, s, c, s);
}

template <class T>
Jet2<T> cosh(const Jet2<T>& u) {
  const T s = std::sinh(u.value), c = std::cosh(u.value);
  return chain(u, c, s, c);
}

template <class T>
Jet2<T> tanh(const Jet2<T>& u) {
  const T t = std::tanh(u.value);
  const T sech2 = T(1) - t * t;
  return chain(u, t, sech2, T(-2) * t * sech2);
}

template <class T>
Jet2<T> exp(const Jet2<T>& u) {
  const T e = std::exp(u.value);
  return chain(u, e, e, e);
}

/// Natural log; the caller checks u.value > 0.
template <class T>
Jet2<T> log(const Jet2<T>& u) {
  const T inv = T(1) / u.value;
  return chain(u, std::log(u.value), inv, -inv * inv);
}

/// Square root; the caller checks u.value > 0 (the derivative blows up at 0).
template <class T>
Jet2<T> sqrt(const Jet2<T>& u) {
  const T s = std::sqrt(u.value);
  return chain(u, s, T(0.5) / s, T(-0.25) / (s * u.value));
}

/// u^c for a constant exponent. Negative bases are only meaningful for
/// integral c; the caller checks that.
template <class T>
Jet2<T> pow(const Jet2<T>& u, T c) {
  if (c == T(0)) return Jet2<T>::constant(T(1));
  if (c == T(1)) return u;
  const T f = std::pow(u.value, c);
  const T df = c * std::pow(u.value, c - T(1));
  const T d2f = c * (c - T(1)) * std::pow(u.value, c - T(2));
  return chain(u, f, df, d2f);
}

/// u^v for a non-constant exponent, as exp(v log u); requires u.value > 0.
template <class T>
Jet2<T> pow(const Jet2<T>& u, const Jet2<T>& v) {
  return exp(v * log(u));
}

}  // namespace qmf
