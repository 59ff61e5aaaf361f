#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace qmf {

inline constexpr std::size_t kDim = 3;

namespace detail {
constexpr std::size_t pow3(std::size_t rank) {
  std::size_t n = 1;
  for (std::size_t r = 0; r < rank; ++r) n *= kDim;
  return n;
}
}  // namespace detail

/// Dense rank-R tensor over a 3-dimensional index space, stored row-major.
/// Index placement (upper/lower) is a property of the quantity, not the
/// container; see docs/CONVENTIONS.md for the placement of each quantity.
template <std::size_t Rank>
class Tensor {
 public:
  static constexpr std::size_t rank = Rank;
  static constexpr std::size_t size = detail::pow3(Rank);

  constexpr Tensor() = default;

  template <class... Idx>
    requires(sizeof...(Idx) == Rank && (std::is_integral_v<Idx> && ...))
  constexpr double& operator()(Idx... idx) {
    return data_[flat(static_cast<std::size_t>(idx)...)];
  }

  template <class... Idx>
    requires(sizeof...(Idx) == Rank && (std::is_integral_v<Idx> && ...))
  constexpr double operator()(Idx... idx) const {
    return data_[flat(static_cast<std::size_t>(idx)...)];
  }

  constexpr double& operator[](std::size_t i) { return data_[i]; }
  constexpr double operator[](std::size_t i) const { return data_[i]; }

  constexpr auto begin() { return data_.begin(); }
  constexpr auto end() { return data_.end(); }
  constexpr auto begin() const { return data_.begin(); }
  constexpr auto end() const { return data_.end(); }

  constexpr Tensor& operator+=(const Tensor& o) {
    for (std::size_t i = 0; i < size; ++i) data_[i] += o.data_[i];
    return *this;
  }
  constexpr Tensor& operator-=(const Tensor& o) {
    for (std::size_t i = 0; i < size; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  constexpr Tensor& operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend constexpr Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend constexpr Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend constexpr Tensor operator*(Tensor a, double s) { return a *= s; }
  friend constexpr Tensor operator*(double s, Tensor a) { return a *= s; }
  friend constexpr Tensor operator-(Tensor a) { return a *= -1.0; }
  friend constexpr bool operator==(const Tensor&, const Tensor&) = default;

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  template <class... Idx>
  static constexpr std::size_t flat(Idx... idx) {
    std::size_t f = 0;
    ((f = f * kDim + idx), ...);
    return f;
  }

  std::array<double, size> data_{};
};

using Vec3 = Tensor<1>;
using Mat3 = Tensor<2>;
using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

inline constexpr Vec3 make_vec(double a, double b, double c) {
  Vec3 v;
  v(0) = a;
  v(1) = b;
  v(2) = c;
  return v;
}

inline constexpr Mat3 make_diag(double a, double b, double c) {
  Mat3 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

inline constexpr Mat3 identity() { return make_diag(1.0, 1.0, 1.0); }

inline constexpr Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

inline constexpr Vec3 matvec(const Mat3& a, const Vec3& v) {
  Vec3 r;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) r(i) += a(i, j) * v(j);
  return r;
}

inline constexpr Mat3 transpose(const Mat3& a) {
  Mat3 t;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) t(i, j) = a(j, i);
  return t;
}

inline constexpr double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

inline constexpr double determinant(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

/// Adjugate inverse; the caller guarantees a nonzero determinant.
inline constexpr Mat3 inverse(const Mat3& a) {
  const double det = determinant(a);
  Mat3 inv;
  inv(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / det;
  inv(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / det;
  inv(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / det;
  inv(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / det;
  inv(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / det;
  inv(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / det;
  inv(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / det;
  inv(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / det;
  inv(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / det;
  return inv;
}

/// Bilinear form vᵀ M w.
inline constexpr double bilinear(const Mat3& m, const Vec3& v, const Vec3& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) s += v(i) * m(i, j) * w(j);
  return s;
}

/// Full contraction of an all-lower rank-4 tensor with four vectors.
inline constexpr double contract4(const Tensor4& t, const Vec3& a, const Vec3& b, const Vec3& c,
                                  const Vec3& d) {
  double s = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k)
        for (std::size_t l = 0; l < kDim; ++l) s += t(i, j, k, l) * a(i) * b(j) * c(k) * d(l);
  return s;
}

inline constexpr double dot(const Vec3& a, const Vec3& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
}

inline constexpr Vec3 basis_vector(std::size_t i) {
  Vec3 e;
  e(i) = 1.0;
  return e;
}

}  // namespace qmf
