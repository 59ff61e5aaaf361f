#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "qmanifold/error.hpp"
#include "qmanifold/expr.hpp"
#include "qmanifold/jet.hpp"
#include "qmanifold/tensor.hpp"

namespace qmf {

/// Selects the metric a computation is carried out for: g, or the
/// associated metric g̃(x, y) = g(x, Py).
enum class Which { g, gt };

inline constexpr Which other(Which w) { return w == Which::g ? Which::gt : Which::g; }
inline constexpr std::string_view name(Which w) { return w == Which::g ? "g" : "gt"; }

/// The structure Q with Q⁴ = id, Q² ≠ ±id: the quarter turn
/// (x¹, x², x³) ↦ (−x², x¹, x³). Stored as Q(k, j) = Qᵏⱼ so that (Qv)ᵏ = Qᵏⱼ vʲ.
struct QStructure {
  static constexpr Mat3 components() {
    Mat3 q;
    q(0, 1) = -1.0;
    q(1, 0) = 1.0;
    q(2, 2) = 1.0;
    return q;
  }

  /// Qⁿ for n = 0..3 (any n is reduced mod 4).
  static constexpr Mat3 power(int n) {
    Mat3 r = identity();
    const int m = ((n % 4) + 4) % 4;
    for (int i = 0; i < m; ++i) r = matmul(components(), r);
    return r;
  }
};

/// The almost product structure P = Q² = diag(−1, −1, 1).
struct PStructure {
  static constexpr Mat3 components() { return make_diag(-1.0, -1.0, 1.0); }
};

/// Qᵖᵒʷᵉʳ v, with power taken mod 4.
inline constexpr Vec3 q_apply(const Vec3& v, int power) {
  Vec3 r = v;
  const int m = ((power % 4) + 4) % 4;
  for (int i = 0; i < m; ++i) r = make_vec(-r(1), r(0), r(2));
  return r;
}

inline constexpr Vec3 p_apply(const Vec3& v) { return make_vec(-v(0), -v(1), v(2)); }

/// The metric g = diag(A, A, B) given by its two coefficient expressions.
struct MetricSpec {
  expr::ScalarField A;
  expr::ScalarField B;

  static MetricSpec parse(std::string_view a, std::string_view b) {
    return MetricSpec{expr::parse(a), expr::parse(b)};
  }
};

/// Pointwise metric data. Both metrics are diagonal; the matrices are kept
/// in full so index formulas downstream read literally.
struct MetricAt {
  Vec3 point;
  Jet jetA;
  Jet jetB;
  Mat3 g, g_inv, gt, gt_inv;

  const Mat3& metric(Which w) const { return w == Which::g ? g : gt; }
  const Mat3& inverse(Which w) const { return w == Which::g ? g_inv : gt_inv; }

  /// ∂ₘ of the components of the chosen metric: d(m, a, b) = ∂ₘ g_ab.
  Tensor3 first_derivatives(Which w) const {
    const double sign = w == Which::g ? 1.0 : -1.0;
    Tensor3 d;
    for (std::size_t m = 0; m < kDim; ++m) {
      d(m, 0, 0) = sign * jetA.grad[m];
      d(m, 1, 1) = sign * jetA.grad[m];
      d(m, 2, 2) = jetB.grad[m];
    }
    return d;
  }

  /// ∂ₙ∂ₘ of the components: d(n, m, a, b) = ∂ₙ∂ₘ g_ab.
  Tensor4 second_derivatives(Which w) const {
    const double sign = w == Which::g ? 1.0 : -1.0;
    Tensor4 d;
    for (std::size_t n = 0; n < kDim; ++n)
      for (std::size_t m = 0; m < kDim; ++m) {
        d(n, m, 0, 0) = sign * jetA.hess[n][m];
        d(n, m, 1, 1) = sign * jetA.hess[n][m];
        d(n, m, 2, 2) = jetB.hess[n][m];
      }
    return d;
  }

  /// Derivatives of the coefficients in the usual shorthand Aᵢ, Bᵢ.
  double A() const { return jetA.value; }
  double B() const { return jetB.value; }
  double dA(std::size_t i) const { return jetA.grad[i]; }
  double dB(std::size_t i) const { return jetB.grad[i]; }
};

/// Builds the metric data from jets of A and B that are already evaluated.
inline MetricAt metric_from_jets(const Vec3& point, const Jet& a, const Jet& b) {
  if (!(a.value > 0.0)) throw NotPositiveDefinite("A", a.value);
  if (!(b.value > 0.0)) throw NotPositiveDefinite("B", b.value);
  MetricAt m;
  m.point = point;
  m.jetA = a;
  m.jetB = b;
  m.g = make_diag(a.value, a.value, b.value);
  m.g_inv = make_diag(1.0 / a.value, 1.0 / a.value, 1.0 / b.value);
  m.gt = make_diag(-a.value, -a.value, b.value);
  m.gt_inv = make_diag(-1.0 / a.value, -1.0 / a.value, 1.0 / b.value);
  return m;
}

inline MetricAt metric_at(const MetricSpec& spec, const Vec3& point) {
  return metric_from_jets(point, spec.A.eval_jet2(point), spec.B.eval_jet2(point));
}

/// vᵀ·g·w or vᵀ·g̃·w.
inline double inner(const MetricAt& m, const Vec3& v, const Vec3& w, Which which = Which::g) {
  return bilinear(m.metric(which), v, w);
}

}  // namespace qmf
