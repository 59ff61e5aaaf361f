#pragma once

#include <algorithm>
#include <utility>

#include "qmanifold/connection.hpp"
#include "qmanifold/structures.hpp"
#include "qmanifold/tensor.hpp"

namespace qmf {

/// All-lower curvature components r(i, j, k, l) = R(∂ᵢ, ∂ⱼ, ∂ₖ, ∂ₗ) = g(R(∂ᵢ, ∂ⱼ)∂ₖ, ∂ₗ),
/// with R(x, y)z = ∇ₓ∇ᵧz − ∇ᵧ∇ₓz − ∇_[x,y]z. Lowered with the metric `which`.
struct Riemann4 {
  Tensor4 r;
  Which which = Which::g;

  double operator()(const Vec3& x, const Vec3& y, const Vec3& z, const Vec3& u) const {
    return contract4(r, x, y, z, u);
  }
};

/// Ricci tensor ρ(y, z) = hⁱʲR(eᵢ, y, z, eⱼ) of the metric h = `which`, its
/// own trace τ = hⁱʲρᵢⱼ, and the cross trace τ* taken with the other metric.
/// For which = gt these are ρ̃, τ̃ and τ̃*.
struct RicciData {
  Mat3 rho;
  double tau = 0.0;
  double tau_star = 0.0;
  Which which = Which::g;
};

/// R(∂ᵢ, ∂ⱼ)∂ₖ = Rˡₖᵢⱼ ∂ₗ with Rˡₖᵢⱼ = ∂ᵢΓˡⱼₖ − ∂ⱼΓˡᵢₖ + ΓˡᵢₘΓᵐⱼₖ − ΓˡⱼₘΓᵐᵢₖ,
/// stored up(l, k, i, j).
inline Tensor4 riemann_mixed(const Christoffel& c, const Tensor4& dgamma) {
  Tensor4 up;
  for (std::size_t l = 0; l < kDim; ++l)
    for (std::size_t k = 0; k < kDim; ++k)
      for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t j = 0; j < kDim; ++j) {
          double v = dgamma(i, l, j, k) - dgamma(j, l, i, k);
          for (std::size_t m = 0; m < kDim; ++m)
            v += c.gamma(l, i, m) * c.gamma(m, j, k) - c.gamma(l, j, m) * c.gamma(m, i, k);
          up(l, k, i, j) = v;
        }
  return up;
}

inline Riemann4 riemann(const MetricAt& m, Which which = Which::g) {
  const Christoffel c = christoffel(m, which);
  const Tensor4 up = riemann_mixed(c, christoffel_derivatives(m, which));
  const Mat3& g = m.metric(which);
  Riemann4 R;
  R.which = which;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k)
        for (std::size_t t = 0; t < kDim; ++t) {
          double v = 0.0;
          for (std::size_t l = 0; l < kDim; ++l) v += up(l, k, i, j) * g(l, t);
          R.r(i, j, k, t) = v;
        }
  return R;
}

inline Riemann4 riemann(const MetricSpec& spec, const Vec3& point, Which which = Which::g) {
  return riemann(metric_at(spec, point), which);
}

/// Residuals of the algebraic curvature symmetries.
struct RiemannSymmetry {
  double antisym_12 = 0.0;
  double antisym_34 = 0.0;
  double pair = 0.0;
  double bianchi = 0.0;

  double max() const { return std::max({antisym_12, antisym_34, pair, bianchi}); }
};

inline RiemannSymmetry riemann_symmetry(const Riemann4& R) {
  RiemannSymmetry s;
  const Tensor4& r = R.r;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k)
        for (std::size_t l = 0; l < kDim; ++l) {
          s.antisym_12 = std::max(s.antisym_12, std::abs(r(i, j, k, l) + r(j, i, k, l)));
          s.antisym_34 = std::max(s.antisym_34, std::abs(r(i, j, k, l) + r(i, j, l, k)));
          s.pair = std::max(s.pair, std::abs(r(i, j, k, l) - r(k, l, i, j)));
          s.bianchi = std::max(s.bianchi,
                               std::abs(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)));
        }
  return s;
}

inline RicciData ricci(const Riemann4& R, const MetricAt& m) {
  const Mat3& own = m.inverse(R.which);
  const Mat3& cross = m.inverse(other(R.which));
  RicciData d;
  d.which = R.which;
  for (std::size_t y = 0; y < kDim; ++y)
    for (std::size_t z = 0; z < kDim; ++z) {
      double v = 0.0;
      for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t j = 0; j < kDim; ++j) v += own(i, j) * R.r(i, y, z, j);
      d.rho(y, z) = v;
    }
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      d.tau += own(i, j) * d.rho(i, j);
      d.tau_star += cross(i, j) * d.rho(i, j);
    }
  return d;
}

/// π₁(x,y,z,u) = g(y,z)g(x,u) − g(x,z)g(y,u);
/// π₂(x,y,z,u) = g(y,z)g̃(x,u) + g(x,u)g̃(y,z) − g(x,z)g̃(y,u) − g(y,u)g̃(x,z).
inline std::pair<double, double> pi_tensors(const MetricAt& m, const Vec3& x, const Vec3& y,
                                            const Vec3& z, const Vec3& u) {
  auto g = [&](const Vec3& a, const Vec3& b) { return inner(m, a, b, Which::g); };
  auto gt = [&](const Vec3& a, const Vec3& b) { return inner(m, a, b, Which::gt); };
  const double pi1 = g(y, z) * g(x, u) - g(x, z) * g(y, u);
  const double pi2 = g(y, z) * gt(x, u) + g(x, u) * gt(y, z) - g(x, z) * gt(y, u) - g(y, u) * gt(x, z);
  return {pi1, pi2};
}

/// The curvature of any 3-dimensional metric rebuilt from its Ricci tensor:
///   R(x,y,z,u) = −h(x,z)ρ(y,u) − h(y,u)ρ(x,z) + h(y,z)ρ(x,u) + h(x,u)ρ(y,z)
///                + (τ/2)(h(x,z)h(y,u) − h(y,z)h(x,u)),
/// with h the metric the Ricci data belongs to.
inline double reconstruct_from_ricci(const RicciData& ric, const MetricAt& m, const Vec3& x,
                                     const Vec3& y, const Vec3& z, const Vec3& u) {
  auto h = [&](const Vec3& a, const Vec3& b) { return inner(m, a, b, ric.which); };
  auto rho = [&](const Vec3& a, const Vec3& b) { return bilinear(ric.rho, a, b); };
  return -h(x, z) * rho(y, u) - h(y, u) * rho(x, z) + h(y, z) * rho(x, u) + h(x, u) * rho(y, z) +
         0.5 * ric.tau * (h(x, z) * h(y, u) - h(y, z) * h(x, u));
}

/// R = ((τ + τ*)/4)π₁ + ((3τ* + τ)/8)π₂, the curvature predicted when ρ has
/// the almost-Einstein form. Applicability is the caller's decision.
inline double almost_einstein_R(double tau, double tau_star, const MetricAt& m, const Vec3& x,
                                const Vec3& y, const Vec3& z, const Vec3& u) {
  const auto [pi1, pi2] = pi_tensors(m, x, y, z, u);
  return 0.25 * (tau + tau_star) * pi1 + 0.125 * (3.0 * tau_star + tau) * pi2;
}

/// max over coordinate quadruples of |R − reconstruct_from_ricci|.
inline double reconstruction_residual(const Riemann4& R, const RicciData& ric, const MetricAt& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k)
        for (std::size_t l = 0; l < kDim; ++l) {
          const Vec3 a = basis_vector(i), b = basis_vector(j), c = basis_vector(k), d = basis_vector(l);
          r = std::max(r, std::abs(R.r(i, j, k, l) - reconstruct_from_ricci(ric, m, a, b, c, d)));
        }
  return r;
}

/// max over coordinate quadruples of |R − almost_einstein_R|.
inline double almost_einstein_residual(const Riemann4& R, const RicciData& ric, const MetricAt& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k)
        for (std::size_t l = 0; l < kDim; ++l) {
          const Vec3 a = basis_vector(i), b = basis_vector(j), c = basis_vector(k), d = basis_vector(l);
          r = std::max(r, std::abs(R.r(i, j, k, l) -
                                   almost_einstein_R(ric.tau, ric.tau_star, m, a, b, c, d)));
        }
  return r;
}

}  // namespace qmf
