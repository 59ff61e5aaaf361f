#pragma once

#include <array>
#include <string>
#include <vector>

#include "qmanifold/structures.hpp"
#include "qmanifold/tensor.hpp"

namespace qmf {

/// Christoffel symbols of a Levi-Civita connection, gamma(k, i, j) = Γᵏᵢⱼ.
struct Christoffel {
  Tensor3 gamma;
  Which which = Which::g;

  double operator()(std::size_t k, std::size_t i, std::size_t j) const { return gamma(k, i, j); }
};

/// The fundamental tensor, f(i, j, k) = Fᵢⱼₖ = ∇ᵢg̃ⱼₖ.
struct FundamentalF {
  Tensor3 f;

  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return f(i, j, k); }
};

/// The 1-form θ(z) = gⁱʲF(eᵢ, eⱼ, z), its P-image θ̃ᵢ = Pᵢᵃθₐ, and both
/// with the index raised by g.
struct ThetaForm {
  Vec3 theta;
  Vec3 theta_tilde;
  Vec3 theta_up;
  Vec3 theta_tilde_up;
};

inline ThetaForm make_theta_form(const MetricAt& m, const Vec3& theta) {
  ThetaForm t;
  t.theta = theta;
  t.theta_tilde = matvec(PStructure::components(), theta);
  t.theta_up = matvec(m.g_inv, t.theta);
  t.theta_tilde_up = matvec(m.g_inv, t.theta_tilde);
  return t;
}

/// Γᵏᵢⱼ = ½ gᵃᵏ(∂ᵢgₐⱼ + ∂ⱼgₐᵢ − ∂ₐgᵢⱼ) for the chosen metric.
inline Christoffel christoffel(const MetricAt& m, Which which = Which::g) {
  const Mat3& inv = m.inverse(which);
  const Tensor3 dg = m.first_derivatives(which);
  Christoffel c;
  c.which = which;
  for (std::size_t k = 0; k < kDim; ++k)
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) {
        double s = 0.0;
        for (std::size_t a = 0; a < kDim; ++a)
          s += inv(a, k) * (dg(i, a, j) + dg(j, a, i) - dg(a, i, j));
        c.gamma(k, i, j) = 0.5 * s;
      }
  return c;
}

/// The eighteen closed forms for Γᵏᵢⱼ of g = diag(A, A, B).
inline Christoffel christoffel_closed_form(const MetricAt& m) {
  const double A = m.A(), B = m.B();
  const double A1 = m.dA(0), A2 = m.dA(1), A3 = m.dA(2);
  const double B1 = m.dB(0), B2 = m.dB(1), B3 = m.dB(2);
  Christoffel c;
  auto set = [&](std::size_t k, std::size_t i, std::size_t j, double v) {
    c.gamma(k - 1, i - 1, j - 1) = v;
    c.gamma(k - 1, j - 1, i - 1) = v;
  };
  set(1, 1, 1, A1 / (2 * A));
  set(2, 1, 1, -A2 / (2 * A));
  set(3, 1, 1, -A3 / (2 * B));
  set(1, 1, 2, A2 / (2 * A));
  set(2, 1, 2, A1 / (2 * A));
  set(3, 1, 2, 0.0);
  set(1, 2, 2, -A1 / (2 * A));
  set(2, 2, 2, A2 / (2 * A));
  set(3, 2, 2, -A3 / (2 * B));
  set(1, 1, 3, A3 / (2 * A));
  set(2, 1, 3, 0.0);
  set(3, 1, 3, B1 / (2 * B));
  set(1, 3, 3, -B1 / (2 * A));
  set(2, 3, 3, -B2 / (2 * A));
  set(3, 3, 3, B3 / (2 * B));
  set(1, 2, 3, 0.0);
  set(2, 2, 3, A3 / (2 * A));
  set(3, 2, 3, B2 / (2 * B));
  return c;
}

/// ∂ₙΓᵏᵢⱼ, stored d(n, k, i, j). Uses ∂ₙg⁻¹ = −g⁻¹(∂ₙg)g⁻¹.
inline Tensor4 christoffel_derivatives(const MetricAt& m, Which which = Which::g) {
  const Mat3& inv = m.inverse(which);
  const Tensor3 dg = m.first_derivatives(which);
  const Tensor4 d2g = m.second_derivatives(which);
  Tensor4 out;
  for (std::size_t n = 0; n < kDim; ++n) {
    Mat3 dgn;
    for (std::size_t a = 0; a < kDim; ++a)
      for (std::size_t b = 0; b < kDim; ++b) dgn(a, b) = dg(n, a, b);
    const Mat3 dinv = -1.0 * matmul(matmul(inv, dgn), inv);
    for (std::size_t k = 0; k < kDim; ++k)
      for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t j = 0; j < kDim; ++j) {
          double s = 0.0;
          for (std::size_t a = 0; a < kDim; ++a) {
            const double S = dg(i, a, j) + dg(j, a, i) - dg(a, i, j);
            const double dS = d2g(n, i, a, j) + d2g(n, j, a, i) - d2g(n, a, i, j);
            s += dinv(a, k) * S + inv(a, k) * dS;
          }
          out(n, k, i, j) = 0.5 * s;
        }
  }
  return out;
}

/// max |∇ᵢgⱼₖ| = max |∂ᵢgⱼₖ − Γᵃᵢⱼgₐₖ − Γᵃᵢₖgₐⱼ| for the metric the symbols belong to.
inline double metric_compatibility_residual(const MetricAt& m, const Christoffel& c) {
  const Mat3& g = m.metric(c.which);
  const Tensor3 dg = m.first_derivatives(c.which);
  double r = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        double v = dg(i, j, k);
        for (std::size_t a = 0; a < kDim; ++a)
          v -= c.gamma(a, i, j) * g(a, k) + c.gamma(a, i, k) * g(a, j);
        r = std::max(r, std::abs(v));
      }
  return r;
}

/// Fᵢⱼₖ = ∇ᵢg̃ⱼₖ = ∂ᵢg̃ⱼₖ − Γᵃᵢⱼg̃ₐₖ − Γᵃᵢₖg̃ₐⱼ, with Γ the symbols of g.
inline FundamentalF fundamental_f(const MetricAt& m, const Christoffel& gamma_g) {
  const Tensor3 dgt = m.first_derivatives(Which::gt);
  FundamentalF F;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        double v = dgt(i, j, k);
        for (std::size_t a = 0; a < kDim; ++a)
          v -= gamma_g.gamma(a, i, j) * m.gt(a, k) + gamma_g.gamma(a, i, k) * m.gt(a, j);
        F.f(i, j, k) = v;
      }
  return F;
}

/// F₁₁₃ = F₂₂₃ = A₃, F₃₁₃ = −B₁, F₃₂₃ = −B₂ and their (j, k)-symmetric partners.
inline FundamentalF fundamental_f_closed_form(const MetricAt& m) {
  FundamentalF F;
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, double v) {
    F.f(i - 1, j - 1, k - 1) = v;
    F.f(i - 1, k - 1, j - 1) = v;
  };
  set(1, 1, 3, m.dA(2));
  set(2, 2, 3, m.dA(2));
  set(3, 1, 3, -m.dB(0));
  set(3, 2, 3, -m.dB(1));
  return F;
}

/// θₖ = gⁱʲFᵢⱼₖ by contraction.
inline ThetaForm theta(const MetricAt& m, const FundamentalF& F) {
  Vec3 th;
  for (std::size_t k = 0; k < kDim; ++k)
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) th(k) += m.g_inv(i, j) * F.f(i, j, k);
  return make_theta_form(m, th);
}

/// θ₁ = −B₁/B, θ₂ = −B₂/B, θ₃ = 2A₃/A.
inline ThetaForm theta_closed_form(const MetricAt& m) {
  return make_theta_form(m, make_vec(-m.dB(0) / m.B(), -m.dB(1) / m.B(), 2.0 * m.dA(2) / m.A()));
}

/// The affine deformation T = Γ̃ − Γ in closed form,
///   Tᵏᵢⱼ = ⅛(gᵢⱼ(3θ̃ᵏ − θᵏ) − g̃ᵢⱼ(3θᵏ − θ̃ᵏ)).
/// Obtained by substituting the trace form of F into
/// Γ̃ᵏᵢⱼ − Γᵏᵢⱼ = ½g̃ᵏˢ(Fᵢⱼₛ + Fⱼᵢₛ − Fₛᵢⱼ), using g̃ᵏᵃθₐ = θ̃ᵏ and g̃ᵏᵃθ̃ₐ = θᵏ.
inline Tensor3 deformation_tensor(const MetricAt& m, const ThetaForm& t) {
  Tensor3 T;
  for (std::size_t k = 0; k < kDim; ++k) {
    const double on_g = 3.0 * t.theta_tilde_up(k) - t.theta_up(k);
    const double on_gt = 3.0 * t.theta_up(k) - t.theta_tilde_up(k);
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j)
        T(k, i, j) = 0.125 * (m.g(i, j) * on_g - m.gt(i, j) * on_gt);
  }
  return T;
}

/// The form with (3θ̃ᵏ − θᵏ) on both terms. It is not equal to Γ̃ − Γ in
/// general; kept so the mismatch can be measured.
inline Tensor3 deformation_tensor_as_printed(const MetricAt& m, const ThetaForm& t) {
  Tensor3 T;
  for (std::size_t k = 0; k < kDim; ++k) {
    const double c = 3.0 * t.theta_tilde_up(k) - t.theta_up(k);
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) T(k, i, j) = 0.125 * (m.g(i, j) - m.gt(i, j)) * c;
  }
  return T;
}

/// Γ̃ − Γ directly.
inline Tensor3 deformation_tensor_difference(const Christoffel& gamma_g, const Christoffel& gamma_gt) {
  return gamma_gt.gamma - gamma_g.gamma;
}

/// ∇ᵢ(Qⁿ)ᵏⱼ = Γᵏᵢₐ(Qⁿ)ᵃⱼ − Γᵃᵢⱼ(Qⁿ)ᵏₐ (Q is constant in these coordinates),
/// stored nq(i, k, j). `power` defaults to Q itself.
inline Tensor3 nabla_q(const MetricAt& /*m*/, const Christoffel& gamma_g, int power = 1) {
  const Mat3 q = QStructure::power(power);
  Tensor3 nq;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t k = 0; k < kDim; ++k)
      for (std::size_t j = 0; j < kDim; ++j) {
        double v = 0.0;
        for (std::size_t a = 0; a < kDim; ++a)
          v += gamma_g.gamma(k, i, a) * q(a, j) - gamma_g.gamma(a, i, j) * q(k, a);
        nq(i, k, j) = v;
      }
  return nq;
}

/// The twelve nonzero components of ∇Q from the Christoffel closed forms.
inline Tensor3 nabla_q_closed_form(const MetricAt& m) {
  const double A = m.A(), B = m.B();
  const double A3 = m.dA(2), B1 = m.dB(0), B2 = m.dB(1);
  Tensor3 nq;
  auto set = [&](std::size_t i, std::size_t k, std::size_t j, double v) { nq(i - 1, k - 1, j - 1) = v; };
  set(1, 1, 3, A3 / (2 * A));
  set(1, 2, 3, -A3 / (2 * A));
  set(1, 3, 1, A3 / (2 * B));
  set(1, 3, 2, A3 / (2 * B));
  set(2, 1, 3, A3 / (2 * A));
  set(2, 2, 3, A3 / (2 * A));
  set(2, 3, 1, -A3 / (2 * B));
  set(2, 3, 2, A3 / (2 * B));
  set(3, 1, 3, -(B1 + B2) / (2 * A));
  set(3, 2, 3, (B1 - B2) / (2 * A));
  set(3, 3, 1, (B2 - B1) / (2 * B));
  set(3, 3, 2, -(B1 + B2) / (2 * B));
  return nq;
}

/// One entry of the published twelve-component ∇Q list, with 1-based (i, k, j).
struct PrintedNablaQEntry {
  std::size_t i, k, j;
  std::string formula;
  double value;
};

/// The published ∇Q list evaluated at a point. Its index labels follow the
/// row/column reading of the component matrix (Qᵢʲ), which in the operator
/// convention used here is the tensor Q³; compare against nabla_q(m, Γ, 3).
inline std::vector<PrintedNablaQEntry> printed_nabla_q_entries(const MetricAt& m) {
  const double A = m.A(), B = m.B();
  const double A3 = m.dA(2), B1 = m.dB(0), B2 = m.dB(1);
  return {
      {1, 3, 1, "-A3/(2B)", -A3 / (2 * B)},
      {1, 3, 2, "-A3/(2B)", -A3 / (2 * B)},
      {2, 3, 1, "A3/(2B)", A3 / (2 * B)},
      {2, 3, 2, "A3/(2B)", A3 / (2 * B)},
      {3, 1, 3, "(B2-B1)/(2A)", (B2 - B1) / (2 * A)},
      {3, 2, 3, "-(B1+B2)/(2A)", -(B1 + B2) / (2 * A)},
      {1, 1, 3, "A3/(2A)", A3 / (2 * A)},
      {1, 2, 3, "A3/(2A)", A3 / (2 * A)},
      {3, 2, 1, "A3/(2A)", A3 / (2 * A)},
      {3, 3, 1, "-(B1+B2)/(2B)", -(B1 + B2) / (2 * B)},
      {2, 1, 3, "-A3/(2A)", -A3 / (2 * A)},
      {2, 2, 3, "A3/(2A)", A3 / (2 * A)},
  };
}

}  // namespace qmf
