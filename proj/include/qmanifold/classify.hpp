#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "qmanifold/connection.hpp"
#include "qmanifold/curvature.hpp"
#include "qmanifold/structures.hpp"

namespace qmf {

/// Default tolerances: identities built from first derivatives of A, B and
/// those that need a second derivative (curvature level).
struct Tolerances {
  double first = 1e-8;
  double curvature = 1e-7;
};

/// max over (i, j, k) of the defect in the trace form of F,
///   Fᵢⱼₖ = ⅛(gᵢₖ(3θⱼ − θ̃ⱼ) + gᵢⱼ(3θₖ − θ̃ₖ) − g̃ᵢₖ(3θ̃ⱼ − θⱼ) − g̃ᵢⱼ(3θ̃ₖ − θₖ)),
/// which is the locally-conformal-product condition with (p, q, m) = (1, 2, 3).
/// The component form works in any frame where P = diag(−1, −1, 1).
inline double check_w1(const Tensor3& F, const Vec3& th, const Mat3& g, const Mat3& gt) {
  const Vec3 tt = matvec(PStructure::components(), th);
  double r = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        const double rhs = 0.125 * (g(i, k) * (3 * th(j) - tt(j)) + g(i, j) * (3 * th(k) - tt(k)) -
                                    gt(i, k) * (3 * tt(j) - th(j)) - gt(i, j) * (3 * tt(k) - th(k)));
        r = std::max(r, std::abs(F(i, j, k) - rhs));
      }
  return r;
}

inline double check_w1(const FundamentalF& F, const ThetaForm& t, const MetricAt& m) {
  return check_w1(F.f, t.theta, m.g, m.gt);
}

/// The triple (A₃, B₁, B₂) whose vanishing is equivalent to ∇P = 0 (and ∇Q = 0).
struct ProductWitness {
  double A3 = 0.0;
  double B1 = 0.0;
  double B2 = 0.0;

  double max_abs() const { return std::max({std::abs(A3), std::abs(B1), std::abs(B2)}); }
};

inline ProductWitness product_witness(const MetricAt& m) { return {m.dA(2), m.dB(0), m.dB(1)}; }

inline bool is_locally_product(const MetricAt& m, double tol) {
  return product_witness(m).max_abs() < tol;
}

enum class EinsteinKind { Einstein, AlmostEinstein, Generic };

inline std::string to_string(EinsteinKind k) {
  switch (k) {
    case EinsteinKind::Einstein: return "Einstein";
    case EinsteinKind::AlmostEinstein: return "AlmostEinstein";
    case EinsteinKind::Generic: return "Generic";
  }
  return "?";
}

/// Result of fitting ρ = αg + βg̃. `alpha`/`beta` are always the best fit;
/// `kind` says whether the fit is good enough to call.
struct EinsteinFit {
  EinsteinKind kind = EinsteinKind::Generic;
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;
};

/// Pointwise test of ρ = αg + βg̃. On the diagonal this reads
/// ρ₁₁ = ρ₂₂ = (α − β)A and ρ₃₃ = (α + β)B; the first pair is fitted in the
/// least-squares sense and the off-diagonal entries only enter the residual.
inline EinsteinFit einstein_classify(const RicciData& ric, const MetricAt& m, double tol) {
  const Mat3& rho = ric.rho;
  const double plane = (rho(0, 0) + rho(1, 1)) / (2.0 * m.A());  // α − β
  const double axis = rho(2, 2) / m.B();                         // α + β
  EinsteinFit fit;
  fit.alpha = 0.5 * (plane + axis);
  fit.beta = 0.5 * (axis - plane);
  fit.residual = std::max(std::abs(rho(0, 0) - plane * m.A()), std::abs(rho(1, 1) - plane * m.A()));
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      if (i != j) fit.residual = std::max(fit.residual, std::abs(rho(i, j)));
  if (fit.residual < tol * (1.0 + rho.max_abs())) {
    fit.kind = std::abs(fit.beta) < tol ? EinsteinKind::Einstein : EinsteinKind::AlmostEinstein;
  }
  return fit;
}

/// |τ* + τ/3| at Einstein points; absent otherwise.
inline std::optional<double> check_einstein_scalar_relation(double tau, double tau_star, EinsteinKind kind) {
  if (kind != EinsteinKind::Einstein) return std::nullopt;
  return std::abs(tau_star + tau / 3.0);
}

/// Defect in ρ̃ = ρ + c_g·g + c_gt·g̃ with
/// c_g = ⅛(3τ̃* + τ̃ − 3τ − τ*) and c_gt = ⅛(3τ̃ + τ̃* − 3τ* − τ).
struct ConAeResult {
  double residual = 0.0;
  double coeff_g = 0.0;
  double coeff_gt = 0.0;
};

inline ConAeResult con_ae(const RicciData& ricci_g, const RicciData& ricci_gt, const MetricAt& m) {
  ConAeResult out;
  const double tau = ricci_g.tau, tau_s = ricci_g.tau_star;
  const double taut = ricci_gt.tau, taut_s = ricci_gt.tau_star;
  out.coeff_g = 0.125 * (3 * taut_s + taut - 3 * tau - tau_s);
  out.coeff_gt = 0.125 * (3 * taut + taut_s - 3 * tau_s - tau);
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      const double rhs = ricci_g.rho(i, j) + out.coeff_g * m.g(i, j) + out.coeff_gt * m.gt(i, j);
      out.residual = std::max(out.residual, std::abs(ricci_gt.rho(i, j) - rhs));
    }
  return out;
}

inline double check_con_ae(const RicciData& ricci_g, const RicciData& ricci_gt, const MetricAt& m) {
  return con_ae(ricci_g, ricci_gt, m).residual;
}

/// Per-point verdict and identity residuals.
struct ClassificationReport {
  Vec3 point;
  double w1_residual = 0.0;
  bool is_locally_product = false;
  ProductWitness product;
  EinsteinFit einstein;
  double con_ae_residual = 0.0;
  double con_ae_coeff_g = 0.0;
  double con_ae_coeff_gt = 0.0;
  /// |R − almost_einstein_R|; only when the point is (almost) Einstein.
  std::optional<double> fr_residual;
  /// |τ* + τ/3|; only at Einstein points.
  std::optional<double> einstein_scalar_residual;
};

inline ClassificationReport classify(const MetricAt& m, const FundamentalF& F, const ThetaForm& t,
                                     const Riemann4& R, const RicciData& ricci_g,
                                     const RicciData& ricci_gt, const Tolerances& tol = {}) {
  ClassificationReport c;
  c.point = m.point;
  c.w1_residual = check_w1(F, t, m);
  c.product = product_witness(m);
  c.is_locally_product = c.product.max_abs() < tol.first;
  c.einstein = einstein_classify(ricci_g, m, tol.curvature);
  const ConAeResult ae = con_ae(ricci_g, ricci_gt, m);
  c.con_ae_residual = ae.residual;
  c.con_ae_coeff_g = ae.coeff_g;
  c.con_ae_coeff_gt = ae.coeff_gt;
  if (c.einstein.kind != EinsteinKind::Generic) c.fr_residual = almost_einstein_residual(R, ricci_g, m);
  c.einstein_scalar_residual =
      check_einstein_scalar_relation(ricci_g.tau, ricci_g.tau_star, c.einstein.kind);
  return c;
}

}  // namespace qmf
