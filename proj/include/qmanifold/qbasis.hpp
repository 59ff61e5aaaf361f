#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "qmanifold/classify.hpp"
#include "qmanifold/curvature.hpp"
#include "qmanifold/error.hpp"
#include "qmanifold/structures.hpp"

namespace qmf {

/// Relative threshold for degenerate planes and null directions.
inline constexpr double kDegeneracyTol = 1e-10;

/// |x³((x¹)² + (x²)²)| > tol: the orbit {x, Qx, Q²x, Q³x} then contains a basis,
/// and every triple from it is one.
inline bool induces_q_basis(const Vec3& x, double tol = 1e-12) {
  return std::abs(x(2) * (x(0) * x(0) + x(1) * x(1))) > tol;
}

/// det[x; Qx; Q²x], which equals 2x³((x¹)² + (x²)²).
inline double q_triple_product(const Vec3& x) {
  Mat3 rows;
  const Vec3 v1 = q_apply(x, 1), v2 = q_apply(x, 2);
  for (std::size_t j = 0; j < kDim; ++j) {
    rows(0, j) = x(j);
    rows(1, j) = v1(j);
    rows(2, j) = v2(j);
  }
  return determinant(rows);
}

inline void require_q_basis(const Vec3& x) {
  if (!induces_q_basis(x))
    throw DegenerateVector(
        "vector does not induce a Q-basis: requires x3*((x1)^2 + (x2)^2) != 0");
}

/// φ = ∠(x, Qx) and ψ = ∠(x, Q²x) with respect to g.
struct QAngles {
  double phi = 0.0;
  double psi = 0.0;
  double cos_phi = 0.0;
  double cos_psi = 0.0;
  /// |closed form − inner-product route| over both cosines.
  double route_residual = 0.0;
};

inline double cos_angle(const MetricAt& m, const Vec3& a, const Vec3& b) {
  return inner(m, a, b) / (std::sqrt(inner(m, a, a)) * std::sqrt(inner(m, b, b)));
}

/// The closed forms cos φ = B(x³)²/(A((x¹)²+(x²)²) + B(x³)²) and
/// cos ψ = (−A((x¹)²+(x²)²) + B(x³)²)/(A((x¹)²+(x²)²) + B(x³)²), cross-checked
/// against the general cosine formula.
inline QAngles angles(const MetricAt& m, const Vec3& x) {
  require_q_basis(x);
  const double plane = m.A() * (x(0) * x(0) + x(1) * x(1));
  const double axis = m.B() * x(2) * x(2);
  QAngles a;
  a.cos_phi = axis / (plane + axis);
  a.cos_psi = (axis - plane) / (plane + axis);
  a.phi = std::acos(a.cos_phi);
  a.psi = std::acos(a.cos_psi);
  a.route_residual = std::max(std::abs(a.cos_phi - cos_angle(m, x, q_apply(x, 1))),
                              std::abs(a.cos_psi - cos_angle(m, x, q_apply(x, 2))));
  return a;
}

/// r(v) = ρ(v, v)/h(v, v) with h the metric the Ricci data belongs to.
inline double ricci_direction(const RicciData& ric, const MetricAt& m, const Vec3& v) {
  const double den = inner(m, v, v, ric.which);
  const double scale = inner(m, v, v, Which::g);
  if (!(scale > 0.0) || std::abs(den) <= kDegeneracyTol * scale)
    throw NullDirection("Ricci curvature undefined: " + std::string(name(ric.which)) +
                        "(v, v) vanishes");
  return bilinear(ric.rho, v, v) / den;
}

/// k(x, y) = R(x, y, x, y)/(h(x, x)h(y, y) − h(x, y)²), h the metric of R.
inline double sectional(const Riemann4& R, const MetricAt& m, const Vec3& x, const Vec3& y) {
  auto h = [&](const Vec3& a, const Vec3& b) { return inner(m, a, b, R.which); };
  const double den = h(x, x) * h(y, y) - h(x, y) * h(x, y);
  const double scale = inner(m, x, x) * inner(m, y, y);
  if (!(scale > 0.0) || std::abs(den) <= kDegeneracyTol * scale)
    throw DegeneratePlane("sectional curvature undefined: the 2-plane is degenerate for " +
                          std::string(name(R.which)));
  return R(x, y, x, y) / den;
}

/// The six planes spanned by pairs from the Q-orbit, in report order.
inline constexpr std::array<std::array<int, 2>, 6> kOrbitPlanes{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Residual of the metric relations along the Q-orbit: equal norms,
/// g(x,Qx) = g(x,Q³x) = g(Qx,Q²x) = g(Q²x,Q³x) = g(x,x)cos φ,
/// g(x,Q²x) = g(Qx,Q³x) = g(x,x)cos ψ and g̃(x,x) = g(x,x)cos ψ,
/// relative to 1 + g(x,x).
inline double q_orbit_identity_residual(const MetricAt& m, const Vec3& x, const QAngles& a) {
  std::array<Vec3, 4> o{x, q_apply(x, 1), q_apply(x, 2), q_apply(x, 3)};
  auto g = [&](int i, int j) { return inner(m, o[static_cast<std::size_t>(i)], o[static_cast<std::size_t>(j)]); };
  const double n = g(0, 0);
  const double c1 = n * a.cos_phi, c2 = n * a.cos_psi;
  const double d[] = {
      g(1, 1) - n, g(2, 2) - n, g(3, 3) - n,
      g(0, 1) - c1, g(0, 3) - c1, g(1, 2) - c1, g(2, 3) - c1,
      g(0, 2) - c2, g(1, 3) - c2,
      inner(m, x, x, Which::gt) - c2,
  };
  double r = 0.0;
  for (double v : d) r = std::max(r, std::abs(v));
  return r / (1.0 + std::abs(n));
}

/// Sectional curvatures predicted for the six orbit planes when ρ has the
/// almost-Einstein form. The first expression is evaluated exactly as
/// printed, with the factor (cos²φ − cos ψ)/(1 − cos²φ) left unsimplified.
inline std::array<double, 6> predicted_orbit_sectionals(double tau, double tau_star, const QAngles& a) {
  const double opposite = -(tau + tau_star) / 4.0;
  const double c2 = a.cos_phi * a.cos_phi;
  const double adjacent = opposite + (c2 - a.cos_psi) * (tau + 3.0 * tau_star) / (4.0 * (1.0 - c2));
  // planes: (x,Qx) (x,Q²x) (x,Q³x) (Qx,Q²x) (Qx,Q³x) (Q²x,Q³x)
  return {adjacent, opposite, adjacent, adjacent, opposite, adjacent};
}

struct QBasisReport {
  Vec3 x;
  std::array<Vec3, 4> orbit;
  QAngles angles;
  double orbit_identity_residual = 0.0;
  double triple_product = 0.0;
  /// r(·) along x, Qx, Q²x, Q³x.
  std::array<double, 4> ricci_dirs{};
  /// k(x,Qx), k(x,Q²x), k(x,Q³x), k(Qx,Q²x), k(Qx,Q³x), k(Q²x,Q³x).
  std::array<double, 6> sectional{};
  /// r̃(x), absent when g̃(x, x) vanishes.
  std::optional<double> ricci_tilde_x;
  /// Ricci-curvature relation between g and g̃; absent when ψ = π/2.
  std::optional<double> con_r_residual;
  bool psi_right_angle = false;
  EinsteinFit einstein;
  /// Six-plane prediction and its defect, present at (almost) Einstein points.
  std::optional<std::array<double, 6>> predicted_sectional;
  std::optional<double> obmu_residual;
  /// Defect in r(Qⁿx) = (cos ψ/8)(3τ* + τ) + (3τ + τ*)/8, present where R̃ = 0.
  std::optional<double> flat_gt_ricci_residual;
};

/// Threshold on |cos ψ| below which the g/g̃ Ricci-curvature relation is not evaluated.
inline constexpr double kPsiRightAngleTol = 1e-6;

/// Threshold on max|R̃| for treating ∇̃ as flat.
inline constexpr double kFlatTol = 1e-10;

inline double con_r_residual(const RicciData& ricci_g, const RicciData& ricci_gt, double r_x,
                             double r_tilde_x, double cos_psi) {
  const double tau = ricci_g.tau, tau_s = ricci_g.tau_star;
  const double taut = ricci_gt.tau, taut_s = ricci_gt.tau_star;
  const double predicted = r_x / cos_psi + (3 * taut_s + taut - 3 * tau - tau_s) / (8 * cos_psi) +
                           (3 * taut + taut_s - 3 * tau_s - tau) / 8;
  return std::abs(r_tilde_x - predicted);
}

inline QBasisReport q_basis_report(const MetricAt& m, const Vec3& x, const Tolerances& tol = {}) {
  QBasisReport rep;
  rep.x = x;
  rep.angles = angles(m, x);
  for (int n = 0; n < 4; ++n) rep.orbit[static_cast<std::size_t>(n)] = q_apply(x, n);
  rep.orbit_identity_residual = q_orbit_identity_residual(m, x, rep.angles);
  rep.triple_product = q_triple_product(x);

  const Riemann4 R = riemann(m, Which::g);
  const Riemann4 Rt = riemann(m, Which::gt);
  const RicciData ric = ricci(R, m);
  const RicciData ric_t = ricci(Rt, m);

  for (std::size_t n = 0; n < 4; ++n) rep.ricci_dirs[n] = ricci_direction(ric, m, rep.orbit[n]);
  for (std::size_t p = 0; p < kOrbitPlanes.size(); ++p)
    rep.sectional[p] = sectional(R, m, rep.orbit[static_cast<std::size_t>(kOrbitPlanes[p][0])],
                                 rep.orbit[static_cast<std::size_t>(kOrbitPlanes[p][1])]);

  try {
    rep.ricci_tilde_x = ricci_direction(ric_t, m, x);
  } catch (const NullDirection&) {
  }
  rep.psi_right_angle = std::abs(rep.angles.cos_psi) <= kPsiRightAngleTol;
  if (!rep.psi_right_angle && rep.ricci_tilde_x)
    rep.con_r_residual = con_r_residual(ric, ric_t, rep.ricci_dirs[0], *rep.ricci_tilde_x, rep.angles.cos_psi);

  rep.einstein = einstein_classify(ric, m, tol.curvature);
  if (rep.einstein.kind != EinsteinKind::Generic) {
    const auto pred = predicted_orbit_sectionals(ric.tau, ric.tau_star, rep.angles);
    double r = 0.0;
    for (std::size_t p = 0; p < pred.size(); ++p) r = std::max(r, std::abs(pred[p] - rep.sectional[p]));
    rep.predicted_sectional = pred;
    rep.obmu_residual = r;
  }
  if (Rt.r.max_abs() < kFlatTol) {
    const double pred = rep.angles.cos_psi / 8.0 * (3 * ric.tau_star + ric.tau) + (3 * ric.tau + ric.tau_star) / 8.0;
    double r = 0.0;
    for (double v : rep.ricci_dirs) r = std::max(r, std::abs(v - pred));
    rep.flat_gt_ricci_residual = r;
  }
  return rep;
}

inline QBasisReport q_basis_report(const MetricSpec& spec, const Vec3& point, const Vec3& x,
                                   const Tolerances& tol = {}) {
  require_q_basis(x);
  return q_basis_report(metric_at(spec, point), x, tol);
}

}  // namespace qmf
