#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmanifold/classify.hpp"
#include "qmanifold/connection.hpp"
#include "qmanifold/curvature.hpp"
#include "qmanifold/structures.hpp"

namespace qmf {

/// Every identity the pipeline checks at a point, as a max-abs residual.
struct IdentityResiduals {
  // First-derivative level.
  double christoffel_closed_form = 0.0;
  double fundamental_f_closed_form = 0.0;
  double theta_closed_form = 0.0;
  double nabla_q_closed_form = 0.0;
  double metric_compatibility_g = 0.0;
  double metric_compatibility_gt = 0.0;
  double deformation_dual_path = 0.0;
  double w1 = 0.0;
  // Curvature level.
  double riemann_symmetry_g = 0.0;
  double riemann_symmetry_gt = 0.0;
  double reconstruction_g = 0.0;
  double reconstruction_gt = 0.0;
  double con_ae = 0.0;

  /// (name, value, is_curvature_level) for reporting and gating.
  std::vector<std::pair<std::string, std::pair<double, bool>>> entries() const {
    return {
        {"christoffel_closed_form", {christoffel_closed_form, false}},
        {"fundamental_f_closed_form", {fundamental_f_closed_form, false}},
        {"theta_closed_form", {theta_closed_form, false}},
        {"nabla_q_closed_form", {nabla_q_closed_form, false}},
        {"metric_compatibility_g", {metric_compatibility_g, false}},
        {"metric_compatibility_gt", {metric_compatibility_gt, false}},
        {"deformation_dual_path", {deformation_dual_path, false}},
        {"w1", {w1, false}},
        {"riemann_symmetry_g", {riemann_symmetry_g, true}},
        {"riemann_symmetry_gt", {riemann_symmetry_gt, true}},
        {"reconstruction_g", {reconstruction_g, true}},
        {"reconstruction_gt", {reconstruction_gt, true}},
        {"con_ae", {con_ae, true}},
    };
  }

  /// Names of the identities whose residual exceeds its tolerance.
  std::vector<std::string> failures(const Tolerances& tol) const {
    std::vector<std::string> out;
    for (const auto& [n, e] : entries())
      if (!(e.first < (e.second ? tol.curvature : tol.first))) out.push_back(n);
    return out;
  }
};

/// Everything computed at one point, for both metrics.
struct CurvatureReport {
  MetricAt metric;
  Christoffel gamma;
  Christoffel gamma_tilde;
  Tensor3 deformation;  // T = Γ̃ − Γ, closed form
  FundamentalF F;
  ThetaForm theta;
  Tensor3 nabla_q;
  Riemann4 R;
  Riemann4 R_tilde;
  RicciData ricci_g;
  RicciData ricci_gt;
  IdentityResiduals residuals;
};

inline CurvatureReport analyze(const MetricAt& m) {
  CurvatureReport rep;
  rep.metric = m;
  rep.gamma = christoffel(m, Which::g);
  rep.gamma_tilde = christoffel(m, Which::gt);
  rep.F = fundamental_f(m, rep.gamma);
  rep.theta = theta(m, rep.F);
  rep.deformation = deformation_tensor(m, rep.theta);
  rep.nabla_q = nabla_q(m, rep.gamma);
  rep.R = riemann(m, Which::g);
  rep.R_tilde = riemann(m, Which::gt);
  rep.ricci_g = ricci(rep.R, m);
  rep.ricci_gt = ricci(rep.R_tilde, m);

  IdentityResiduals& r = rep.residuals;
  r.christoffel_closed_form = (rep.gamma.gamma - christoffel_closed_form(m).gamma).max_abs();
  r.fundamental_f_closed_form = (rep.F.f - fundamental_f_closed_form(m).f).max_abs();
  r.theta_closed_form = (rep.theta.theta - theta_closed_form(m).theta).max_abs();
  r.nabla_q_closed_form = (rep.nabla_q - nabla_q_closed_form(m)).max_abs();
  r.metric_compatibility_g = metric_compatibility_residual(m, rep.gamma);
  r.metric_compatibility_gt = metric_compatibility_residual(m, rep.gamma_tilde);
  r.deformation_dual_path =
      (rep.deformation - deformation_tensor_difference(rep.gamma, rep.gamma_tilde)).max_abs();
  r.w1 = check_w1(rep.F, rep.theta, m);
  r.riemann_symmetry_g = riemann_symmetry(rep.R).max();
  r.riemann_symmetry_gt = riemann_symmetry(rep.R_tilde).max();
  r.reconstruction_g = reconstruction_residual(rep.R, rep.ricci_g, m);
  r.reconstruction_gt = reconstruction_residual(rep.R_tilde, rep.ricci_gt, m);
  r.con_ae = check_con_ae(rep.ricci_g, rep.ricci_gt, m);
  return rep;
}

inline CurvatureReport analyze(const MetricSpec& spec, const Vec3& point) {
  return analyze(metric_at(spec, point));
}

inline ClassificationReport classify(const CurvatureReport& rep, const Tolerances& tol = {}) {
  return classify(rep.metric, rep.F, rep.theta, rep.R, rep.ricci_g, rep.ricci_gt, tol);
}

}  // namespace qmf
