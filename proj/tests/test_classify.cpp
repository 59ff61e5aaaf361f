#include <gtest/gtest.h>

#include <cmath>

#include "qmanifold/analysis.hpp"
#include "qmanifold/catenoid.hpp"
#include "qmanifold/classify.hpp"
#include "qmanifold/sampling.hpp"

namespace {

using namespace qmf;

CurvatureReport report(const char* a, const char* b, Vec3 p) { return analyze(MetricSpec::parse(a, b), p); }

TEST(W1, FlatAndCatenoid) {
  const CurvatureReport flat = report("1", "1", make_vec(0, 0, 0));
  EXPECT_EQ(check_w1(flat.F, flat.theta, flat.metric), 0.0);
  const CurvatureReport cat = analyze(catenoid::spec(), make_vec(1, 0.3, 0.7));
  EXPECT_LT(check_w1(cat.F, cat.theta, cat.metric), 1e-9);
}

TEST(W1, DetectsAWrongLeeForm) {
  const CurvatureReport cat = analyze(catenoid::spec(), make_vec(0.5, 0.3, 0.7));
  ThetaForm wrong = cat.theta;
  wrong.theta(0) *= 1.5;
  EXPECT_GT(check_w1(cat.F, make_theta_form(cat.metric, wrong.theta), cat.metric), 0.1);
}

TEST(LocallyProduct, Examples) {
  EXPECT_TRUE(is_locally_product(metric_at(MetricSpec::parse("1+x1^2+x2^2", "exp(x3)"), make_vec(0.3, -1, 2)), 1e-10));
  EXPECT_FALSE(is_locally_product(metric_at(catenoid::spec(), make_vec(1, 0, 0)), 1e-10));
  EXPECT_FALSE(is_locally_product(metric_at(MetricSpec::parse("exp(x3)", "1"), make_vec(0, 0, 0)), 1e-10));
  const ProductWitness w = product_witness(metric_at(catenoid::spec(), make_vec(1, 0, 0)));
  EXPECT_DOUBLE_EQ(w.B1, 2.0);
  EXPECT_EQ(w.A3, 0.0);
}

TEST(Einstein, FlatIsEinsteinWithZeroConstant) {
  const CurvatureReport r = report("1", "1", make_vec(0.5, -1, 2));
  const EinsteinFit fit = einstein_classify(r.ricci_g, r.metric, 1e-7);
  EXPECT_EQ(fit.kind, EinsteinKind::Einstein);
  EXPECT_EQ(fit.alpha, 0.0);
  EXPECT_EQ(fit.beta, 0.0);
  const ClassificationReport c = classify(r);
  ASSERT_TRUE(c.einstein_scalar_residual.has_value());
  EXPECT_EQ(*c.einstein_scalar_residual, 0.0);
  ASSERT_TRUE(c.fr_residual.has_value());
  EXPECT_EQ(*c.fr_residual, 0.0);
}

TEST(Einstein, CatenoidIsGenericAtSampledPoints) {
  for (double u : {-2.0, -0.5, 0.5, 1.0, 2.0})
    for (const auto& [v, w] : {std::pair{0.0, 0.0}, std::pair{0.3, 0.7}, std::pair{2.0, -1.0}}) {
      const ClassificationReport c = classify(analyze(catenoid::spec(), make_vec(u, v, w)));
      EXPECT_EQ(c.einstein.kind, EinsteinKind::Generic) << u;
      EXPECT_FALSE(c.einstein_scalar_residual.has_value());
      EXPECT_FALSE(c.fr_residual.has_value());
    }
}

TEST(Einstein, UpperHalfSpaceIsEinstein) {
  const CurvatureReport r = report("1/x3^2", "1/x3^2", make_vec(0.4, -0.2, 2.5));
  const ClassificationReport c = classify(r);
  EXPECT_EQ(c.einstein.kind, EinsteinKind::Einstein);
  EXPECT_NEAR(c.einstein.alpha, -2.0, 1e-12);
  ASSERT_TRUE(c.einstein_scalar_residual.has_value());
  EXPECT_LT(*c.einstein_scalar_residual, 1e-12);
  EXPECT_LT(*c.fr_residual, 1e-7);
}

TEST(Einstein, HyperbolicPlaneTimesLineIsAlmostEinstein) {
  const CurvatureReport r = report("1/x2^2", "1", make_vec(0.3, 0.5, 2));
  const ClassificationReport c = classify(r);
  EXPECT_EQ(c.einstein.kind, EinsteinKind::AlmostEinstein);
  EXPECT_NEAR(c.einstein.alpha, -0.5, 1e-12);
  EXPECT_NEAR(c.einstein.beta, 0.5, 1e-12);
  EXPECT_FALSE(c.einstein_scalar_residual.has_value());
  ASSERT_TRUE(c.fr_residual.has_value());
  EXPECT_LT(*c.fr_residual, 1e-7);
}

TEST(Einstein, ScalarRelationExample) {
  EXPECT_EQ(*check_einstein_scalar_relation(6, -2, EinsteinKind::Einstein), 0.0);
  EXPECT_FALSE(check_einstein_scalar_relation(6, -2, EinsteinKind::Generic).has_value());
  EXPECT_FALSE(check_einstein_scalar_relation(6, -2, EinsteinKind::AlmostEinstein).has_value());
}

// ρ built as αg + βg̃ with α = (3τ+τ*)/8, β = (3τ*+τ)/8 is recovered by the fit.
TEST(Property, RhoOfAlmostEinsteinFormIsRecovered) {
  sampling::Rng rng(55);
  for (int s = 0; s < 200; ++s) {
    const MetricAt m = metric_at(sampling::random_spec(rng), sampling::random_point(rng, {-2, 2}));
    const double tau = rng.uniform(-5, 5), tau_star = rng.uniform(-5, 5);
    const double alpha = (3 * tau + tau_star) / 8, beta = (3 * tau_star + tau) / 8;
    RicciData ric;
    ric.rho = alpha * m.g + beta * m.gt;
    const EinsteinFit fit = einstein_classify(ric, m, 1e-7);
    EXPECT_NE(fit.kind, EinsteinKind::Generic);
    EXPECT_NEAR(fit.alpha, alpha, 1e-8);
    EXPECT_NEAR(fit.beta, beta, 1e-8);
    // And the traces of that ρ are the τ, τ* it was built from.
    double t = 0, ts = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      t += m.g_inv(i, i) * ric.rho(i, i);
      ts += m.gt_inv(i, i) * ric.rho(i, i);
    }
    EXPECT_NEAR(t, tau, 1e-12 * (1 + std::abs(tau)));
    EXPECT_NEAR(ts, tau_star, 1e-12 * (1 + std::abs(tau_star)));
  }
}

TEST(Einstein, OffDiagonalEntriesMakeItGeneric) {
  const MetricAt m = metric_at(MetricSpec::parse("1", "1"), make_vec(0, 0, 0));
  RicciData ric;
  ric.rho = make_diag(1, 1, 1);
  ric.rho(0, 2) = ric.rho(2, 0) = 1e-3;
  EXPECT_EQ(einstein_classify(ric, m, 1e-7).kind, EinsteinKind::Generic);
}

TEST(ConAe, FlatCatenoidAndCoefficients) {
  const CurvatureReport flat = report("1", "1", make_vec(0, 0, 0));
  EXPECT_EQ(check_con_ae(flat.ricci_g, flat.ricci_gt, flat.metric), 0.0);
  for (double u : {0.5, 1.0, 2.0}) {
    const CurvatureReport cat = analyze(catenoid::spec(), make_vec(u, 0.3, 0.7));
    const ConAeResult r = con_ae(cat.ricci_g, cat.ricci_gt, cat.metric);
    EXPECT_LT(r.residual, 1e-8);
    EXPECT_LT(std::abs(r.coeff_g), 1e-9);
    EXPECT_LT(std::abs(r.coeff_gt), 1e-9);
    EXPECT_LT((cat.ricci_gt.rho - cat.ricci_g.rho).max_abs(), 1e-9);
  }
}

// Property: W₁ and the Ricci relation hold at every admissible point.
TEST(Property, W1AndConAeAreUniversal) {
  sampling::Rng rng(66);
  for (int s = 0; s < 300; ++s) {
    const CurvatureReport r = analyze(sampling::random_spec(rng), sampling::random_point(rng, {-2, 2}));
    const ClassificationReport c = classify(r);
    EXPECT_LT(c.w1_residual, 1e-8);
    EXPECT_LT(c.con_ae_residual, 1e-8);
    if (c.einstein.kind == EinsteinKind::Einstein) {
      EXPECT_LT(std::abs(c.einstein.beta), 1e-7);
    }
  }
}

// With both connections flat (non-constant coefficients), the flat-g̃ and
// flat-g specializations hold.
TEST(FlatConnections, SpecializationsHold) {
  const MetricSpec spec = MetricSpec::parse("exp(x1)", "(3 + 2*exp(x1/2)*cos(x2/2))^2");
  for (const Vec3& p : {make_vec(0.3, 0.5, 2), make_vec(-1, 1.2, 0), make_vec(1.1, -0.7, -3)}) {
    const CurvatureReport r = analyze(spec, p);
    ASSERT_LT(r.R_tilde.r.max_abs(), 1e-10);
    ASSERT_LT(r.R.r.max_abs(), 1e-10);
    ASSERT_GT(std::abs(r.metric.dA(0)), 0.1);
    const EinsteinFit fit = einstein_classify(r.ricci_g, r.metric, 1e-7);
    EXPECT_NE(fit.kind, EinsteinKind::Generic);
    const double tau = r.ricci_g.tau, ts = r.ricci_g.tau_star;
    EXPECT_NEAR(fit.alpha, (3 * tau + ts) / 8, 1e-7);
    EXPECT_NEAR(fit.beta, (3 * ts + tau) / 8, 1e-7);
    const double taut = r.ricci_gt.tau, tauts = r.ricci_gt.tau_star;
    const Mat3 pred = ((3 * tauts + taut) / 8) * r.metric.g + ((3 * taut + tauts) / 8) * r.metric.gt;
    EXPECT_LT((r.ricci_gt.rho - pred).max_abs(), 1e-7);
  }
}

}  // namespace
