#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qmanifold/catenoid.hpp"
#include "qmanifold/qbasis.hpp"
#include "qmanifold/sampling.hpp"

namespace {

using namespace qmf;
using std::numbers::pi;

MetricAt at(const char* a, const char* b, Vec3 p) { return metric_at(MetricSpec::parse(a, b), p); }

TEST(InducesQBasis, Examples) {
  EXPECT_TRUE(induces_q_basis(make_vec(1, 0, 1)));
  EXPECT_FALSE(induces_q_basis(make_vec(0, 0, 1)));
  EXPECT_FALSE(induces_q_basis(make_vec(1, 1, 0)));
}

TEST(InducesQBasis, TripleProductIsTwiceTheCondition) {
  sampling::Rng rng(1);
  for (int s = 0; s < 200; ++s) {
    const Vec3 x = sampling::random_vector(rng);
    const double c = x(2) * (x(0) * x(0) + x(1) * x(1));
    EXPECT_NEAR(q_triple_product(x), 2 * c, 1e-14);
  }
}

TEST(InducesQBasis, DegenerateVectorQuotesTheCondition) {
  try {
    require_q_basis(make_vec(0, 0, 1));
    FAIL();
  } catch (const DegenerateVector& e) {
    EXPECT_NE(std::string(e.what()).find("x3*((x1)^2 + (x2)^2) != 0"), std::string::npos);
  }
  EXPECT_THROW((void)angles(at("1", "1", make_vec(0, 0, 0)), make_vec(1, 1, 0)), DegenerateVector);
}

TEST(Angles, FlatExamples) {
  const MetricAt m = at("1", "1", make_vec(0, 0, 0));
  const QAngles a = angles(m, make_vec(1, 0, 1));
  EXPECT_NEAR(a.cos_phi, 0.5, 1e-15);
  EXPECT_NEAR(a.phi, pi / 3, 1e-15);
  EXPECT_NEAR(a.cos_psi, 0.0, 1e-15);
  EXPECT_NEAR(a.psi, pi / 2, 1e-15);
  const QAngles b = angles(m, make_vec(1, 1, std::sqrt(2.0)));
  EXPECT_NEAR(b.cos_phi, 0.5, 1e-15);
  EXPECT_NEAR(b.cos_psi, 0.0, 1e-15);
}

TEST(RicciDirection, FlatEinsteinAndCatenoid) {
  const MetricAt flat = at("1", "1", make_vec(0, 0, 0));
  EXPECT_EQ(ricci_direction(ricci(riemann(flat), flat), flat, make_vec(1, 2, 3)), 0.0);

  const MetricAt h = at("1/x3^2", "1/x3^2", make_vec(0.4, -0.2, 2.5));
  const RicciData rh = ricci(riemann(h), h);
  sampling::Rng rng(2);
  for (int s = 0; s < 20; ++s) EXPECT_NEAR(ricci_direction(rh, h, sampling::random_vector(rng)), rh.tau / 3, 1e-12);

  const MetricAt c = metric_at(catenoid::spec(), make_vec(1, 0.3, 0.7));
  const Vec3 e1 = catenoid::frame_scales(1.0)(0) * basis_vector(0);
  const double c4 = std::pow(std::cosh(1.0), 4);
  EXPECT_NEAR(ricci_direction(ricci(riemann(c), c), c, e1), -1 / c4 + std::sinh(1.0) / std::pow(std::cosh(1.0), 3), 1e-12);
}

TEST(RicciDirection, NullDirectionsAreRejected) {
  const MetricAt m = at("1", "1", make_vec(0, 0, 0));
  const RicciData rt = ricci(riemann(m, Which::gt), m);
  EXPECT_THROW((void)ricci_direction(rt, m, make_vec(1, 0, 1)), NullDirection);
  EXPECT_THROW((void)ricci_direction(ricci(riemann(m), m), m, make_vec(0, 0, 0)), NullDirection);
}

TEST(Sectional, FlatCatenoidAndTildeVariant) {
  const MetricAt flat = at("1", "1", make_vec(0, 0, 0));
  EXPECT_EQ(sectional(riemann(flat), flat, basis_vector(0), basis_vector(2)), 0.0);

  const MetricAt c = metric_at(catenoid::spec(), make_vec(1, 0.3, 0.7));
  const Vec3 s = catenoid::frame_scales(1.0);
  const Vec3 e1 = s(0) * basis_vector(0), e2 = s(1) * basis_vector(1), e3 = s(2) * basis_vector(2);
  const double ch = std::cosh(1.0), sh = std::sinh(1.0);
  const Riemann4 R = riemann(c), Rt = riemann(c, Which::gt);
  EXPECT_NEAR(sectional(R, c, e1, e2), 1 / std::pow(ch, 4), 1e-12);
  EXPECT_NEAR(sectional(R, c, e2, e3), sh / std::pow(ch, 3), 1e-12);
  EXPECT_NEAR(sectional(R, c, e1, e3), -sh / std::pow(ch, 3), 1e-12);
  EXPECT_NEAR(sectional(Rt, c, e1, e2), -1 / std::pow(ch, 4), 1e-12);
}

TEST(Sectional, DegeneratePlanesAreRejected) {
  const MetricAt m = at("1", "1", make_vec(0, 0, 0));
  EXPECT_THROW((void)sectional(riemann(m), m, make_vec(1, 2, 3), make_vec(2, 4, 6)), DegeneratePlane);
  // Null plane for g̃: span{e₁ + e₃, e₂} has g̃ Gram determinant 0·(−1) − 0 = 0.
  EXPECT_THROW((void)sectional(riemann(m, Which::gt), m, make_vec(1, 0, 1), make_vec(0, 1, 0)), DegeneratePlane);
}

// Property: the sectional curvature depends only on the plane.
TEST(Property, SectionalIsInvariantUnderChangeOfBasis) {
  sampling::Rng rng(3);
  for (int s = 0; s < 100; ++s) {
    const MetricAt m = metric_at(sampling::random_spec(rng), sampling::random_point(rng, {-2, 2}));
    const Riemann4 R = riemann(m);
    const Vec3 x = sampling::random_vector(rng), y = sampling::random_vector(rng);
    // Unimodular integer change of basis.
    const double a = 2, b = 1, c = 3, d = 2;
    const Vec3 x2 = a * x + b * y, y2 = c * x + d * y;
    const double k = sectional(R, m, x, y);
    EXPECT_NEAR(sectional(R, m, x2, y2), k, 1e-9 * (1 + std::abs(k)));
  }
}

TEST(Report, FlatExample) {
  const QBasisReport q = q_basis_report(MetricSpec::parse("1", "1"), make_vec(0, 0, 0), make_vec(1, 0, 1));
  EXPECT_NEAR(q.angles.phi, pi / 3, 1e-15);
  EXPECT_NEAR(q.angles.psi, pi / 2, 1e-15);
  EXPECT_TRUE(q.psi_right_angle);
  EXPECT_FALSE(q.con_r_residual.has_value());
  for (double r : q.ricci_dirs) EXPECT_EQ(r, 0.0);
  for (double k : q.sectional) EXPECT_EQ(k, 0.0);
  ASSERT_TRUE(q.obmu_residual.has_value());
  EXPECT_EQ(*q.obmu_residual, 0.0);
  ASSERT_TRUE(q.flat_gt_ricci_residual.has_value());
  EXPECT_EQ(*q.flat_gt_ricci_residual, 0.0);
  EXPECT_EQ(q.orbit[3], q_apply(make_vec(1, 0, 1), 3));
}

TEST(Report, CatenoidConR) {
  const QBasisReport q = q_basis_report(catenoid::spec(), make_vec(1, 0.3, 0.7), make_vec(1, 1, 1));
  ASSERT_TRUE(q.con_r_residual.has_value());
  EXPECT_LT(*q.con_r_residual, 1e-7);
  EXPECT_EQ(q.einstein.kind, EinsteinKind::Generic);
  EXPECT_FALSE(q.obmu_residual.has_value());
}

TEST(Report, EinsteinPointHasEqualSectionalCurvatures) {
  const MetricAt h = at("1/x3^2", "1/x3^2", make_vec(0.4, -0.2, 2.5));
  const QBasisReport q = q_basis_report(h, make_vec(0.3, -1.2, 0.8));
  const RicciData ric = ricci(riemann(h), h);
  for (double k : q.sectional) EXPECT_NEAR(k, -ric.tau / 6, 1e-12);
  for (double r : q.ricci_dirs) EXPECT_NEAR(r, ric.tau / 3, 1e-12);
  ASSERT_TRUE(q.obmu_residual.has_value());
  EXPECT_LT(*q.obmu_residual, 1e-7);
}

TEST(Report, AlmostEinsteinPointMatchesPrediction) {
  const MetricAt m = at("1/x2^2", "1", make_vec(0.3, 0.5, 2));
  for (const Vec3& x : {make_vec(1, 1, 1), make_vec(0.2, -0.7, 1.5), make_vec(2, 0.1, -0.3)}) {
    const QBasisReport q = q_basis_report(m, x);
    EXPECT_EQ(q.einstein.kind, EinsteinKind::AlmostEinstein);
    ASSERT_TRUE(q.obmu_residual.has_value());
    EXPECT_LT(*q.obmu_residual, 1e-7);
    const RicciData ric = ricci(riemann(m), m);
    EXPECT_NEAR(q.sectional[1], -(ric.tau + ric.tau_star) / 4, 1e-12);
    EXPECT_NEAR(q.sectional[4], -(ric.tau + ric.tau_star) / 4, 1e-12);
  }
}

TEST(Report, FlatConnectionsRicciDirections) {
  const MetricAt m = at("exp(x1)", "(3 + 2*exp(x1/2)*cos(x2/2))^2", make_vec(0.3, 0.5, 2));
  const QBasisReport q = q_basis_report(m, make_vec(0.4, 1.1, -0.6));
  ASSERT_TRUE(q.flat_gt_ricci_residual.has_value());
  EXPECT_LT(*q.flat_gt_ricci_residual, 1e-7);
}

// Property: orbit metric relations, angle relations and the g/g̃ Ricci
// curvature relation on random metrics and vectors.
TEST(Property, QBasisGeometry) {
  sampling::Rng rng(707);
  int con_r_checked = 0;
  for (int s = 0; s < 500; ++s) {
    const MetricAt m = metric_at(sampling::random_spec(rng), sampling::random_point(rng, {-2, 2}));
    const Vec3 x = sampling::random_q_vector(rng);
    const QBasisReport q = q_basis_report(m, x);
    EXPECT_LT(q.orbit_identity_residual, 1e-12);
    EXPECT_LT(q.angles.route_residual, 1e-12);
    EXPECT_GT(q.angles.phi, 0.0);
    EXPECT_LT(q.angles.phi, pi / 2);
    EXPECT_GT(q.angles.psi, q.angles.phi);
    EXPECT_LT(std::abs(q.angles.cos_psi - (2 * q.angles.cos_phi - 1)), 1e-12);
    EXPECT_LT(std::abs(cos_angle(m, x, q_apply(x, 3)) - q.angles.cos_phi), 1e-12);
    if (std::abs(q.angles.cos_psi) > 1e-6) {
      ASSERT_TRUE(q.con_r_residual.has_value());
      EXPECT_LT(*q.con_r_residual, 1e-7);
      ++con_r_checked;
    }
  }
  EXPECT_GT(con_r_checked, 400);
}

}  // namespace
