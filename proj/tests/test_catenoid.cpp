#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qmanifold/catenoid.hpp"

namespace {

using namespace qmf;
using std::numbers::pi;

TEST(Embedding, Examples) {
  const auto a = catenoid::embedding(1, 0, 0);
  EXPECT_DOUBLE_EQ(a[0], std::cosh(1.0));
  EXPECT_DOUBLE_EQ(a[1], 0.0);
  EXPECT_DOUBLE_EQ(a[2], 1.0);
  EXPECT_DOUBLE_EQ(a[3], 0.0);
  const auto b = catenoid::embedding(1, pi / 2, pi / 2);
  EXPECT_NEAR(b[0], 0.0, 1e-15);
  EXPECT_NEAR(b[1], std::cosh(1.0), 1e-15);
  EXPECT_NEAR(b[2], 0.0, 1e-15);
  EXPECT_NEAR(b[3], 1.0, 1e-15);
  EXPECT_THROW((void)catenoid::embedding(0, 1, 1), DegenerateParameter);
}

TEST(Embedding, InducedMetricMatchesOnAGrid) {
  const MetricSpec spec = catenoid::spec();
  for (double u : {-2.0, -0.9, 0.4, 1.3, 2.0})
    for (double v : {0.0, 1.3, 2.6, 3.9, 5.2})
      for (double w : {0.0, 1.3, 2.6, 3.9, 5.2}) {
        const Mat3 fd = catenoid::induced_metric_fd(u, v, w);
        EXPECT_LT((fd - metric_at(spec, make_vec(u, v, w)).g).max_abs(), 1e-6);
        EXPECT_NEAR(fd(2, 2), u * u, 1e-6);
      }
}

TEST(FrameComponents, ScalesEveryIndex) {
  Tensor3 F;
  F(2, 0, 2) = -2.0;  // coordinate F₃₁₃ = −2u at u = 1
  const Tensor3 f = catenoid::frame_components(F, catenoid::frame_scales(1.0));
  EXPECT_NEAR(f(2, 0, 2), -2 / std::cosh(1.0), 1e-15);
  EXPECT_NEAR(f(2, 0, 2), -1.296, 1e-3);
  Tensor4 R;
  R(0, 1, 0, 1) = 3.5;
  EXPECT_EQ(catenoid::frame_components(R, make_vec(1, 1, 1)), R);
}

TEST(FrameScales, SignBranch) {
  EXPECT_DOUBLE_EQ(catenoid::frame_scales(-2)(2), 0.5);
  EXPECT_DOUBLE_EQ(catenoid::frame_scales(2)(2), 0.5);
  EXPECT_THROW((void)catenoid::frame_scales(0), DegenerateParameter);
}

TEST(Commutators, ClosedForms) {
  const auto c1 = catenoid::commutator_check(1.0);
  EXPECT_LT(c1.residual, 1e-9);
  EXPECT_NEAR(c1.computed(1, 0, 1), -std::sinh(1.0) / (std::cosh(1.0) * std::cosh(1.0)), 1e-15);
  EXPECT_NEAR(c1.computed(1, 0, 1), -0.493554, 1e-6);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(c1.computed(k, 1, 2), 0.0);
  const auto c2 = catenoid::commutator_check(2.0);
  EXPECT_LT(c2.residual, 1e-9);
  EXPECT_NEAR(c2.computed(2, 0, 2), -1 / (2 * std::cosh(2.0)), 1e-15);
  EXPECT_LT(catenoid::commutator_check(-0.7).residual, 1e-9);
}

TEST(Golden, AllRowsMatchAtReferenceParameters) {
  for (double u : {0.5, 1.0, 2.0, -1.0, -0.5})
    for (const auto& [v, w] : {std::pair{0.3, 0.7}, std::pair{1.9, -2.4}, std::pair{4.0, 3.1}}) {
      const auto g = catenoid::golden_report(u, v, w);
      for (const auto& r : g.rows) EXPECT_LT(r.diff(), 1e-9) << r.quantity << " at u = " << u;
      EXPECT_EQ(g.classification.einstein.kind, EinsteinKind::Generic);
      EXPECT_TRUE(g.curvature.residuals.failures({}).empty());
    }
}

TEST(Golden, ValuesDoNotDependOnVW) {
  const auto a = catenoid::golden_report(0.5, 0.3, 0.7);
  const auto b = catenoid::golden_report(0.5, 2.2, -1.1);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_NEAR(a.rows[i].computed, b.rows[i].computed, 1e-12);
}

TEST(Golden, ScalarInvariantsAgreeOnBothBranches) {
  const auto p = catenoid::golden_report(1.0, 0.3, 0.7);
  const auto m = catenoid::golden_report(-1.0, 0.3, 0.7);
  EXPECT_NEAR(p.curvature.ricci_g.tau, m.curvature.ricci_g.tau, 1e-14);
  EXPECT_NEAR(p.curvature.ricci_g.tau_star, m.curvature.ricci_g.tau_star, 1e-14);
  EXPECT_NEAR(p.curvature.ricci_gt.tau, m.curvature.ricci_gt.tau, 1e-14);
  EXPECT_NEAR(p.curvature.ricci_gt.tau_star, m.curvature.ricci_gt.tau_star, 1e-14);
}

TEST(Golden, ParallelismWitnessAtUEqualsOne) {
  const auto g = catenoid::golden_report(1.0, 0.3, 0.7);
  EXPECT_GT(g.curvature.nabla_q.max_abs(), 1e-2);
  EXPECT_GT(g.curvature.F.f.max_abs(), 1e-2);
}

TEST(Golden, LeeFormNote) {
  for (double u : {0.5, 2.0}) {
    const auto g = catenoid::golden_report(u, 0.3, 0.7);
    EXPECT_NEAR(g.theta.computed, -2 / (u * std::cosh(u)), 1e-14);
    EXPECT_NEAR(g.theta.printed, -2 * u / std::cosh(u), 1e-14);
    EXPECT_LT(g.theta.w1_residual_computed, 1e-12);
    EXPECT_NEAR(g.theta.w1_residual_printed, 2 * std::abs(u - 1 / u) / std::cosh(u), 1e-12);
    EXPECT_GT(g.theta.w1_residual_printed, 0.5);
    EXPECT_NE(g.theta.note.find("fails"), std::string::npos);
  }
  // At u = ±1 the two expressions coincide and the note says so.
  const auto one = catenoid::golden_report(1.0, 0.3, 0.7);
  EXPECT_NEAR(one.theta.computed, one.theta.printed, 1e-15);
  EXPECT_LT(one.theta.w1_residual_printed, 1e-12);
  EXPECT_NE(one.theta.note.find("coincides"), std::string::npos);
}

TEST(Slices, Examples) {
  const auto s1 = catenoid::slice_samples(catenoid::Slice::S1, 3, 1.0);
  ASSERT_EQ(s1.size(), 9u);
  // Middle row is u = 0; first column is angle 0.
  EXPECT_DOUBLE_EQ(s1[3][0], 1.0);
  EXPECT_DOUBLE_EQ(s1[3][1], 0.0);
  EXPECT_DOUBLE_EQ(s1[3][2], 0.0);
  const auto s2 = catenoid::slice_samples(catenoid::Slice::S2, 3, 1.0);
  EXPECT_DOUBLE_EQ(s2[6][0], std::cosh(1.0));
  EXPECT_DOUBLE_EQ(s2[6][1], 1.0);
  EXPECT_DOUBLE_EQ(s2[6][2], 0.0);
  EXPECT_EQ(catenoid::slice_samples(catenoid::Slice::S1, 50).size(), 2500u);
  EXPECT_THROW((void)catenoid::slice_samples(catenoid::Slice::S1, 1), DomainError);
}

TEST(Slices, CsvFormat) {
  std::ostringstream os;
  catenoid::write_slice_csv(os, {{1.0, 0.0, 1.0 / 3.0}, {std::cosh(1.0), 1, 0}});
  EXPECT_EQ(os.str(), "x1,x2,x3\n1,0,0.333333333\n1.54308063,1,0\n");
}

}  // namespace
