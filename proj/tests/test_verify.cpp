#include <gtest/gtest.h>

#include <cmath>

#include "jproc/verify.hpp"

using jproc::PointS6;
using jproc::Quaternion;

namespace {

double max_abs_diff(const jproc::Jacobian& a, const jproc::Jacobian& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(ResidualSuite, RegisteredSuitesPassOnModerateSamples) {
  for (const auto& spec : jproc::registered_suites()) {
    const auto report = jproc::residual_suite(spec.name, 500, 3);
    EXPECT_TRUE(report.pass) << spec.name << " max " << report.max_residual;
    EXPECT_EQ(report.samples, 500U);
    EXPECT_LE(report.mean_residual, report.max_residual);
    EXPECT_EQ(report.threshold, spec.threshold);
  }
}

TEST(ResidualSuite, Thm1InverseAtFullSize) {
  const auto report = jproc::residual_suite("thm1_inverse", 10000, 17);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.threshold, 1e-11);
}

TEST(ResidualSuite, Thm2InvolutionForRationalR) {
  jproc::Sampler sampler(5);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const PointS6 x = sampler.point_s6();
    worst = std::max(worst, jproc::distance(-jproc::rational_R(-jproc::rational_R(x)), x));
  }
  EXPECT_LT(worst, 1e-11);
  EXPECT_TRUE(jproc::residual_suite("thm2_involution", 2000, 5).pass);
}

TEST(ResidualSuite, IdentityGroupElementContributesExactZero) {
  const jproc::SuiteSpec at_identity{
      "equivariance_bm_identity", 1e-11, [](jproc::Sampler& s) {
        const PointS6 x = s.point_s6();
        const auto g = jproc::SO4Element::identity();
        return jproc::SampleResidual{jproc::distance(jproc::bm(jproc::so4_act(g, x)), jproc::conj_action(g.q(), jproc::bm(x))), x};
      }};
  const auto report = jproc::run_suite(at_identity, 1000, 1);
  EXPECT_EQ(report.max_residual, 0.0);
  EXPECT_TRUE(report.pass);
}

TEST(ResidualSuite, DeterministicGivenSeed) {
  const auto a = jproc::residual_suite("linear_action", 777, 99);
  const auto b = jproc::residual_suite("linear_action", 777, 99);
  EXPECT_EQ(a.max_residual, b.max_residual);
  EXPECT_EQ(a.mean_residual, b.mean_residual);
  EXPECT_EQ(a.worst_point, b.worst_point);
  const auto c = jproc::residual_suite("linear_action", 777, 100);
  EXPECT_NE(a.worst_point, c.worst_point);
}

TEST(ResidualSuite, SingleSampleAndThresholdOverride) {
  const auto one = jproc::residual_suite("thm1_inverse", 1, 7);
  EXPECT_EQ(one.samples, 1U);
  EXPECT_TRUE(one.pass);
  EXPECT_TRUE(jproc::on_sphere(one.worst_point));
  const auto strict = jproc::residual_suite("linear_action", 100, 7, 0.0);
  EXPECT_FALSE(strict.pass);
  EXPECT_EQ(strict.threshold, 0.0);
}

TEST(ResidualSuite, ErrorPaths) {
  EXPECT_THROW(jproc::residual_suite("nosuchsuite", 10, 1), jproc::precondition_error);
  EXPECT_THROW(jproc::residual_suite("thm1_inverse", 0, 1), jproc::precondition_error);
}

TEST(ResidualSuite, PassIffBelowThreshold) {
  const jproc::SuiteSpec constant{"constant", 0.5, [](jproc::Sampler& s) {
                                    return jproc::SampleResidual{0.5, s.point_s6()};
                                  }};
  EXPECT_FALSE(jproc::run_suite(constant, 10, 1).pass);
  const jproc::SuiteSpec nan_residual{"nan", 1.0, [](jproc::Sampler& s) {
                                        return jproc::SampleResidual{std::nan(""), s.point_s6()};
                                      }};
  EXPECT_FALSE(jproc::run_suite(nan_residual, 10, 1).pass);
}

TEST(JacobianFd, IdentityIsIdentity) {
  for (const auto& x : jproc::sample_s6(11, 50)) {
    const auto jac = jproc::jacobian_fd(jproc::identity_map(), x);
    EXPECT_LT(max_abs_diff(jac, jproc::Jacobian::Identity()), 1e-9);
  }
}

TEST(JacobianFd, AntipodalIsOrientationReversingIsometry) {
  for (const auto& x : jproc::sample_s6(12, 50)) {
    const auto jac = jproc::jacobian_fd(jproc::antipodal_map(), x);
    EXPECT_NEAR(jac.determinant(), -1.0, 1e-9);
    const Eigen::JacobiSVD<jproc::Jacobian> svd(jac);
    EXPECT_NEAR(svd.singularValues().minCoeff(), 1.0, 1e-9);
  }
}

TEST(JacobianFd, SigmaAtBranchPointHasPositiveDeterminant) {
  const PointS6 x{{0.6, 0.0, 0.8}, {}};
  const auto jac = jproc::jacobian_fd(jproc::sigma_map(1), x);
  const Eigen::JacobiSVD<jproc::Jacobian> svd(jac);
  const double sv_product = svd.singularValues().prod();
  EXPECT_GT(jac.determinant(), 0.0);
  EXPECT_NEAR(std::abs(jac.determinant()), sv_product, 1e-9 * sv_product);
}

TEST(JacobianFd, SecondOrderConvergenceForSigma) {
  const auto sigma = jproc::sigma_map(1);
  for (const auto& x : jproc::sample_s6(13, 10)) {
    const double h = 1e-3;
    const auto j1 = jproc::jacobian_fd(sigma, x, h);
    const auto j2 = jproc::jacobian_fd(sigma, x, h / 2);
    const auto j4 = jproc::jacobian_fd(sigma, x, h / 4);
    const auto j8 = jproc::jacobian_fd(sigma, x, h / 8);
    // Against the raw h/4 result the error ratio is (1 − 1/16)/(1/4 − 1/16) = 5;
    // against the Richardson value from h/4 and h/8 it is 4.
    const double raw = max_abs_diff(j1, j4) / max_abs_diff(j2, j4);
    EXPECT_NEAR(raw, 5.0, 0.5);
    const jproc::Jacobian richardson = (4.0 * j8 - j4) / 3.0;
    const double ratio = max_abs_diff(j1, richardson) / max_abs_diff(j2, richardson);
    EXPECT_NEAR(ratio, 4.0, 0.4);
  }
}

TEST(JacobianFd, ErrorPaths) {
  const PointS6 x{{1, 0, 0}, {}};
  EXPECT_THROW(jproc::jacobian_fd(jproc::identity_map(), x, 1e-8), jproc::precondition_error);
  EXPECT_THROW(jproc::jacobian_fd(jproc::identity_map(), x, 1e-2), jproc::precondition_error);
  const jproc::SelfMap off{[](const PointS6& y) { return PointS6{2.0 * y.p, y.w}; }, "off"};
  EXPECT_THROW(jproc::jacobian_fd(off, x), jproc::precondition_error);
}

TEST(DegeneracySweep, ConstantFamilyIsIdentity) {
  const auto records = jproc::degeneracy_sweep(jproc::constant_family(), jproc::s_grid(3), 50, 1);
  ASSERT_EQ(records.size(), 3U);
  for (const auto& r : records) {
    EXPECT_NEAR(r.min_singular_value, 1.0, 1e-9);
    EXPECT_NEAR(r.min_abs_det, 1.0, 1e-9);
    EXPECT_EQ(r.sign_changes, 0U);
    EXPECT_EQ(r.samples, 50U);
  }
}

TEST(DegeneracySweep, HomotopyFamilyStaysNondegenerate) {
  const auto records = jproc::degeneracy_sweep(jproc::homotopy_family(), jproc::s_grid(5), 200, 2);
  ASSERT_EQ(records.size(), 5U);
  EXPECT_EQ(records.front().s, 0.0);
  EXPECT_EQ(records.back().s, 1.0);
  for (const auto& r : records) {
    EXPECT_EQ(r.sign_changes, 0U) << r.s;
    EXPECT_GT(r.min_singular_value, jproc::fd_floor(jproc::default_fd_step));
    EXPECT_GE(r.min_singular_value, 0.0);
  }
}

TEST(DegeneracySweep, DeterministicAndValidated) {
  const auto a = jproc::degeneracy_sweep(jproc::demo_nonequiv_family(), {0.5}, 64, 8);
  const auto b = jproc::degeneracy_sweep(jproc::demo_nonequiv_family(), {0.5}, 64, 8);
  EXPECT_EQ(a[0].min_abs_det, b[0].min_abs_det);
  EXPECT_EQ(a[0].sign_changes, b[0].sign_changes);
  EXPECT_TRUE(std::isfinite(a[0].min_singular_value));
  EXPECT_THROW(jproc::degeneracy_sweep(jproc::homotopy_family(), {1.5}, 10, 1), jproc::precondition_error);
  EXPECT_THROW(jproc::degeneracy_sweep(jproc::homotopy_family(), {0.5}, 0, 1), jproc::precondition_error);
}

TEST(DegreeSign, Controls) {
  const auto id = jproc::degree_sign(jproc::identity_map(), 100, 1);
  EXPECT_EQ(id.sign, 1);
  EXPECT_TRUE(id.unanimous);
  const auto anti = jproc::degree_sign(jproc::antipodal_map(), 100, 1);
  EXPECT_EQ(anti.sign, -1);
  EXPECT_TRUE(anti.unanimous);
}

TEST(DegreeSign, SigmaHasDegreeOne) {
  const auto d = jproc::degree_sign(jproc::sigma_map(1), 1000, 3);
  EXPECT_EQ(d.sign, 1);
  EXPECT_TRUE(d.unanimous);
  EXPECT_FALSE(d.inconclusive);
  EXPECT_EQ(d.samples, 1000U);
}

TEST(DegreeSign, CollapsedMapIsInconclusive) {
  const jproc::SelfMap collapse{[](const PointS6&) { return PointS6{{1, 0, 0}, {}}; }, "collapse"};
  const auto d = jproc::degree_sign(collapse, 10, 1);
  EXPECT_TRUE(d.inconclusive);
  EXPECT_FALSE(d.unanimous);
}

TEST(Homotopy, HatNeverNearZero) {
  EXPECT_GT(jproc::min_hhat_norm(jproc::s_grid(21), 2000, 4), 1e-3);
}

TEST(Involutions, FreenessEvidence) {
  EXPECT_GT(jproc::min_involution_displacement(jproc::bm_map(), 5000, 6), 0.1);
  EXPECT_GT(jproc::min_involution_displacement(jproc::q_map(), 5000, 6), 0.1);
}

TEST(SGrid, EvenlySpaced) {
  const auto g = jproc::s_grid(21);
  ASSERT_EQ(g.size(), 21U);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g[20], 1.0);
  EXPECT_NEAR(g[1], 0.05, 1e-15);
  EXPECT_EQ(jproc::s_grid(1), std::vector<double>{0.0});
  EXPECT_THROW(jproc::s_grid(0), jproc::precondition_error);
}
