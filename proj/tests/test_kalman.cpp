#include "motkit/kalman.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "motkit/rng.hpp"
#include "support/oracles.hpp"

namespace motkit::kalman {
namespace {

Measurement meas(double x, double y, double w, double h) {
  return Measurement(Eigen::Vector4d(x, y, w, h));
}

void expect_symmetric_psd(const Mat8& p) {
  EXPECT_LT((p - p.transpose()).cwiseAbs().maxCoeff(), 1e-9 * std::max(p.trace(), 1.0));
  Eigen::SelfAdjointEigenSolver<Mat8> eig(p);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9 * p.trace());
}

TEST(Initiate, ZeroVelocityMeanCopy) {
  const auto s = initiate(meas(10, 20, 4, 8));
  Vec8 expected;
  expected << 10, 20, 4, 8, 0, 0, 0, 0;
  EXPECT_EQ(s.mean, expected);
}

TEST(Initiate, CovariancePositiveDefinite) {
  const auto s = initiate(meas(5, 5, 3, 7));
  Eigen::SelfAdjointEigenSolver<Mat8> eig(s.covariance);
  EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
}

TEST(Initiate, StdsScaleWithHeight) {
  const auto s = initiate(meas(0, 0, 1, 1));
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(s.covariance(i, i), kInitPositionStdWeight * kInitPositionStdWeight);
  }
  for (int i = 4; i < 8; ++i) {
    EXPECT_DOUBLE_EQ(s.covariance(i, i), kInitVelocityStdWeight * kInitVelocityStdWeight);
  }
}

TEST(Predict, ConstantVelocityOneStep) {
  KalmanTrackState s;
  s.mean << 0, 0, 2, 2, 1, 2, 0, 0;
  s.covariance = Mat8::Identity();
  const auto m = MotionModel::constant_velocity(2.0);
  const auto out = predict(s, m);
  EXPECT_DOUBLE_EQ(out.mean(0), 1.0);
  EXPECT_DOUBLE_EQ(out.mean(1), 2.0);
  EXPECT_DOUBLE_EQ(out.mean(2), 2.0);
  EXPECT_DOUBLE_EQ(out.mean(3), 2.0);
}

TEST(Predict, StationaryFixedPoint) {
  KalmanTrackState s;
  s.mean << 7, 8, 3, 4, 0, 0, 0, 0;
  s.covariance = Mat8::Identity();
  auto m = MotionModel::constant_velocity(4.0);
  m.Q.setZero();
  const auto out = predict(s, m);
  EXPECT_EQ(out.mean, s.mean);
}

TEST(Predict, HandCovarianceSubBlock) {
  // P = I, Q = 0: the (x, vx) sub-block of FPF' is [[2,1],[1,1]].
  KalmanTrackState s;
  s.mean << 0, 0, 2, 2, 0, 0, 0, 0;
  s.covariance = Mat8::Identity();
  auto m = MotionModel::constant_velocity(2.0);
  m.Q.setZero();
  const auto out = predict(s, m);
  EXPECT_DOUBLE_EQ(out.covariance(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(out.covariance(0, 4), 1.0);
  EXPECT_DOUBLE_EQ(out.covariance(4, 0), 1.0);
  EXPECT_DOUBLE_EQ(out.covariance(4, 4), 1.0);
}

TEST(Update, NearExactMeasurementDominates) {
  auto m = MotionModel::constant_velocity(8.0);
  m.R = Mat4::Identity() * 1e-12;
  auto s = initiate(meas(0, 0, 8, 8));
  s = predict(s, m);
  const auto out = update(s, meas(3, 4, 9, 7), m);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(out.mean(i), Eigen::Vector4d(3, 4, 9, 7)(i), 1e-6);
  }
}

TEST(Update, UninformativeMeasurementKeepsPrediction) {
  auto m = MotionModel::constant_velocity(8.0);
  m.R = Mat4::Identity() * 1e12;
  auto s = initiate(meas(10, 10, 8, 8));
  s = predict(s, m);
  const auto out = update(s, meas(500, 500, 80, 80), m);
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(out.mean(i), s.mean(i), 1e-6 * std::max(1.0, std::abs(s.mean(i))));
  }
}

TEST(Update, ZeroResidualKeepsMeanShrinksCovariance) {
  const auto m = MotionModel::constant_velocity(8.0);
  auto s = initiate(meas(10, 10, 8, 8));
  s = predict(s, m);
  const Measurement z = meas(s.mean(0), s.mean(1), s.mean(2), s.mean(3));
  const auto out = update(s, z, m);
  EXPECT_LT((out.mean - s.mean).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(out.covariance.trace(), s.covariance.trace());
}

TEST(Update, PosteriorTraceNeverGrows) {
  Rng rng(99);
  const auto m = MotionModel::constant_velocity(10.0);
  auto s = initiate(meas(0, 0, 10, 10));
  for (int step = 0; step < 50; ++step) {
    s = predict(s, m);
    const double trace_pred = s.covariance.trace();
    const auto z = meas(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(8, 12),
                        rng.uniform(8, 12));
    s = update(s, z, m);
    EXPECT_LE(s.covariance.trace(), trace_pred + 1e-9);
    expect_symmetric_psd(s.covariance);
  }
}

TEST(GatingDistance, ZeroResidual) {
  const auto m = MotionModel::constant_velocity(8.0);
  auto s = initiate(meas(10, 10, 8, 8));
  s = predict(s, m);
  const Measurement z = meas(s.mean(0), s.mean(1), s.mean(2), s.mean(3));
  EXPECT_NEAR(gating_distance(s, z, m), 0.0, 1e-12);
}

TEST(GatingDistance, IdentityCovarianceIsSquaredNorm) {
  // P = 0 and R = I make S the identity; residual (1,2,0,0) gives 5.
  auto m = MotionModel::constant_velocity(8.0);
  m.R = Mat4::Identity();
  KalmanTrackState s;
  s.mean << 5, 5, 3, 4, 0, 0, 0, 0;
  s.covariance = Mat8::Zero();
  EXPECT_NEAR(gating_distance(s, meas(6, 7, 3, 4), m), 5.0, 1e-12);
}

TEST(GatingDistance, HandDiagonalCase) {
  // S = diag(4,1,1,1), residual (2,0,0,0): 2²/4 = 1.
  auto m = MotionModel::constant_velocity(8.0);
  m.R = Mat4::Identity();
  m.R(0, 0) = 4.0;
  KalmanTrackState s;
  s.mean << 5, 5, 3, 4, 0, 0, 0, 0;
  s.covariance = Mat8::Zero();
  EXPECT_NEAR(gating_distance(s, meas(7, 5, 3, 4), m), 1.0, 1e-12);
}

TEST(GatingDistance, SingularInnovationRejected) {
  auto m = MotionModel::constant_velocity(8.0);
  m.R = Mat4::Zero();
  KalmanTrackState s;
  s.mean << 5, 5, 3, 4, 0, 0, 0, 0;
  s.covariance = Mat8::Zero();
  EXPECT_THROW(gating_distance(s, meas(6, 5, 3, 4), m), SingularInnovation);
  EXPECT_THROW(update(s, meas(6, 5, 3, 4), m), SingularInnovation);
}

TEST(Mahalanobis, CongruenceInvariance) {
  // y'S⁻¹y is invariant under any invertible T applied as y→Ty, S→TST'.
  Rng rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    Vec4 y;
    for (int i = 0; i < 4; ++i) y(i) = rng.gaussian();
    Eigen::Matrix4d a;
    for (int i = 0; i < 16; ++i) a(i / 4, i % 4) = rng.gaussian();
    const Mat4 s = a * a.transpose() + 0.5 * Mat4::Identity();

    Eigen::Matrix4d t;
    do {
      for (int i = 0; i < 16; ++i) t(i / 4, i % 4) = rng.gaussian();
    } while (std::abs(t.determinant()) < 0.1);

    const double base = mahalanobis_squared(y, s);
    const double transformed = mahalanobis_squared(t * y, t * s * t.transpose());
    EXPECT_NEAR(transformed, base, 1e-6 * std::max(1.0, base)) << "trial " << trial;
  }
}

TEST(Filter, NoiseFreeTargetConvergesWithinFiveSteps) {
  // Q = 0 and exact measurements of a constant-velocity target: once the
  // velocity is identified the innovations vanish.
  auto m = MotionModel::constant_velocity(8.0);
  m.Q.setZero();
  m.R = Mat4::Identity() * 1e-10;
  const Eigen::Vector4d vel(3.0, -2.0, 0.1, 0.2);
  Eigen::Vector4d pos(100, 100, 16, 16);

  auto s = initiate(Measurement(pos));
  double last_gate = std::numeric_limits<double>::infinity();
  for (int step = 1; step <= 5; ++step) {
    pos += vel;
    s = predict(s, m);
    const Measurement z{pos};
    last_gate = gating_distance(s, z, m);
    s = update(s, z, m);
  }
  EXPECT_LT(last_gate, 1e-6);
}

// Normalized innovation squared stays chi-square(4) on a target simulated
// from the model's own Q and R: its 1000-step mean must sit near 4.
TEST(Filter, NisConsistency) {
  const test::NisResult nis = test::run_nis_simulation(777, 1000);
  EXPECT_TRUE(nis.covariance_ok) << "covariance lost symmetry or positive semidefiniteness";
  EXPECT_GT(nis.mean, 3.6);
  EXPECT_LT(nis.mean, 4.4);
}

TEST(StateBox, BlownUpStatesHaveNoBox) {
  KalmanTrackState s;
  s.mean << 1, 2, 3, 4, 0, 0, 0, 0;
  s.covariance = Mat8::Identity();
  ASSERT_TRUE(state_box(s).has_value());
  EXPECT_EQ(*state_box(s), BoundingBox(1, 2, 3, 4));

  s.mean(2) = -1.0;
  EXPECT_FALSE(state_box(s).has_value());
  s.mean(2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(state_box(s).has_value());
}

}  // namespace
}  // namespace motkit::kalman
