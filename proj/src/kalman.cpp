#include "motkit/kalman.hpp"

#include <cmath>

namespace motkit::kalman {

namespace {

Mat8 symmetrized(const Mat8& p) { return 0.5 * (p + p.transpose()); }

Eigen::LLT<Mat4> factorize_innovation(const Mat4& s) {
  Eigen::LLT<Mat4> chol(0.5 * (s + s.transpose()));
  if (chol.info() != Eigen::Success) {
    throw SingularInnovation("innovation covariance is not positive definite");
  }
  const Eigen::Vector4d diag = Mat4(chol.matrixL()).diagonal();
  const double lo = diag.minCoeff();
  const double hi = diag.maxCoeff();
  // Condition number estimated from the Cholesky factor diagonal.
  if (!(lo > 0.0) || (hi / lo) * (hi / lo) > kMaxConditionNumber) {
    throw SingularInnovation("innovation covariance is numerically singular");
  }
  return chol;
}

}  // namespace

MotionModel MotionModel::constant_velocity(double noise_height, double dt) {
  MotionModel m;
  m.dt = dt;
  m.F = Mat8::Identity();
  for (int i = 0; i < 4; ++i) m.F(i, i + 4) = dt;
  m.H = Mat4x8::Zero();
  for (int i = 0; i < 4; ++i) m.H(i, i) = 1.0;

  const double pos_var = std::pow(kPositionStdWeight * noise_height, 2);
  const double vel_var = std::pow(kVelocityStdWeight * noise_height, 2);
  m.Q = Mat8::Zero();
  m.Q.diagonal() << pos_var, pos_var, pos_var, pos_var, vel_var, vel_var, vel_var, vel_var;
  m.R = Mat4::Zero();
  m.R.diagonal().setConstant(pos_var);
  return m;
}

KalmanTrackState initiate(const Measurement& z) {
  const double h = z.z()(3);
  KalmanTrackState s;
  s.mean.setZero();
  s.mean.head<4>() = z.z();

  const double pos_var = std::pow(kInitPositionStdWeight * h, 2);
  const double vel_var = std::pow(kInitVelocityStdWeight * h, 2);
  s.covariance = Mat8::Zero();
  s.covariance.diagonal() << pos_var, pos_var, pos_var, pos_var, vel_var, vel_var, vel_var,
      vel_var;
  return s;
}

KalmanTrackState predict(const KalmanTrackState& s, const MotionModel& m) {
  KalmanTrackState out;
  out.mean = m.F * s.mean;
  out.covariance = symmetrized(m.F * s.covariance * m.F.transpose() + m.Q);
  return out;
}

Innovation project(const KalmanTrackState& s, const MotionModel& m) {
  const Mat4 innovation_cov = m.H * s.covariance * m.H.transpose() + m.R;
  return Innovation{m.H * s.mean, factorize_innovation(innovation_cov)};
}

double gating_distance(const Innovation& inn, const Measurement& z) {
  const Vec4 residual = z.z() - inn.projected_mean;
  const Vec4 whitened = inn.chol.matrixL().solve(residual);
  return whitened.squaredNorm();
}

double gating_distance(const KalmanTrackState& s, const Measurement& z, const MotionModel& m) {
  return gating_distance(project(s, m), z);
}

double mahalanobis_squared(const Vec4& residual, const Mat4& s) {
  const auto chol = factorize_innovation(s);
  const Vec4 whitened = chol.matrixL().solve(residual);
  return whitened.squaredNorm();
}

KalmanTrackState update(const KalmanTrackState& s, const Measurement& z, const MotionModel& m) {
  const Vec4 residual = z.z() - m.H * s.mean;
  const Mat4 innovation_cov = m.H * s.covariance * m.H.transpose() + m.R;
  const auto chol = factorize_innovation(innovation_cov);

  // K = PHᵀS⁻¹, computed by solving S Kᵀ = H Pᵀ.
  const Eigen::Matrix<double, 8, 4> gain = chol.solve(m.H * s.covariance).transpose();

  KalmanTrackState out;
  out.mean = s.mean + gain * residual;
  out.covariance = symmetrized((Mat8::Identity() - gain * m.H) * s.covariance);
  return out;
}

bool is_finite(const KalmanTrackState& s) {
  return s.mean.allFinite() && s.covariance.allFinite();
}

std::optional<BoundingBox> state_box(const KalmanTrackState& s) {
  const Vec4 z = s.mean.head<4>();
  if (!z.allFinite() || !(z(2) > 0.0) || !(z(3) > 0.0)) return std::nullopt;
  return BoundingBox(z(0), z(1), z(2), z(3));
}

}  // namespace motkit::kalman
