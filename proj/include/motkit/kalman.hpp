#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <optional>
#include <stdexcept>

#include "motkit/geometry.hpp"

namespace motkit::kalman {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat4x8 = Eigen::Matrix<double, 4, 8>;

// Noise scales, expressed relative to box height.
inline constexpr double kPositionStdWeight = 0.05;
inline constexpr double kVelocityStdWeight = 0.00625;
inline constexpr double kInitPositionStdWeight = 0.1;
inline constexpr double kInitVelocityStdWeight = 0.0125;

// Innovation covariance with an estimated condition number beyond this is
// treated as degenerate; callers drop the update and count a miss.
inline constexpr double kMaxConditionNumber = 1e12;

class SingularInnovation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filter state over (x, y, w, h, vx, vy, vw, vh); pixels and pixels/frame.
struct KalmanTrackState {
  Vec8 mean;
  Mat8 covariance;
};

// Constant-velocity model: F adds velocity·dt to each position/size
// component, H observes (x, y, w, h). Q and R are concrete matrices; the
// tracker rebuilds them from the current box height every step so noise
// stays proportional to target scale.
struct MotionModel {
  Mat8 F;
  Mat4x8 H;
  Mat8 Q;
  Mat4 R;
  double dt = 1.0;

  static MotionModel constant_velocity(double noise_height, double dt = 1.0);
};

/// New state centered on the measurement with zero velocity and a diagonal
/// covariance scaled by box height.
KalmanTrackState initiate(const Measurement& z);

/// x ← Fx, P ← FPFᵀ + Q. The control term of the motion equation is
/// identically zero in tracking-by-detection, so it does not appear.
KalmanTrackState predict(const KalmanTrackState& s, const MotionModel& m);

/// Measurement update: y = z − Hx, S = HPHᵀ + R, K = PHᵀS⁻¹, x ← x + Ky,
/// P ← (I − KH)P. Throws SingularInnovation when S is degenerate.
KalmanTrackState update(const KalmanTrackState& s, const Measurement& z, const MotionModel& m);

/// Squared Mahalanobis distance yᵀS⁻¹y of the measurement residual.
double gating_distance(const KalmanTrackState& s, const Measurement& z, const MotionModel& m);

/// yᵀS⁻¹y via a Cholesky solve; never forms S⁻¹ explicitly.
double mahalanobis_squared(const Vec4& residual, const Mat4& s);

// Prior pushed into measurement space with S pre-factorized, so one track
// can be scored against many measurements cheaply.
struct Innovation {
  Vec4 projected_mean;
  Eigen::LLT<Mat4> chol;
};

Innovation project(const KalmanTrackState& s, const MotionModel& m);
double gating_distance(const Innovation& inn, const Measurement& z);

bool is_finite(const KalmanTrackState& s);

/// The state's box, or nullopt when the state has blown up (non-finite or
/// non-positive size).
std::optional<BoundingBox> state_box(const KalmanTrackState& s);

}  // namespace motkit::kalman
