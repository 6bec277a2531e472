#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "motkit/appearance.hpp"
#include "motkit/detection.hpp"
#include "motkit/kalman.hpp"

namespace motkit {

/// Sentinel for gated-out pairs.
inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

/// Chi-square 0.95 quantile, 4 dof: gates the squared Mahalanobis distance
/// of a 4-dim measurement residual.
inline constexpr double kDefaultGate = 9.4877;

inline constexpr double kStage2MinIou = 0.3;

struct CostWeights {
  double motion_weight = 0.5;  // λ; combined cost = λ·motion + (1−λ)·appearance
  double gate = kDefaultGate;
};

// Track×detection cost matrix; non-sentinel entries are finite and ≥ 0.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(int rows, int cols, double fill = kInfeasible);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int r, int c) const { return costs_[static_cast<std::size_t>(r) * cols_ + c]; }
  double& at(int r, int c) { return costs_[static_cast<std::size_t>(r) * cols_ + c]; }
  bool feasible(int r, int c) const { return at(r, c) != kInfeasible; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> costs_;
};

// Result of one assignment round. Every track index lands in exactly one of
// pairs/unmatched_tracks, and likewise for detections.
struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (track index, detection index)
  std::vector<int> unmatched_tracks;
  std::vector<int> unmatched_detections;
};

/// Minimum-cost matching over the feasible entries, maximal in cardinality.
/// Rectangular and gated matrices are squared up internally with dummy
/// rows/columns; assignments to dummies come back as unmatched indices.
/// Deterministic for a given matrix.
Assignment solve_assignment(const CostMatrix& costs);

// Prior state plus appearance history, as stage 1 sees a track.
struct PredictedTrack {
  kalman::KalmanTrackState state;
  const Gallery* gallery = nullptr;  // null or empty → motion-only cost
};

/// Combined motion/appearance costs. Motion is the Mahalanobis gating
/// distance; appearance is the gallery cosine distance, skipped (λ forced
/// to 1) when either side lacks embeddings. Pairs past the gate are
/// infeasible regardless of appearance.
CostMatrix build_cost_matrix(std::span<const PredictedTrack> tracks,
                             std::span<const Detection> detections,
                             const CostWeights& weights);

/// 1 − IoU costs for the second matching stage; pairs with IoU below
/// min_iou are infeasible.
CostMatrix stage2_iou_cost(std::span<const BoundingBox> tracks,
                           std::span<const BoundingBox> detections,
                           double min_iou = kStage2MinIou);

}  // namespace motkit
