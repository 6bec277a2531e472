#pragma once

#include <vector>

#include "motkit/geometry.hpp"

namespace motkit {

enum class GestureKind { kSwipe, kClick, kZoom, kUnknown };

const char* to_string(GestureKind k);

struct TrajectoryPoint {
  int frame;
  BoundingBox box;
};

// One track's boxes over time; frames strictly increasing, at least two
// points. Gaps (missed frames) are allowed.
struct Trajectory {
  int id = 0;
  std::vector<TrajectoryPoint> points;

  void validate() const;  // throws std::invalid_argument
};

struct GestureFeatures {
  double net_displacement = 0.0;  // ‖last center − first center‖, px
  double path_length = 0.0;       // sum of per-step center displacements, px
  double straightness = 1.0;      // net/path, in [0, 1]; 1 when path is zero
  double scale_ratio = 1.0;       // last box area / first box area
  int duration = 0;               // frames covered, inclusive
  double mean_diagonal = 0.0;     // mean box diagonal, the spatial unit
};

// Rule thresholds; spatial ones are relative to mean box diagonal so the
// classifier is resolution independent.
struct GestureConfig {
  double zoom_scale_margin = 0.5;  // |scale_ratio − 1| beyond this reads as zoom
  int click_max_duration = 20;     // frames
  double swipe_straightness = 0.8;
  double stationary_speed = 2.0;  // px/frame
  int stationary_window = 10;     // trailing frames checked for stillness
};

struct GestureLabel {
  GestureKind label = GestureKind::kUnknown;
  GestureFeatures features;
};

GestureFeatures extract_features(const Trajectory& t);

/// First matching rule wins: zoom, then click, then swipe, else unknown.
GestureLabel classify(const Trajectory& t, const GestureConfig& config = {});

}  // namespace motkit
