#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "motkit/detection.hpp"
#include "motkit/geometry.hpp"

namespace motkit {

enum class ScenarioKind { kSwipe, kClick, kZoom, kFixation, kCrossing, kOcclusion, kMixed };

const char* to_string(ScenarioKind k);
std::optional<ScenarioKind> parse_scenario_kind(const std::string& name);

/// Hard cap on per-frame ground-truth displacement, pixels/frame.
inline constexpr double kMaxTargetSpeed = 40.0;

/// Ground-truth overlap beyond this occludes the smaller target.
inline constexpr double kOcclusionIou = 0.3;

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kSwipe;
  int n_targets = 1;
  int duration = 50;
  double frame_width = 1920.0;
  double frame_height = 1080.0;
  double noise_std = 0.0;        // detection noise, pixels, on all four components
  double p_miss = 0.0;           // per-detection dropout probability
  double clutter_rate = 0.0;     // expected false positives per frame
  double embedding_noise_std = 0.0;
  double speed = 8.0;            // nominal px/frame for swipe-style motion
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct GroundTruthEntry {
  int gid;
  BoundingBox box;
  bool visible;
};

struct GroundTruth {
  std::vector<std::vector<GroundTruthEntry>> frames;
};

struct ScenarioOutput {
  ScenarioSpec spec;
  GroundTruth ground_truth;
  std::vector<std::vector<Detection>> detections;      // per frame
  std::vector<std::vector<int>> detection_origins;     // gid per detection, -1 for clutter
  std::vector<ScenarioKind> target_kinds;              // index gid-1
};

/// Deterministic generation: a pure function of the spec, seed included.
ScenarioOutput generate(const ScenarioSpec& spec);

/// Two targets on straight paths intersecting mid-frame; the occlusion rule
/// yields a 5-10 frame detection gap for the smaller target.
ScenarioSpec crossing_spec(std::uint64_t seed);
ScenarioOutput crossing_scenario(std::uint64_t seed);

}  // namespace motkit
