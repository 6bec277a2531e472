#pragma once

#include <span>
#include <vector>

#include "motkit/assoc.hpp"
#include "motkit/detection.hpp"
#include "motkit/kalman.hpp"

namespace motkit {

enum class TrackStatus { kTentative, kConfirmed, kDeleted };

const char* to_string(TrackStatus s);

struct TrackerConfig {
  int n_init = 3;    // consecutive hits before a track is confirmed
  int max_age = 30;  // confirmed tracks survive this many consecutive misses
  CostWeights weights;
  double min_confidence = 0.1;  // detections below this are dropped up front
  double stage2_min_iou = kStage2MinIou;
  bool emit_tentative = false;
  std::size_t gallery_capacity = kGalleryCapacity;
};

struct TrackSnapshot {
  int id;
  BoundingBox box;
  TrackStatus status;
};

// Tracks matched in one frame. Confirmed tracks are always reported;
// tentative ones only when the tracker is configured to emit them.
struct FrameResult {
  int frame = 0;
  std::vector<TrackSnapshot> tracks;
};

// Per-frame predict → associate → update → lifecycle loop. Owns identity
// continuity: ids are assigned from a monotone counter and never reused.
// A tracker instance is sequential; step calls must arrive in frame order.
class Tracker {
 public:
  explicit Tracker(TrackerConfig config = {});

  /// Process the next frame's detections. An empty list is a valid frame
  /// (every live track misses).
  FrameResult step(std::span<const Detection> detections);

  std::vector<FrameResult> run(std::span<const std::vector<Detection>> frames);

  const TrackerConfig& config() const { return config_; }
  int live_track_count() const { return static_cast<int>(tracks_.size()); }
  int confirmed_track_count() const;
  int next_id() const { return next_id_; }

 private:
  struct TrackImpl {
    int id;
    kalman::KalmanTrackState state;
    Gallery gallery;
    TrackStatus status = TrackStatus::kTentative;
    int hits = 1;    // consecutive matches, counting birth
    int misses = 0;  // consecutive misses
    int age = 0;     // frames since birth
  };

  void spawn_track(const Detection& det);
  void apply_match(TrackImpl& track, const Detection& det);
  void apply_miss(TrackImpl& track);

  TrackerConfig config_;
  std::vector<TrackImpl> tracks_;
  int next_id_ = 1;
  int frame_ = 0;
};

}  // namespace motkit
