#include "motkit/tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace motkit {

const char* to_string(TrackStatus s) {
  switch (s) {
    case TrackStatus::kTentative: return "tentative";
    case TrackStatus::kConfirmed: return "confirmed";
    case TrackStatus::kDeleted: return "deleted";
  }
  return "unknown";
}

Tracker::Tracker(TrackerConfig config) : config_(config) {
  if (config_.n_init < 1) throw std::invalid_argument("n_init must be at least 1");
  if (config_.max_age < 0) throw std::invalid_argument("max_age must be nonnegative");
  if (!(config_.weights.motion_weight >= 0.0 && config_.weights.motion_weight <= 1.0)) {
    throw std::invalid_argument("lambda must lie in [0, 1]");
  }
  if (!(config_.weights.gate > 0.0)) throw std::invalid_argument("gate must be positive");
}

int Tracker::confirmed_track_count() const {
  return static_cast<int>(std::count_if(tracks_.begin(), tracks_.end(), [](const TrackImpl& t) {
    return t.status == TrackStatus::kConfirmed;
  }));
}

void Tracker::spawn_track(const Detection& det) {
  TrackImpl track{next_id_++, kalman::initiate(to_measurement(det.box)),
                  Gallery(config_.gallery_capacity)};
  if (det.embedding) track.gallery.add(*det.embedding);
  tracks_.push_back(std::move(track));
}

void Tracker::apply_match(TrackImpl& track, const Detection& det) {
  const auto box = kalman::state_box(track.state);
  const double noise_height = box ? std::max(box->h, 1.0) : 1.0;
  const auto model = kalman::MotionModel::constant_velocity(noise_height);
  try {
    track.state = kalman::update(track.state, to_measurement(det.box), model);
  } catch (const kalman::SingularInnovation&) {
    apply_miss(track);
    return;
  }
  if (det.embedding) track.gallery.add(*det.embedding);
  ++track.hits;
  track.misses = 0;
  if (track.status == TrackStatus::kTentative && track.hits >= config_.n_init) {
    track.status = TrackStatus::kConfirmed;
  }
}

void Tracker::apply_miss(TrackImpl& track) {
  ++track.misses;
  track.hits = 0;
  if (track.status == TrackStatus::kTentative) {
    track.status = TrackStatus::kDeleted;  // unconfirmed evidence is cheap to re-acquire
  } else if (track.misses > config_.max_age) {
    track.status = TrackStatus::kDeleted;
  }
}

FrameResult Tracker::step(std::span<const Detection> all_detections) {
  std::vector<Detection> detections;
  detections.reserve(all_detections.size());
  for (const Detection& det : all_detections) {
    if (det.confidence >= config_.min_confidence) detections.push_back(det);
  }

  // 1. Predict every live track; drop states that blew up.
  for (TrackImpl& track : tracks_) {
    const auto box = kalman::state_box(track.state);
    const double noise_height = box ? std::max(box->h, 1.0) : 1.0;
    const auto model = kalman::MotionModel::constant_velocity(noise_height);
    track.state = kalman::predict(track.state, model);
    ++track.age;
    if (!kalman::is_finite(track.state) || !kalman::state_box(track.state)) {
      track.status = TrackStatus::kDeleted;
    }
  }
  std::erase_if(tracks_, [](const TrackImpl& t) { return t.status == TrackStatus::kDeleted; });

  // 2. Stage 1: confirmed tracks vs all detections, combined cost.
  std::vector<int> confirmed_idx;
  std::vector<int> stage2_track_idx;
  for (int i = 0; i < static_cast<int>(tracks_.size()); ++i) {
    if (tracks_[i].status == TrackStatus::kConfirmed) {
      confirmed_idx.push_back(i);
    } else {
      stage2_track_idx.push_back(i);
    }
  }

  std::vector<char> det_taken(detections.size(), 0);
  std::vector<char> track_matched(tracks_.size(), 0);

  std::vector<PredictedTrack> stage1_tracks;
  stage1_tracks.reserve(confirmed_idx.size());
  for (int i : confirmed_idx) {
    stage1_tracks.push_back(PredictedTrack{tracks_[i].state, &tracks_[i].gallery});
  }
  const Assignment stage1 =
      solve_assignment(build_cost_matrix(stage1_tracks, detections, config_.weights));
  for (const auto& [ti, dj] : stage1.pairs) {
    apply_match(tracks_[confirmed_idx[ti]], detections[dj]);
    track_matched[confirmed_idx[ti]] = 1;
    det_taken[dj] = 1;
  }
  for (int ti : stage1.unmatched_tracks) stage2_track_idx.push_back(confirmed_idx[ti]);
  std::sort(stage2_track_idx.begin(), stage2_track_idx.end());

  // 3. Stage 2: tentative tracks plus stage-1 leftovers vs leftover
  // detections, IoU cost on predicted boxes.
  std::vector<int> stage2_det_idx;
  for (int j = 0; j < static_cast<int>(detections.size()); ++j) {
    if (!det_taken[j]) stage2_det_idx.push_back(j);
  }

  std::vector<BoundingBox> track_boxes;
  std::vector<int> stage2_rows;  // tracks_ index per row
  for (int i : stage2_track_idx) {
    if (const auto box = kalman::state_box(tracks_[i].state)) {
      track_boxes.push_back(*box);
      stage2_rows.push_back(i);
    }
  }
  std::vector<BoundingBox> det_boxes;
  for (int j : stage2_det_idx) det_boxes.push_back(detections[j].box);

  const Assignment stage2 =
      solve_assignment(stage2_iou_cost(track_boxes, det_boxes, config_.stage2_min_iou));
  for (const auto& [ti, dj] : stage2.pairs) {
    apply_match(tracks_[stage2_rows[ti]], detections[stage2_det_idx[dj]]);
    track_matched[stage2_rows[ti]] = 1;
    det_taken[stage2_det_idx[dj]] = 1;
  }

  // 4. Misses, births, reaping.
  for (int i = 0; i < static_cast<int>(tracks_.size()); ++i) {
    if (!track_matched[i]) apply_miss(tracks_[i]);
  }
  for (int j = 0; j < static_cast<int>(detections.size()); ++j) {
    if (!det_taken[j]) spawn_track(detections[j]);
  }

  FrameResult result;
  result.frame = frame_++;
  for (const TrackImpl& track : tracks_) {
    if (track.status == TrackStatus::kDeleted) continue;
    if (track.misses != 0) continue;  // only tracks matched (or born) this frame
    if (track.status == TrackStatus::kTentative && !config_.emit_tentative) continue;
    const auto box = kalman::state_box(track.state);
    if (!box) continue;
    result.tracks.push_back(TrackSnapshot{track.id, *box, track.status});
  }
  std::erase_if(tracks_, [](const TrackImpl& t) { return t.status == TrackStatus::kDeleted; });
  return result;
}

std::vector<FrameResult> Tracker::run(std::span<const std::vector<Detection>> frames) {
  std::vector<FrameResult> results;
  results.reserve(frames.size());
  for (const auto& detections : frames) results.push_back(step(detections));
  return results;
}

}  // namespace motkit
