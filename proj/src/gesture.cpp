#include "motkit/gesture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace motkit {

const char* to_string(GestureKind k) {
  switch (k) {
    case GestureKind::kSwipe: return "swipe";
    case GestureKind::kClick: return "click";
    case GestureKind::kZoom: return "zoom";
    case GestureKind::kUnknown: return "unknown";
  }
  return "unknown";
}

void Trajectory::validate() const {
  if (points.size() < 2) throw std::invalid_argument("trajectory needs at least 2 points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].frame <= points[i - 1].frame) {
      throw std::invalid_argument("trajectory frames must be strictly increasing");
    }
  }
}

GestureFeatures extract_features(const Trajectory& t) {
  t.validate();
  const auto& pts = t.points;

  GestureFeatures f;
  f.net_displacement =
      std::hypot(pts.back().box.x - pts.front().box.x, pts.back().box.y - pts.front().box.y);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    f.path_length += std::hypot(pts[i].box.x - pts[i - 1].box.x, pts[i].box.y - pts[i - 1].box.y);
  }
  f.straightness = f.path_length > 0.0 ? f.net_displacement / f.path_length : 1.0;
  f.scale_ratio = pts.back().box.area() / pts.front().box.area();
  f.duration = pts.back().frame - pts.front().frame + 1;

  double diag_sum = 0.0;
  for (const TrajectoryPoint& p : pts) diag_sum += p.box.diagonal();
  f.mean_diagonal = diag_sum / static_cast<double>(pts.size());
  return f;
}

namespace {

// Mean per-frame displacement over the trailing window stays under the
// stillness speed. The window covers min(stationary_window, half the
// points), at least one step; averaging keeps the check robust to
// measurement jitter.
bool tail_is_stationary(const Trajectory& t, const GestureConfig& config) {
  const auto& pts = t.points;
  const std::size_t n = pts.size();
  std::size_t window = std::min(static_cast<std::size_t>(config.stationary_window), n / 2);
  window = std::max<std::size_t>(window, 2);

  double distance = 0.0;
  for (std::size_t i = n - window + 1; i < n; ++i) {
    distance += std::hypot(pts[i].box.x - pts[i - 1].box.x, pts[i].box.y - pts[i - 1].box.y);
  }
  const int frames = pts[n - 1].frame - pts[n - window].frame;
  return distance / std::max(frames, 1) < config.stationary_speed;
}

}  // namespace

GestureLabel classify(const Trajectory& t, const GestureConfig& config) {
  const GestureFeatures f = extract_features(t);

  GestureLabel out;
  out.features = f;

  const double scale_change = std::abs(f.scale_ratio - 1.0);
  if (scale_change > config.zoom_scale_margin && f.net_displacement < 0.5 * f.mean_diagonal) {
    out.label = GestureKind::kZoom;
  } else if (f.duration <= config.click_max_duration &&
             f.path_length <= 2.0 * f.mean_diagonal && tail_is_stationary(t, config)) {
    out.label = GestureKind::kClick;
  } else if (f.net_displacement > 2.0 * f.mean_diagonal &&
             f.straightness > config.swipe_straightness &&
             scale_change <= config.zoom_scale_margin) {
    out.label = GestureKind::kSwipe;
  } else {
    out.label = GestureKind::kUnknown;
  }
  return out;
}

}  // namespace motkit
