#include "motkit/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "motkit/rng.hpp"

namespace motkit {

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::kSwipe: return "swipe";
    case ScenarioKind::kClick: return "click";
    case ScenarioKind::kZoom: return "zoom";
    case ScenarioKind::kFixation: return "fixation";
    case ScenarioKind::kCrossing: return "crossing";
    case ScenarioKind::kOcclusion: return "occlusion";
    case ScenarioKind::kMixed: return "mixed";
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario_kind(const std::string& name) {
  static const std::map<std::string, ScenarioKind> table = {
      {"swipe", ScenarioKind::kSwipe},       {"click", ScenarioKind::kClick},
      {"zoom", ScenarioKind::kZoom},         {"fixation", ScenarioKind::kFixation},
      {"crossing", ScenarioKind::kCrossing}, {"occlusion", ScenarioKind::kOcclusion},
      {"mixed", ScenarioKind::kMixed}};
  const auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

void ScenarioSpec::validate() const {
  if (duration < 1) throw std::invalid_argument("duration must be at least 1 frame");
  if (n_targets < 1) throw std::invalid_argument("n_targets must be at least 1");
  if (!(frame_width >= 64.0 && frame_height >= 64.0)) {
    throw std::invalid_argument("frame size must be at least 64x64");
  }
  if (!(noise_std >= 0.0)) throw std::invalid_argument("noise_std must be nonnegative");
  if (!(p_miss >= 0.0 && p_miss <= 1.0)) throw std::invalid_argument("p_miss must lie in [0, 1]");
  if (!(clutter_rate >= 0.0)) throw std::invalid_argument("clutter_rate must be nonnegative");
  if (!(embedding_noise_std >= 0.0)) {
    throw std::invalid_argument("embedding_noise_std must be nonnegative");
  }
  // Smooth-step easing peaks at 1.5x the nominal speed; keep the peak under
  // the per-frame displacement cap.
  if (!(speed > 0.0 && 1.5 * speed <= kMaxTargetSpeed)) {
    throw std::invalid_argument("speed must lie in (0, 26.6] px/frame");
  }
  if ((kind == ScenarioKind::kCrossing || kind == ScenarioKind::kOcclusion) && n_targets != 2) {
    throw std::invalid_argument("crossing and occlusion scenarios use exactly 2 targets");
  }
}

namespace {

struct Rect {
  double x0, y0, x1, y1;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

struct Point {
  double x, y;
};

double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// One target's life: a box per frame, absent once the gesture has finished.
using Path = std::vector<std::optional<BoundingBox>>;

Rect shrink(const Rect& r, double margin_x, double margin_y) {
  Rect out{r.x0 + margin_x, r.y0 + margin_y, r.x1 - margin_x, r.y1 - margin_y};
  if (out.x1 <= out.x0 || out.y1 <= out.y0) {
    const double cx = 0.5 * (r.x0 + r.x1);
    const double cy = 0.5 * (r.y0 + r.y1);
    out = Rect{cx, cy, cx, cy};
  }
  return out;
}

Point random_point(const Rect& r, Rng& rng) {
  return Point{rng.uniform(r.x0, r.x1), rng.uniform(r.y0, r.y1)};
}

// Distance from p along (dx, dy) to the rect boundary.
double ray_extent(const Rect& r, Point p, double dx, double dy) {
  double t = std::numeric_limits<double>::infinity();
  if (dx > 1e-12) t = std::min(t, (r.x1 - p.x) / dx);
  if (dx < -1e-12) t = std::min(t, (r.x0 - p.x) / dx);
  if (dy > 1e-12) t = std::min(t, (r.y1 - p.y) / dy);
  if (dy < -1e-12) t = std::min(t, (r.y0 - p.y) / dy);
  return std::max(t, 0.0);
}

Path swipe_path(const Rect& cell, int duration, double speed, double bw, double bh, Rng& rng) {
  const Rect usable = shrink(cell, 0.5 * bw + 2.0, 0.5 * bh + 2.0);
  const double nominal = speed * std::max(duration - 1, 1);

  Point start{0.0, 0.0};
  double dx = 1.0, dy = 0.0, best = -1.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Point p = random_point(usable, rng);
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    const double cx = std::cos(theta), cy = std::sin(theta);
    const double extent = std::min(0.95 * ray_extent(usable, p, cx, cy), nominal);
    if (extent > best) {
      best = extent;
      start = p;
      dx = cx;
      dy = cy;
    }
    if (best >= nominal) break;
  }
  const double length = std::max(best, 0.0);

  Path path(duration);
  for (int t = 0; t < duration; ++t) {
    const double u = duration > 1 ? static_cast<double>(t) / (duration - 1) : 0.0;
    const double s = length * smoothstep(u);
    path[t] = BoundingBox(start.x + dx * s, start.y + dy * s, bw, bh);
  }
  return path;
}

Path click_path(const Rect& cell, int duration, double bw, double bh, Rng& rng) {
  const int dash_frames = 5;
  const int hold_frames = 10;
  const int life = std::min(duration, dash_frames + hold_frames);

  const Rect usable = shrink(cell, 0.5 * bw + 2.0, 0.5 * bh + 2.0);
  // Dash peak step is 1.5x dash/4; keep it small enough that a newborn
  // zero-velocity track can still hold the 0.3 IoU association gate.
  const double dash = rng.uniform(0.40, 0.52) * std::hypot(bw, bh);

  const Point target = random_point(usable, rng);
  double theta = rng.uniform(0.0, 2.0 * M_PI);
  Point start{target.x - dash * std::cos(theta), target.y - dash * std::sin(theta)};
  start.x = clamp(start.x, usable.x0, usable.x1);
  start.y = clamp(start.y, usable.y0, usable.y1);

  Path path(duration);
  for (int t = 0; t < life; ++t) {
    if (t < dash_frames) {
      const double u = smoothstep(static_cast<double>(t) / (dash_frames - 1));
      path[t] = BoundingBox(start.x + (target.x - start.x) * u,
                            start.y + (target.y - start.y) * u, bw, bh);
    } else {
      path[t] = BoundingBox(target.x, target.y, bw, bh);
    }
  }
  return path;
}

Path zoom_path(const Rect& cell, int duration, double bw, double bh, Rng& rng) {
  // Margins sized for the final 2x box.
  const Rect usable = shrink(cell, bw + 2.0, bh + 2.0);
  const Point center = random_point(usable, rng);

  Path path(duration);
  for (int t = 0; t < duration; ++t) {
    const double u = duration > 1 ? static_cast<double>(t) / (duration - 1) : 0.0;
    path[t] = BoundingBox(center.x, center.y, bw * (1.0 + u), bh * (1.0 + u));
  }
  return path;
}

Path fixation_path(const Rect& cell, int duration, double bw, double bh, Rng& rng) {
  const double radius = 15.0;
  const Rect usable = shrink(cell, 0.5 * bw + radius + 2.0, 0.5 * bh + radius + 2.0);
  const Point center = random_point(usable, rng);

  Path path(duration);
  Point pos = center;
  for (int t = 0; t < duration; ++t) {
    if (t > 0) {
      if (rng.next_double() < 0.05) {
        // Saccade: one-frame jump to a fresh point inside the disk.
        const double ang = rng.uniform(0.0, 2.0 * M_PI);
        const double rad = radius * std::sqrt(rng.next_double());
        pos = Point{center.x + rad * std::cos(ang), center.y + rad * std::sin(ang)};
      } else {
        pos.x += rng.gaussian(0.0, 2.0);
        pos.y += rng.gaussian(0.0, 2.0);
        const double d = std::hypot(pos.x - center.x, pos.y - center.y);
        if (d > radius) {
          pos.x = center.x + (pos.x - center.x) * radius / d;
          pos.y = center.y + (pos.y - center.y) * radius / d;
        }
      }
    }
    path[t] = BoundingBox(pos.x, pos.y, bw, bh);
  }
  return path;
}

std::vector<Path> crossing_paths(const ScenarioSpec& spec, Rng& rng) {
  const double cx = 0.5 * spec.frame_width;
  const double cy = 0.5 * spec.frame_height;
  const int t_meet = spec.duration / 2;

  // The smaller target (gid 1) is the one the occlusion rule hides. Sizes
  // stay nearly equal: motion cues alone cannot tell the two targets apart,
  // which is the point of the scenario.
  const double w1 = 50.0 + rng.uniform(-1.0, 1.0);
  const double w2 = w1 + rng.uniform(0.5, 2.0);
  const double v1 = rng.uniform(3.5, 4.5);
  const double v2 = rng.uniform(3.5, 4.5);
  const double dy1 = rng.uniform(-2.0, 2.0);
  const double dy2 = rng.uniform(-2.0, 2.0);

  std::vector<Path> paths(2, Path(spec.duration));
  for (int t = 0; t < spec.duration; ++t) {
    const double x1 = clamp(cx + v1 * (t - t_meet), 0.5 * w1 + 1, spec.frame_width - 0.5 * w1 - 1);
    const double x2 = clamp(cx - v2 * (t - t_meet), 0.5 * w2 + 1, spec.frame_width - 0.5 * w2 - 1);
    paths[0][t] = BoundingBox(x1, cy + dy1, w1, w1);
    paths[1][t] = BoundingBox(x2, cy + dy2, w2, w2);
  }
  return paths;
}

std::vector<Path> occlusion_paths(const ScenarioSpec& spec, Rng& rng) {
  const double cx = 0.5 * spec.frame_width;
  const double cy = 0.5 * spec.frame_height;
  const int t_meet = spec.duration / 2;

  const double w_static = 72.0 + rng.uniform(-4.0, 4.0);
  const double w_mover = 44.0 + rng.uniform(-2.0, 2.0);
  const double v = rng.uniform(5.0, 7.0);
  const double dy = rng.uniform(-4.0, 4.0);

  std::vector<Path> paths(2, Path(spec.duration));
  for (int t = 0; t < spec.duration; ++t) {
    const double x =
        clamp(cx + v * (t - t_meet), 0.5 * w_mover + 1, spec.frame_width - 0.5 * w_mover - 1);
    paths[0][t] = BoundingBox(x, cy + dy, w_mover, w_mover);
    paths[1][t] = BoundingBox(cx, cy, w_static, w_static);
  }
  return paths;
}

ScenarioKind target_kind(const ScenarioSpec& spec, int index) {
  if (spec.kind == ScenarioKind::kMixed) {
    static const ScenarioKind cycle[] = {ScenarioKind::kSwipe, ScenarioKind::kClick,
                                         ScenarioKind::kZoom};
    return cycle[index % 3];
  }
  return spec.kind;
}

BoundingBox clamp_to_frame(const BoundingBox& b, double width, double height) {
  const double w = std::min(b.w, width);
  const double h = std::min(b.h, height);
  return BoundingBox(clamp(b.x, 0.5 * w, width - 0.5 * w), clamp(b.y, 0.5 * h, height - 0.5 * h),
                     w, h);
}

}  // namespace

ScenarioOutput generate(const ScenarioSpec& spec) {
  spec.validate();
  Rng rng(hash_mix(spec.seed ^ 0x7c3a9d51b2e8f604ULL));

  ScenarioOutput out;
  out.spec = spec;

  // Per-target paths, targets laid out on a grid of cells.
  std::vector<Path> paths;
  if (spec.kind == ScenarioKind::kCrossing) {
    paths = crossing_paths(spec, rng);
    out.target_kinds.assign(2, ScenarioKind::kCrossing);
  } else if (spec.kind == ScenarioKind::kOcclusion) {
    paths = occlusion_paths(spec, rng);
    out.target_kinds.assign(2, ScenarioKind::kOcclusion);
  } else {
    const int cols = std::max(
        1, static_cast<int>(std::ceil(
               std::sqrt(spec.n_targets * spec.frame_width / spec.frame_height))));
    const int rows = (spec.n_targets + cols - 1) / cols;
    const double cell_w = spec.frame_width / cols;
    const double cell_h = spec.frame_height / rows;

    for (int i = 0; i < spec.n_targets; ++i) {
      const Rect cell{(i % cols) * cell_w, (i / cols) * cell_h, (i % cols + 1) * cell_w,
                      (i / cols + 1) * cell_h};
      // With several targets, trajectories keep to the middle of their
      // cells so pairwise separation stays above 4x the box diagonal.
      const Rect roam =
          spec.n_targets > 1 ? shrink(cell, 0.3 * cell_w, 0.3 * cell_h) : cell;
      const ScenarioKind kind = target_kind(spec, i);
      out.target_kinds.push_back(kind);

      const double cell_min = std::min(cell_w, cell_h);
      double bw, bh;
      if (kind == ScenarioKind::kZoom) {
        const double base = clamp(cell_min / 8.0, 14.0, 25.0);
        bw = base * rng.uniform(0.9, 1.1);
        bh = base * rng.uniform(0.9, 1.1);
      } else {
        const double base = clamp(cell_min / 5.0, 18.0, 48.0);
        bw = base * rng.uniform(0.9, 1.1);
        bh = base * rng.uniform(0.9, 1.1);
      }

      switch (kind) {
        case ScenarioKind::kSwipe:
          paths.push_back(swipe_path(roam, spec.duration, spec.speed, bw, bh, rng));
          break;
        case ScenarioKind::kClick:
          paths.push_back(click_path(roam, spec.duration, bw, bh, rng));
          break;
        case ScenarioKind::kZoom:
          paths.push_back(zoom_path(roam, spec.duration, bw, bh, rng));
          break;
        case ScenarioKind::kFixation:
          paths.push_back(fixation_path(roam, spec.duration, bw, bh, rng));
          break;
        default:
          throw std::logic_error("unreachable scenario kind");
      }
    }
  }

  const int n = static_cast<int>(paths.size());

  // Ground truth with the occlusion rule applied.
  out.ground_truth.frames.resize(spec.duration);
  for (int t = 0; t < spec.duration; ++t) {
    auto& frame = out.ground_truth.frames[t];
    for (int i = 0; i < n; ++i) {
      if (!paths[i][t]) continue;
      const BoundingBox box = clamp_to_frame(*paths[i][t], spec.frame_width, spec.frame_height);
      frame.push_back(GroundTruthEntry{i + 1, box, true});
    }
    for (std::size_t a = 0; a < frame.size(); ++a) {
      for (std::size_t b = a + 1; b < frame.size(); ++b) {
        if (iou(frame[a].box, frame[b].box) > kOcclusionIou) {
          // The smaller-area target is hidden; ties hide the later gid.
          auto& loser = (frame[a].box.area() < frame[b].box.area() ||
                         (frame[a].box.area() == frame[b].box.area() &&
                          frame[a].gid > frame[b].gid))
                            ? frame[a]
                            : frame[b];
          loser.visible = false;
        }
      }
    }
  }

  // Degraded detection stream.
  out.detections.resize(spec.duration);
  out.detection_origins.resize(spec.duration);
  int clutter_serial = 0;
  for (int t = 0; t < spec.duration; ++t) {
    for (const GroundTruthEntry& entry : out.ground_truth.frames[t]) {
      if (!entry.visible) continue;
      if (spec.p_miss > 0.0 && rng.next_double() < spec.p_miss) continue;

      // Motion blur: doubled noise on fast frames.
      double displacement = 0.0;
      if (t > 0) {
        for (const GroundTruthEntry& prev : out.ground_truth.frames[t - 1]) {
          if (prev.gid == entry.gid) {
            displacement = std::hypot(entry.box.x - prev.box.x, entry.box.y - prev.box.y);
            break;
          }
        }
      }
      const double noise = displacement > 20.0 ? 2.0 * spec.noise_std : spec.noise_std;

      double x = entry.box.x, y = entry.box.y, w = entry.box.w, h = entry.box.h;
      if (noise > 0.0) {
        x += rng.gaussian(0.0, noise);
        y += rng.gaussian(0.0, noise);
        w = std::max(w + rng.gaussian(0.0, noise), 2.0);
        h = std::max(h + rng.gaussian(0.0, noise), 2.0);
      }
      Detection det{BoundingBox(x, y, w, h), 1.0,
                    synth_embedding(static_cast<std::uint64_t>(entry.gid),
                                    spec.embedding_noise_std, rng)};
      out.detections[t].push_back(std::move(det));
      out.detection_origins[t].push_back(entry.gid);
    }

    const int clutter = rng.poisson(spec.clutter_rate);
    for (int k = 0; k < clutter; ++k) {
      const double w = rng.uniform(20.0, 80.0);
      const double h = rng.uniform(20.0, 80.0);
      const double x = rng.uniform(0.5 * w, spec.frame_width - 0.5 * w);
      const double y = rng.uniform(0.5 * h, spec.frame_height - 0.5 * h);
      const double conf = rng.uniform(0.3, 1.0);
      const std::uint64_t identity = 1'000'000ULL + static_cast<std::uint64_t>(clutter_serial++);
      Detection det{BoundingBox(x, y, w, h), conf,
                    synth_embedding(identity, spec.embedding_noise_std, rng)};
      out.detections[t].push_back(std::move(det));
      out.detection_origins[t].push_back(-1);
    }
  }

  return out;
}

ScenarioSpec crossing_spec(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::kCrossing;
  spec.n_targets = 2;
  spec.duration = 60;
  spec.noise_std = 0.5;
  spec.embedding_noise_std = 0.05;
  spec.seed = seed;
  return spec;
}

ScenarioOutput crossing_scenario(std::uint64_t seed) { return generate(crossing_spec(seed)); }

}  // namespace motkit
