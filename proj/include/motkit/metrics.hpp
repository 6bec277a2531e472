#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "motkit/simkit.hpp"
#include "motkit/tracker.hpp"

namespace motkit {

// Tracker output and ground truth cover different frame ranges.
class InconsistentInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double mota = 0.0;
  long long id_switches = 0;
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  long long gt_count = 0;  // total visible ground-truth boxes
};

/// Frame-by-frame optimal matching of tracker boxes to visible ground-truth
/// boxes on 1−IoU costs (pairs under iou_thresh discarded); counts TP/FP/FN
/// and identity switches. Throws InconsistentInput on frame-count mismatch.
EvalReport evaluate(std::span<const FrameResult> results, const GroundTruth& gt,
                    double iou_thresh = 0.5);

// Per-metric differences, a minus b.
struct EvalDelta {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double mota = 0.0;
  double id_switches = 0.0;
  double fp = 0.0;
  double fn = 0.0;
};

EvalDelta compare(const EvalReport& a, const EvalReport& b);

/// Mean of per-scenario deltas, for suite-level comparisons.
EvalDelta average(std::span<const EvalDelta> deltas);

std::string format_delta(const EvalDelta& d);

}  // namespace motkit
