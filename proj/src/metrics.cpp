#include "motkit/metrics.hpp"

#include <map>
#include <sstream>

#include "motkit/assoc.hpp"

namespace motkit {

EvalReport evaluate(std::span<const FrameResult> results, const GroundTruth& gt,
                    double iou_thresh) {
  if (!(iou_thresh > 0.0 && iou_thresh < 1.0)) {
    throw std::invalid_argument("iou_thresh must lie in (0, 1)");
  }
  if (results.size() != gt.frames.size()) {
    throw InconsistentInput("tracker output and ground truth frame counts differ");
  }

  EvalReport report;
  std::map<int, int> last_track_of_gid;  // persists across gaps

  for (std::size_t f = 0; f < results.size(); ++f) {
    std::vector<const GroundTruthEntry*> visible;
    for (const GroundTruthEntry& entry : gt.frames[f]) {
      if (entry.visible) visible.push_back(&entry);
    }
    const auto& tracks = results[f].tracks;

    CostMatrix costs(static_cast<int>(visible.size()), static_cast<int>(tracks.size()));
    for (int i = 0; i < costs.rows(); ++i) {
      for (int j = 0; j < costs.cols(); ++j) {
        const double overlap = iou(visible[i]->box, tracks[j].box);
        if (overlap < iou_thresh) continue;
        costs.at(i, j) = 1.0 - overlap;
      }
    }
    const Assignment matching = solve_assignment(costs);

    report.gt_count += static_cast<long long>(visible.size());
    report.tp += static_cast<long long>(matching.pairs.size());
    report.fn += static_cast<long long>(matching.unmatched_tracks.size());  // unmatched gt rows
    report.fp += static_cast<long long>(matching.unmatched_detections.size());

    for (const auto& [gi, tj] : matching.pairs) {
      const int gid = visible[gi]->gid;
      const int track_id = tracks[tj].id;
      const auto it = last_track_of_gid.find(gid);
      if (it != last_track_of_gid.end() && it->second != track_id) ++report.id_switches;
      last_track_of_gid[gid] = track_id;
    }
  }

  report.precision =
      (report.tp + report.fp) > 0 ? static_cast<double>(report.tp) / (report.tp + report.fp) : 0.0;
  report.recall = report.gt_count > 0 ? static_cast<double>(report.tp) / report.gt_count : 0.0;
  report.f1 = (report.precision + report.recall) > 0.0
                  ? 2.0 * report.precision * report.recall / (report.precision + report.recall)
                  : 0.0;
  if (report.gt_count > 0) {
    report.mota = static_cast<double>(report.gt_count - report.fn - report.fp -
                                      report.id_switches) /
                  static_cast<double>(report.gt_count);
  } else {
    report.mota = (report.fp + report.id_switches) == 0 ? 1.0 : 0.0;
  }
  return report;
}

EvalDelta compare(const EvalReport& a, const EvalReport& b) {
  EvalDelta d;
  d.precision = a.precision - b.precision;
  d.recall = a.recall - b.recall;
  d.f1 = a.f1 - b.f1;
  d.mota = a.mota - b.mota;
  d.id_switches = static_cast<double>(a.id_switches - b.id_switches);
  d.fp = static_cast<double>(a.fp - b.fp);
  d.fn = static_cast<double>(a.fn - b.fn);
  return d;
}

EvalDelta average(std::span<const EvalDelta> deltas) {
  EvalDelta mean;
  if (deltas.empty()) return mean;
  for (const EvalDelta& d : deltas) {
    mean.precision += d.precision;
    mean.recall += d.recall;
    mean.f1 += d.f1;
    mean.mota += d.mota;
    mean.id_switches += d.id_switches;
    mean.fp += d.fp;
    mean.fn += d.fn;
  }
  const double n = static_cast<double>(deltas.size());
  mean.precision /= n;
  mean.recall /= n;
  mean.f1 /= n;
  mean.mota /= n;
  mean.id_switches /= n;
  mean.fp /= n;
  mean.fn /= n;
  return mean;
}

std::string format_delta(const EvalDelta& d) {
  std::ostringstream os;
  os.setf(std::ios::showpos);
  os << "precision " << d.precision << ", recall " << d.recall << ", f1 " << d.f1 << ", mota "
     << d.mota << ", id_switches " << d.id_switches << ", fp " << d.fp << ", fn " << d.fn;
  return os.str();
}

}  // namespace motkit
