#include "motkit/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "motkit/rng.hpp"

namespace motkit {
namespace {

GroundTruth single_target_gt(int frames, double x0 = 100, double step = 5) {
  GroundTruth gt;
  gt.frames.resize(frames);
  for (int f = 0; f < frames; ++f) {
    gt.frames[f].push_back(GroundTruthEntry{1, BoundingBox(x0 + f * step, 100, 40, 40), true});
  }
  return gt;
}

std::vector<FrameResult> echo_tracks(const GroundTruth& gt, int track_id) {
  std::vector<FrameResult> results;
  for (std::size_t f = 0; f < gt.frames.size(); ++f) {
    FrameResult r{static_cast<int>(f), {}};
    for (const auto& entry : gt.frames[f]) {
      if (entry.visible) {
        r.tracks.push_back(TrackSnapshot{track_id, entry.box, TrackStatus::kConfirmed});
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

TEST(Evaluate, PerfectTracking) {
  const GroundTruth gt = single_target_gt(10);
  const EvalReport report = evaluate(echo_tracks(gt, 1), gt);
  EXPECT_DOUBLE_EQ(report.precision, 1.0);
  EXPECT_DOUBLE_EQ(report.recall, 1.0);
  EXPECT_DOUBLE_EQ(report.f1, 1.0);
  EXPECT_DOUBLE_EQ(report.mota, 1.0);
  EXPECT_EQ(report.id_switches, 0);
  EXPECT_EQ(report.gt_count, 10);
}

TEST(Evaluate, EmptyTrackerOutput) {
  const GroundTruth gt = single_target_gt(8);
  std::vector<FrameResult> empty;
  for (int f = 0; f < 8; ++f) empty.push_back(FrameResult{f, {}});
  const EvalReport report = evaluate(empty, gt);
  EXPECT_DOUBLE_EQ(report.recall, 0.0);
  EXPECT_EQ(report.fn, report.gt_count);
  EXPECT_DOUBLE_EQ(report.mota, 0.0);
  EXPECT_DOUBLE_EQ(report.f1, 0.0);
}

// One target, track 1 on frames 0-1 and track 2 on frame 2, boxes exact:
// one switch, mota 1 - 1/3.
TEST(Evaluate, HandBuiltIdSwitchCase) {
  const GroundTruth gt = single_target_gt(3);
  std::vector<FrameResult> results = echo_tracks(gt, 1);
  results[2].tracks[0].id = 2;
  const EvalReport report = evaluate(results, gt);
  EXPECT_EQ(report.id_switches, 1);
  EXPECT_DOUBLE_EQ(report.mota, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(report.precision, 1.0);
  EXPECT_DOUBLE_EQ(report.recall, 1.0);
}

TEST(Evaluate, SwitchCountSkipsGaps) {
  GroundTruth gt = single_target_gt(5);
  std::vector<FrameResult> results = echo_tracks(gt, 1);
  results[2].tracks.clear();  // gap, then same id: no switch
  EXPECT_EQ(evaluate(results, gt).id_switches, 0);

  results = echo_tracks(gt, 1);
  results[2].tracks.clear();
  results[3].tracks[0].id = 9;  // gap, then new id: one switch
  results[4].tracks[0].id = 9;
  EXPECT_EQ(evaluate(results, gt).id_switches, 1);
}

TEST(Evaluate, InvisibleGroundTruthExcluded) {
  GroundTruth gt = single_target_gt(4);
  gt.frames[1][0].visible = false;
  std::vector<FrameResult> results = echo_tracks(gt, 1);
  ASSERT_TRUE(results[1].tracks.empty());
  const EvalReport report = evaluate(results, gt);
  EXPECT_EQ(report.gt_count, 3);
  EXPECT_EQ(report.fn, 0);
  EXPECT_DOUBLE_EQ(report.mota, 1.0);
}

TEST(Evaluate, FrameCountMismatchRejected) {
  const GroundTruth gt = single_target_gt(4);
  std::vector<FrameResult> results = echo_tracks(gt, 1);
  results.pop_back();
  EXPECT_THROW(evaluate(results, gt), InconsistentInput);
}

TEST(Evaluate, IouThresholdValidated) {
  const GroundTruth gt = single_target_gt(2);
  EXPECT_THROW(evaluate(echo_tracks(gt, 1), gt, 0.0), std::invalid_argument);
  EXPECT_THROW(evaluate(echo_tracks(gt, 1), gt, 1.0), std::invalid_argument);
}

TEST(Evaluate, TpPlusFnEqualsVisibleGt) {
  Rng rng(55);
  GroundTruth gt;
  gt.frames.resize(20);
  for (int f = 0; f < 20; ++f) {
    for (int g = 1; g <= 3; ++g) {
      gt.frames[f].push_back(GroundTruthEntry{
          g, BoundingBox(100 + 150 * g + rng.uniform(-2, 2), 200 + rng.uniform(-2, 2), 40, 40),
          rng.next_double() > 0.2});
    }
  }
  std::vector<FrameResult> results;
  for (int f = 0; f < 20; ++f) {
    FrameResult r{f, {}};
    for (const auto& entry : gt.frames[f]) {
      if (rng.next_double() < 0.7) {
        r.tracks.push_back(TrackSnapshot{entry.gid + 10, entry.box, TrackStatus::kConfirmed});
      }
    }
    if (rng.next_double() < 0.3) {
      r.tracks.push_back(
          TrackSnapshot{99, BoundingBox(900, 900, 30, 30), TrackStatus::kConfirmed});
    }
    results.push_back(std::move(r));
  }
  const EvalReport report = evaluate(results, gt);
  EXPECT_EQ(report.tp + report.fn, report.gt_count);
  EXPECT_GE(report.precision, 0.0);
  EXPECT_LE(report.precision, 1.0);
  EXPECT_GE(report.recall, 0.0);
  EXPECT_LE(report.recall, 1.0);
  EXPECT_LE(report.mota, 1.0);
}

TEST(Evaluate, TrackOrderAndIdRelabelingInvariance) {
  Rng rng(77);
  const GroundTruth gt = single_target_gt(12);
  GroundTruth gt3;
  gt3.frames.resize(12);
  for (int f = 0; f < 12; ++f) {
    for (int g = 1; g <= 3; ++g) {
      gt3.frames[f].push_back(
          GroundTruthEntry{g, BoundingBox(100 + 200 * g, 100 + f * 3, 40, 40), true});
    }
  }
  std::vector<FrameResult> results;
  for (int f = 0; f < 12; ++f) {
    FrameResult r{f, {}};
    for (const auto& entry : gt3.frames[f]) {
      r.tracks.push_back(TrackSnapshot{entry.gid * 7, entry.box, TrackStatus::kConfirmed});
    }
    results.push_back(std::move(r));
  }
  const EvalReport base = evaluate(results, gt3);

  // Shuffle within frames.
  std::vector<FrameResult> shuffled = results;
  for (auto& frame : shuffled) {
    for (std::size_t k = frame.tracks.size(); k > 1; --k) {
      std::swap(frame.tracks[k - 1], frame.tracks[rng.next_u64() % k]);
    }
  }
  // Relabel ids by a bijection.
  std::vector<FrameResult> relabeled = results;
  for (auto& frame : relabeled) {
    for (auto& t : frame.tracks) t.id = 1000 - t.id;
  }

  for (const auto& variant : {shuffled, relabeled}) {
    const EvalReport report = evaluate(variant, gt3);
    EXPECT_DOUBLE_EQ(report.precision, base.precision);
    EXPECT_DOUBLE_EQ(report.recall, base.recall);
    EXPECT_DOUBLE_EQ(report.mota, base.mota);
    EXPECT_EQ(report.id_switches, base.id_switches);
  }
}

TEST(Compare, DeltasAndAverages) {
  EvalReport a;
  a.precision = 1.0;
  a.mota = 1.0;
  EvalReport b = a;
  EXPECT_DOUBLE_EQ(compare(a, b).mota, 0.0);

  b.mota = 0.9;
  const EvalDelta d = compare(a, b);
  EXPECT_NEAR(d.mota, 0.1, 1e-12);

  const EvalDelta zero = compare(a, a);
  const std::vector<EvalDelta> deltas{d, zero};
  EXPECT_NEAR(average(deltas).mota, 0.05, 1e-12);
  EXPECT_FALSE(format_delta(d).empty());
}

}  // namespace
}  // namespace motkit
