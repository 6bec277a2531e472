#include "motkit/io.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "motkit/gesture.hpp"
#include "motkit/simkit.hpp"

namespace motkit::io {
namespace {

TEST(DetectionsJsonl, RoundTripPreservesContent) {
  const ScenarioOutput scenario = generate(ScenarioSpec{.kind = ScenarioKind::kMixed,
                                                        .n_targets = 3,
                                                        .duration = 15,
                                                        .noise_std = 1.0,
                                                        .clutter_rate = 0.5,
                                                        .embedding_noise_std = 0.05,
                                                        .seed = 8});
  const std::string text = detections_to_jsonl(scenario.detections);
  const auto parsed = parse_detections_jsonl(text);
  ASSERT_EQ(parsed.size(), scenario.detections.size());
  for (std::size_t f = 0; f < parsed.size(); ++f) {
    ASSERT_EQ(parsed[f].size(), scenario.detections[f].size());
    for (std::size_t d = 0; d < parsed[f].size(); ++d) {
      EXPECT_EQ(parsed[f][d].box, scenario.detections[f][d].box);
      EXPECT_EQ(parsed[f][d].confidence, scenario.detections[f][d].confidence);
      ASSERT_TRUE(parsed[f][d].embedding.has_value());
      // Parsing re-normalizes, so allow re-normalization rounding.
      EXPECT_LT(
          (parsed[f][d].embedding->values() - scenario.detections[f][d].embedding->values())
              .norm(),
          1e-12);
    }
  }
  // Serialization is deterministic for identical in-memory data.
  EXPECT_EQ(text, detections_to_jsonl(scenario.detections));
}

TEST(GroundTruthJsonl, RoundTrip) {
  const ScenarioOutput scenario = crossing_scenario(4);
  const std::string text = ground_truth_to_jsonl(scenario.ground_truth);
  const GroundTruth parsed = parse_ground_truth_jsonl(text);
  ASSERT_EQ(parsed.frames.size(), scenario.ground_truth.frames.size());
  for (std::size_t f = 0; f < parsed.frames.size(); ++f) {
    ASSERT_EQ(parsed.frames[f].size(), scenario.ground_truth.frames[f].size());
    for (std::size_t i = 0; i < parsed.frames[f].size(); ++i) {
      EXPECT_EQ(parsed.frames[f][i].gid, scenario.ground_truth.frames[f][i].gid);
      EXPECT_EQ(parsed.frames[f][i].box, scenario.ground_truth.frames[f][i].box);
      EXPECT_EQ(parsed.frames[f][i].visible, scenario.ground_truth.frames[f][i].visible);
    }
  }
}

TEST(TracksJsonl, RoundTrip) {
  std::vector<FrameResult> results;
  results.push_back(FrameResult{0, {TrackSnapshot{1, BoundingBox(10, 20, 30, 40),
                                                  TrackStatus::kTentative}}});
  results.push_back(FrameResult{1, {TrackSnapshot{1, BoundingBox(12, 22, 30, 40),
                                                  TrackStatus::kConfirmed}}});
  const std::string text = tracks_to_jsonl(results);
  const auto parsed = parse_tracks_jsonl(text);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].tracks[0].status, TrackStatus::kTentative);
  EXPECT_EQ(parsed[1].tracks[0].status, TrackStatus::kConfirmed);
  EXPECT_EQ(parsed[1].tracks[0].box, BoundingBox(12, 22, 30, 40));
}

TEST(Jsonl, ParseErrorsNameTheLine) {
  try {
    parse_detections_jsonl("{\"frame\":0,\"detections\":[]}\n{broken\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }

  EXPECT_THROW(parse_detections_jsonl("{\"frame\":0}\n"), ParseError);
  EXPECT_THROW(parse_detections_jsonl("{\"frame\":-1,\"detections\":[]}\n"), ParseError);
  EXPECT_THROW(
      parse_detections_jsonl("{\"frame\":1,\"detections\":[]}\n{\"frame\":1,\"detections\":[]}\n"),
      ParseError);
  EXPECT_THROW(parse_detections_jsonl(
                   "{\"frame\":0,\"detections\":[{\"x\":1,\"y\":2,\"w\":-3,\"h\":4,\"conf\":1}]}\n"),
               ParseError);
  EXPECT_THROW(
      parse_tracks_jsonl("{\"frame\":0,\"tracks\":[{\"id\":1,\"x\":1,\"y\":2,\"w\":3,\"h\":4,"
                         "\"status\":\"zombie\"}]}\n"),
      ParseError);
}

TEST(Jsonl, MissingFramesReadAsEmpty) {
  const auto parsed =
      parse_detections_jsonl("{\"frame\":0,\"detections\":[]}\n{\"frame\":3,\"detections\":[]}\n");
  ASSERT_EQ(parsed.size(), 4u);
  EXPECT_TRUE(parsed[1].empty());
  EXPECT_TRUE(parsed[2].empty());
}

TEST(ReportJson, ContainsAllFields) {
  EvalReport report;
  report.precision = 0.5;
  report.gt_count = 10;
  const std::string text = report_to_json(report, 0.5);
  for (const char* key : {"precision", "recall", "f1", "mota", "id_switches", "tp", "fp", "fn",
                          "gt_count", "iou_thresh"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

TEST(Svg, EmptyInputIsValidDocument) {
  const std::string svg = render_svg({}, 1920, 1080);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("viewBox=\"0 0 1920.00 1080.00\""), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(svg.find("<polyline"), std::string::npos);
}

TEST(Svg, StationaryTrackBecomesPointMarker) {
  Trajectory t{1, {TrajectoryPoint{0, BoundingBox(100, 100, 10, 10)}}};
  const std::string svg = render_svg({t}, 640, 480);
  EXPECT_EQ(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
}

TEST(Svg, SwipeEndpointsMatchNetDisplacement) {
  Trajectory t{1, {}};
  for (int f = 0; f < 30; ++f) {
    t.points.push_back(TrajectoryPoint{f, BoundingBox(100 + 7.3 * f, 200 + 2.1 * f, 40, 40)});
  }
  const GestureFeatures features = extract_features(t);
  const std::string svg = render_svg({t}, 1920, 1080);

  const auto points_pos = svg.find("points=\"");
  ASSERT_NE(points_pos, std::string::npos);
  const auto end_pos = svg.find('"', points_pos + 8);
  const std::string points = svg.substr(points_pos + 8, end_pos - points_pos - 8);

  double x0, y0, xn, yn;
  ASSERT_EQ(std::sscanf(points.c_str(), "%lf,%lf", &x0, &y0), 2);
  const auto last_space = points.rfind(' ');
  ASSERT_EQ(std::sscanf(points.c_str() + last_space + 1, "%lf,%lf", &xn, &yn), 2);

  const double rendered = std::hypot(xn - x0, yn - y0);
  EXPECT_NEAR(rendered, features.net_displacement, 1.0);
}

TEST(Files, AtomicWriteAndRead) {
  const auto dir = std::filesystem::temp_directory_path() / "motkit_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "payload.txt";
  write_file_atomic(path, "alpha\nbeta\n");
  EXPECT_EQ(read_file(path), "alpha\nbeta\n");
  write_file_atomic(path, "gamma\n");
  EXPECT_EQ(read_file(path), "gamma\n");
  EXPECT_THROW(read_file(dir / "missing.txt"), ParseError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace motkit::io
