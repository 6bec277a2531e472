#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "motkit/detection.hpp"
#include "motkit/gesture.hpp"
#include "motkit/metrics.hpp"
#include "motkit/simkit.hpp"
#include "motkit/tracker.hpp"

namespace motkit::io {

// A line of an input file could not be parsed or fails its schema.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// --- JSONL serialization; one object per frame -----------------------------

std::string detections_to_jsonl(const std::vector<std::vector<Detection>>& frames);
std::string ground_truth_to_jsonl(const GroundTruth& gt);
std::string tracks_to_jsonl(const std::vector<FrameResult>& results);

std::vector<std::vector<Detection>> parse_detections_jsonl(const std::string& text);
GroundTruth parse_ground_truth_jsonl(const std::string& text);
std::vector<FrameResult> parse_tracks_jsonl(const std::string& text);

// --- reports ----------------------------------------------------------------

std::string report_to_json(const EvalReport& report, double iou_thresh);

struct GestureRecord {
  int id;
  GestureLabel result;
};
std::string gestures_to_jsonl(const std::vector<GestureRecord>& records);

// --- trajectories and SVG rendering ------------------------------------------

/// Per-id trajectories from tracker output, in id order.
std::vector<Trajectory> trajectories_from_tracks(const std::vector<FrameResult>& results);

/// Per-gid trajectories from ground truth (visible entries only).
std::vector<Trajectory> trajectories_from_ground_truth(const GroundTruth& gt);

/// Static SVG 1.1: one polyline per identity, colors cycled by id, dot
/// markers on low-motion segments.
std::string render_svg(const std::vector<Trajectory>& trajectories, double width, double height);

// --- files -------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path);

/// Writes via a temp file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace motkit::io
