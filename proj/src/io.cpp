#include "motkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace motkit::io {

using nlohmann::json;

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

json box_to_json(const BoundingBox& b) {
  return json{{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}};
}

double require_number(const json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ParseError(line, std::string("missing or non-numeric field '") + key + "'");
  }
  return obj[key].get<double>();
}

BoundingBox parse_box(const json& obj, std::size_t line) {
  const double x = require_number(obj, "x", line);
  const double y = require_number(obj, "y", line);
  const double w = require_number(obj, "w", line);
  const double h = require_number(obj, "h", line);
  try {
    return BoundingBox(x, y, w, h);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

// Shared frame-by-frame JSONL walk: hands each parsed object to the sink,
// enforcing nonnegative strictly-increasing frame indices. Absent frames
// stay empty.
template <typename Sink>
void parse_frames(const std::string& text, Sink&& sink) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  long long last_frame = -1;
  while (std::getline(in, raw)) {
    ++line_no;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
    if (!obj.is_object() || !obj.contains("frame") || !obj["frame"].is_number_integer()) {
      throw ParseError(line_no, "expected an object with an integer 'frame'");
    }
    const long long frame = obj["frame"].get<long long>();
    if (frame < 0) throw ParseError(line_no, "frame index must be nonnegative");
    if (frame <= last_frame) throw ParseError(line_no, "frame indices must strictly increase");
    last_frame = frame;
    sink(static_cast<std::size_t>(frame), obj, line_no);
  }
}

}  // namespace

std::string detections_to_jsonl(const std::vector<std::vector<Detection>>& frames) {
  std::string out;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    json record{{"frame", f}, {"detections", json::array()}};
    for (const Detection& det : frames[f]) {
      json obj = box_to_json(det.box);
      obj["conf"] = det.confidence;
      if (det.embedding) {
        json emb = json::array();
        for (int i = 0; i < det.embedding->dim(); ++i) emb.push_back(det.embedding->values()(i));
        obj["emb"] = std::move(emb);
      } else {
        obj["emb"] = nullptr;
      }
      record["detections"].push_back(std::move(obj));
    }
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::vector<std::vector<Detection>> parse_detections_jsonl(const std::string& text) {
  std::vector<std::vector<Detection>> frames;
  parse_frames(text, [&frames](std::size_t frame, const json& obj, std::size_t line) {
    if (!obj.contains("detections") || !obj["detections"].is_array()) {
      throw ParseError(line, "missing 'detections' array");
    }
    if (frames.size() <= frame) frames.resize(frame + 1);
    for (const json& d : obj["detections"]) {
      Detection det{parse_box(d, line), require_number(d, "conf", line), std::nullopt};
      if (!(det.confidence >= 0.0 && det.confidence <= 1.0)) {
        throw ParseError(line, "'conf' must lie in [0, 1]");
      }
      if (d.contains("emb") && !d["emb"].is_null()) {
        if (!d["emb"].is_array() || d["emb"].empty()) {
          throw ParseError(line, "'emb' must be null or a non-empty array");
        }
        Eigen::VectorXd v(d["emb"].size());
        for (std::size_t i = 0; i < d["emb"].size(); ++i) {
          if (!d["emb"][i].is_number()) throw ParseError(line, "'emb' entries must be numbers");
          v(static_cast<Eigen::Index>(i)) = d["emb"][i].get<double>();
        }
        try {
          det.embedding.emplace(std::move(v));
        } catch (const std::invalid_argument& e) {
          throw ParseError(line, e.what());
        }
      }
      frames[frame].push_back(std::move(det));
    }
  });
  return frames;
}

std::string ground_truth_to_jsonl(const GroundTruth& gt) {
  std::string out;
  for (std::size_t f = 0; f < gt.frames.size(); ++f) {
    json record{{"frame", f}, {"targets", json::array()}};
    for (const GroundTruthEntry& entry : gt.frames[f]) {
      json obj = box_to_json(entry.box);
      obj["gid"] = entry.gid;
      obj["visible"] = entry.visible;
      record["targets"].push_back(std::move(obj));
    }
    out += record.dump();
    out += '\n';
  }
  return out;
}

GroundTruth parse_ground_truth_jsonl(const std::string& text) {
  GroundTruth gt;
  parse_frames(text, [&gt](std::size_t frame, const json& obj, std::size_t line) {
    if (!obj.contains("targets") || !obj["targets"].is_array()) {
      throw ParseError(line, "missing 'targets' array");
    }
    if (gt.frames.size() <= frame) gt.frames.resize(frame + 1);
    for (const json& t : obj["targets"]) {
      if (!t.contains("gid") || !t["gid"].is_number_integer()) {
        throw ParseError(line, "missing integer 'gid'");
      }
      if (!t.contains("visible") || !t["visible"].is_boolean()) {
        throw ParseError(line, "missing boolean 'visible'");
      }
      gt.frames[frame].push_back(
          GroundTruthEntry{t["gid"].get<int>(), parse_box(t, line), t["visible"].get<bool>()});
    }
  });
  return gt;
}

std::string tracks_to_jsonl(const std::vector<FrameResult>& results) {
  std::string out;
  for (const FrameResult& result : results) {
    json record{{"frame", result.frame}, {"tracks", json::array()}};
    for (const TrackSnapshot& track : result.tracks) {
      json obj = box_to_json(track.box);
      obj["id"] = track.id;
      obj["status"] = to_string(track.status);
      record["tracks"].push_back(std::move(obj));
    }
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::vector<FrameResult> parse_tracks_jsonl(const std::string& text) {
  std::vector<FrameResult> results;
  parse_frames(text, [&results](std::size_t frame, const json& obj, std::size_t line) {
    if (!obj.contains("tracks") || !obj["tracks"].is_array()) {
      throw ParseError(line, "missing 'tracks' array");
    }
    while (results.size() <= frame) {
      results.push_back(FrameResult{static_cast<int>(results.size()), {}});
    }
    for (const json& t : obj["tracks"]) {
      if (!t.contains("id") || !t["id"].is_number_integer()) {
        throw ParseError(line, "missing integer 'id'");
      }
      if (!t.contains("status") || !t["status"].is_string()) {
        throw ParseError(line, "missing string 'status'");
      }
      const std::string status = t["status"].get<std::string>();
      TrackStatus parsed;
      if (status == "tentative") {
        parsed = TrackStatus::kTentative;
      } else if (status == "confirmed") {
        parsed = TrackStatus::kConfirmed;
      } else {
        throw ParseError(line, "status must be 'tentative' or 'confirmed'");
      }
      results[frame].tracks.push_back(
          TrackSnapshot{t["id"].get<int>(), parse_box(t, line), parsed});
    }
  });
  return results;
}

std::string report_to_json(const EvalReport& report, double iou_thresh) {
  json obj{{"precision", report.precision},
           {"recall", report.recall},
           {"f1", report.f1},
           {"mota", report.mota},
           {"id_switches", report.id_switches},
           {"tp", report.tp},
           {"fp", report.fp},
           {"fn", report.fn},
           {"gt_count", report.gt_count},
           {"iou_thresh", iou_thresh}};
  return obj.dump(2) + "\n";
}

std::string gestures_to_jsonl(const std::vector<GestureRecord>& records) {
  std::string out;
  for (const GestureRecord& rec : records) {
    const GestureFeatures& f = rec.result.features;
    json obj{{"id", rec.id},
             {"label", to_string(rec.result.label)},
             {"features",
              {{"net_displacement", f.net_displacement},
               {"path_length", f.path_length},
               {"straightness", f.straightness},
               {"scale_ratio", f.scale_ratio},
               {"duration", f.duration},
               {"mean_diagonal", f.mean_diagonal}}}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<Trajectory> trajectories_from_tracks(const std::vector<FrameResult>& results) {
  std::map<int, Trajectory> by_id;
  for (const FrameResult& result : results) {
    for (const TrackSnapshot& track : result.tracks) {
      auto& traj = by_id.try_emplace(track.id, Trajectory{track.id, {}}).first->second;
      traj.points.push_back(TrajectoryPoint{result.frame, track.box});
    }
  }
  std::vector<Trajectory> out;
  out.reserve(by_id.size());
  for (auto& [id, traj] : by_id) out.push_back(std::move(traj));
  return out;
}

std::vector<Trajectory> trajectories_from_ground_truth(const GroundTruth& gt) {
  std::map<int, Trajectory> by_id;
  for (std::size_t f = 0; f < gt.frames.size(); ++f) {
    for (const GroundTruthEntry& entry : gt.frames[f]) {
      if (!entry.visible) continue;
      auto& traj = by_id.try_emplace(entry.gid, Trajectory{entry.gid, {}}).first->second;
      traj.points.push_back(TrajectoryPoint{static_cast<int>(f), entry.box});
    }
  }
  std::vector<Trajectory> out;
  out.reserve(by_id.size());
  for (auto& [id, traj] : by_id) out.push_back(std::move(traj));
  return out;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<Trajectory>& trajectories, double width, double height) {
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height)
      << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const Trajectory& traj : trajectories) {
    const char* color = kPalette[(std::max(traj.id, 1) - 1) % 6];
    if (traj.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < traj.points.size(); ++i) {
        if (i) svg << ' ';
        svg << fmt(traj.points[i].box.x) << ',' << fmt(traj.points[i].box.y);
      }
      svg << "\"/>\n";
    }
    // Dots mark low-motion samples (fixation-style dwell).
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
      bool low_motion = traj.points.size() == 1;
      if (i > 0) {
        const auto& prev = traj.points[i - 1];
        const auto& cur = traj.points[i];
        const double step = std::hypot(cur.box.x - prev.box.x, cur.box.y - prev.box.y) /
                            std::max(cur.frame - prev.frame, 1);
        low_motion = step < 2.0;
      }
      if (low_motion) {
        svg << "<circle cx=\"" << fmt(traj.points[i].box.x) << "\" cy=\""
            << fmt(traj.points[i].box.y) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace motkit::io
