// motkit command line: scenario generation, tracking, evaluation, gesture
// classification, and SVG trajectory rendering over JSONL files.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "motkit/gesture.hpp"
#include "motkit/io.hpp"
#include "motkit/metrics.hpp"
#include "motkit/simkit.hpp"
#include "motkit/tracker.hpp"

namespace {

using nlohmann::json;
using namespace motkit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;         // bad flags or invalid configuration
constexpr int kExitBadInput = 3;      // malformed input file
constexpr int kExitInconsistent = 4;  // inputs disagree with each other

// Every tunable in one place; flags override config-file values, which
// override these defaults.
struct RunConfig {
  ScenarioSpec scenario;
  TrackerConfig tracker;
  double iou_thresh = 0.5;
  GestureConfig gesture;
};

json config_to_json(const RunConfig& cfg) {
  return json{{"kind", to_string(cfg.scenario.kind)},
              {"seed", cfg.scenario.seed},
              {"duration", cfg.scenario.duration},
              {"n_targets", cfg.scenario.n_targets},
              {"frame_width", cfg.scenario.frame_width},
              {"frame_height", cfg.scenario.frame_height},
              {"noise_std", cfg.scenario.noise_std},
              {"p_miss", cfg.scenario.p_miss},
              {"clutter", cfg.scenario.clutter_rate},
              {"embedding_noise", cfg.scenario.embedding_noise_std},
              {"speed", cfg.scenario.speed},
              {"lambda", cfg.tracker.weights.motion_weight},
              {"gate", cfg.tracker.weights.gate},
              {"n_init", cfg.tracker.n_init},
              {"max_age", cfg.tracker.max_age},
              {"min_confidence", cfg.tracker.min_confidence},
              {"stage2_min_iou", cfg.tracker.stage2_min_iou},
              {"emit_tentative", cfg.tracker.emit_tentative},
              {"iou_thresh", cfg.iou_thresh},
              {"zoom_scale_margin", cfg.gesture.zoom_scale_margin},
              {"click_max_duration", cfg.gesture.click_max_duration},
              {"swipe_straightness", cfg.gesture.swipe_straightness},
              {"stationary_speed", cfg.gesture.stationary_speed},
              {"stationary_window", cfg.gesture.stationary_window}};
}

template <typename T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("config key '" + key + "' has the wrong type");
  }
}

void apply_config_json(RunConfig& cfg, const json& obj) {
  if (!obj.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (key == "kind") {
      const auto kind = parse_scenario_kind(get_as<std::string>(value, key));
      if (!kind) throw std::invalid_argument("unknown scenario kind in config");
      cfg.scenario.kind = *kind;
    } else if (key == "seed") {
      cfg.scenario.seed = get_as<std::uint64_t>(value, key);
    } else if (key == "duration") {
      cfg.scenario.duration = get_as<int>(value, key);
    } else if (key == "n_targets") {
      cfg.scenario.n_targets = get_as<int>(value, key);
    } else if (key == "frame_width") {
      cfg.scenario.frame_width = get_as<double>(value, key);
    } else if (key == "frame_height") {
      cfg.scenario.frame_height = get_as<double>(value, key);
    } else if (key == "noise_std") {
      cfg.scenario.noise_std = get_as<double>(value, key);
    } else if (key == "p_miss") {
      cfg.scenario.p_miss = get_as<double>(value, key);
    } else if (key == "clutter") {
      cfg.scenario.clutter_rate = get_as<double>(value, key);
    } else if (key == "embedding_noise") {
      cfg.scenario.embedding_noise_std = get_as<double>(value, key);
    } else if (key == "speed") {
      cfg.scenario.speed = get_as<double>(value, key);
    } else if (key == "lambda") {
      cfg.tracker.weights.motion_weight = get_as<double>(value, key);
    } else if (key == "gate") {
      cfg.tracker.weights.gate = get_as<double>(value, key);
    } else if (key == "n_init") {
      cfg.tracker.n_init = get_as<int>(value, key);
    } else if (key == "max_age") {
      cfg.tracker.max_age = get_as<int>(value, key);
    } else if (key == "min_confidence") {
      cfg.tracker.min_confidence = get_as<double>(value, key);
    } else if (key == "stage2_min_iou") {
      cfg.tracker.stage2_min_iou = get_as<double>(value, key);
    } else if (key == "emit_tentative") {
      cfg.tracker.emit_tentative = get_as<bool>(value, key);
    } else if (key == "iou_thresh") {
      cfg.iou_thresh = get_as<double>(value, key);
    } else if (key == "zoom_scale_margin") {
      cfg.gesture.zoom_scale_margin = get_as<double>(value, key);
    } else if (key == "click_max_duration") {
      cfg.gesture.click_max_duration = get_as<int>(value, key);
    } else if (key == "swipe_straightness") {
      cfg.gesture.swipe_straightness = get_as<double>(value, key);
    } else if (key == "stationary_speed") {
      cfg.gesture.stationary_speed = get_as<double>(value, key);
    } else if (key == "stationary_window") {
      cfg.gesture.stationary_window = get_as<int>(value, key);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

// Flag values captured only when the user supplied them.
struct FlagValues {
  std::optional<std::string> kind;
  std::optional<std::uint64_t> seed;
  std::optional<int> duration;
  std::optional<int> n_targets;
  std::optional<double> frame_width;
  std::optional<double> frame_height;
  std::optional<double> noise_std;
  std::optional<double> p_miss;
  std::optional<double> clutter;
  std::optional<double> embedding_noise;
  std::optional<double> speed;
  std::optional<double> lambda;
  std::optional<double> gate;
  std::optional<int> n_init;
  std::optional<int> max_age;
  std::optional<double> min_confidence;
  std::optional<double> iou_thresh;
  bool emit_tentative = false;

  std::string config_path;
  bool print_config = false;
};

void add_common_flags(CLI::App* cmd, FlagValues& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file; flags override its values");
  cmd->add_flag("--print-config", flags.print_config, "print the effective config to stdout");
}

void add_scenario_flags(CLI::App* cmd, FlagValues& flags) {
  cmd->add_option("--kind", flags.kind,
                  "scenario kind: swipe|click|zoom|fixation|crossing|occlusion|mixed");
  cmd->add_option("--seed", flags.seed, "scenario seed");
  cmd->add_option("--duration", flags.duration, "frames to generate");
  cmd->add_option("--n-targets", flags.n_targets, "number of targets");
  cmd->add_option("--frame-width", flags.frame_width, "frame width, px");
  cmd->add_option("--frame-height", flags.frame_height, "frame height, px");
  cmd->add_option("--noise-std", flags.noise_std, "detection noise std, px");
  cmd->add_option("--p-miss", flags.p_miss, "per-detection dropout probability");
  cmd->add_option("--clutter", flags.clutter, "expected false positives per frame");
  cmd->add_option("--embedding-noise", flags.embedding_noise, "embedding noise std");
  cmd->add_option("--speed", flags.speed, "nominal swipe speed, px/frame");
}

void add_tracker_flags(CLI::App* cmd, FlagValues& flags) {
  cmd->add_option("--lambda", flags.lambda, "motion weight in the combined cost, [0,1]");
  cmd->add_option("--gate", flags.gate, "Mahalanobis gate threshold");
  cmd->add_option("--n-init", flags.n_init, "consecutive hits before confirmation");
  cmd->add_option("--max-age", flags.max_age, "misses a confirmed track survives");
  cmd->add_option("--min-confidence", flags.min_confidence, "detection confidence floor");
  cmd->add_flag("--emit-tentative", flags.emit_tentative, "report tentative tracks too");
}

RunConfig effective_config(const FlagValues& flags) {
  RunConfig cfg;
  if (!flags.config_path.empty()) {
    json obj;
    try {
      obj = json::parse(io::read_file(flags.config_path));
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("config file: ") + e.what());
    }
    apply_config_json(cfg, obj);
  }
  if (flags.kind) {
    const auto kind = parse_scenario_kind(*flags.kind);
    if (!kind) throw std::invalid_argument("unknown scenario kind '" + *flags.kind + "'");
    cfg.scenario.kind = *kind;
    if ((cfg.scenario.kind == ScenarioKind::kCrossing ||
         cfg.scenario.kind == ScenarioKind::kOcclusion) &&
        !flags.n_targets) {
      cfg.scenario.n_targets = 2;
    }
  }
  if (flags.seed) cfg.scenario.seed = *flags.seed;
  if (flags.duration) cfg.scenario.duration = *flags.duration;
  if (flags.n_targets) cfg.scenario.n_targets = *flags.n_targets;
  if (flags.frame_width) cfg.scenario.frame_width = *flags.frame_width;
  if (flags.frame_height) cfg.scenario.frame_height = *flags.frame_height;
  if (flags.noise_std) cfg.scenario.noise_std = *flags.noise_std;
  if (flags.p_miss) cfg.scenario.p_miss = *flags.p_miss;
  if (flags.clutter) cfg.scenario.clutter_rate = *flags.clutter;
  if (flags.embedding_noise) cfg.scenario.embedding_noise_std = *flags.embedding_noise;
  if (flags.speed) cfg.scenario.speed = *flags.speed;
  if (flags.lambda) cfg.tracker.weights.motion_weight = *flags.lambda;
  if (flags.gate) cfg.tracker.weights.gate = *flags.gate;
  if (flags.n_init) cfg.tracker.n_init = *flags.n_init;
  if (flags.max_age) cfg.tracker.max_age = *flags.max_age;
  if (flags.min_confidence) cfg.tracker.min_confidence = *flags.min_confidence;
  if (flags.iou_thresh) cfg.iou_thresh = *flags.iou_thresh;
  if (flags.emit_tentative) cfg.tracker.emit_tentative = true;

  if (flags.print_config) std::cout << config_to_json(cfg).dump(2) << "\n";
  return cfg;
}

int cmd_simulate(const FlagValues& flags, const std::string& out_detections,
                 const std::string& out_truth) {
  const RunConfig cfg = effective_config(flags);
  cfg.scenario.validate();
  const ScenarioOutput out = generate(cfg.scenario);
  io::write_file_atomic(out_detections, io::detections_to_jsonl(out.detections));
  io::write_file_atomic(out_truth, io::ground_truth_to_jsonl(out.ground_truth));
  return kExitOk;
}

int cmd_track(const FlagValues& flags, const std::string& in_path, const std::string& out_path) {
  const RunConfig cfg = effective_config(flags);
  const auto detections = io::parse_detections_jsonl(io::read_file(in_path));
  Tracker tracker(cfg.tracker);
  const auto results = tracker.run(detections);
  io::write_file_atomic(out_path, io::tracks_to_jsonl(results));
  return kExitOk;
}

int cmd_evaluate(const FlagValues& flags, const std::string& tracks_path,
                 const std::string& truth_path, const std::string& out_path) {
  const RunConfig cfg = effective_config(flags);
  auto results = io::parse_tracks_jsonl(io::read_file(tracks_path));
  const GroundTruth gt = io::parse_ground_truth_jsonl(io::read_file(truth_path));
  // An empty tracks file means the tracker reported nothing anywhere.
  if (results.empty() && !gt.frames.empty()) {
    for (std::size_t f = 0; f < gt.frames.size(); ++f) {
      results.push_back(FrameResult{static_cast<int>(f), {}});
    }
  }
  const EvalReport report = evaluate(results, gt, cfg.iou_thresh);
  io::write_file_atomic(out_path, io::report_to_json(report, cfg.iou_thresh));
  return kExitOk;
}

int cmd_classify(const FlagValues& flags, const std::string& tracks_path,
                 const std::string& out_path) {
  const RunConfig cfg = effective_config(flags);
  const auto results = io::parse_tracks_jsonl(io::read_file(tracks_path));
  std::vector<io::GestureRecord> records;
  for (const Trajectory& traj : io::trajectories_from_tracks(results)) {
    if (traj.points.size() < 2) {
      std::cerr << "warning: track " << traj.id << " has fewer than 2 frames, skipped\n";
      continue;
    }
    records.push_back(io::GestureRecord{traj.id, classify(traj, cfg.gesture)});
  }
  io::write_file_atomic(out_path, io::gestures_to_jsonl(records));
  return kExitOk;
}

int cmd_render(const FlagValues& flags, const std::string& tracks_path,
               const std::string& truth_path, const std::string& out_path) {
  const RunConfig cfg = effective_config(flags);
  std::vector<Trajectory> trajectories;
  if (!tracks_path.empty()) {
    trajectories =
        io::trajectories_from_tracks(io::parse_tracks_jsonl(io::read_file(tracks_path)));
  } else {
    trajectories = io::trajectories_from_ground_truth(
        io::parse_ground_truth_jsonl(io::read_file(truth_path)));
  }
  io::write_file_atomic(
      out_path, io::render_svg(trajectories, cfg.scenario.frame_width, cfg.scenario.frame_height));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-object tracking toolkit: simulate, track, evaluate, classify, render"};
  app.require_subcommand(1);

  FlagValues flags;

  auto* simulate = app.add_subcommand("simulate", "generate a synthetic scenario");
  std::string out_detections = "detections.jsonl";
  std::string out_truth = "ground_truth.jsonl";
  add_common_flags(simulate, flags);
  add_scenario_flags(simulate, flags);
  simulate->add_option("--out-detections", out_detections, "detections JSONL output");
  simulate->add_option("--out-truth", out_truth, "ground-truth JSONL output");

  auto* track = app.add_subcommand("track", "run the tracker over a detections file");
  std::string in_detections;
  std::string out_tracks = "tracks.jsonl";
  add_common_flags(track, flags);
  add_tracker_flags(track, flags);
  track->add_option("--detections", in_detections, "detections JSONL input")->required();
  track->add_option("--out", out_tracks, "tracks JSONL output");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "score tracks against ground truth");
  std::string in_tracks, in_truth;
  std::string out_report = "report.json";
  add_common_flags(evaluate_cmd, flags);
  evaluate_cmd->add_option("--tracks", in_tracks, "tracks JSONL input")->required();
  evaluate_cmd->add_option("--truth", in_truth, "ground-truth JSONL input")->required();
  evaluate_cmd->add_option("--out", out_report, "evaluation report output");
  evaluate_cmd->add_option("--iou-thresh", flags.iou_thresh, "match threshold in (0,1)");

  auto* classify_cmd = app.add_subcommand("classify", "label each track's gesture");
  std::string classify_tracks;
  std::string out_gestures = "gestures.jsonl";
  add_common_flags(classify_cmd, flags);
  classify_cmd->add_option("--tracks", classify_tracks, "tracks JSONL input")->required();
  classify_cmd->add_option("--out", out_gestures, "gesture report JSONL output");

  auto* render = app.add_subcommand("render", "draw trajectories as a static SVG");
  std::string render_tracks, render_truth;
  std::string out_svg = "trajectories.svg";
  add_common_flags(render, flags);
  render->add_option("--tracks", render_tracks, "tracks JSONL input");
  render->add_option("--truth", render_truth, "ground-truth JSONL input");
  render->add_option("--frame-width", flags.frame_width, "viewBox width, px");
  render->add_option("--frame-height", flags.frame_height, "viewBox height, px");
  render->add_option("--out", out_svg, "SVG output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(flags, out_detections, out_truth);
    if (track->parsed()) return cmd_track(flags, in_detections, out_tracks);
    if (evaluate_cmd->parsed()) return cmd_evaluate(flags, in_tracks, in_truth, out_report);
    if (classify_cmd->parsed()) return cmd_classify(flags, classify_tracks, out_gestures);
    if (render->parsed()) {
      if (render_tracks.empty() == render_truth.empty()) {
        std::cerr << "render needs exactly one of --tracks or --truth\n";
        return kExitUsage;
      }
      return cmd_render(flags, render_tracks, render_truth, out_svg);
    }
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const InconsistentInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
