#include "motkit/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace motkit {

CostMatrix::CostMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), costs_(static_cast<std::size_t>(rows) * cols, fill) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative cost matrix dimension");
}

namespace {

// Shortest-augmenting-path solver (Jonker-Volgenant family) for a square
// matrix with finite entries, O(n³). Row/column potentials u, v; p[j] is
// the row currently matched to column j, with column 0 as the staging slot.
std::vector<int> solve_square(const std::vector<double>& cost, int n) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> col_of_row(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] != 0) col_of_row[p[j] - 1] = j - 1;
  }
  return col_of_row;
}

}  // namespace

Assignment solve_assignment(const CostMatrix& costs) {
  const int n = costs.rows();
  const int m = costs.cols();

  Assignment out;
  if (n == 0 || m == 0) {
    for (int i = 0; i < n; ++i) out.unmatched_tracks.push_back(i);
    for (int j = 0; j < m; ++j) out.unmatched_detections.push_back(j);
    return out;
  }

  double max_finite = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double c = costs.at(i, j);
      if (c == kInfeasible) continue;
      if (!(std::isfinite(c) && c >= 0.0)) {
        throw std::invalid_argument("cost matrix entries must be nonnegative finite");
      }
      max_finite = std::max(max_finite, c);
    }
  }

  // Per-index dummy cost; any value above every feasible entry yields the
  // same matching, and the gate+1 floor keeps stage-1 semantics literal.
  const double dummy = std::max(kDefaultGate + 1.0, max_finite + 1.0);
  const int size = n + m;
  const double big = (dummy + 1.0) * (size + 1);
  if (!std::isfinite(big)) throw std::invalid_argument("cost matrix entries too large");

  std::vector<double> square(static_cast<std::size_t>(size) * size, big);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (costs.feasible(i, j)) square[static_cast<std::size_t>(i) * size + j] = costs.at(i, j);
    }
    square[static_cast<std::size_t>(i) * size + (m + i)] = dummy;
  }
  for (int j = 0; j < m; ++j) {
    square[static_cast<std::size_t>(n + j) * size + j] = dummy;
  }
  for (int i = n; i < size; ++i) {
    for (int j = m; j < size; ++j) square[static_cast<std::size_t>(i) * size + j] = 0.0;
  }

  const std::vector<int> col_of_row = solve_square(square, size);

  for (int i = 0; i < n; ++i) {
    const int j = col_of_row[i];
    if (j < m) {
      if (!costs.feasible(i, j)) throw std::logic_error("assignment hit an infeasible entry");
      out.pairs.emplace_back(i, j);
    } else {
      out.unmatched_tracks.push_back(i);
    }
  }
  std::vector<char> det_matched(m, 0);
  for (const auto& [i, j] : out.pairs) det_matched[j] = 1;
  for (int j = 0; j < m; ++j) {
    if (!det_matched[j]) out.unmatched_detections.push_back(j);
  }
  return out;
}

CostMatrix build_cost_matrix(std::span<const PredictedTrack> tracks,
                             std::span<const Detection> detections,
                             const CostWeights& weights) {
  if (!(weights.motion_weight >= 0.0 && weights.motion_weight <= 1.0)) {
    throw std::invalid_argument("motion weight must lie in [0, 1]");
  }
  if (!(weights.gate > 0.0)) throw std::invalid_argument("gate must be positive");

  CostMatrix costs(static_cast<int>(tracks.size()), static_cast<int>(detections.size()));
  for (int i = 0; i < costs.rows(); ++i) {
    const auto& track = tracks[i];
    const auto box = kalman::state_box(track.state);
    if (!box) continue;  // blown-up prior: the whole row stays infeasible

    const auto model = kalman::MotionModel::constant_velocity(std::max(box->h, 1.0));
    kalman::Innovation inn;
    try {
      inn = kalman::project(track.state, model);
    } catch (const kalman::SingularInnovation&) {
      continue;
    }

    const bool track_has_appearance = track.gallery != nullptr && !track.gallery->empty();
    for (int j = 0; j < costs.cols(); ++j) {
      const Detection& det = detections[j];
      const double d_motion = kalman::gating_distance(inn, to_measurement(det.box));
      if (d_motion > weights.gate) continue;

      double cost = d_motion;
      if (weights.motion_weight < 1.0 && track_has_appearance && det.embedding.has_value()) {
        const double d_app = gallery_distance(*track.gallery, *det.embedding);
        cost = weights.motion_weight * d_motion + (1.0 - weights.motion_weight) * d_app;
      }
      costs.at(i, j) = cost;
    }
  }
  return costs;
}

CostMatrix stage2_iou_cost(std::span<const BoundingBox> tracks,
                           std::span<const BoundingBox> detections, double min_iou) {
  CostMatrix costs(static_cast<int>(tracks.size()), static_cast<int>(detections.size()));
  for (int i = 0; i < costs.rows(); ++i) {
    for (int j = 0; j < costs.cols(); ++j) {
      const double overlap = iou(tracks[i], detections[j]);
      if (overlap < min_iou) continue;
      costs.at(i, j) = 1.0 - overlap;
    }
  }
  return costs;
}

}  // namespace motkit
