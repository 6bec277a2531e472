#pragma once

#include <Eigen/Core>

namespace motkit {

// Axis-aligned box in center format (center x, center y, width, height),
// in pixels. Center format is canonical everywhere; corner extents exist
// only transiently inside iou().
struct BoundingBox {
  BoundingBox(double x, double y, double w, double h);

  double x;
  double y;
  double w;
  double h;

  double left() const { return x - 0.5 * w; }
  double right() const { return x + 0.5 * w; }
  double top() const { return y - 0.5 * h; }
  double bottom() const { return y + 0.5 * h; }
  double area() const { return w * h; }
  double diagonal() const;

  bool operator==(const BoundingBox&) const = default;
};

// The box viewed as the observation vector (x, y, w, h) fed to the filter.
class Measurement {
 public:
  explicit Measurement(const Eigen::Vector4d& z);
  const Eigen::Vector4d& z() const { return z_; }

 private:
  Eigen::Vector4d z_;
};

/// Intersection-over-union on corner extents; in [0, 1].
double iou(const BoundingBox& a, const BoundingBox& b);

Measurement to_measurement(const BoundingBox& b);
BoundingBox to_bounding_box(const Measurement& m);

}  // namespace motkit
