#include "motkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace motkit {

namespace {

void check_box(double x, double y, double w, double h) {
  if (!(std::isfinite(x) && std::isfinite(y) && std::isfinite(w) && std::isfinite(h))) {
    throw std::invalid_argument("bounding box fields must be finite");
  }
  if (!(w > 0.0 && h > 0.0)) {
    throw std::invalid_argument("bounding box width and height must be positive");
  }
}

}  // namespace

BoundingBox::BoundingBox(double x, double y, double w, double h) : x(x), y(y), w(w), h(h) {
  check_box(x, y, w, h);
}

double BoundingBox::diagonal() const { return std::hypot(w, h); }

Measurement::Measurement(const Eigen::Vector4d& z) : z_(z) {
  check_box(z(0), z(1), z(2), z(3));
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double inter_w = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
  const double inter_h = std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top());
  if (inter_w <= 0.0 || inter_h <= 0.0) return 0.0;
  const double inter = inter_w * inter_h;
  // Areas from the same corner extents, so iou(a, a) is exactly 1.
  const double area_a = (a.right() - a.left()) * (a.bottom() - a.top());
  const double area_b = (b.right() - b.left()) * (b.bottom() - b.top());
  return std::clamp(inter / (area_a + area_b - inter), 0.0, 1.0);
}

Measurement to_measurement(const BoundingBox& b) {
  return Measurement(Eigen::Vector4d(b.x, b.y, b.w, b.h));
}

BoundingBox to_bounding_box(const Measurement& m) {
  const auto& z = m.z();
  return BoundingBox(z(0), z(1), z(2), z(3));
}

}  // namespace motkit
