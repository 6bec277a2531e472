#pragma once

#include <optional>

#include "motkit/appearance.hpp"
#include "motkit/geometry.hpp"

namespace motkit {

// One detector output for one frame.
struct Detection {
  BoundingBox box;
  double confidence = 1.0;
  std::optional<Embedding> embedding;
};

}  // namespace motkit
