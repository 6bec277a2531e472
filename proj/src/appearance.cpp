#include "motkit/appearance.hpp"

#include <algorithm>
#include <stdexcept>

namespace motkit {

Embedding::Embedding(Eigen::VectorXd v) : v_(std::move(v)) {
  if (v_.size() == 0 || !v_.allFinite()) {
    throw std::invalid_argument("embedding must be a non-empty finite vector");
  }
  const double norm = v_.norm();
  if (!(norm > 1e-12)) {
    throw std::invalid_argument("embedding norm too small to normalize");
  }
  v_ /= norm;
}

double cosine_distance(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("embedding dimensions differ");
  }
  return 1.0 - a.values().dot(b.values());
}

Gallery::Gallery(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("gallery capacity must be positive");
}

void Gallery::add(const Embedding& e) {
  if (members_.size() == capacity_) members_.pop_front();
  members_.push_back(e);
}

double gallery_distance(const Gallery& g, const Embedding& e) {
  if (g.empty()) throw std::logic_error("gallery_distance on an empty gallery");
  double best = 2.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    best = std::min(best, cosine_distance(g.member(i), e));
  }
  return best;
}

Embedding synth_embedding(std::uint64_t identity, double noise_std, Rng& rng, int dim) {
  if (noise_std < 0.0) throw std::invalid_argument("noise_std must be nonnegative");
  if (dim <= 0) throw std::invalid_argument("embedding dimension must be positive");

  // Base direction depends only on the identity, never on rng state.
  Rng base_rng(hash_mix(identity ^ 0x5e6b1d2ca9f30c4dULL));
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = base_rng.gaussian();
  v.normalize();

  if (noise_std > 0.0) {
    for (int i = 0; i < dim; ++i) v(i) += noise_std * rng.gaussian();
  }
  return Embedding(std::move(v));
}

Embedding histogram_embedding(std::span<const std::uint8_t> gray_pixels) {
  if (gray_pixels.empty()) throw std::invalid_argument("empty patch");
  Eigen::VectorXd bins = Eigen::VectorXd::Zero(16);
  for (std::uint8_t p : gray_pixels) bins(p >> 4) += 1.0;
  return Embedding(std::move(bins));
}

}  // namespace motkit
