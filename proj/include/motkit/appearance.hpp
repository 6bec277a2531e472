#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <deque>
#include <span>

#include "motkit/rng.hpp"

namespace motkit {

inline constexpr int kEmbeddingDim = 128;
inline constexpr std::size_t kGalleryCapacity = 100;

// Unit-normalized appearance descriptor.
class Embedding {
 public:
  /// Normalizes to unit L2 norm; rejects non-finite or near-zero vectors.
  explicit Embedding(Eigen::VectorXd v);

  const Eigen::VectorXd& values() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }

 private:
  Eigen::VectorXd v_;
};

/// 1 − a·b, in [0, 2] for unit inputs.
double cosine_distance(const Embedding& a, const Embedding& b);

// Ring buffer of the most recent embeddings for one track; oldest evicted
// first. Single-owner mutable state.
class Gallery {
 public:
  explicit Gallery(std::size_t capacity = kGalleryCapacity);

  void add(const Embedding& e);
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t capacity() const { return capacity_; }
  const Embedding& member(std::size_t i) const { return members_[i]; }

 private:
  std::size_t capacity_;
  std::deque<Embedding> members_;
};

/// Minimum cosine distance over gallery members; throws std::logic_error on
/// an empty gallery (tracks always seed their gallery at birth).
double gallery_distance(const Gallery& g, const Embedding& e);

/// Synthetic stand-in for a learned descriptor: a deterministic unit base
/// vector hashed from the identity, plus isotropic Gaussian noise drawn
/// from rng, re-normalized.
Embedding synth_embedding(std::uint64_t identity, double noise_std, Rng& rng,
                          int dim = kEmbeddingDim);

/// 16-bin intensity histogram of a grayscale patch, unit-normalized; lets
/// the pipeline consume real image crops without any learned component.
Embedding histogram_embedding(std::span<const std::uint8_t> gray_pixels);

}  // namespace motkit
