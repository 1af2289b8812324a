#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gsmooth/linalg.hpp"

namespace gsmooth {

/// Deterministic, splittable random stream.
///
/// A stream is identified by a root seed and a path of integer labels. The
/// generator state is a pure function of (seed, path), so two streams built
/// the same way yield the same sequence, and children obtained through
/// derive() never share state with their parent or siblings. Drawing mutates
/// only the stream object itself; pass copies or derived children to other
/// threads.
///
/// The bit generator is xoshiro256** keyed by a SplitMix64 hash of the path.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0);

  /// Child stream for `label`. Depends only on this stream's identity, not
  /// on how much of it has been consumed.
  RngStream derive(std::uint64_t label) const;

  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::uint64_t>& path() const noexcept { return path_; }

  // UniformRandomBitGenerator
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double normal();

 private:
  RngStream(std::uint64_t seed, std::vector<std::uint64_t> path, std::uint64_t key);
  void reseed(std::uint64_t key);

  std::uint64_t seed_;
  std::vector<std::uint64_t> path_;
  std::uint64_t key_;
  std::uint64_t state_[4];
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Convenience for a path of several labels.
RngStream derive(const RngStream& parent, std::initializer_list<std::uint64_t> labels);

std::vector<double> standard_normal(RngStream& stream, std::size_t n);

/// n draws of (b - p) / m with b ~ Bernoulli(p). Throws ParameterError unless
/// 0 < p < 1 and m > 0.
std::vector<double> bernoulli_standardized(RngStream& stream, std::size_t n, double p, double m);

/// Haar-distributed rotation in SO(d): QR of a Gaussian matrix with the
/// R-diagonal sign fix, then one column flipped if the determinant is -1.
Matrix haar_rotation(RngStream& stream, std::size_t d);

}  // namespace gsmooth
