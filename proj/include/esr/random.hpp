#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace esr {

/// Seeded generator with hierarchical sub-stream derivation. A child stream
/// depends only on (parent key, index), so per-trial streams are identical
/// whatever order or thread the trials run on. The engine is std::mt19937_64
/// (fully specified by the standard); Gaussian variates come from
/// Boost.Random's ziggurat, so draws do not depend on the standard library.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed);

  RandomStream substream(std::uint64_t index) const;

  std::uint64_t key() const noexcept { return key_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Circularly-symmetric complex Gaussian CN(0, 1): E|z|^2 = 1.
  std::complex<double> complex_normal();

  /// Exponential with the given mean.
  double exponential(double mean);

private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

} // namespace esr
