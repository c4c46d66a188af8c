#include "esr/random.hpp"

#include <cmath>
#include <numbers>

#include <boost/random/normal_distribution.hpp>

namespace esr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Scrambled so that neighbouring keys start from unrelated engine states.
std::mt19937_64 seeded_engine(std::uint64_t key) { return std::mt19937_64(splitmix64(key)); }

} // namespace

RandomStream::RandomStream(std::uint64_t seed) : key_(seed), engine_(seeded_engine(seed)) {}

RandomStream RandomStream::substream(std::uint64_t index) const {
  return RandomStream(splitmix64(key_ ^ splitmix64(index + 1)));
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::complex<double> RandomStream::complex_normal() {
  // Ziggurat sampler from Boost.Random, per-component variance 1/2.
  boost::random::normal_distribution<double> component(0.0, std::numbers::sqrt2 / 2.0);
  const double re = component(engine_);
  const double im = component(engine_);
  return {re, im};
}

double RandomStream::exponential(double mean) {
  return -mean * std::log(1.0 - uniform());
}

} // namespace esr
