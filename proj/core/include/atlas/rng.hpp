#pragma once

#include <cstdint>

namespace atlas {

// Counter-based SplitMix64 stream keyed by (seed, stream index), so that walk
// i draws the same numbers regardless of scheduling.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : state_(mix(seed + 0x9E3779B97F4A7C15ULL) ^ mix(stream ^ 0xD1B54A32D192ED03ULL)) {}

  std::uint64_t next() noexcept { return mix(state_ += 0x9E3779B97F4A7C15ULL); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace atlas
