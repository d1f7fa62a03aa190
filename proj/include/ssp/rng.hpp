#pragma once

#include <cstdint>
#include <random>

namespace ssp {

using Rng = std::mt19937_64;

/// Independent named streams derived from one seed. Stream ids used by the
/// library are listed in RngStream.
enum class RngStream : std::uint64_t { kEnvironment = 0, kTrajectory = 1, kAgent = 2 };

inline Rng make_rng(std::uint64_t seed, RngStream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0x55f1u};
  return Rng(seq);
}

/// Uniform draw in [0, 1) using the top 53 bits of one engine output.
/// Written out by hand so sampling is identical across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection; n > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace ssp
