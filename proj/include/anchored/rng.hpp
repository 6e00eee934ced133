#pragma once

#include <cstdint>

namespace anchored {

// Counter-based generator built on the SplitMix64 finalizer. The k-th value
// of stream t under seed s is
//
//   mix64( mix64(s ^ mix64(GOLDEN * (t + 1))) + GOLDEN * (k + 1) )
//
// with GOLDEN = 0x9E3779B97F4A7C15. Uniform doubles take the top 53 bits.
// The scheme is part of the external contract: any implementation of these
// three lines reproduces every trajectory byte for byte.
struct CounterRng {
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  std::uint64_t key = 0;
  std::uint64_t counter = 0;

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static CounterRng stream(std::uint64_t seed, std::uint64_t stream_index) {
    return CounterRng{mix64(seed ^ mix64(kGolden * (stream_index + 1))), 0};
  }

  std::uint64_t next_u64() { return mix64(key + kGolden * (++counter)); }

  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }
};

}  // namespace anchored
