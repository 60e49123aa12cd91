#pragma once

#include <cstdint>
#include <random>

namespace diagcl {

/// Deterministic 64-bit generator (std::mt19937_64, whose output sequence is
/// fixed by the standard). Bounded draws use plain modulo reduction so that
/// results do not depend on any library's distribution implementation.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish draw from [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  /// Draw from the closed range [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (engine_() >> 63) != 0; }

private:
  std::mt19937_64 engine_;
};

/// Largest block index and element index the samplers draw.
struct SampleBounds {
  std::uint64_t max_block = 50;
  std::uint64_t max_element = 50;

  friend bool operator==(const SampleBounds&, const SampleBounds&) = default;
};

} // namespace diagcl
