#pragma once

#include <cstdint>
#include <random>

namespace fsparse {

/// SplitMix64 finalizer applied to master ^ golden * (stream + 1).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Seedable, splittable generator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded integers use rejection on the raw 64-bit output rather
/// than std::uniform_int_distribution (implementation-defined), so streams
/// are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }
  bool bit() { return (engine_() >> 63) != 0; }
  /// Uniform on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 2^bits), bits <= 64.
  std::uint64_t bits(unsigned count);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace fsparse
