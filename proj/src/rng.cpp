#include "fsparse/rng.hpp"

#include <bit>

#include "fsparse/error.hpp"

namespace fsparse {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  std::uint64_t z = master ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::InvalidArgument, "Rng::below(0)");
  if (std::has_single_bit(bound)) return bits(static_cast<unsigned>(std::countr_zero(bound)));
  // Largest multiple of bound representable in 64 bits.
  const std::uint64_t limit = std::uint64_t(0) - (std::uint64_t(0) - bound) % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (limit == 0 || x < limit) return x % bound;
  }
}

std::uint64_t Rng::bits(unsigned count) {
  if (count > 64) throw Error(Errc::InvalidArgument, "Rng::bits > 64");
  if (count == 0) return 0;
  return engine_() >> (64 - count);
}

}  // namespace fsparse
