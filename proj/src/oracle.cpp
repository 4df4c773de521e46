#include "fsparse/oracle.hpp"

#include <algorithm>
#include <string>

#include "fsparse/error.hpp"

namespace fsparse {

namespace {

constexpr std::uint64_t kQuantumStream = 1;
constexpr std::uint64_t kClassicalStream = 2;

}  // namespace

ExampleOracle::ExampleOracle(SparseSpectrum target, std::uint64_t seed)
    : target_(std::move(target)),
      quantum_rng_(derive_seed(seed, kQuantumStream)),
      classical_rng_(derive_seed(seed, kClassicalStream)) {
  if (!is_boolean(target_)) throw Error(Errc::NotBoolean, "oracle target is not a Boolean function");
  log_.seed = seed;

  int max_den = 0;
  for (const auto& [S, c] : target_.coeffs()) max_den = std::max(max_den, 2 * c.log2_den());
  if (max_den > 63) throw Error(Errc::Overflow, "coefficients too fine for exact sampling");
  cdf_bits_ = static_cast<unsigned>(max_den);
  std::uint64_t running = 0;
  for (const auto& [S, c] : target_.coeffs()) {
    const Dyadic sq = c * c;
    running += static_cast<std::uint64_t>(sq.num()) << (cdf_bits_ - sq.log2_den());
    cdf_support_.push_back(S);
    cdf_.push_back(running);
  }
  // Parseval for a ±1 function: the squares sum to exactly 1.
  if (running != (std::uint64_t{1} << cdf_bits_)) {
    throw Error(Errc::NotBoolean, "squared coefficients do not sum to 1");
  }
}

std::optional<BitVec> ExampleOracle::fourier_sample() {
  ++log_.quantum_examples_used;
  if (!quantum_rng_.bit()) return std::nullopt;
  ++log_.fourier_samples_accepted;
  const std::uint64_t u = quantum_rng_.bits(cdf_bits_);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return cdf_support_[static_cast<std::size_t>(it - cdf_.begin())];
}

LabeledExample ExampleOracle::uniform_example() {
  ++log_.classical_examples_used;
  BitVec x(target_.vars());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (classical_rng_.bit()) x.set(i);
  }
  const int label = evaluate(target_, x).sign();
  return {std::move(x), label};
}

MembershipOracle::MembershipOracle(BitVec concept_bits, std::uint64_t seed) : concept_(std::move(concept_bits)) {
  log_.seed = seed;
}

bool MembershipOracle::query(std::size_t i) {
  if (i >= concept_.size()) {
    throw Error(Errc::IndexOutOfRange, "query index " + std::to_string(i) + " outside [0, " +
                                           std::to_string(concept_.size()) + ")");
  }
  ++log_.membership_queries_used;
  return concept_.get(i);
}

bool membership_query(MembershipOracle& oracle, std::size_t i) { return oracle.query(i); }

}  // namespace fsparse
