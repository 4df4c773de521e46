#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fsparse/bitvec.hpp"
#include "fsparse/boolfourier.hpp"
#include "fsparse/rng.hpp"

namespace fsparse {

struct SampleLog {
  std::uint64_t quantum_examples_used = 0;
  std::uint64_t fourier_samples_accepted = 0;
  std::uint64_t classical_examples_used = 0;
  std::uint64_t membership_queries_used = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SampleLog&, const SampleLog&) = default;
};

struct LabeledExample {
  BitVec x;
  int label = 1;
};

/// Uniform classical and quantum example access to a Boolean target.
///
/// The quantum stream and the classical stream are independent children of
/// the oracle seed, so Phase 1 and Phase 2 of a learner never share draws.
class ExampleOracle {
 public:
  /// Throws Error(NotBoolean) if `target` is not ±1-valued.
  ExampleOracle(SparseSpectrum target, std::uint64_t seed);

  std::size_t vars() const noexcept { return target_.vars(); }
  const SampleLog& log() const noexcept { return log_; }

  /// Consumes one quantum example. With probability 1/2 returns S drawn from
  /// {f̂(S)^2}; otherwise rejects.
  std::optional<BitVec> fourier_sample();
  LabeledExample uniform_example();

  /// Read-only access for instrumentation; learners must not look at it.
  const SparseSpectrum& target_for_instrumentation() const noexcept { return target_; }

 private:
  SparseSpectrum target_;
  SampleLog log_;
  Rng quantum_rng_;
  Rng classical_rng_;
  // Inverse-CDF table over the support: cumulative squared numerators at a
  // common denominator 2^cdf_bits_.
  std::vector<BitVec> cdf_support_;
  std::vector<std::uint64_t> cdf_;
  unsigned cdf_bits_ = 0;
};

/// Bit access to one concept string, counting every query.
class MembershipOracle {
 public:
  MembershipOracle(BitVec concept_bits, std::uint64_t seed = 0);

  std::size_t length() const noexcept { return concept_.size(); }
  const SampleLog& log() const noexcept { return log_; }

  /// Bit i (0-based); throws Error(IndexOutOfRange).
  bool query(std::size_t i);

 private:
  BitVec concept_;
  SampleLog log_;
};

/// Free-function form of MembershipOracle::query.
bool membership_query(MembershipOracle& oracle, std::size_t i);

}  // namespace fsparse
