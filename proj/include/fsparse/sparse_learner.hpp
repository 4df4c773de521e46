#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "fsparse/boolfourier.hpp"
#include "fsparse/f2linalg.hpp"
#include "fsparse/oracle.hpp"

namespace fsparse {

enum class Phase2Mode { EstimateRound, CouponCollector };

std::string_view phase2_mode_name(Phase2Mode mode) noexcept;
Phase2Mode parse_phase2_mode(std::string_view name);

struct LearnerConfig {
  std::size_t k = 2;
  std::optional<std::size_t> r_bound;
  double delta = 1.0 / 3.0;
  Phase2Mode phase2_mode = Phase2Mode::EstimateRound;
  double stall_factor = 3.0;
  /// Hard caps; exceeding either throws Error(BudgetExhausted).
  std::uint64_t max_quantum_examples = 50'000'000;
  std::uint64_t max_classical_examples = 200'000'000;

  void validate() const;
};

/// Consecutive in-span accepted samples after which Phase 1 stops:
/// ceil(stall_factor * k log2 k * ln(r_max / (delta/2))), with
/// r_max = min(n, ceil(2 sqrt(k) log2 k)) and k normalized to max(2, k).
std::uint64_t stall_limit(std::size_t k, std::size_t n, double delta, double stall_factor);

/// Phase-1 instrumentation hook, called after every accepted Fourier sample.
struct SpanProgress {
  const BitVec& sample;
  bool grew;
  const EchelonBasis& basis;
};
using SpanObserver = std::function<void(const SpanProgress&)>;

struct SpanResult {
  SpanBasis span;
  std::uint64_t quantum_examples = 0;
  std::uint64_t accepted_samples = 0;
};

SpanResult learn_span(ExampleOracle& oracle, const LearnerConfig& cfg, const SpanObserver& observer = {});

/// z = first r coordinates of Bᵀx; the label is unchanged.
LabeledExample reduce_example(const BitVec& x, int y, const F2Matrix& b, std::size_t r);

/// Number of reduced examples drawn by phase2_estimate:
/// ceil(8 k^2 (r ln 2 + ln(2 * 4^r / delta))).
std::uint64_t estimate_sample_size(std::size_t r, std::size_t k, double delta);

/// Empirical correlations with every character on r variables, each rounded
/// to the granularity grid for k. Throws Error(NotBooleanResult) when the
/// rounded spectrum is not ±1-valued.
SparseSpectrum phase2_estimate(ExampleOracle& oracle, const F2Matrix& b, std::size_t r, std::size_t k,
                               double delta);

/// Draws reduced examples until every z in {0,1}^r has been seen, then
/// transforms the completed table.
SparseSpectrum phase2_coupon(ExampleOracle& oracle, const F2Matrix& b, std::size_t r,
                             std::uint64_t max_examples = 200'000'000);

struct LearnerResult {
  SparseSpectrum spectrum;
  SpanBasis span;
  F2Matrix basis;
  SampleLog log;
  std::uint64_t phase1_quantum_examples = 0;
  std::uint64_t phase2_classical_examples = 0;
  bool success_selfreport = false;
};

LearnerResult learn(ExampleOracle& oracle, const LearnerConfig& cfg, const SpanObserver& observer = {});

}  // namespace fsparse
