#include "fsparse/sparse_learner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fsparse/error.hpp"

namespace fsparse {

std::string_view phase2_mode_name(Phase2Mode mode) noexcept {
  return mode == Phase2Mode::EstimateRound ? "estimate" : "coupon";
}

Phase2Mode parse_phase2_mode(std::string_view name) {
  if (name == "estimate" || name == "estimate_round") return Phase2Mode::EstimateRound;
  if (name == "coupon" || name == "coupon_collector") return Phase2Mode::CouponCollector;
  throw Error(Errc::InvalidArgument, "unknown phase-2 mode '" + std::string(name) + "'");
}

void LearnerConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(Errc::InvalidArgument, "delta must lie in (0, 1)");
  if (!(stall_factor > 0.0)) throw Error(Errc::InvalidArgument, "stall_factor must be positive");
}

std::uint64_t stall_limit(std::size_t k, std::size_t n, double delta, double stall_factor) {
  const double kk = static_cast<double>(normalized_k(k));
  const double klogk = kk * std::log2(kk);
  const double dim_cap = std::ceil(2.0 * std::sqrt(kk) * std::log2(kk));
  const double r_max = std::max(1.0, std::min(static_cast<double>(n), dim_cap));
  const double delta1 = delta / 2.0;
  return static_cast<std::uint64_t>(std::ceil(stall_factor * klogk * std::log(r_max / delta1)));
}

SpanResult learn_span(ExampleOracle& oracle, const LearnerConfig& cfg, const SpanObserver& observer) {
  cfg.validate();
  const std::uint64_t limit = stall_limit(cfg.k, oracle.vars(), cfg.delta, cfg.stall_factor);
  const std::uint64_t start_quantum = oracle.log().quantum_examples_used;
  const std::uint64_t start_accepted = oracle.log().fourier_samples_accepted;

  EchelonBasis basis(oracle.vars());
  std::uint64_t stall = 0;
  while (stall < limit) {
    if (cfg.r_bound && basis.dim() >= *cfg.r_bound) break;
    if (oracle.log().quantum_examples_used - start_quantum >= cfg.max_quantum_examples) {
      throw Error(Errc::BudgetExhausted, "phase 1 used " + std::to_string(cfg.max_quantum_examples) +
                                             " quantum examples");
    }
    const auto sample = oracle.fourier_sample();
    if (!sample) continue;
    const bool grew = basis.insert(*sample);
    stall = grew ? 0 : stall + 1;
    if (observer) observer(SpanProgress{*sample, grew, basis});
  }

  SpanResult out;
  out.span = SpanBasis{basis.inserted()};
  out.quantum_examples = oracle.log().quantum_examples_used - start_quantum;
  out.accepted_samples = oracle.log().fourier_samples_accepted - start_accepted;
  return out;
}

LabeledExample reduce_example(const BitVec& x, int y, const F2Matrix& b, std::size_t r) {
  return {b.apply_transposed(x).head(r), y};
}

std::uint64_t estimate_sample_size(std::size_t r, std::size_t k, double delta) {
  const double kk = static_cast<double>(normalized_k(k));
  const double rr = static_cast<double>(r);
  const double log_terms = rr * std::log(2.0) + std::log(2.0) + 2.0 * rr * std::log(2.0) - std::log(delta);
  return static_cast<std::uint64_t>(std::ceil(8.0 * kk * kk * log_terms));
}

namespace {

void require_reduced_size(std::size_t r) {
  if (r > kMaxTableVars) throw Error(Errc::TooLarge, "reduced dimension " + std::to_string(r));
}

}  // namespace

SparseSpectrum phase2_estimate(ExampleOracle& oracle, const F2Matrix& b, std::size_t r, std::size_t k,
                               double delta) {
  require_reduced_size(r);
  const std::uint64_t m = estimate_sample_size(r, k, delta);
  std::vector<std::int64_t> sums(std::size_t{1} << r, 0);
  for (std::uint64_t t = 0; t < m; ++t) {
    const auto ex = oracle.uniform_example();
    const auto reduced = reduce_example(ex.x, ex.label, b, r);
    sums[reduced.x.to_index()] += reduced.label;
  }
  // sums -> sum_z sums[z] chi_Q(z) for every Q.
  for (std::size_t h = 1; h < sums.size(); h <<= 1) {
    for (std::size_t i = 0; i < sums.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t u = sums[j], v = sums[j + h];
        sums[j] = u + v;
        sums[j + h] = u - v;
      }
    }
  }
  const int exponent = granularity_exponent(k);
  SparseSpectrum out(r);
  for (std::size_t q = 0; q < sums.size(); ++q) {
    const double estimate = static_cast<double>(sums[q]) / static_cast<double>(m);
    out.accumulate(BitVec::from_index(q, r), Dyadic::round_to_grid(estimate, exponent));
  }
  if (!is_boolean(out)) throw Error(Errc::NotBooleanResult, "rounded estimates are not a Boolean spectrum");
  return out;
}

SparseSpectrum phase2_coupon(ExampleOracle& oracle, const F2Matrix& b, std::size_t r,
                             std::uint64_t max_examples) {
  require_reduced_size(r);
  std::vector<std::int8_t> table(std::size_t{1} << r, 0);
  std::size_t seen = 0;
  std::uint64_t drawn = 0;
  while (seen < table.size()) {
    if (drawn >= max_examples) {
      throw Error(Errc::BudgetExhausted, "coupon collection saw " + std::to_string(seen) + " of " +
                                             std::to_string(table.size()) + " inputs");
    }
    const auto ex = oracle.uniform_example();
    ++drawn;
    const auto reduced = reduce_example(ex.x, ex.label, b, r);
    auto& cell = table[reduced.x.to_index()];
    if (cell == 0) {
      cell = static_cast<std::int8_t>(reduced.label);
      ++seen;
    } else if (cell != reduced.label) {
      throw Error(Errc::InconsistentExamples, "reduced input " + reduced.x.to_string() +
                                                  " seen with both labels");
    }
  }
  return wht(TruthTable(r, std::move(table)));
}

LearnerResult learn(ExampleOracle& oracle, const LearnerConfig& cfg, const SpanObserver& observer) {
  LearnerConfig run = cfg;
  run.k = normalized_k(cfg.k);
  run.validate();

  const SpanResult phase1 = learn_span(oracle, run, observer);
  const std::size_t r = phase1.span.dim();
  const std::size_t n = oracle.vars();

  LearnerResult result;
  result.span = phase1.span;
  result.basis = complete_basis(phase1.span.vectors, n);
  result.phase1_quantum_examples = phase1.quantum_examples;

  const std::uint64_t before = oracle.log().classical_examples_used;
  SparseSpectrum reduced = run.phase2_mode == Phase2Mode::EstimateRound
                               ? phase2_estimate(oracle, result.basis, r, run.k, run.delta / 2.0)
                               : phase2_coupon(oracle, result.basis, r, run.max_classical_examples);
  result.phase2_classical_examples = oracle.log().classical_examples_used - before;

  result.spectrum = lift(reduced, result.basis, n);
  result.log = oracle.log();
  result.success_selfreport = result.spectrum.sparsity() <= run.k && is_boolean(result.spectrum) &&
                              fourier_span(result.spectrum).dim() == r;
  return result;
}

}  // namespace fsparse
