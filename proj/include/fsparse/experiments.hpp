#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsparse/io.hpp"
#include "fsparse/query_learner.hpp"
#include "fsparse/sparse_learner.hpp"

namespace fsparse {

struct LearnSparseConfig {
  std::size_t n = 8;
  std::size_t k = 8;
  std::size_t r_core = 3;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  double delta = 1.0 / 3.0;
  Phase2Mode mode = Phase2Mode::EstimateRound;
  double stall_factor = 3.0;
  unsigned jobs = 1;

  /// Throws Error(InvalidArgument) on trials == 0 or out-of-range values.
  void validate() const;
};

/// Trial t plants an instance and learns it from seeds derived from
/// derive_seed(seed, t); records come back in trial order.
std::vector<RunRecord> run_learn_sparse(const LearnSparseConfig& cfg);

struct LearnSparseSummary {
  std::size_t trials = 0;
  std::size_t exact_matches = 0;
  std::size_t failures = 0;  // runs that threw
  double exact_rate = 0.0;
  double phase1_mean = 0.0;
  std::uint64_t phase1_p50 = 0;
  std::uint64_t phase1_p90 = 0;
  std::uint64_t phase1_max = 0;
  double phase2_mean = 0.0;
  /// k log2 k (ln r + 1) with r = r_core.
  double phase1_reference = 0.0;
  /// 4 * phase1_reference + 2 * stall_limit.
  double phase1_allowance = 0.0;
};
LearnSparseSummary summarize_learn_sparse(const LearnSparseConfig& cfg, const std::vector<RunRecord>& records);
Json learn_sparse_summary_to_json(const LearnSparseConfig& cfg, const LearnSparseSummary& summary);
/// One row per run, then a row whose seed column reads "summary".
void write_learn_sparse_csv(std::ostream& out, const LearnSparseConfig& cfg, const std::vector<RunRecord>& records,
                            const LearnSparseSummary& summary);

struct QueryLearnReport {
  std::size_t class_size = 0;
  std::size_t length = 0;
  std::vector<std::size_t> targets;
  std::vector<Transcript> transcripts;  // aligned with targets
  std::size_t max_queries = 0;
  double mean_queries = 0.0;
  double weighted_mean_queries = 0.0;
  double correctness = 0.0;
  double weighted_correctness = 0.0;
  std::optional<double> spectral_ratio;
  std::optional<SplitCertificate> certificate;
  std::string certificate_note;
  /// (A^2 / log2 A) log2 |C|; absent when A <= 1.
  std::optional<double> reference_queries;
  std::vector<double> energy;  // only when every concept was a target
  std::vector<double> halted_mass;  // likewise
};

/// Runs the greedy learner on every concept, or on `sample` distinct targets
/// drawn with the given seed.
QueryLearnReport run_query_learn(const ConceptClass& cc, double stop_mass, unsigned jobs,
                                 std::optional<std::size_t> sample = std::nullopt, std::uint64_t seed = 0);
Json query_learn_report_to_json(const QueryLearnReport& report);

Json certificate_to_json(const SplitCertificate& cert);

}  // namespace fsparse
