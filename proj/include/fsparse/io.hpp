#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fsparse/boolfourier.hpp"
#include "fsparse/chang.hpp"
#include "fsparse/oracle.hpp"
#include "fsparse/query_learner.hpp"

namespace fsparse {

using Json = nlohmann::ordered_json;

/// Floats with 12 significant digits.
std::string format_real(double x);
/// Parses "p/q", "p" or a decimal literal. Throws Error(ParseError).
double parse_rational(std::string_view text);

/// {n, k?, coeffs: [{S, num, log2_den}]} with S written coordinate 0 first.
Json spectrum_to_json(const SparseSpectrum& s);
/// Throws Error(ParseError) on malformed input.
SparseSpectrum spectrum_from_json(const Json& j);

Json sample_log_to_json(const SampleLog& log);

Json chang_report_to_json(const ChangReport& report);
/// Header plus one row per violation: table_id,check,detail,value,bound.
void write_violations_csv(std::ostream& out, const ChangReport& report);

/// {N, concepts: [bitstrings], mu: [rationals or floats]}; mu defaults to uniform.
ConceptClass concept_class_from_json(const Json& j);
Json concept_class_to_json(const ConceptClass& cc);

/// Header "target,t,i_t,bit,class_size,max_mass,E_t", one row per step.
/// Row t = 0 holds the starting state with empty i_t and bit. Targets default
/// to 0, 1, ... in transcript order.
void write_transcripts_csv(std::ostream& out, const ConceptClass& cc, std::span<const Transcript> transcripts,
                           std::span<const std::size_t> targets = {});

struct RunRecord {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t r_true = 0;
  std::size_t r_found = 0;
  std::uint64_t phase1_quantum_examples = 0;
  std::uint64_t phase2_classical_examples = 0;
  bool exact_match = false;
  std::string mode;
  std::string error;  // empty unless the run threw
};
Json run_record_to_json(const RunRecord& record);

}  // namespace fsparse
