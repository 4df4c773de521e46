#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fsparse/boolfourier.hpp"

namespace fsparse {

enum class LogBase { Two, E };

/// r <= 2 alpha k log2 k with alpha = (1 - f̂(0)) / 2, r = Fdim, k = max(2, sparsity).
struct ImprovedChangResult {
  bool holds = true;
  double slack = 0.0;  // bound - r
  double bound = 0.0;
  Dyadic alpha;
  std::size_t r = 0;
  std::size_t k = 2;
};
/// Throws Error(NotBoolean). Constant functions hold with slack 0 (+1) or
/// slack equal to the bound (-1).
ImprovedChangResult verify_improved_chang(const SparseSpectrum& s);

/// dim span{S : |f̂(S)| >= rho alpha} <= 2 log(1/alpha) / rho^2.
///
/// Signed reads the inequality on the ±1 coefficients as written. Indicator
/// applies it to g = (1 - f) / 2, the 0/1 function of density alpha, whose
/// nonzero-character coefficients are -f̂(S) / 2.
enum class ChangForm { Signed, Indicator };

struct ChangOriginalResult {
  bool holds = true;
  std::size_t lhs_dim = 0;
  double bound = 0.0;
};
/// Throws Error(ConstantFunction) when alpha is 0 or 1.
ChangOriginalResult verify_chang_original(const SparseSpectrum& s, double rho, LogBase base,
                                          ChangForm form = ChangForm::Signed);
/// Same check with the coefficient threshold on |f̂| given exactly; rho is
/// threshold / alpha (Signed) or threshold / (2 alpha) (Indicator).
ChangOriginalResult verify_chang_original_at(const SparseSpectrum& s, const Dyadic& threshold, LogBase base,
                                             ChangForm form = ChangForm::Signed);

/// sum_{S in span(subset)} f̂(S)^2 <= 1 - (r - r') / (k log2 k).
struct WeightBoundResult {
  bool holds = true;
  Dyadic in_span_weight;
  std::size_t r = 0;
  std::size_t r_prime = 0;
  double bound = 1.0;
};
/// Throws Error(SubsetNotInSupport) if a subset element has zero coefficient.
WeightBoundResult verify_weight_bound(const SparseSpectrum& s, std::span<const BitVec> subset);

/// r / (sqrt(k) log2 k), k = max(2, sparsity).
double dimension_ratio(const SparseSpectrum& s);

enum class ScanWhich : unsigned {
  Improved = 1u << 0,
  Original = 1u << 1,
  Weight = 1u << 2,
  Granularity = 1u << 3,
  All = 0xfu,
};
ScanWhich parse_scan_which(std::string_view name);
std::string scan_which_name(ScanWhich which);

struct Violation {
  std::uint64_t table_id = 0;  // bit p set <=> f = -1 at position p
  std::string check;
  std::string detail;
  double value = 0.0;
  double bound = 0.0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ChangReport {
  std::size_t n = 0;
  std::string which;
  std::uint64_t functions_checked = 0;
  std::uint64_t improved_checks = 0;
  std::uint64_t original_checks = 0;
  std::uint64_t original_indicator_checks = 0;
  std::uint64_t weight_checks = 0;
  std::uint64_t granularity_checks = 0;
  std::vector<Violation> violations;
  /// Largest r / (2 alpha k log2 k) over non-constant functions.
  double max_tightness = 0.0;
  std::uint64_t max_tightness_table = 0;
  double max_dimension_ratio = 0.0;
  /// Functions where the two log bases of the original lemma disagree.
  std::uint64_t base_disagreements = 0;
  /// Functions with 0 < alpha <= k^{-3/4}, and those among them where the
  /// improved bound is strictly below the original lemma's cap at rho alpha = 1/k.
  std::uint64_t dominance_eligible = 0;
  std::uint64_t dominance_improved_smaller = 0;

  void merge(const ChangReport& other);
  friend bool operator==(const ChangReport&, const ChangReport&) = default;
};

struct ScanOptions {
  unsigned jobs = 1;
  /// Support subsets are enumerated literally up to this sparsity; above it
  /// the distinct spans they generate are enumerated instead.
  std::size_t literal_subset_max_sparsity = 10;
};

/// Runs the selected checks on every ±1 function of n <= 4 variables.
/// Throws Error(TooLarge) for n >= 5.
ChangReport scan_all(std::size_t n, ScanWhich which, const ScanOptions& options = {});

}  // namespace fsparse
