#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fsparse/bitvec.hpp"
#include "fsparse/oracle.hpp"
#include "fsparse/rng.hpp"
#include "fsparse/spectral.hpp"

namespace fsparse {

/// Distinct N-bit concepts with a probability vector. A ±1 concept is stored
/// with -1 as bit 1 and +1 as bit 0.
class ConceptClass {
 public:
  /// Throws Error(InvalidArgument) on an empty class, wrong lengths, repeated
  /// concepts, negative masses or masses not summing to 1 within 1e-12.
  /// The stored masses are renormalized.
  ConceptClass(std::size_t length, std::vector<BitVec> concepts, std::vector<double> mu);
  static ConceptClass uniform(std::size_t length, std::vector<BitVec> concepts);

  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return concepts_.size(); }
  const std::vector<BitVec>& concepts() const noexcept { return concepts_; }
  const std::vector<double>& mu() const noexcept { return mu_; }
  double max_mass() const;

  ConceptClass with_mu(std::vector<double> mu) const;
  /// Masses of {c : c_i = 0} and {c : c_i = 1}. Throws Error(IndexOutOfRange).
  std::pair<double, double> split_masses(std::size_t i) const;

 private:
  std::size_t length_;
  std::vector<BitVec> concepts_;
  std::vector<double> mu_;
};

struct AdversaryMatrix {
  Eigen::MatrixXd entries;
  /// True when built by build_adversary_matrix, enabling closed-form masked norms.
  bool from_distribution = false;
};

/// Γ = v vᵀ - diag(μ) with v_c = sqrt(μ(c)).
AdversaryMatrix build_adversary_matrix(const ConceptClass& cc);
/// Γ∘D_i, zeroing pairs that agree at coordinate i. Throws Error(IndexOutOfRange).
Eigen::MatrixXd masked_matrix(const AdversaryMatrix& g, const ConceptClass& cc, std::size_t i);
/// ‖Γ∘D_i‖; sqrt(μ0 μ1) for a constructed Γ, numeric otherwise.
double masked_norm(const AdversaryMatrix& g, const ConceptClass& cc, std::size_t i,
                   NormOptions options = {});
double operator_norm(const AdversaryMatrix& g, NormOptions options = {});

struct SpectralSummary {
  double gamma_norm = 0.0;
  double max_masked_norm = 0.0;
  std::size_t argmax = 0;  // smallest maximizing coordinate
  double ratio = 0.0;
};
/// Throws Error(DegenerateClass) if |C| < 2 or every masked norm is zero.
SpectralSummary spectral_summary(const ConceptClass& cc, NormOptions options = {});
double spectral_ratio(const ConceptClass& cc, NormOptions options = {});

struct SplitCertificate {
  std::size_t index = 0;
  double split = 0.0;
  double threshold = 0.0;
  double ratio = 0.0;
  double gamma_norm = 0.0;
  double max_masked_norm = 0.0;
};
/// Throws Error(TooConcentrated) when max μ(c) > 5/6.
SplitCertificate certify_split(const ConceptClass& cc, NormOptions options = {});

double binary_entropy(double p);
double shannon_entropy(std::span<const double> p);

struct TranscriptStep {
  std::size_t index = 0;
  bool bit = false;
  std::size_t class_size = 0;  // consistent concepts after the answer
  double max_mass = 0.0;
  double energy = 0.0;          // posterior entropy after the answer
  double query_entropy = 0.0;   // H(C_i) before the query
  bool halted = false;          // max_mass reached stop_mass
};

struct Transcript {
  double initial_energy = 0.0;
  std::vector<TranscriptStep> steps;
  std::optional<std::size_t> final_concept;  // index into the class
  std::size_t queries() const noexcept { return steps.size(); }
};

inline constexpr double kDefaultStopMass = 5.0 / 6.0;

/// Queries the smallest coordinate maximizing H(C_i) under the posterior until
/// some concept has posterior mass >= stop_mass. Throws Error(EmptyPosterior)
/// when no concept is consistent with the answers; a split coordinate always
/// leaves survivors, so this guards against inconsistent oracles only.
Transcript entropy_greedy_learn(const ConceptClass& cc, MembershipOracle& oracle,
                                double stop_mass = kDefaultStopMass);
/// One run per concept as target, in class order.
std::vector<Transcript> learn_all_targets(const ConceptClass& cc, double stop_mass = kDefaultStopMass,
                                          unsigned jobs = 1);

/// E_0 = H(μ); E_t averages each target's branch entropy after min(t, T_c) steps.
std::vector<double> energy_trace(const ConceptClass& cc, std::span<const Transcript> transcripts);
/// Drop predicted by the chain rule: the μ-average of the entropy of the bit
/// queried at step t over branches still running.
/// P_t: mu-mass of targets whose run halted within t queries, t = 0..horizon.
std::vector<double> halted_mass_trace(const ConceptClass& cc, std::span<const Transcript> transcripts);
std::vector<double> expected_energy_drops(const ConceptClass& cc, std::span<const Transcript> transcripts);

ConceptClass point_class(std::size_t n_points);
/// Parity truth tables, N = 2^n, positions x in index order.
ConceptClass linear_class(std::size_t n);
/// Indicators of the dimension n - log2 k subspaces of F_2^n.
ConceptClass subspace_class(std::size_t n, std::size_t k);

/// Random class of `size` distinct strings of length `length` with positive
/// masses whose largest is at most max_mass.
ConceptClass random_concept_class(Rng& rng, std::size_t size, std::size_t length,
                                  double max_mass = kDefaultStopMass);

}  // namespace fsparse
