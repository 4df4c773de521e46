#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fsparse/bitvec.hpp"
#include "fsparse/dyadic.hpp"
#include "fsparse/f2linalg.hpp"

namespace fsparse {

inline constexpr std::size_t kMaxTableVars = 20;

/// Dense ±1 truth table. values()[p] is f(x) where x = BitVec::from_index(p, n),
/// i.e. x_1 is the most significant bit of the position.
class TruthTable {
 public:
  TruthTable() = default;
  /// Throws unless values has 2^n entries, all ±1, and n <= 20.
  TruthTable(std::size_t n, std::vector<std::int8_t> values);

  /// Bit p of `bits` set means f = -1 at position p (n <= 6).
  static TruthTable from_bits(std::size_t n, std::uint64_t bits);
  static TruthTable constant(std::size_t n, int value);

  std::size_t vars() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t position) const { return values_[position]; }
  int at(const BitVec& x) const { return values_[x.to_index()]; }
  std::span<const std::int8_t> values() const noexcept { return values_; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int8_t> values_{1};
};

/// Exact Fourier representation: character S -> f̂(S), zeros never stored.
class SparseSpectrum {
 public:
  using Map = std::map<BitVec, Dyadic>;

  SparseSpectrum() = default;
  explicit SparseSpectrum(std::size_t n) : n_(n) {}
  SparseSpectrum(std::size_t n, Map coeffs, std::optional<std::size_t> k_declared = std::nullopt);

  std::size_t vars() const noexcept { return n_; }
  std::size_t sparsity() const noexcept { return coeffs_.size(); }
  std::optional<std::size_t> k_declared() const noexcept { return k_declared_; }
  const Map& coeffs() const noexcept { return coeffs_; }

  Dyadic coefficient(const BitVec& s) const;
  /// Adds `value` to the coefficient of s, erasing it if the sum is zero.
  void accumulate(const BitVec& s, const Dyadic& value);
  std::vector<BitVec> support() const;

  friend bool operator==(const SparseSpectrum& a, const SparseSpectrum& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_declared() const;

  std::size_t n_ = 0;
  Map coeffs_;
  std::optional<std::size_t> k_declared_;
};

/// max(2, s): the sparsity convention used wherever log2 k appears.
inline std::size_t normalized_k(std::size_t s) noexcept { return s < 2 ? 2 : s; }
/// floor(log2 k) for k >= 1.
int floor_log2(std::size_t k) noexcept;
/// Exponent e such that the granularity grid for sparsity k is 2^e.
inline int granularity_exponent(std::size_t k) noexcept { return 1 - floor_log2(normalized_k(k)); }

SparseSpectrum wht(const TruthTable& table);
/// Dense table of a Boolean spectrum with n <= 20; throws NotBoolean otherwise.
TruthTable to_truth_table(const SparseSpectrum& s);

Dyadic evaluate(const SparseSpectrum& s, const BitVec& x);
/// Sum of squared coefficients.
Dyadic fourier_weight(const SparseSpectrum& s);

/// f_B with B's first r columns a basis of the Fourier span, viewed as a
/// function of its r influential variables.
struct SpanReduction {
  SparseSpectrum reduced;
  SpanBasis span;
  F2Matrix basis;
};
SpanReduction reduce_to_span(const SparseSpectrum& s);

/// Evaluates s at every point. Works for any n as long as Fdim <= 20, by
/// evaluating the reduced function on its r influential variables.
bool is_boolean(const SparseSpectrum& s);

/// Greedy basis drawn from the support, in support order.
SpanBasis fourier_span(const SparseSpectrum& s);

/// Output coefficient at Q equals the input coefficient at BQ.
SparseSpectrum basis_change(const SparseSpectrum& s, const F2Matrix& b);

/// Fixes x_i = b (0-based i); the result has n - 1 variables.
SparseSpectrum restrict_var(const SparseSpectrum& s, std::size_t i, bool b);

/// Plants an r-variable spectrum in n variables: f̂(B (Q ‖ 0)) = ĝ(Q).
SparseSpectrum lift(const SparseSpectrum& g, const F2Matrix& b, std::size_t n);

bool granularity_check(const SparseSpectrum& s);

struct GeneratorParams {
  std::size_t n = 0;
  std::size_t k = 2;
  std::size_t r_core = 1;
  std::uint64_t seed = 0;
};

/// Uniform pick among r_core-variable Boolean functions with sparsity <= k
/// and Fourier dimension exactly r_core, planted through a seeded random
/// invertible basis.
SparseSpectrum random_sparse_function(const GeneratorParams& params);

/// AND_t in the ±1 convention: -1 only at the all-ones input.
SparseSpectrum and_function(std::size_t t);
/// Add_m(x, y) = (-1)^{y_x} on log2(m) + m variables, m a power of two.
SparseSpectrum addressing_function(std::size_t m);

}  // namespace fsparse
