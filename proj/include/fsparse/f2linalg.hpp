#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsparse/bitvec.hpp"

namespace fsparse {

class Rng;

/// Dense matrix over GF(2), stored as packed rows.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);

  static F2Matrix identity(std::size_t n);
  static F2Matrix from_rows(std::vector<BitVec> rows);
  static F2Matrix from_columns(std::span<const BitVec> columns);
  /// Rows given as text, e.g. {"110", "011"}.
  static F2Matrix from_strings(std::span<const std::string_view> rows);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows() == cols_; }

  bool at(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }

  const BitVec& row(std::size_t r) const { return rows_[r]; }
  BitVec column(std::size_t c) const;

  F2Matrix transposed() const;
  /// M * v with v a column vector of length cols().
  BitVec apply(const BitVec& v) const;
  /// Mᵀ * v with v of length rows().
  BitVec apply_transposed(const BitVec& v) const;

  friend F2Matrix operator*(const F2Matrix& a, const F2Matrix& b);
  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

/// Independent vectors spanning a subspace; dim() == vectors.size().
struct SpanBasis {
  std::vector<BitVec> vectors;
  std::size_t dim() const noexcept { return vectors.size(); }
};

/// Incremental row-echelon basis. Tracks, for every reduced row, which of
/// the inserted vectors it combines, so coordinates relative to the
/// inserted vectors can be recovered.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t len) : len_(len) {}

  std::size_t len() const noexcept { return len_; }
  std::size_t dim() const noexcept { return inserted_.size(); }
  const std::vector<BitVec>& inserted() const noexcept { return inserted_; }

  /// Adds v if it is outside the current span; returns whether it was added.
  bool insert(const BitVec& v);
  bool contains(const BitVec& v) const;
  /// Coefficients c with v = sum_j c_j * inserted()[j], if v is in the span.
  std::optional<BitVec> coordinates(const BitVec& v) const;

 private:
  struct Row {
    BitVec value;
    BitVec combination;
    std::size_t pivot;
  };
  std::size_t len_;
  std::vector<Row> rows_;
  std::vector<BitVec> inserted_;
};

std::size_t rank(const F2Matrix& m);
std::size_t rank(std::span<const BitVec> vectors);

/// Throws Error(SingularMatrix) when m is not invertible.
F2Matrix invert(const F2Matrix& m);

/// Invertible n x n matrix whose leading columns are `vectors`, in order.
/// Remaining columns are the standard basis vectors e_1, e_2, ... that
/// increase the rank, scanned in index order.
F2Matrix complete_basis(std::span<const BitVec> vectors, std::size_t n);

bool span_contains(std::span<const BitVec> basis, const BitVec& v);

/// Uniformly random invertible n x n matrix (rejection sampling).
F2Matrix random_invertible(std::size_t n, Rng& rng);

using BigInt = boost::multiprecision::cpp_int;

/// Gaussian binomial [n choose d]_2: the number of d-dimensional subspaces
/// of GF(2)^n.
BigInt subspace_count(std::size_t n, std::size_t d);

struct SubspaceLimits {
  std::size_t max_n = 14;
  std::uint64_t max_count = std::uint64_t{1} << 22;
};

/// Every d-dimensional subspace of GF(2)^n, each as its reduced row-echelon
/// basis with rows sorted by pivot. Order: pivot sets lexicographically,
/// then free entries in binary counting order.
std::vector<SpanBasis> enumerate_subspaces(std::size_t n, std::size_t d,
                                           SubspaceLimits limits = {});

}  // namespace fsparse
