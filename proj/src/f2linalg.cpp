#include "fsparse/f2linalg.hpp"

#include <algorithm>
#include <string>

#include "fsparse/error.hpp"
#include "fsparse/rng.hpp"

namespace fsparse {

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

F2Matrix F2Matrix::from_rows(std::vector<BitVec> rows) {
  F2Matrix m;
  m.cols_ = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != m.cols_) throw Error(Errc::InvalidArgument, "ragged matrix rows");
  }
  m.rows_ = std::move(rows);
  return m;
}

F2Matrix F2Matrix::from_columns(std::span<const BitVec> columns) {
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  F2Matrix m(n, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != n) throw Error(Errc::InvalidArgument, "ragged matrix columns");
    for (std::size_t r = 0; r < n; ++r) {
      if (columns[c].get(r)) m.set(r, c);
    }
  }
  return m;
}

F2Matrix F2Matrix::from_strings(std::span<const std::string_view> rows) {
  std::vector<BitVec> parsed;
  parsed.reserve(rows.size());
  for (auto r : rows) parsed.push_back(BitVec::from_string(r));
  return from_rows(std::move(parsed));
}

BitVec F2Matrix::column(std::size_t c) const {
  BitVec v(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (rows_[r].get(c)) v.set(r);
  }
  return v;
}

F2Matrix F2Matrix::transposed() const {
  F2Matrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (rows_[r].get(c)) t.set(c, r);
    }
  }
  return t;
}

BitVec F2Matrix::apply(const BitVec& v) const {
  if (v.size() != cols_) throw Error(Errc::InvalidArgument, "matrix-vector size mismatch");
  BitVec out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (rows_[r].dot(v)) out.set(r);
  }
  return out;
}

BitVec F2Matrix::apply_transposed(const BitVec& v) const {
  if (v.size() != rows()) throw Error(Errc::InvalidArgument, "matrix-vector size mismatch");
  BitVec out(cols_);
  for (std::size_t r = 0; r < rows(); ++r) {
    if (v.get(r)) out ^= rows_[r];
  }
  return out;
}

F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::InvalidArgument, "matrix product size mismatch");
  F2Matrix c(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) c.rows_[r] = b.apply_transposed(a.rows_[r]);
  return c;
}

bool EchelonBasis::insert(const BitVec& v) {
  if (v.size() != len_) throw Error(Errc::InvalidArgument, "vector length mismatch in basis");
  BitVec value = v;
  BitVec combination(inserted_.size() + 1);
  combination.set(inserted_.size());
  for (const auto& row : rows_) {
    if (value.get(row.pivot)) {
      value ^= row.value;
      combination ^= row.combination.padded(combination.size());
    }
  }
  const auto pivot = value.first_set();
  if (!pivot) return false;
  // Keep rows fully reduced so each pivot column has a single 1.
  for (auto& row : rows_) {
    row.combination = row.combination.padded(combination.size());
    if (row.value.get(*pivot)) {
      row.value ^= value;
      row.combination ^= combination;
    }
  }
  rows_.push_back({std::move(value), std::move(combination), *pivot});
  inserted_.push_back(v);
  return true;
}

bool EchelonBasis::contains(const BitVec& v) const { return coordinates(v).has_value(); }

std::optional<BitVec> EchelonBasis::coordinates(const BitVec& v) const {
  if (v.size() != len_) throw Error(Errc::InvalidArgument, "vector length mismatch in basis");
  BitVec value = v;
  BitVec combination(inserted_.size());
  for (const auto& row : rows_) {
    if (value.get(row.pivot)) {
      value ^= row.value;
      combination ^= row.combination.padded(inserted_.size());
    }
  }
  if (value.any()) return std::nullopt;
  return combination;
}

std::size_t rank(std::span<const BitVec> vectors) {
  if (vectors.empty()) return 0;
  std::vector<BitVec> rows(vectors.begin(), vectors.end());
  const std::size_t len = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < len && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i].get(c)) rows[i] ^= rows[r];
    }
    ++r;
  }
  return r;
}

std::size_t rank(const F2Matrix& m) {
  std::vector<BitVec> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rank(rows);
}

F2Matrix invert(const F2Matrix& m) {
  if (!m.square()) throw Error(Errc::InvalidArgument, "cannot invert a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<BitVec> a, inv;
  for (std::size_t r = 0; r < n; ++r) {
    a.push_back(m.row(r));
    inv.push_back(BitVec::unit(n, r));
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && !a[p].get(c)) ++p;
    if (p == n) throw Error(Errc::SingularMatrix, "rank deficient at column " + std::to_string(c));
    std::swap(a[c], a[p]);
    std::swap(inv[c], inv[p]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != c && a[r].get(c)) {
        a[r] ^= a[c];
        inv[r] ^= inv[c];
      }
    }
  }
  return F2Matrix::from_rows(std::move(inv));
}

F2Matrix complete_basis(std::span<const BitVec> vectors, std::size_t n) {
  EchelonBasis basis(n);
  for (const auto& v : vectors) {
    if (v.size() != n) throw Error(Errc::InvalidArgument, "basis vector has wrong length");
    if (!basis.insert(v)) throw Error(Errc::DependentInput, "vector " + v.to_string());
  }
  for (std::size_t i = 0; i < n && basis.dim() < n; ++i) basis.insert(BitVec::unit(n, i));
  return F2Matrix::from_columns(basis.inserted());
}

bool span_contains(std::span<const BitVec> basis, const BitVec& v) {
  EchelonBasis echelon(v.size());
  for (const auto& b : basis) echelon.insert(b);
  return echelon.contains(v);
}

F2Matrix random_invertible(std::size_t n, Rng& rng) {
  for (;;) {
    F2Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (rng.bit()) m.set(r, c);
      }
    }
    if (rank(m) == n) return m;
  }
}

BigInt subspace_count(std::size_t n, std::size_t d) {
  if (d > n) throw Error(Errc::InvalidArgument, "subspace dimension exceeds ambient dimension");
  BigInt numerator = 1, denominator = 1;
  for (std::size_t i = 0; i < d; ++i) {
    numerator *= (BigInt(1) << (n - i)) - 1;
    denominator *= (BigInt(1) << (d - i)) - 1;
  }
  return numerator / denominator;
}

namespace {

void next_pivots(std::vector<std::size_t>& pivots, std::size_t n, bool& done) {
  const std::size_t d = pivots.size();
  std::size_t i = d;
  while (i > 0 && pivots[i - 1] == n - d + i - 1) --i;
  if (i == 0) {
    done = true;
    return;
  }
  ++pivots[i - 1];
  for (std::size_t j = i; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
}

}  // namespace

std::vector<SpanBasis> enumerate_subspaces(std::size_t n, std::size_t d, SubspaceLimits limits) {
  if (d > n) throw Error(Errc::InvalidArgument, "subspace dimension exceeds ambient dimension");
  if (n > limits.max_n) {
    throw Error(Errc::TooLarge, "n = " + std::to_string(n) + " exceeds " +
                                    std::to_string(limits.max_n));
  }
  const BigInt count = subspace_count(n, d);
  if (count > limits.max_count) {
    throw Error(Errc::TooLarge, "subspace count " + count.str() + " exceeds cap");
  }
  std::vector<SpanBasis> out;
  out.reserve(count.convert_to<std::size_t>());
  if (d == 0) {
    out.push_back({});
    return out;
  }

  std::vector<std::size_t> pivots(d);
  for (std::size_t j = 0; j < d; ++j) pivots[j] = j;
  for (bool done = false; !done; next_pivots(pivots, n, done)) {
    // Free slots: (row j, column c) with c > pivots[j] and c not a pivot.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t c = pivots[j] + 1; c < n; ++c) {
        if (!std::binary_search(pivots.begin(), pivots.end(), c)) free.emplace_back(j, c);
      }
    }
    const std::uint64_t assignments = std::uint64_t{1} << free.size();
    for (std::uint64_t a = 0; a < assignments; ++a) {
      SpanBasis basis;
      basis.vectors.assign(d, BitVec(n));
      for (std::size_t j = 0; j < d; ++j) basis.vectors[j].set(pivots[j]);
      for (std::size_t f = 0; f < free.size(); ++f) {
        if ((a >> (free.size() - 1 - f)) & 1u) basis.vectors[free[f].first].set(free[f].second);
      }
      out.push_back(std::move(basis));
    }
  }
  return out;
}

}  // namespace fsparse
