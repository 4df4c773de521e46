#include "fsparse/boolfourier.hpp"

#include <bit>
#include <mutex>
#include <string>

#include "fsparse/error.hpp"
#include "fsparse/rng.hpp"

namespace fsparse {

namespace {

// In-place Walsh-Hadamard butterfly: a[q] <- sum_p a[p] (-1)^{popcount(p & q)}.
void fwht(std::vector<std::int64_t>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

void require_table_size(std::size_t n) {
  if (n > kMaxTableVars) {
    throw Error(Errc::TooLarge, std::to_string(n) + " variables exceeds dense limit of " +
                                    std::to_string(kMaxTableVars));
  }
}

// Dense values of s scaled by 2^scale, or nullopt if coefficients are too fine.
std::vector<std::int64_t> dense_scaled_values(const SparseSpectrum& s, int& scale) {
  require_table_size(s.vars());
  scale = 0;
  for (const auto& [S, c] : s.coeffs()) scale = std::max(scale, c.log2_den());
  if (scale > 40) throw Error(Errc::Overflow, "coefficient denominators too fine for dense table");
  std::vector<std::int64_t> a(std::size_t{1} << s.vars(), 0);
  for (const auto& [S, c] : s.coeffs()) {
    a[S.to_index()] = c.num() * (std::int64_t{1} << (scale - c.log2_den()));
  }
  fwht(a);
  return a;
}

std::optional<TruthTable> try_truth_table(const SparseSpectrum& s) {
  int scale = 0;
  const auto a = dense_scaled_values(s, scale);
  const std::int64_t one = std::int64_t{1} << scale;
  std::vector<std::int8_t> values(a.size());
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p] == one) {
      values[p] = 1;
    } else if (a[p] == -one) {
      values[p] = -1;
    } else {
      return std::nullopt;
    }
  }
  return TruthTable(s.vars(), std::move(values));
}

}  // namespace

TruthTable::TruthTable(std::size_t n, std::vector<std::int8_t> values) : n_(n), values_(std::move(values)) {
  require_table_size(n);
  if (values_.size() != (std::size_t{1} << n)) {
    throw Error(Errc::InvalidArgument, "truth table needs 2^n entries");
  }
  for (auto v : values_) {
    if (v != 1 && v != -1) throw Error(Errc::InvalidArgument, "truth table entries must be +1 or -1");
  }
}

TruthTable TruthTable::from_bits(std::size_t n, std::uint64_t bits) {
  if (n > 6) throw Error(Errc::InvalidArgument, "from_bits supports n <= 6");
  std::vector<std::int8_t> values(std::size_t{1} << n);
  for (std::size_t p = 0; p < values.size(); ++p) values[p] = ((bits >> p) & 1u) ? -1 : 1;
  return TruthTable(n, std::move(values));
}

TruthTable TruthTable::constant(std::size_t n, int value) {
  return TruthTable(n, std::vector<std::int8_t>(std::size_t{1} << n, value < 0 ? -1 : 1));
}

SparseSpectrum::SparseSpectrum(std::size_t n, Map coeffs, std::optional<std::size_t> k_declared)
    : n_(n), k_declared_(k_declared) {
  for (auto& [S, c] : coeffs) {
    if (S.size() != n) throw Error(Errc::InvalidArgument, "character " + S.to_string() + " has wrong length");
    if (!c.is_zero()) coeffs_.emplace(S, c);
  }
  check_declared();
}

void SparseSpectrum::check_declared() const {
  if (k_declared_ && coeffs_.size() > *k_declared_) {
    throw Error(Errc::InvalidArgument, "sparsity " + std::to_string(coeffs_.size()) +
                                           " exceeds declared bound " + std::to_string(*k_declared_));
  }
}

Dyadic SparseSpectrum::coefficient(const BitVec& s) const {
  const auto it = coeffs_.find(s);
  return it == coeffs_.end() ? Dyadic{} : it->second;
}

void SparseSpectrum::accumulate(const BitVec& s, const Dyadic& value) {
  if (s.size() != n_) throw Error(Errc::InvalidArgument, "character has wrong length");
  if (value.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(s, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

std::vector<BitVec> SparseSpectrum::support() const {
  std::vector<BitVec> out;
  out.reserve(coeffs_.size());
  for (const auto& [S, c] : coeffs_) out.push_back(S);
  return out;
}

int floor_log2(std::size_t k) noexcept { return k == 0 ? 0 : static_cast<int>(std::bit_width(k)) - 1; }

SparseSpectrum wht(const TruthTable& table) {
  std::vector<std::int64_t> a(table.values().begin(), table.values().end());
  fwht(a);
  SparseSpectrum::Map coeffs;
  const int n = static_cast<int>(table.vars());
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q] != 0) coeffs.emplace(BitVec::from_index(q, table.vars()), Dyadic(a[q], n));
  }
  return SparseSpectrum(table.vars(), std::move(coeffs));
}

TruthTable to_truth_table(const SparseSpectrum& s) {
  auto table = try_truth_table(s);
  if (!table) throw Error(Errc::NotBoolean, "spectrum takes a value other than ±1");
  return *table;
}

Dyadic evaluate(const SparseSpectrum& s, const BitVec& x) {
  if (x.size() != s.vars()) throw Error(Errc::InvalidArgument, "input has wrong length");
  Dyadic total;
  for (const auto& [S, c] : s.coeffs()) total += S.dot(x) ? -c : c;
  return total;
}

Dyadic fourier_weight(const SparseSpectrum& s) {
  Dyadic total;
  for (const auto& [S, c] : s.coeffs()) total += c * c;
  return total;
}

SpanBasis fourier_span(const SparseSpectrum& s) {
  EchelonBasis echelon(s.vars());
  for (const auto& [S, c] : s.coeffs()) echelon.insert(S);
  return SpanBasis{echelon.inserted()};
}

SpanReduction reduce_to_span(const SparseSpectrum& s) {
  SpanReduction out;
  out.span = fourier_span(s);
  const std::size_t r = out.span.dim();
  out.basis = complete_basis(out.span.vectors, s.vars());
  const F2Matrix inverse = invert(out.basis);
  out.reduced = SparseSpectrum(r);
  for (const auto& [S, c] : s.coeffs()) {
    const BitVec q = inverse.apply(S);
    out.reduced.accumulate(q.head(r), c);
  }
  return out;
}

bool is_boolean(const SparseSpectrum& s) {
  if (s.sparsity() == 0) return false;
  if (s.vars() <= kMaxTableVars) return try_truth_table(s).has_value();
  const auto reduction = reduce_to_span(s);
  return try_truth_table(reduction.reduced).has_value();
}

SparseSpectrum basis_change(const SparseSpectrum& s, const F2Matrix& b) {
  if (b.rows() != s.vars() || b.cols() != s.vars()) {
    throw Error(Errc::InvalidArgument, "basis matrix must be n x n");
  }
  const F2Matrix inverse = invert(b);
  SparseSpectrum out(s.vars());
  for (const auto& [S, c] : s.coeffs()) out.accumulate(inverse.apply(S), c);
  return out;
}

SparseSpectrum restrict_var(const SparseSpectrum& s, std::size_t i, bool b) {
  if (i >= s.vars()) throw Error(Errc::IndexOutOfRange, "variable " + std::to_string(i));
  SparseSpectrum out(s.vars() - 1);
  for (const auto& [S, c] : s.coeffs()) out.accumulate(S.erased(i), (b && S.get(i)) ? -c : c);
  return out;
}

SparseSpectrum lift(const SparseSpectrum& g, const F2Matrix& b, std::size_t n) {
  if (g.vars() > n) throw Error(Errc::InvalidArgument, "cannot lift to fewer variables");
  if (b.rows() != n || b.cols() != n) throw Error(Errc::InvalidArgument, "basis matrix must be n x n");
  if (rank(b) != n) throw Error(Errc::SingularMatrix, "lift basis is singular");
  SparseSpectrum out(n);
  for (const auto& [Q, c] : g.coeffs()) out.accumulate(b.apply(Q.padded(n)), c);
  return out;
}

bool granularity_check(const SparseSpectrum& s) {
  const int exponent = granularity_exponent(s.sparsity());
  for (const auto& [S, c] : s.coeffs()) {
    if (!c.is_multiple_of_pow2(exponent)) return false;
  }
  return true;
}

namespace {

struct CandidateKey {
  std::size_t r_core, k;
  auto operator<=>(const CandidateKey&) const = default;
};

const std::vector<SparseSpectrum>& core_candidates(std::size_t r_core, std::size_t k) {
  static std::mutex mutex;
  static std::map<CandidateKey, std::vector<SparseSpectrum>> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace(CandidateKey{r_core, k});
  if (inserted) {
    const std::uint64_t tables = std::uint64_t{1} << (std::size_t{1} << r_core);
    for (std::uint64_t bits = 0; bits < tables; ++bits) {
      auto spectrum = wht(TruthTable::from_bits(r_core, bits));
      if (spectrum.sparsity() <= k && fourier_span(spectrum).dim() == r_core) {
        it->second.push_back(std::move(spectrum));
      }
    }
  }
  return it->second;
}

}  // namespace

SparseSpectrum random_sparse_function(const GeneratorParams& params) {
  if (params.k < 2) throw Error(Errc::InvalidArgument, "k must be at least 2");
  if (params.r_core > params.n || params.r_core > 4) {
    throw Error(Errc::InvalidArgument, "r_core must be at most min(n, 4)");
  }
  const auto& candidates = core_candidates(params.r_core, params.k);
  if (candidates.empty()) {
    throw Error(Errc::Unsatisfiable, "no " + std::to_string(params.r_core) +
                                         "-dimensional Boolean function with sparsity <= " +
                                         std::to_string(params.k));
  }
  Rng rng(params.seed);
  const auto& core = candidates[rng.below(candidates.size())];
  const F2Matrix basis = random_invertible(params.n, rng);
  SparseSpectrum planted = lift(core, basis, params.n);
  return SparseSpectrum(planted.vars(), planted.coeffs(), params.k);
}

SparseSpectrum and_function(std::size_t t) {
  require_table_size(t);
  std::vector<std::int8_t> values(std::size_t{1} << t, 1);
  values.back() = -1;
  return wht(TruthTable(t, std::move(values)));
}

SparseSpectrum addressing_function(std::size_t m) {
  if (m == 0 || !std::has_single_bit(m)) throw Error(Errc::InvalidArgument, "m must be a power of two");
  const std::size_t address_bits = static_cast<std::size_t>(floor_log2(m));
  const std::size_t n = address_bits + m;
  require_table_size(n);
  std::vector<std::int8_t> values(std::size_t{1} << n);
  for (std::size_t p = 0; p < values.size(); ++p) {
    const std::size_t address = p >> m;
    // y_j is variable address_bits + j, i.e. bit (m - 1 - j) of the low part.
    const bool y = (p >> (m - 1 - address)) & 1u;
    values[p] = y ? -1 : 1;
  }
  return wht(TruthTable(n, std::move(values)));
}

}  // namespace fsparse
