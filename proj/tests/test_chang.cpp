#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "fsparse/chang.hpp"
#include "fsparse/error.hpp"
#include "oracles.hpp"

using namespace fsparse;

namespace {

SparseSpectrum and_t(std::size_t t) {
  std::vector<int> table(std::size_t{1} << t, 1);
  table.back() = -1;
  return oracle::spectrum(t, table);
}

SparseSpectrum character(const char* s) {
  SparseSpectrum::Map m;
  m.emplace(BitVec::from_string(s), Dyadic(1));
  return SparseSpectrum(std::string_view(s).size(), std::move(m));
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return Errc::InvalidArgument;
}

// Quantities recomputed from integer Fourier sums 2^n f̂(S).
struct Reference {
  std::size_t n;
  std::vector<std::int64_t> sums;
  std::vector<std::uint64_t> support;

  Reference(std::size_t vars, std::uint64_t id) : n(vars), sums(oracle::fourier_sums(oracle::table_from_id(vars, id))) {
    for (std::size_t s = 0; s < sums.size(); ++s) {
      if (sums[s] != 0) support.push_back(s);
    }
  }
  double scale() const { return static_cast<double>(std::size_t{1} << n); }
  double alpha() const { return (1.0 - static_cast<double>(sums[0]) / scale()) / 2.0; }
  std::size_t k() const { return std::max<std::size_t>(2, support.size()); }
  std::size_t r() const { return oracle::rank(support); }
};

// Literal inequality with threshold t (in units of 2^-n) on the ±1 coefficients.
bool original_literal_holds(const Reference& ref, std::int64_t t, bool base_two) {
  std::vector<std::uint64_t> large;
  for (std::size_t s = 1; s < ref.sums.size(); ++s) {
    if (std::llabs(ref.sums[s]) >= t) large.push_back(s);
  }
  const double a = ref.alpha();
  const double rho = static_cast<double>(t) / ref.scale() / a;
  const double log = base_two ? std::log2(1.0 / a) : std::log(1.0 / a);
  return static_cast<double>(oracle::rank(large)) <= 2.0 * log / (rho * rho) + 1e-9;
}

std::size_t count_literal_violations(std::size_t n) {
  std::size_t count = 0;
  for (std::uint64_t id = 0; id < (std::uint64_t{1} << (std::size_t{1} << n)); ++id) {
    const Reference ref(n, id);
    if (ref.sums[0] == static_cast<std::int64_t>(ref.scale()) || ref.sums[0] == -static_cast<std::int64_t>(ref.scale())) {
      continue;
    }
    std::set<std::int64_t> thresholds;
    for (std::size_t s = 1; s < ref.sums.size(); ++s) {
      if (ref.sums[s] != 0) thresholds.insert(std::llabs(ref.sums[s]));
    }
    for (auto t : thresholds) {
      count += !original_literal_holds(ref, t, true);
      count += !original_literal_holds(ref, t, false);
    }
  }
  return count;
}

std::size_t count_checks(const ChangReport& r, std::string_view prefix) {
  std::size_t c = 0;
  for (const auto& v : r.violations) c += v.check.rfind(prefix, 0) == 0;
  return c;
}

}  // namespace

TEST(ImprovedChang, Examples) {
  const auto and3 = verify_improved_chang(and_t(3));
  EXPECT_TRUE(and3.holds);
  EXPECT_EQ(and3.k, 8u);
  EXPECT_EQ(and3.r, 3u);
  EXPECT_EQ(and3.alpha, Dyadic(1, 3));
  EXPECT_DOUBLE_EQ(and3.bound, 6.0);
  EXPECT_DOUBLE_EQ(and3.slack, 3.0);

  const auto chi = verify_improved_chang(character("011"));
  EXPECT_TRUE(chi.holds);
  EXPECT_EQ(chi.k, 2u);
  EXPECT_DOUBLE_EQ(chi.bound, 2.0);

  const auto one = verify_improved_chang(character("000"));
  EXPECT_TRUE(one.holds);
  EXPECT_DOUBLE_EQ(one.slack, 0.0);

  SparseSpectrum::Map m;
  m.emplace(BitVec(2), Dyadic(-1));
  const auto minus = verify_improved_chang(SparseSpectrum(2, std::move(m)));
  EXPECT_TRUE(minus.holds);
  EXPECT_EQ(minus.r, 0u);
}

TEST(ImprovedChang, AgreesWithReferenceUpToThreeVariables) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::uint64_t id = 0; id < (std::uint64_t{1} << (std::size_t{1} << n)); ++id) {
      const Reference ref(n, id);
      const auto res = verify_improved_chang(wht(TruthTable::from_bits(n, id)));
      const double k = static_cast<double>(ref.k());
      const double bound = 2.0 * ref.alpha() * k * std::log2(k);
      ASSERT_EQ(res.r, ref.r());
      ASSERT_EQ(res.k, ref.k());
      ASSERT_NEAR(res.bound, bound, 1e-12);
      ASSERT_TRUE(res.holds) << n << " " << id;
    }
  }
}

TEST(ImprovedChang, RejectsNonBoolean) {
  SparseSpectrum::Map m;
  m.emplace(BitVec(2), Dyadic(1, 1));
  EXPECT_EQ(code_of([&] { verify_improved_chang(SparseSpectrum(2, std::move(m))); }), Errc::NotBoolean);
}

TEST(OriginalChang, Examples) {
  const SparseSpectrum and2 = and_t(2);
  const auto at_one = verify_chang_original(and2, 1.0, LogBase::Two);
  EXPECT_EQ(at_one.lhs_dim, 2u);
  EXPECT_DOUBLE_EQ(at_one.bound, 4.0);
  EXPECT_TRUE(at_one.holds);

  const auto large = verify_chang_original(and2, 100.0, LogBase::E);
  EXPECT_EQ(large.lhs_dim, 0u);
  EXPECT_TRUE(large.holds);

  EXPECT_EQ(code_of([] { verify_chang_original(character("00"), 1.0, LogBase::Two); }), Errc::ConstantFunction);
  EXPECT_EQ(code_of([&] { verify_chang_original(and2, 0.0, LogBase::Two); }), Errc::InvalidArgument);
}

TEST(OriginalChang, LiteralFormFailsOnAndTwoAtHalfThreshold) {
  // alpha = 1/4 and every coefficient has magnitude 1/2, so rho = 2 keeps
  // both nonzero characters while the bound drops to 2 log2(4) / 4 = 1.
  const auto res = verify_chang_original_at(and_t(2), Dyadic(1, 1), LogBase::Two);
  EXPECT_EQ(res.lhs_dim, 2u);
  EXPECT_DOUBLE_EQ(res.bound, 1.0);
  EXPECT_FALSE(res.holds);

  const auto ind = verify_chang_original_at(and_t(2), Dyadic(1, 1), LogBase::Two, ChangForm::Indicator);
  EXPECT_EQ(ind.lhs_dim, 2u);
  EXPECT_DOUBLE_EQ(ind.bound, 4.0);
  EXPECT_TRUE(ind.holds);
}

TEST(OriginalChang, ThresholdAndRhoFormsAgree) {
  const SparseSpectrum s = and_t(3);
  for (const Dyadic t : {Dyadic(1, 2), Dyadic(3, 2)}) {
    const double alpha = 1.0 / 8.0;
    for (const auto form : {ChangForm::Signed, ChangForm::Indicator}) {
      const double r = t.to_double() / (form == ChangForm::Indicator ? 2.0 * alpha : alpha);
      const auto a = verify_chang_original_at(s, t, LogBase::E, form);
      const auto b = verify_chang_original(s, r, LogBase::E, form);
      EXPECT_EQ(a.lhs_dim, b.lhs_dim);
      EXPECT_NEAR(a.bound, b.bound, 1e-12);
    }
  }
}

TEST(OriginalChang, ScanReportsExactlyTheReferenceViolations) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const ChangReport report = scan_all(n, ScanWhich::Original);
    EXPECT_EQ(count_checks(report, "original_log2") + count_checks(report, "original_ln"),
              count_literal_violations(n))
        << n;
  }
}

TEST(OriginalChang, NoViolationsOnAllThreeVariableFunctionsInEitherBase) {
  const ChangReport report = scan_all(3, ScanWhich::Original);
  EXPECT_EQ(count_checks(report, "original_log2"), 0u);
  EXPECT_EQ(count_checks(report, "original_ln"), 0u);
}

TEST(OriginalChang, IndicatorFormHoldsUpToFourVariables) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const ChangReport report = scan_all(n, ScanWhich::Original, {4});
    EXPECT_GT(report.original_indicator_checks, 0u);
    EXPECT_EQ(count_checks(report, "original_indicator"), 0u) << n;
  }
}

TEST(WeightBound, Examples) {
  const SparseSpectrum and2 = and_t(2);
  const std::vector<BitVec> one{BitVec::from_string("01")};
  const auto w = verify_weight_bound(and2, one);
  EXPECT_EQ(w.in_span_weight, Dyadic(1, 1));
  EXPECT_EQ(w.r, 2u);
  EXPECT_EQ(w.r_prime, 1u);
  EXPECT_DOUBLE_EQ(w.bound, 7.0 / 8.0);
  EXPECT_TRUE(w.holds);

  const std::vector<BitVec> full{BitVec::from_string("01"), BitVec::from_string("10")};
  const auto f = verify_weight_bound(and2, full);
  EXPECT_DOUBLE_EQ(f.bound, 1.0);
  EXPECT_EQ(f.in_span_weight, Dyadic(1));
  EXPECT_TRUE(f.holds);

  const std::vector<BitVec> missing{BitVec::from_string("11")};
  EXPECT_EQ(code_of([&] { verify_weight_bound(character("01"), missing); }), Errc::SubsetNotInSupport);
}

TEST(WeightBound, ExhaustiveThreeVariablesAgainstReference) {
  std::uint64_t expected_checks = 0;
  for (std::uint64_t id = 0; id < 256; ++id) {
    const Reference ref(3, id);
    const SparseSpectrum s = wht(TruthTable::from_bits(3, id));
    const auto support = s.support();
    expected_checks += std::uint64_t{1} << support.size();
    const double k = static_cast<double>(ref.k());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ref.support.size()); ++mask) {
      std::vector<std::uint64_t> packed;
      std::vector<BitVec> subset;
      for (std::size_t j = 0; j < ref.support.size(); ++j) {
        if ((mask >> j) & 1u) {
          packed.push_back(ref.support[j]);
          subset.push_back(BitVec::from_index(ref.support[j], 3));
        }
      }
      const auto span = oracle::span_elements(packed);
      double weight = 0.0;
      for (auto v : span) weight += static_cast<double>(ref.sums[v] * ref.sums[v]) / 64.0;
      const double bound = 1.0 - static_cast<double>(ref.r() - oracle::rank(packed)) / (k * std::log2(k));
      const auto res = verify_weight_bound(s, subset);
      ASSERT_NEAR(res.in_span_weight.to_double(), weight, 1e-15);
      ASSERT_NEAR(res.bound, bound, 1e-12);
      ASSERT_TRUE(weight <= bound + 1e-12);
      ASSERT_TRUE(res.holds) << id << " " << mask;
    }
  }
  const ChangReport report = scan_all(3, ScanWhich::Weight);
  EXPECT_EQ(report.weight_checks, expected_checks);
  EXPECT_TRUE(report.violations.empty());
}

TEST(WeightBound, SpanEnumerationMatchesLiteralSubsets) {
  ScanOptions literal;
  ScanOptions spans;
  spans.literal_subset_max_sparsity = 0;
  const ChangReport a = scan_all(3, ScanWhich::Weight, literal);
  const ChangReport b = scan_all(3, ScanWhich::Weight, spans);
  EXPECT_TRUE(a.violations.empty());
  EXPECT_TRUE(b.violations.empty());
  EXPECT_LT(b.weight_checks, a.weight_checks);
}

TEST(DimensionRatio, Examples) {
  EXPECT_NEAR(dimension_ratio(character("10")), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(dimension_ratio(and_t(3)), 1.0 / (2.0 * std::sqrt(2.0)), 1e-12);
}

TEST(Scan, SmallScans) {
  const ChangReport two = scan_all(2, ScanWhich::Improved);
  EXPECT_EQ(two.functions_checked, 16u);
  EXPECT_EQ(two.improved_checks, 16u);
  EXPECT_TRUE(two.violations.empty());

  const ChangReport gran = scan_all(4, ScanWhich::Granularity, {2});
  EXPECT_EQ(gran.granularity_checks, 65536u);
  EXPECT_TRUE(gran.violations.empty());

  EXPECT_EQ(code_of([] { scan_all(5, ScanWhich::Improved); }), Errc::TooLarge);
  EXPECT_EQ(code_of([] { parse_scan_which("everything"); }), Errc::InvalidArgument);
}

TEST(Scan, ImprovedMaxTightnessMatchesReference) {
  double best = 0.0;
  std::uint64_t best_id = 0;
  double best_ratio = 0.0;
  for (std::uint64_t id = 0; id < 256; ++id) {
    const Reference ref(3, id);
    const double k = static_cast<double>(ref.k());
    const double bound = 2.0 * ref.alpha() * k * std::log2(k);
    const double r = static_cast<double>(ref.r());
    if (bound > 0.0 && r / bound > best) {
      best = r / bound;
      best_id = id;
    }
    best_ratio = std::max(best_ratio, r / (std::sqrt(k) * std::log2(k)));
  }
  const ChangReport report = scan_all(3, ScanWhich::Improved);
  EXPECT_NEAR(report.max_tightness, best, 1e-12);
  EXPECT_EQ(report.max_tightness_table, best_id);
  EXPECT_NEAR(report.max_dimension_ratio, best_ratio, 1e-12);
}

TEST(Scan, DeterministicAndIndependentOfJobs) {
  const ChangReport a = scan_all(3, ScanWhich::All, {1});
  const ChangReport b = scan_all(3, ScanWhich::All, {1});
  const ChangReport c = scan_all(3, ScanWhich::All, {3});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_LE(a.dominance_improved_smaller, a.dominance_eligible);
}
