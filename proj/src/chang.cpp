#include "fsparse/chang.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <thread>

#include "fsparse/error.hpp"

namespace fsparse {

namespace {

bool has(ScanWhich set, ScanWhich flag) {
  return (static_cast<unsigned>(set) & static_cast<unsigned>(flag)) != 0;
}

Dyadic alpha_of(const SparseSpectrum& s) {
  const Dyadic constant = s.coefficient(BitVec(s.vars()));
  return (Dyadic(1) - constant) * Dyadic(1, 1);
}

double log_in(double x, LogBase base) { return base == LogBase::Two ? std::log2(x) : std::log(x); }

}  // namespace

ImprovedChangResult verify_improved_chang(const SparseSpectrum& s) {
  if (!is_boolean(s)) throw Error(Errc::NotBoolean, "improved Chang check needs a Boolean spectrum");
  ImprovedChangResult out;
  out.k = normalized_k(s.sparsity());
  out.r = fourier_span(s).dim();
  out.alpha = alpha_of(s);
  const double r = static_cast<double>(out.r);
  if (out.alpha.is_zero()) {
    out.bound = 0.0;
    out.holds = out.r == 0;
    out.slack = -r;
    return out;
  }
  if (std::has_single_bit(out.k)) {
    // log2 k is an integer: compare exactly.
    const auto log_k = static_cast<std::int64_t>(floor_log2(out.k));
    const Dyadic bound = out.alpha * Dyadic(2 * static_cast<std::int64_t>(out.k) * log_k);
    out.holds = Dyadic(static_cast<std::int64_t>(out.r)) <= bound;
    out.bound = bound.to_double();
    out.slack = (bound - Dyadic(static_cast<std::int64_t>(out.r))).to_double();
  } else {
    // log2 k is irrational and alpha > 0, so the bound never equals the integer r.
    const double kk = static_cast<double>(out.k);
    out.bound = 2.0 * out.alpha.to_double() * kk * std::log2(kk);
    out.holds = r <= out.bound;
    out.slack = out.bound - r;
  }
  return out;
}

ChangOriginalResult verify_chang_original_at(const SparseSpectrum& s, const Dyadic& threshold, LogBase base,
                                             ChangForm form) {
  const Dyadic alpha = alpha_of(s);
  if (alpha <= Dyadic(0) || alpha >= Dyadic(1)) {
    throw Error(Errc::ConstantFunction, "original Chang bound needs 0 < alpha < 1");
  }
  if (threshold <= Dyadic(0)) throw Error(Errc::InvalidArgument, "threshold must be positive");
  EchelonBasis large(s.vars());
  for (const auto& [S, c] : s.coeffs()) {
    if (c.abs() >= threshold) large.insert(S);
  }
  ChangOriginalResult out;
  out.lhs_dim = large.dim();
  const double a = alpha.to_double();
  const double rho = threshold.to_double() / (form == ChangForm::Indicator ? 2.0 * a : a);
  out.bound = 2.0 * log_in(1.0 / a, base) / (rho * rho);
  out.holds = static_cast<double>(out.lhs_dim) <= out.bound + 1e-9;
  return out;
}

ChangOriginalResult verify_chang_original(const SparseSpectrum& s, double rho, LogBase base, ChangForm form) {
  const Dyadic alpha = alpha_of(s);
  if (alpha <= Dyadic(0) || alpha >= Dyadic(1)) {
    throw Error(Errc::ConstantFunction, "original Chang bound needs 0 < alpha < 1");
  }
  if (!(rho > 0.0)) throw Error(Errc::InvalidArgument, "rho must be positive");
  const double a = alpha.to_double();
  const double threshold = rho * a * (form == ChangForm::Indicator ? 2.0 : 1.0);
  EchelonBasis large(s.vars());
  for (const auto& [S, c] : s.coeffs()) {
    if (std::fabs(c.to_double()) >= threshold) large.insert(S);
  }
  ChangOriginalResult out;
  out.lhs_dim = large.dim();
  out.bound = 2.0 * log_in(1.0 / a, base) / (rho * rho);
  out.holds = static_cast<double>(out.lhs_dim) <= out.bound + 1e-9;
  return out;
}

WeightBoundResult verify_weight_bound(const SparseSpectrum& s, std::span<const BitVec> subset) {
  EchelonBasis sub(s.vars());
  for (const auto& v : subset) {
    if (s.coefficient(v).is_zero()) throw Error(Errc::SubsetNotInSupport, v.to_string());
    sub.insert(v);
  }
  WeightBoundResult out;
  out.r = fourier_span(s).dim();
  out.r_prime = sub.dim();
  for (const auto& [S, c] : s.coeffs()) {
    if (sub.contains(S)) out.in_span_weight += c * c;
  }
  const std::size_t k = normalized_k(s.sparsity());
  const double kk = static_cast<double>(k);
  const auto gap = static_cast<std::int64_t>(out.r - out.r_prime);
  out.bound = 1.0 - static_cast<double>(gap) / (kk * std::log2(kk));
  const Dyadic slack_mass = Dyadic(1) - out.in_span_weight;
  if (std::has_single_bit(k)) {
    const Dyadic scaled = slack_mass * Dyadic(static_cast<std::int64_t>(k) * floor_log2(k));
    out.holds = Dyadic(gap) <= scaled;
  } else {
    out.holds = static_cast<double>(gap) <= slack_mass.to_double() * kk * std::log2(kk);
  }
  return out;
}

double dimension_ratio(const SparseSpectrum& s) {
  const double k = static_cast<double>(normalized_k(s.sparsity()));
  return static_cast<double>(fourier_span(s).dim()) / (std::sqrt(k) * std::log2(k));
}

ScanWhich parse_scan_which(std::string_view name) {
  if (name == "improved") return ScanWhich::Improved;
  if (name == "original") return ScanWhich::Original;
  if (name == "weight") return ScanWhich::Weight;
  if (name == "granularity") return ScanWhich::Granularity;
  if (name == "all") return ScanWhich::All;
  throw Error(Errc::InvalidArgument, "unknown scan selector '" + std::string(name) + "'");
}

std::string scan_which_name(ScanWhich which) {
  switch (which) {
    case ScanWhich::Improved: return "improved";
    case ScanWhich::Original: return "original";
    case ScanWhich::Weight: return "weight";
    case ScanWhich::Granularity: return "granularity";
    case ScanWhich::All: return "all";
  }
  return "custom";
}

void ChangReport::merge(const ChangReport& other) {
  functions_checked += other.functions_checked;
  improved_checks += other.improved_checks;
  original_checks += other.original_checks;
  original_indicator_checks += other.original_indicator_checks;
  weight_checks += other.weight_checks;
  granularity_checks += other.granularity_checks;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  // Strict comparison keeps the earliest table on ties, so merging in range
  // order matches a sequential scan.
  if (other.max_tightness > max_tightness) {
    max_tightness = other.max_tightness;
    max_tightness_table = other.max_tightness_table;
  }
  max_dimension_ratio = std::max(max_dimension_ratio, other.max_dimension_ratio);
  base_disagreements += other.base_disagreements;
  dominance_eligible += other.dominance_eligible;
  dominance_improved_smaller += other.dominance_improved_smaller;
}

namespace {

void check_weight(const SparseSpectrum& s, std::uint64_t id, const ScanOptions& options, ChangReport& report) {
  const auto support = s.support();
  auto record = [&](const WeightBoundResult& w, const std::string& detail) {
    ++report.weight_checks;
    if (!w.holds) {
      report.violations.push_back({id, "weight", detail, w.in_span_weight.to_double(), w.bound});
    }
  };
  if (support.size() <= options.literal_subset_max_sparsity) {
    const std::uint64_t subsets = std::uint64_t{1} << support.size();
    std::vector<BitVec> subset;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      subset.clear();
      for (std::size_t j = 0; j < support.size(); ++j) {
        if ((mask >> j) & 1u) subset.push_back(support[j]);
      }
      record(verify_weight_bound(s, subset), "subset_mask=" + std::to_string(mask));
    }
    return;
  }
  // span(subset) ranges exactly over the subspaces V with span(V ∩ supp) = V,
  // and the bound depends on the subset only through its span.
  for (std::size_t d = 0; d <= s.vars(); ++d) {
    for (const auto& space : enumerate_subspaces(s.vars(), d)) {
      EchelonBasis v(s.vars());
      for (const auto& b : space.vectors) v.insert(b);
      std::vector<BitVec> members;
      for (const auto& S : support) {
        if (v.contains(S)) members.push_back(S);
      }
      if (rank(members) != d) continue;
      record(verify_weight_bound(s, members), "span_dim=" + std::to_string(d));
    }
  }
}

void check_original(const SparseSpectrum& s, std::uint64_t id, ChangReport& report) {
  const Dyadic alpha = alpha_of(s);
  if (alpha <= Dyadic(0) || alpha >= Dyadic(1)) return;
  const std::size_t k = normalized_k(s.sparsity());
  // Every distinct magnitude is a threshold; each yields a distinct left-hand
  // set with the largest rho for that set.
  std::set<Dyadic> thresholds;
  for (const auto& [S, c] : s.coeffs()) {
    if (S.any()) thresholds.insert(c.abs());
  }
  bool disagree = false;
  for (const auto& t : thresholds) {
    const auto two = verify_chang_original_at(s, t, LogBase::Two);
    const auto e = verify_chang_original_at(s, t, LogBase::E);
    report.original_checks += 2;
    for (const LogBase base : {LogBase::Two, LogBase::E}) {
      const auto ind = verify_chang_original_at(s, t, base, ChangForm::Indicator);
      ++report.original_indicator_checks;
      if (!ind.holds) {
        report.violations.push_back({id, base == LogBase::Two ? "original_indicator_log2" : "original_indicator_ln",
                                     "threshold=" + t.to_string(), static_cast<double>(ind.lhs_dim), ind.bound});
      }
    }
    if (!two.holds) {
      report.violations.push_back({id, "original_log2", "threshold=" + t.to_string(),
                                   static_cast<double>(two.lhs_dim), two.bound});
    }
    if (!e.holds) {
      report.violations.push_back({id, "original_ln", "threshold=" + t.to_string(),
                                   static_cast<double>(e.lhs_dim), e.bound});
    }
    disagree = disagree || (two.holds != e.holds);
  }
  if (disagree) ++report.base_disagreements;

  // Measured comparison at rho alpha = 1/k, where the original lemma's
  // left-hand side is the full Fourier dimension.
  const double a = alpha.to_double();
  const double kk = static_cast<double>(k);
  if (a <= std::pow(kk, -0.75)) {
    ++report.dominance_eligible;
    const double improved = 2.0 * a * kk * std::log2(kk);
    const double original = 2.0 * std::log2(1.0 / a) * a * a * kk * kk;
    if (improved < original) ++report.dominance_improved_smaller;
  }
}

ChangReport scan_range(std::size_t n, ScanWhich which, std::uint64_t begin, std::uint64_t end,
                       const ScanOptions& options) {
  ChangReport report;
  for (std::uint64_t id = begin; id < end; ++id) {
    const SparseSpectrum s = wht(TruthTable::from_bits(n, id));
    ++report.functions_checked;
    if (has(which, ScanWhich::Granularity)) {
      ++report.granularity_checks;
      if (!granularity_check(s)) report.violations.push_back({id, "granularity", "", 0.0, 0.0});
    }
    if (has(which, ScanWhich::Improved)) {
      const auto result = verify_improved_chang(s);
      ++report.improved_checks;
      if (!result.holds) {
        report.violations.push_back({id, "improved", "alpha=" + result.alpha.to_string() +
                                                         " k=" + std::to_string(result.k),
                                     static_cast<double>(result.r), result.bound});
      }
      if (result.bound > 0.0) {
        const double tightness = static_cast<double>(result.r) / result.bound;
        if (tightness > report.max_tightness) {
          report.max_tightness = tightness;
          report.max_tightness_table = id;
        }
      }
      report.max_dimension_ratio = std::max(report.max_dimension_ratio, dimension_ratio(s));
    }
    if (has(which, ScanWhich::Original)) check_original(s, id, report);
    if (has(which, ScanWhich::Weight)) check_weight(s, id, options, report);
  }
  return report;
}

}  // namespace

ChangReport scan_all(std::size_t n, ScanWhich which, const ScanOptions& options) {
  if (n >= 5) throw Error(Errc::TooLarge, "exhaustive scans are limited to n <= 4");
  const std::uint64_t total = std::uint64_t{1} << (std::size_t{1} << n);
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, 64));
  std::vector<ChangReport> parts(jobs);
  const std::uint64_t chunk = (total + jobs - 1) / jobs;
  std::vector<std::thread> workers;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::uint64_t begin = std::min(total, j * chunk);
    const std::uint64_t end = std::min(total, begin + chunk);
    auto task = [&, j, begin, end] { parts[j] = scan_range(n, which, begin, end, options); };
    if (jobs == 1) {
      task();
    } else {
      workers.emplace_back(task);
    }
  }
  for (auto& w : workers) w.join();

  ChangReport report;
  report.n = n;
  report.which = scan_which_name(which);
  for (const auto& part : parts) report.merge(part);
  return report;
}

}  // namespace fsparse
