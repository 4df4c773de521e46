// One line per acceptance criterion; exits non-zero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "fsparse/chang.hpp"
#include "fsparse/error.hpp"
#include "fsparse/experiments.hpp"
#include "fsparse/f2linalg.hpp"
#include "fsparse/oracle.hpp"
#include "fsparse/query_learner.hpp"
#include "fsparse/sparse_learner.hpp"

using namespace fsparse;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome improved_scan() {
  const auto start = Clock::now();
  const ChangReport r = scan_all(4, ScanWhich::Improved);
  const double secs = seconds_since(start);
  const bool pass = r.functions_checked == 65536 && r.violations.empty() && secs < 60.0;
  return {pass, fmt("n=4 functions=%llu violations=%zu max_tightness=%.4f time=%.2fs (limit 60s)",
                    static_cast<unsigned long long>(r.functions_checked), r.violations.size(), r.max_tightness, secs)};
}

Outcome weight_scan() {
  const auto start = Clock::now();
  const ChangReport r = scan_all(3, ScanWhich::Weight);
  const double secs = seconds_since(start);
  const bool pass = r.functions_checked == 256 && r.violations.empty() && secs < 30.0;
  return {pass, fmt("n=3 functions=%llu subset checks=%llu violations=%zu time=%.2fs (limit 30s)",
                    static_cast<unsigned long long>(r.functions_checked),
                    static_cast<unsigned long long>(r.weight_checks), r.violations.size(), secs)};
}

Outcome granularity_everywhere() {
  std::uint64_t checked = 0, failed = 0, errors = 0;
  auto check = [&](const SparseSpectrum& s) {
    ++checked;
    if (!granularity_check(s)) ++failed;
  };
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::uint64_t id = 0; id < (std::uint64_t{1} << (std::size_t{1} << n)); ++id) {
      check(wht(TruthTable::from_bits(n, id)));
    }
  }
  const std::array<GeneratorParams, 6> shapes{{{6, 4, 2, 0}, {8, 8, 3, 0}, {12, 16, 4, 0}, {10, 2, 1, 0},
                                              {16, 8, 3, 0}, {5, 16, 4, 0}}};
  for (const auto& shape : shapes) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      GeneratorParams p = shape;
      p.seed = seed;
      check(random_sparse_function(p));
    }
  }
  for (std::size_t t = 1; t <= 6; ++t) check(and_function(t));
  for (std::size_t m : {1, 2, 4, 8}) check(addressing_function(m));
  for (auto mode : {Phase2Mode::EstimateRound, Phase2Mode::CouponCollector}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const SparseSpectrum target = random_sparse_function({8, 8, 3, derive_seed(seed, 0)});
      ExampleOracle o(target, derive_seed(seed, 1));
      LearnerConfig cfg;
      cfg.k = 8;
      cfg.phase2_mode = mode;
      try {
        check(learn(o, cfg).spectrum);
      } catch (const Error&) {
        ++errors;
      }
    }
  }
  return {failed == 0, fmt("spectra checked=%llu failures=%llu (learner runs that threw: %llu)",
                           static_cast<unsigned long long>(checked), static_cast<unsigned long long>(failed),
                           static_cast<unsigned long long>(errors))};
}

Outcome end_to_end_learner() {
  LearnSparseConfig cfg;
  cfg.n = 8;
  cfg.k = 8;
  cfg.r_core = 3;
  cfg.trials = 100;
  cfg.delta = 1.0 / 3.0;
  const auto records = run_learn_sparse(cfg);
  const auto s = summarize_learn_sparse(cfg, records);
  const double limit = 4.0 * 8.0 * 3.0 * (std::log(3.0) + 1.0) +
                       2.0 * static_cast<double>(stall_limit(cfg.k, cfg.n, cfg.delta, cfg.stall_factor));
  const bool pass = s.exact_rate >= 0.95 && s.phase1_mean <= limit;
  return {pass, fmt("exact rate=%.2f (>= 0.95) phase-1 mean=%.1f (<= %.1f = 4 k log2 k (ln r + 1) + 2 x stall) "
                    "phase-2 mean=%.1f",
                    s.exact_rate, s.phase1_mean, limit, s.phase2_mean)};
}

Outcome sampler_fidelity() {
  double worst_tv = 0.0, min_rate = 1.0, max_rate = 0.0;
  for (std::uint64_t id = 0; id < 16; ++id) {
    const auto table = oracle::table_from_id(2, id);
    const auto sums = oracle::fourier_sums(table);
    ExampleOracle o(oracle::spectrum(2, table), derive_seed(2024, id));
    std::array<int, 4> counts{};
    int accepted = 0;
    while (accepted < 20000) {
      if (const auto s = o.fourier_sample()) {
        ++counts[s->to_index()];
        ++accepted;
      }
    }
    double tv = 0.0;
    for (std::size_t s = 0; s < 4; ++s) {
      tv += std::abs(static_cast<double>(sums[s] * sums[s]) / 16.0 - counts[s] / 20000.0);
    }
    worst_tv = std::max(worst_tv, tv / 2.0);
    const double rate = 20000.0 / static_cast<double>(o.log().quantum_examples_used);
    min_rate = std::min(min_rate, rate);
    max_rate = std::max(max_rate, rate);
  }
  const bool pass = worst_tv < 0.05 && min_rate >= 0.47 && max_rate <= 0.53;
  return {pass, fmt("16 functions, worst TV=%.4f (< 0.05) acceptance rate in [%.4f, %.4f] (within [0.47, 0.53])",
                    worst_tv, min_rate, max_rate)};
}

Outcome adversary_closed_form() {
  Rng rng(606);
  double worst_gap = 0.0;
  double worst_margin = 1.0;
  std::size_t failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t length = 6 + rng.below(27);
    const std::size_t size = 2 + rng.below(63);
    const ConceptClass cc = random_concept_class(rng, size, length);
    AdversaryMatrix g = build_adversary_matrix(cc);
    g.from_distribution = false;
    for (std::size_t i = 0; i < length; ++i) {
      const auto [m0, m1] = cc.split_masses(i);
      worst_gap = std::max(worst_gap, std::abs(masked_norm(g, cc, i) - std::sqrt(m0 * m1)));
    }
    const SplitCertificate cert = certify_split(cc);
    const double threshold = 1.0 / (36.0 * cert.ratio * cert.ratio);
    worst_margin = std::min(worst_margin, cert.split - threshold);
    if (cert.split < threshold) ++failures;
  }
  const bool pass = worst_gap <= 1e-9 && failures == 0;
  return {pass, fmt("50 classes, max |numeric - sqrt(mu0 mu1)|=%.2e (<= 1e-9) split-threshold failures=%zu "
                    "min margin=%.4f",
                    worst_gap, failures, worst_margin)};
}

Outcome greedy_benchmarks() {
  bool pass = true;
  std::ostringstream detail;
  for (std::size_t n = 2; n <= 8; ++n) {
    const ConceptClass cc = linear_class(n);
    const auto ts = learn_all_targets(cc);
    for (std::size_t t = 0; t < cc.size(); ++t) {
      pass = pass && ts[t].queries() == n && ts[t].final_concept == t;
    }
  }
  detail << "linear n=2..8 exact n queries: " << (pass ? "yes" : "no");
  for (std::size_t N : {4, 8, 16}) {
    const ConceptClass cc = point_class(N);
    const auto ts = learn_all_targets(cc);
    std::size_t worst = 0;
    bool correct = true;
    for (std::size_t t = 0; t < N; ++t) {
      worst = std::max(worst, ts[t].queries());
      correct = correct && ts[t].final_concept == t;
    }
    const double gap = std::abs(spectral_ratio(cc) - std::sqrt(static_cast<double>(N) - 1.0));
    pass = pass && worst <= N - 1 && correct && gap <= 1e-9;
    detail << "; point N=" << N << " worst=" << worst << " ratio gap=" << fmt("%.1e", gap);
  }
  return {pass, detail.str()};
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

Outcome energy_bookkeeping() {
  std::vector<ConceptClass> classes;
  for (std::size_t n = 2; n <= 6; ++n) classes.push_back(linear_class(n));
  for (std::size_t N : {2, 4, 8, 16, 32, 64}) classes.push_back(point_class(N));
  classes.push_back(subspace_class(3, 2));
  classes.push_back(subspace_class(4, 2));
  classes.push_back(subspace_class(4, 4));
  Rng rng(808);
  for (int i = 0; i < 10; ++i) classes.push_back(random_concept_class(rng, 2 + rng.below(63), 6 + rng.below(10)));

  double worst_chain = 0.0, worst_start = 0.0;
  bool monotone = true;
  for (const auto& cc : classes) {
    const auto ts = learn_all_targets(cc);
    const auto e = energy_trace(cc, ts);
    worst_start = std::max(worst_start, std::abs(e[0] - entropy_bits(cc.mu())));
    for (std::size_t t = 0; t + 1 < e.size(); ++t) {
      monotone = monotone && e[t + 1] <= e[t] + 1e-12;
      // Average, over branches still running, of the queried bit's entropy
      // under that branch's posterior.
      double drop = 0.0;
      for (std::size_t c = 0; c < cc.size(); ++c) {
        if (t >= ts[c].queries()) continue;
        std::vector<double> post(cc.size(), 0.0);
        double total = 0.0;
        for (std::size_t d = 0; d < cc.size(); ++d) {
          bool alive = true;
          for (std::size_t s = 0; s < t; ++s) {
            alive = alive && cc.concepts()[d].get(ts[c].steps[s].index) == ts[c].steps[s].bit;
          }
          if (alive) total += post[d] = cc.mu()[d];
        }
        double ones = 0.0;
        for (std::size_t d = 0; d < cc.size(); ++d) {
          if (cc.concepts()[d].get(ts[c].steps[t].index)) ones += post[d] / total;
        }
        drop += cc.mu()[c] * entropy_bits({ones, 1.0 - ones});
      }
      worst_chain = std::max(worst_chain, std::abs((e[t] - e[t + 1]) - drop));
    }
  }
  const bool pass = monotone && worst_chain <= 1e-12 && worst_start <= 1e-12;
  return {pass, fmt("%zu classes, non-increasing=%s max chain-rule gap=%.2e (<= 1e-12) max |E_0 - H(mu)|=%.2e",
                    classes.size(), monotone ? "yes" : "no", worst_chain, worst_start)};
}

Outcome subspace_counting() {
  bool pass = true;
  std::size_t cases = 0;
  for (std::size_t n = 0; n <= 5; ++n) {
    for (std::size_t d = 0; d <= n; ++d) {
      ++cases;
      const auto listed = enumerate_subspaces(n, d).size();
      const BigInt count = subspace_count(n, d);
      pass = pass && BigInt(listed) == count && listed == oracle::brute_subspace_count(n, d) &&
             count >= (BigInt(1) << ((n - d) * d));
    }
  }
  return {pass, fmt("%zu (n, d) pairs with n <= 5: enumeration = Gaussian binomial = brute force, all >= 2^((n-d)d)",
                    cases)};
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string("\"") + FSPARSE_TOOL + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "fsparse_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  struct Case {
    const char* name;
    std::string args;
  };
  const std::vector<Case> cases{
      {"learn-sparse", "learn-sparse --n 8 --k 8 --r-core 3 --trials 20 --seed 42 --jobs 2 --out "},
      {"learn-sparse coupon", "learn-sparse --n 10 --k 4 --r-core 2 --trials 10 --phase2 coupon --seed 7 --out "},
      {"query-learn", "query-learn --class point --N 16 --mu random --seed 5 --out "},
      {"chang-scan", "chang-scan --n 3 --which weight --violations-csv "},
  };
  bool pass = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const fs::path a = dir / ("a" + std::to_string(i) + ".csv");
    const fs::path b = dir / ("b" + std::to_string(i) + ".csv");
    const int ca = run_tool(cases[i].args + "\"" + a.string() + "\"");
    const int cb = run_tool(cases[i].args + "\"" + b.string() + "\"");
    const std::string sa = slurp(a), sb = slurp(b);
    const bool same = ca == 0 && cb == 0 && !sa.empty() && sa == sb;
    pass = pass && same;
    detail << (i ? "; " : "") << cases[i].name << (same ? " identical" : " DIFFERS") << " (" << sa.size()
           << " bytes)";
  }
  fs::remove_all(dir);
  return {pass, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exhaustive improved-Chang scan", improved_scan},
      {"exhaustive span-weight scan", weight_scan},
      {"granularity of every produced spectrum", granularity_everywhere},
      {"end-to-end learner", end_to_end_learner},
      {"Fourier-sampler fidelity", sampler_fidelity},
      {"adversary closed form and split certificate", adversary_closed_form},
      {"greedy learner benchmarks", greedy_benchmarks},
      {"energy bookkeeping", energy_bookkeeping},
      {"subspace counting", subspace_counting},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
