#include "fsparse/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <ostream>
#include <thread>

#include "fsparse/error.hpp"

namespace fsparse {

void LearnSparseConfig::validate() const {
  if (trials == 0) throw Error(Errc::InvalidArgument, "trials must be at least 1");
  if (n == 0) throw Error(Errc::InvalidArgument, "n must be at least 1");
  if (r_core == 0 || r_core > n) throw Error(Errc::InvalidArgument, "r_core must lie in [1, n]");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(Errc::InvalidArgument, "delta must lie in (0, 1)");
  if (!(stall_factor > 0.0)) throw Error(Errc::InvalidArgument, "stall_factor must be positive");
}

namespace {

RunRecord run_trial(const LearnSparseConfig& cfg, std::size_t trial) {
  RunRecord rec;
  rec.seed = derive_seed(cfg.seed, trial);
  rec.n = cfg.n;
  rec.k = cfg.k;
  rec.mode = std::string(phase2_mode_name(cfg.mode));
  try {
    const SparseSpectrum target = random_sparse_function({cfg.n, cfg.k, cfg.r_core, derive_seed(rec.seed, 0)});
    rec.r_true = fourier_span(target).dim();
    ExampleOracle oracle(target, derive_seed(rec.seed, 1));
    LearnerConfig lc;
    lc.k = cfg.k;
    lc.delta = cfg.delta;
    lc.phase2_mode = cfg.mode;
    lc.stall_factor = cfg.stall_factor;
    const LearnerResult result = learn(oracle, lc);
    rec.r_found = result.span.dim();
    rec.phase1_quantum_examples = result.phase1_quantum_examples;
    rec.phase2_classical_examples = result.phase2_classical_examples;
    rec.exact_match = result.spectrum == target;
  } catch (const Error& e) {
    if (e.code() == Errc::Unsatisfiable || e.code() == Errc::InvalidArgument) throw;
    rec.error = errc_name(e.code());
  }
  return rec;
}

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::uint64_t nearest_rank(std::vector<std::uint64_t> sorted, double q) {
  if (sorted.empty()) return 0;
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

std::vector<RunRecord> run_learn_sparse(const LearnSparseConfig& cfg) {
  cfg.validate();
  std::vector<RunRecord> records(cfg.trials);
  parallel_for(cfg.trials, cfg.jobs, [&](std::size_t t) { records[t] = run_trial(cfg, t); });
  return records;
}

LearnSparseSummary summarize_learn_sparse(const LearnSparseConfig& cfg, const std::vector<RunRecord>& records) {
  LearnSparseSummary s;
  s.trials = records.size();
  std::vector<std::uint64_t> phase1;
  double p2 = 0.0;
  for (const auto& r : records) {
    s.exact_matches += r.exact_match ? 1 : 0;
    s.failures += r.error.empty() ? 0 : 1;
    phase1.push_back(r.phase1_quantum_examples);
    p2 += static_cast<double>(r.phase2_classical_examples);
  }
  if (!records.empty()) {
    const double count = static_cast<double>(records.size());
    s.exact_rate = static_cast<double>(s.exact_matches) / count;
    s.phase1_mean = std::accumulate(phase1.begin(), phase1.end(), 0.0) / count;
    s.phase2_mean = p2 / count;
  }
  s.phase1_p50 = nearest_rank(phase1, 0.5);
  s.phase1_p90 = nearest_rank(phase1, 0.9);
  s.phase1_max = phase1.empty() ? 0 : *std::max_element(phase1.begin(), phase1.end());
  const double k = static_cast<double>(normalized_k(cfg.k));
  s.phase1_reference = k * std::log2(k) * (std::log(static_cast<double>(cfg.r_core)) + 1.0);
  s.phase1_allowance =
      4.0 * s.phase1_reference + 2.0 * static_cast<double>(stall_limit(cfg.k, cfg.n, cfg.delta, cfg.stall_factor));
  return s;
}

Json learn_sparse_summary_to_json(const LearnSparseConfig& cfg, const LearnSparseSummary& s) {
  return {{"n", cfg.n},
          {"k", cfg.k},
          {"r_core", cfg.r_core},
          {"delta", format_real(cfg.delta)},
          {"mode", std::string(phase2_mode_name(cfg.mode))},
          {"seed", cfg.seed},
          {"trials", s.trials},
          {"exact_matches", s.exact_matches},
          {"exact_match_rate", format_real(s.exact_rate)},
          {"failures", s.failures},
          {"phase1_quantum_mean", format_real(s.phase1_mean)},
          {"phase1_quantum_p50", s.phase1_p50},
          {"phase1_quantum_p90", s.phase1_p90},
          {"phase1_quantum_max", s.phase1_max},
          {"phase1_reference_klogk_lnr", format_real(s.phase1_reference)},
          {"phase1_allowance", format_real(s.phase1_allowance)},
          {"phase2_classical_mean", format_real(s.phase2_mean)}};
}

void write_learn_sparse_csv(std::ostream& out, const LearnSparseConfig& cfg, const std::vector<RunRecord>& records,
                            const LearnSparseSummary& s) {
  out << "seed,n,k,r_true,r_found,phase1_quantum_examples,phase2_classical_examples,exact_match,mode,error\n";
  for (const auto& r : records) {
    out << r.seed << ',' << r.n << ',' << r.k << ',' << r.r_true << ',' << r.r_found << ','
        << r.phase1_quantum_examples << ',' << r.phase2_classical_examples << ',' << (r.exact_match ? 1 : 0) << ','
        << r.mode << ',' << r.error << '\n';
  }
  out << "summary," << cfg.n << ',' << cfg.k << ",,," << format_real(s.phase1_mean) << ','
      << format_real(s.phase2_mean) << ',' << format_real(s.exact_rate) << ',' << phase2_mode_name(cfg.mode) << ','
      << s.failures << '\n';
}

QueryLearnReport run_query_learn(const ConceptClass& cc, double stop_mass, unsigned jobs,
                                 std::optional<std::size_t> sample, std::uint64_t seed) {
  QueryLearnReport rep;
  rep.class_size = cc.size();
  rep.length = cc.length();
  if (sample && *sample < cc.size()) {
    std::vector<std::size_t> order(cc.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < *sample; ++i) {
      std::swap(order[i], order[i + rng.below(order.size() - i)]);
    }
    rep.targets.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(*sample));
    std::sort(rep.targets.begin(), rep.targets.end());
    rep.transcripts.resize(rep.targets.size());
    parallel_for(rep.targets.size(), jobs, [&](std::size_t t) {
      MembershipOracle oracle(cc.concepts()[rep.targets[t]]);
      rep.transcripts[t] = entropy_greedy_learn(cc, oracle, stop_mass);
    });
  } else {
    rep.targets.resize(cc.size());
    std::iota(rep.targets.begin(), rep.targets.end(), std::size_t{0});
    rep.transcripts = learn_all_targets(cc, stop_mass, jobs);
    rep.energy = energy_trace(cc, rep.transcripts);
    rep.halted_mass = halted_mass_trace(cc, rep.transcripts);
  }

  double total_q = 0.0, weighted_q = 0.0, correct = 0.0, weighted_correct = 0.0, weight = 0.0;
  for (std::size_t t = 0; t < rep.targets.size(); ++t) {
    const auto& tr = rep.transcripts[t];
    const double mu = cc.mu()[rep.targets[t]];
    const bool ok = tr.final_concept == rep.targets[t];
    rep.max_queries = std::max(rep.max_queries, tr.queries());
    total_q += static_cast<double>(tr.queries());
    weighted_q += mu * static_cast<double>(tr.queries());
    correct += ok ? 1.0 : 0.0;
    weighted_correct += ok ? mu : 0.0;
    weight += mu;
  }
  const double count = static_cast<double>(rep.targets.size());
  rep.mean_queries = total_q / count;
  rep.correctness = correct / count;
  if (weight > 0.0) {
    rep.weighted_mean_queries = weighted_q / weight;
    rep.weighted_correctness = weighted_correct / weight;
  }

  try {
    const SpectralSummary spec = spectral_summary(cc);
    rep.spectral_ratio = spec.ratio;
    if (spec.ratio > 1.0) {
      rep.reference_queries =
          spec.ratio * spec.ratio / std::log2(spec.ratio) * std::log2(static_cast<double>(cc.size()));
    }
    rep.certificate = certify_split(cc);
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateClass && e.code() != Errc::TooConcentrated) throw;
    rep.certificate_note = errc_name(e.code());
  }
  return rep;
}

Json certificate_to_json(const SplitCertificate& cert) {
  return {{"index", cert.index},
          {"split", format_real(cert.split)},
          {"threshold", format_real(cert.threshold)},
          {"gamma_norm", format_real(cert.gamma_norm)},
          {"max_masked_norm", format_real(cert.max_masked_norm)},
          {"spectral_ratio", format_real(cert.ratio)},
          {"certified", cert.split >= cert.threshold}};
}

Json query_learn_report_to_json(const QueryLearnReport& rep) {
  Json j{{"class_size", rep.class_size},
         {"N", rep.length},
         {"targets", rep.targets.size()},
         {"max_queries", rep.max_queries},
         {"mean_queries", format_real(rep.mean_queries)},
         {"mu_weighted_mean_queries", format_real(rep.weighted_mean_queries)},
         {"correctness", format_real(rep.correctness)},
         {"mu_weighted_correctness", format_real(rep.weighted_correctness)}};
  j["spectral_ratio"] = rep.spectral_ratio ? Json(format_real(*rep.spectral_ratio)) : Json(nullptr);
  j["reference_queries"] = rep.reference_queries ? Json(format_real(*rep.reference_queries)) : Json(nullptr);
  if (rep.certificate) {
    j["certificate"] = certificate_to_json(*rep.certificate);
  } else {
    j["certificate"] = nullptr;
    j["certificate_note"] = rep.certificate_note;
  }
  Json energy = Json::array();
  for (double e : rep.energy) energy.push_back(format_real(e));
  j["energy"] = std::move(energy);
  Json halted = Json::array();
  for (double m : rep.halted_mass) halted.push_back(format_real(m));
  j["halted_mass"] = std::move(halted);
  return j;
}

}  // namespace fsparse
