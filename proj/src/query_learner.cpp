#include "fsparse/query_learner.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "fsparse/error.hpp"
#include "fsparse/f2linalg.hpp"

namespace fsparse {

namespace {

constexpr double kMassTolerance = 1e-12;
constexpr double kTieTolerance = 1e-12;

void require_index(const ConceptClass& cc, std::size_t i) {
  if (i >= cc.length()) {
    throw Error(Errc::IndexOutOfRange,
                "coordinate " + std::to_string(i) + " outside length " + std::to_string(cc.length()));
  }
}

}  // namespace

ConceptClass::ConceptClass(std::size_t length, std::vector<BitVec> concepts, std::vector<double> mu)
    : length_(length), concepts_(std::move(concepts)), mu_(std::move(mu)) {
  if (concepts_.empty()) throw Error(Errc::InvalidArgument, "concept class is empty");
  if (mu_.size() != concepts_.size()) {
    throw Error(Errc::InvalidArgument, "mu has " + std::to_string(mu_.size()) + " entries for " +
                                           std::to_string(concepts_.size()) + " concepts");
  }
  std::set<BitVec> seen;
  for (const auto& c : concepts_) {
    if (c.size() != length_) {
      throw Error(Errc::InvalidArgument, "concept '" + c.to_string() + "' does not have length " +
                                             std::to_string(length_));
    }
    if (!seen.insert(c).second) throw Error(Errc::InvalidArgument, "repeated concept '" + c.to_string() + "'");
  }
  double total = 0.0;
  for (double m : mu_) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw Error(Errc::InvalidArgument, "mu entries must be finite and >= 0");
    total += m;
  }
  if (std::fabs(total - 1.0) > kMassTolerance) {
    throw Error(Errc::InvalidArgument, "mu sums to " + std::to_string(total));
  }
  for (double& m : mu_) m /= total;
}

ConceptClass ConceptClass::uniform(std::size_t length, std::vector<BitVec> concepts) {
  const std::size_t size = concepts.size();
  std::vector<double> mu(size, size == 0 ? 0.0 : 1.0 / static_cast<double>(size));
  return ConceptClass(length, std::move(concepts), std::move(mu));
}

double ConceptClass::max_mass() const { return *std::max_element(mu_.begin(), mu_.end()); }

ConceptClass ConceptClass::with_mu(std::vector<double> mu) const {
  return ConceptClass(length_, concepts_, std::move(mu));
}

std::pair<double, double> ConceptClass::split_masses(std::size_t i) const {
  require_index(*this, i);
  double zero = 0.0, one = 0.0;
  for (std::size_t c = 0; c < concepts_.size(); ++c) (concepts_[c].get(i) ? one : zero) += mu_[c];
  return {zero, one};
}

AdversaryMatrix build_adversary_matrix(const ConceptClass& cc) {
  const auto size = static_cast<Eigen::Index>(cc.size());
  Eigen::VectorXd v(size);
  for (Eigen::Index c = 0; c < size; ++c) v(c) = std::sqrt(cc.mu()[static_cast<std::size_t>(c)]);
  AdversaryMatrix g{v * v.transpose(), true};
  g.entries.diagonal().setZero();
  return g;
}

Eigen::MatrixXd masked_matrix(const AdversaryMatrix& g, const ConceptClass& cc, std::size_t i) {
  require_index(cc, i);
  if (g.entries.rows() != static_cast<Eigen::Index>(cc.size())) {
    throw Error(Errc::InvalidArgument, "adversary matrix does not match the class size");
  }
  Eigen::MatrixXd out = g.entries;
  const auto& concepts = cc.concepts();
  for (std::size_t a = 0; a < concepts.size(); ++a) {
    for (std::size_t b = 0; b < concepts.size(); ++b) {
      if (concepts[a].get(i) == concepts[b].get(i)) {
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 0.0;
      }
    }
  }
  return out;
}

double masked_norm(const AdversaryMatrix& g, const ConceptClass& cc, std::size_t i, NormOptions options) {
  if (g.from_distribution) {
    require_index(cc, i);
    const auto [zero, one] = cc.split_masses(i);
    return std::sqrt(zero * one);
  }
  return operator_norm(masked_matrix(g, cc, i), options);
}

double operator_norm(const AdversaryMatrix& g, NormOptions options) { return operator_norm(g.entries, options); }

SpectralSummary spectral_summary(const ConceptClass& cc, NormOptions options) {
  if (cc.size() < 2) throw Error(Errc::DegenerateClass, "spectral ratio needs at least two concepts");
  const AdversaryMatrix g = build_adversary_matrix(cc);
  SpectralSummary out;
  out.gamma_norm = operator_norm(g, options);
  for (std::size_t i = 0; i < cc.length(); ++i) {
    const double norm = masked_norm(g, cc, i, options);
    if (norm > out.max_masked_norm) {
      out.max_masked_norm = norm;
      out.argmax = i;
    }
  }
  if (out.max_masked_norm <= 0.0) throw Error(Errc::DegenerateClass, "every masked norm is zero");
  out.ratio = out.gamma_norm / out.max_masked_norm;
  return out;
}

double spectral_ratio(const ConceptClass& cc, NormOptions options) { return spectral_summary(cc, options).ratio; }

SplitCertificate certify_split(const ConceptClass& cc, NormOptions options) {
  if (cc.max_mass() > kDefaultStopMass + kMassTolerance) {
    throw Error(Errc::TooConcentrated, "largest concept mass " + std::to_string(cc.max_mass()) + " exceeds 5/6");
  }
  const SpectralSummary summary = spectral_summary(cc, options);
  const auto [zero, one] = cc.split_masses(summary.argmax);
  SplitCertificate out;
  out.index = summary.argmax;
  out.split = std::min(zero, one);
  out.ratio = summary.ratio;
  out.threshold = 1.0 / (36.0 * summary.ratio * summary.ratio);
  out.gamma_norm = summary.gamma_norm;
  out.max_masked_norm = summary.max_masked_norm;
  return out;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

namespace {

struct Posterior {
  std::vector<std::size_t> alive;
  std::vector<double> mass;  // normalized, aligned with alive

  double max_mass() const { return mass.empty() ? 0.0 : *std::max_element(mass.begin(), mass.end()); }
  double entropy() const { return shannon_entropy(mass); }

  void normalize() {
    const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    if (total > 0.0) {
      for (double& m : mass) m /= total;
    } else {
      std::fill(mass.begin(), mass.end(), 1.0 / static_cast<double>(mass.size()));
    }
  }
};

}  // namespace

Transcript entropy_greedy_learn(const ConceptClass& cc, MembershipOracle& oracle, double stop_mass) {
  if (!(stop_mass > 0.0 && stop_mass <= 1.0)) throw Error(Errc::InvalidArgument, "stop_mass must lie in (0, 1]");
  if (oracle.length() != cc.length()) throw Error(Errc::InvalidArgument, "oracle length does not match the class");

  Posterior post;
  post.alive.resize(cc.size());
  std::iota(post.alive.begin(), post.alive.end(), std::size_t{0});
  post.mass = cc.mu();

  Transcript out;
  out.initial_energy = post.entropy();
  const auto& concepts = cc.concepts();
  std::vector<double> ones(cc.length());

  while (post.max_mass() < stop_mass - kMassTolerance) {
    std::fill(ones.begin(), ones.end(), 0.0);
    for (std::size_t a = 0; a < post.alive.size(); ++a) {
      const BitVec& c = concepts[post.alive[a]];
      for (std::size_t i = 0; i < ones.size(); ++i) {
        if (c.get(i)) ones[i] += post.mass[a];
      }
    }
    double best_h = 0.0;
    for (double p : ones) best_h = std::max(best_h, binary_entropy(p));
    if (best_h <= 0.0) throw Error(Errc::DegenerateClass, "no coordinate splits the posterior");
    std::size_t query = 0;
    while (binary_entropy(ones[query]) < best_h - kTieTolerance) ++query;

    const bool bit = oracle.query(query);
    Posterior next;
    for (std::size_t a = 0; a < post.alive.size(); ++a) {
      if (concepts[post.alive[a]].get(query) == bit) {
        next.alive.push_back(post.alive[a]);
        next.mass.push_back(post.mass[a]);
      }
    }
    if (next.alive.empty()) {
      throw Error(Errc::EmptyPosterior, "no concept answers " + std::to_string(bit) + " at " + std::to_string(query));
    }
    next.normalize();
    post = std::move(next);

    TranscriptStep step;
    step.index = query;
    step.bit = bit;
    step.class_size = post.alive.size();
    step.max_mass = post.max_mass();
    step.energy = post.entropy();
    step.query_entropy = binary_entropy(ones[query]);
    step.halted = step.max_mass >= stop_mass - kMassTolerance;
    out.steps.push_back(step);
  }

  const auto top = std::max_element(post.mass.begin(), post.mass.end());
  out.final_concept = post.alive[static_cast<std::size_t>(top - post.mass.begin())];
  return out;
}

std::vector<Transcript> learn_all_targets(const ConceptClass& cc, double stop_mass, unsigned jobs) {
  std::vector<Transcript> out(cc.size());
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      MembershipOracle oracle(cc.concepts()[c]);
      out[c] = entropy_greedy_learn(cc, oracle, stop_mass);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, cc.size());
  if (workers == 1) {
    run(0, cc.size());
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const std::size_t chunk = (cc.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        run(w * chunk, std::min(cc.size(), (w + 1) * chunk));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace {

void require_all_targets(const ConceptClass& cc, std::span<const Transcript> transcripts) {
  if (transcripts.size() != cc.size()) {
    throw Error(Errc::InvalidArgument, "expected one transcript per concept");
  }
}

std::size_t longest(std::span<const Transcript> transcripts) {
  std::size_t t = 0;
  for (const auto& tr : transcripts) t = std::max(t, tr.queries());
  return t;
}

}  // namespace

std::vector<double> energy_trace(const ConceptClass& cc, std::span<const Transcript> transcripts) {
  require_all_targets(cc, transcripts);
  const std::size_t horizon = longest(transcripts);
  std::vector<double> out(horizon + 1, 0.0);
  out[0] = shannon_entropy(cc.mu());
  for (std::size_t t = 1; t <= horizon; ++t) {
    for (std::size_t c = 0; c < cc.size(); ++c) {
      const auto& tr = transcripts[c];
      const std::size_t done = std::min(t, tr.queries());
      const double branch = done == 0 ? tr.initial_energy : tr.steps[done - 1].energy;
      out[t] += cc.mu()[c] * branch;
    }
  }
  return out;
}

std::vector<double> halted_mass_trace(const ConceptClass& cc, std::span<const Transcript> transcripts) {
  require_all_targets(cc, transcripts);
  std::vector<double> out(longest(transcripts) + 1, 0.0);
  for (std::size_t c = 0; c < cc.size(); ++c) {
    const auto& steps = transcripts[c].steps;
    if (!steps.empty() && !steps.back().halted) continue;
    for (std::size_t t = steps.size(); t < out.size(); ++t) out[t] += cc.mu()[c];
  }
  return out;
}

std::vector<double> expected_energy_drops(const ConceptClass& cc, std::span<const Transcript> transcripts) {
  require_all_targets(cc, transcripts);
  std::vector<double> out(longest(transcripts), 0.0);
  for (std::size_t c = 0; c < cc.size(); ++c) {
    const auto& steps = transcripts[c].steps;
    for (std::size_t t = 0; t < steps.size(); ++t) out[t] += cc.mu()[c] * steps[t].query_entropy;
  }
  return out;
}

ConceptClass point_class(std::size_t n_points) {
  if (n_points == 0) throw Error(Errc::InvalidArgument, "point class needs N >= 1");
  std::vector<BitVec> concepts;
  for (std::size_t i = 0; i < n_points; ++i) concepts.push_back(BitVec::unit(n_points, i));
  return ConceptClass::uniform(n_points, std::move(concepts));
}

namespace {

constexpr std::size_t kMaxClassVars = 14;

void require_class_vars(std::size_t n) {
  if (n > kMaxClassVars) {
    throw Error(Errc::TooLarge, "classes over 2^" + std::to_string(n) + " positions are not supported");
  }
}

}  // namespace

ConceptClass linear_class(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "linear class needs n >= 1");
  require_class_vars(n);
  const std::size_t positions = std::size_t{1} << n;
  std::vector<BitVec> xs;
  for (std::size_t x = 0; x < positions; ++x) xs.push_back(BitVec::from_index(x, n));
  std::vector<BitVec> concepts;
  for (std::size_t s = 0; s < positions; ++s) {
    const BitVec chi = BitVec::from_index(s, n);
    BitVec table(positions);
    for (std::size_t x = 0; x < positions; ++x) table.set(x, chi.dot(xs[x]));
    concepts.push_back(std::move(table));
  }
  return ConceptClass::uniform(positions, std::move(concepts));
}

ConceptClass subspace_class(std::size_t n, std::size_t k) {
  if (k == 0 || (k & (k - 1)) != 0) throw Error(Errc::InvalidArgument, "k must be a power of two");
  const auto log_k = static_cast<std::size_t>(std::countr_zero(k));
  if (log_k > n) throw Error(Errc::InvalidArgument, "log2 k exceeds n");
  require_class_vars(n);
  const std::size_t d = n - log_k;
  const std::size_t positions = std::size_t{1} << n;
  std::vector<BitVec> concepts;
  for (const auto& basis : enumerate_subspaces(n, d)) {
    BitVec table(positions);
    for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << d); ++combo) {
      BitVec x(n);
      for (std::size_t j = 0; j < d; ++j) {
        if ((combo >> j) & 1u) x ^= basis.vectors[j];
      }
      table.set(x.to_index());
    }
    concepts.push_back(std::move(table));
  }
  return ConceptClass::uniform(positions, std::move(concepts));
}

ConceptClass random_concept_class(Rng& rng, std::size_t size, std::size_t length, double max_mass) {
  if (size == 0 || length == 0) throw Error(Errc::InvalidArgument, "random class needs size and length >= 1");
  if (length < 63 && size > (std::size_t{1} << length)) {
    throw Error(Errc::InvalidArgument, "more concepts than strings of that length");
  }
  if (max_mass * static_cast<double>(size) < 1.0 - kMassTolerance) {
    throw Error(Errc::Unsatisfiable, "no distribution on this many concepts has a max mass that small");
  }
  std::set<BitVec> chosen;
  std::vector<BitVec> concepts;
  while (concepts.size() < size) {
    BitVec c(length);
    for (std::size_t i = 0; i < length; ++i) c.set(i, rng.bit());
    if (chosen.insert(c).second) concepts.push_back(std::move(c));
  }
  std::vector<double> weights(size);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (auto& w : weights) w = static_cast<double>(1 + rng.below(16));
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (auto& w : weights) w /= total;
    if (*std::max_element(weights.begin(), weights.end()) <= max_mass + kMassTolerance) {
      return ConceptClass(length, std::move(concepts), std::move(weights));
    }
  }
  return ConceptClass::uniform(length, std::move(concepts));
}

}  // namespace fsparse
