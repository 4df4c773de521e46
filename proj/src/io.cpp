#include "fsparse/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "fsparse/error.hpp"

namespace fsparse {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::ParseError, what); }

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) parse_fail("not an integer: '" + std::string(text) + "'");
  return value;
}

BitVec parse_bits(const Json& j, std::size_t len, const char* what) {
  if (!j.is_string()) parse_fail(std::string(what) + " must be a bitstring");
  const auto text = j.get<std::string>();
  if (text.size() != len || text.find_first_not_of("01") != std::string::npos) {
    parse_fail(std::string(what) + " '" + text + "' is not a bitstring of length " + std::to_string(len));
  }
  return BitVec::from_string(text);
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    parse_fail(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

double parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const auto p = parse_int(text.substr(0, slash));
    const auto q = parse_int(text.substr(slash + 1));
    if (q <= 0) parse_fail("rational '" + std::string(text) + "' needs a positive denominator");
    return static_cast<double>(p) / static_cast<double>(q);
  }
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) parse_fail("not a number: '" + std::string(text) + "'");
  return value;
}

Json spectrum_to_json(const SparseSpectrum& s) {
  Json j;
  j["n"] = s.vars();
  if (s.k_declared()) j["k"] = *s.k_declared();
  Json coeffs = Json::array();
  for (const auto& [chi, value] : s.coeffs()) {
    coeffs.push_back({{"S", chi.to_string()}, {"num", value.num()}, {"log2_den", value.log2_den()}});
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

SparseSpectrum spectrum_from_json(const Json& j) {
  const auto n = field<std::size_t>(j, "n");
  std::optional<std::size_t> k;
  if (j.contains("k")) k = field<std::size_t>(j, "k");
  const auto& coeffs = j.contains("coeffs") ? j.at("coeffs") : Json();
  if (!coeffs.is_array()) parse_fail("field 'coeffs' must be an array");
  SparseSpectrum::Map map;
  for (const auto& c : coeffs) {
    const BitVec chi = parse_bits(c.contains("S") ? c.at("S") : Json(), n, "S");
    const auto num = field<std::int64_t>(c, "num");
    const auto log2_den = field<int>(c, "log2_den");
    if (log2_den < 0 || log2_den > 62) parse_fail("log2_den out of range");
    if (num == 0) continue;
    if (!map.emplace(chi, Dyadic(num, log2_den)).second) parse_fail("repeated character '" + chi.to_string() + "'");
  }
  try {
    return SparseSpectrum(n, std::move(map), k);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

Json sample_log_to_json(const SampleLog& log) {
  return {{"seed", log.seed},
          {"quantum_examples_used", log.quantum_examples_used},
          {"fourier_samples_accepted", log.fourier_samples_accepted},
          {"classical_examples_used", log.classical_examples_used},
          {"membership_queries_used", log.membership_queries_used}};
}

Json chang_report_to_json(const ChangReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"table_id", v.table_id},
                          {"check", v.check},
                          {"detail", v.detail},
                          {"value", format_real(v.value)},
                          {"bound", format_real(v.bound)}});
  }
  return {{"n", r.n},
          {"which", r.which},
          {"functions_checked", r.functions_checked},
          {"improved_checks", r.improved_checks},
          {"original_checks", r.original_checks},
          {"original_indicator_checks", r.original_indicator_checks},
          {"weight_checks", r.weight_checks},
          {"granularity_checks", r.granularity_checks},
          {"violation_count", r.violations.size()},
          {"max_tightness", format_real(r.max_tightness)},
          {"max_tightness_table", r.max_tightness_table},
          {"max_dimension_ratio", format_real(r.max_dimension_ratio)},
          {"base_disagreements", r.base_disagreements},
          {"dominance_eligible", r.dominance_eligible},
          {"dominance_improved_smaller", r.dominance_improved_smaller},
          {"violations", std::move(violations)}};
}

void write_violations_csv(std::ostream& out, const ChangReport& report) {
  out << "table_id,check,detail,value,bound\n";
  for (const auto& v : report.violations) {
    out << v.table_id << ',' << v.check << ',' << v.detail << ',' << format_real(v.value) << ','
        << format_real(v.bound) << '\n';
  }
}

ConceptClass concept_class_from_json(const Json& j) {
  const auto length = field<std::size_t>(j, "N");
  if (length == 0) parse_fail("N must be positive");
  const auto& list = j.contains("concepts") ? j.at("concepts") : Json();
  if (!list.is_array() || list.empty()) parse_fail("field 'concepts' must be a non-empty array");
  std::vector<BitVec> concepts;
  for (const auto& c : list) concepts.push_back(parse_bits(c, length, "concept"));
  try {
    if (!j.contains("mu")) return ConceptClass::uniform(length, std::move(concepts));
    const auto& mu_json = j.at("mu");
    if (!mu_json.is_array()) parse_fail("field 'mu' must be an array");
    std::vector<double> mu;
    for (const auto& m : mu_json) {
      if (m.is_number()) {
        mu.push_back(m.get<double>());
      } else if (m.is_string()) {
        mu.push_back(parse_rational(m.get<std::string>()));
      } else {
        parse_fail("mu entries must be numbers or \"p/q\" strings");
      }
    }
    return ConceptClass(length, std::move(concepts), std::move(mu));
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    parse_fail(e.what());
  }
}

Json concept_class_to_json(const ConceptClass& cc) {
  Json concepts = Json::array();
  for (const auto& c : cc.concepts()) concepts.push_back(c.to_string());
  Json mu = Json::array();
  for (double m : cc.mu()) mu.push_back(m);
  return {{"N", cc.length()}, {"concepts", std::move(concepts)}, {"mu", std::move(mu)}};
}

void write_transcripts_csv(std::ostream& out, const ConceptClass& cc, std::span<const Transcript> transcripts,
                           std::span<const std::size_t> targets) {
  if (!targets.empty() && targets.size() != transcripts.size()) {
    throw Error(Errc::InvalidArgument, "targets and transcripts differ in length");
  }
  out << "target,t,i_t,bit,class_size,max_mass,E_t\n";
  for (std::size_t j = 0; j < transcripts.size(); ++j) {
    const auto& tr = transcripts[j];
    const std::size_t c = targets.empty() ? j : targets[j];
    out << c << ",0,,," << cc.size() << ',' << format_real(cc.max_mass()) << ',' << format_real(tr.initial_energy)
        << '\n';
    for (std::size_t t = 0; t < tr.steps.size(); ++t) {
      const auto& s = tr.steps[t];
      out << c << ',' << t + 1 << ',' << s.index << ',' << (s.bit ? 1 : 0) << ',' << s.class_size << ','
          << format_real(s.max_mass) << ',' << format_real(s.energy) << '\n';
    }
  }
}

Json run_record_to_json(const RunRecord& r) {
  Json j{{"seed", r.seed},
         {"n", r.n},
         {"k", r.k},
         {"r_true", r.r_true},
         {"r_found", r.r_found},
         {"phase1_quantum_examples", r.phase1_quantum_examples},
         {"phase2_classical_examples", r.phase2_classical_examples},
         {"exact_match", r.exact_match},
         {"mode", r.mode}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

}  // namespace fsparse
