#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fsparse/boolfourier.hpp"
#include "fsparse/chang.hpp"
#include "fsparse/cli.hpp"
#include "fsparse/error.hpp"
#include "fsparse/experiments.hpp"
#include "fsparse/f2linalg.hpp"
#include "fsparse/io.hpp"
#include "fsparse/query_learner.hpp"
#include "fsparse/sparse_learner.hpp"

namespace py = pybind11;
using namespace fsparse;

namespace {

SparseSpectrum spectrum_arg(const std::string& text) { return spectrum_from_json(Json::parse(text)); }
ConceptClass class_arg(const std::string& text) { return concept_class_from_json(Json::parse(text)); }

std::string wht_json(const std::vector<int>& values) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < values.size()) ++n;
  if ((std::size_t{1} << n) != values.size()) throw Error(Errc::InvalidArgument, "table length is not a power of two");
  std::vector<std::int8_t> table;
  for (int v : values) {
    if (v != 1 && v != -1) throw Error(Errc::NotBoolean, "table entries must be +1 or -1");
    table.push_back(static_cast<std::int8_t>(v));
  }
  return spectrum_to_json(wht(TruthTable(n, std::move(table)))).dump();
}

std::string learn_json(const std::string& target, std::size_t k, std::uint64_t seed, double delta,
                       const std::string& mode) {
  const SparseSpectrum s = spectrum_arg(target);
  ExampleOracle oracle(s, seed);
  LearnerConfig cfg;
  cfg.k = k;
  cfg.delta = delta;
  cfg.phase2_mode = parse_phase2_mode(mode);
  const LearnerResult r = learn(oracle, cfg);
  Json span = Json::array();
  for (const auto& v : r.span.vectors) span.push_back(v.to_string());
  return Json{{"spectrum", spectrum_to_json(r.spectrum)},
              {"span", std::move(span)},
              {"log", sample_log_to_json(r.log)},
              {"phase1_quantum_examples", r.phase1_quantum_examples},
              {"phase2_classical_examples", r.phase2_classical_examples},
              {"success_selfreport", r.success_selfreport},
              {"exact_match", r.spectrum == s}}
      .dump();
}

std::string improved_json(const std::string& spectrum) {
  const auto r = verify_improved_chang(spectrum_arg(spectrum));
  return Json{{"holds", r.holds}, {"slack", r.slack}, {"bound", r.bound}, {"alpha", r.alpha.to_string()},
              {"r", r.r}, {"k", r.k}}
      .dump();
}

std::string gen_json(const std::string& family, std::size_t n, std::size_t k, std::size_t r_core, std::size_t t,
                     std::size_t m, std::uint64_t seed) {
  if (family == "and") return spectrum_to_json(and_function(t)).dump();
  if (family == "addressing") return spectrum_to_json(addressing_function(m)).dump();
  if (family == "random") return spectrum_to_json(random_sparse_function({n, k, r_core, seed})).dump();
  throw Error(Errc::InvalidArgument, "unknown family '" + family + "'");
}

std::string certificate_json(const std::string& cls) { return certificate_to_json(certify_split(class_arg(cls))).dump(); }

std::string query_learn_json(const std::string& cls, double stop_mass) {
  return query_learn_report_to_json(run_query_learn(class_arg(cls), stop_mass, 1)).dump();
}

py::tuple cli(const std::vector<std::string>& args) {
  std::vector<std::string> full{"fsparse"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run_cli(full, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse Fourier learning and membership-query laboratory";
  static py::exception<Error> error_type(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = static_cast<py::object&>(error_type)(e.what());
      exc.attr("code") = std::string(errc_name(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    } catch (const nlohmann::json::exception& e) {
      py::object exc = static_cast<py::object&>(error_type)(e.what());
      exc.attr("code") = std::string("ParseError");
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def("wht", &wht_json, py::arg("values"));
  m.def("gen_function", &gen_json, py::arg("family"), py::arg("n"), py::arg("k"), py::arg("r_core"), py::arg("t"),
        py::arg("m"), py::arg("seed"));
  m.def("is_boolean", [](const std::string& s) { return is_boolean(spectrum_arg(s)); });
  m.def("fourier_dimension", [](const std::string& s) { return fourier_span(spectrum_arg(s)).dim(); });
  m.def("granularity_check", [](const std::string& s) { return granularity_check(spectrum_arg(s)); });
  m.def("learn", &learn_json, py::arg("target"), py::arg("k"), py::arg("seed"), py::arg("delta"), py::arg("mode"));
  m.def("verify_improved_chang", &improved_json);
  m.def("scan_all", [](std::size_t n, const std::string& which, unsigned jobs) {
    ScanOptions options;
    options.jobs = jobs;
    return chang_report_to_json(scan_all(n, parse_scan_which(which), options)).dump();
  });
  m.def("subspace_count", [](std::size_t n, std::size_t d) { return subspace_count(n, d).str(); });
  m.def("point_class", [](std::size_t n) { return concept_class_to_json(point_class(n)).dump(); });
  m.def("linear_class", [](std::size_t n) { return concept_class_to_json(linear_class(n)).dump(); });
  m.def("subspace_class", [](std::size_t n, std::size_t k) { return concept_class_to_json(subspace_class(n, k)).dump(); });
  m.def("spectral_ratio", [](const std::string& c) { return spectral_ratio(class_arg(c)); });
  m.def("certify_split", &certificate_json);
  m.def("query_learn", &query_learn_json, py::arg("cls"), py::arg("stop_mass"));
  m.def("cli", &cli);
}
