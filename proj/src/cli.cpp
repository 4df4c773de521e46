#include "fsparse/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fsparse/chang.hpp"
#include "fsparse/error.hpp"
#include "fsparse/experiments.hpp"
#include "fsparse/io.hpp"

namespace fsparse {

namespace {

// Options from a JSON config are spliced in right after the subcommand name,
// so explicit flags (parsed later, last one wins) override them.
std::vector<std::string> splice_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path || args.size() < 2) return args;
  std::ifstream in(*path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open config file '" + *path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("config file: ") + e.what());
  }
  if (!cfg.is_object()) throw Error(Errc::ParseError, "config file must hold a JSON object");
  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
    } else if (value.is_string()) {
      injected.insert(injected.end(), {flag, value.get<std::string>()});
    } else if (value.is_number()) {
      injected.insert(injected.end(), {flag, value.dump()});
    } else {
      throw Error(Errc::ParseError, "config key '" + key + "' must be a scalar");
    }
  }
  std::vector<std::string> out(args.begin(), args.begin() + 2);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

struct ClassOptions {
  std::string name = "point";
  std::size_t points = 4;
  std::size_t n = 2;
  std::size_t k = 2;
  std::string file;
  std::string mu;
};

void add_class_options(CLI::App* sub, ClassOptions& o) {
  sub->add_option("--class", o.name, "builtin class")->check(CLI::IsMember({"point", "linear", "subspace"}));
  sub->add_option("--N", o.points, "point class size")->check(CLI::PositiveNumber);
  sub->add_option("--n", o.n, "variables for the linear and subspace classes")->check(CLI::PositiveNumber);
  sub->add_option("--k", o.k, "subspace class: concepts are dimension n - log2 k subspaces");
  sub->add_option("--class-file", o.file, "JSON {N, concepts, mu}");
  sub->add_option("--mu", o.mu, "uniform, random, or comma-separated masses (p/q or decimals); default: uniform, or the class file's masses");
}

ConceptClass build_class(const ClassOptions& o, std::uint64_t seed) {
  ConceptClass cc = [&] {
    if (!o.file.empty()) return concept_class_from_json(read_json_file(o.file));
    if (o.name == "linear") return linear_class(o.n);
    if (o.name == "subspace") return subspace_class(o.n, o.k);
    return point_class(o.points);
  }();
  if (o.mu.empty()) return cc;
  std::vector<double> mu;
  if (o.mu == "uniform") {
    mu.assign(cc.size(), 1.0 / static_cast<double>(cc.size()));
  } else if (o.mu == "random") {
    Rng rng(derive_seed(seed, 7));
    double total = 0.0;
    for (std::size_t c = 0; c < cc.size(); ++c) total += mu.emplace_back(static_cast<double>(1 + rng.below(16)));
    for (double& m : mu) m /= total;
  } else {
    std::stringstream ss(o.mu);
    std::string item;
    while (std::getline(ss, item, ',')) mu.push_back(parse_rational(item));
  }
  return cc.with_mu(std::move(mu));
}

int run_learn_sparse_cmd(const LearnSparseConfig& cfg, const std::string& out_path, const std::string& format,
                         std::ostream& out) {
  const auto records = run_learn_sparse(cfg);
  const auto summary = summarize_learn_sparse(cfg, records);
  Sink sink(out_path, out);
  if (format == "json") {
    Json runs = Json::array();
    for (const auto& r : records) runs.push_back(run_record_to_json(r));
    sink.stream() << Json{{"runs", std::move(runs)}, {"summary", learn_sparse_summary_to_json(cfg, summary)}}.dump(2)
                  << '\n';
  } else {
    write_learn_sparse_csv(sink.stream(), cfg, records, summary);
  }
  if (!out_path.empty()) out << learn_sparse_summary_to_json(cfg, summary).dump(2) << '\n';
  return exit_code::ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse Fourier learning and membership-query laboratory", "fsparse"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "JSON object of flag values; explicit flags win");
    sub->add_option("--seed", seed, "master seed")->envname("FSPARSE_SEED");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  LearnSparseConfig ls;
  std::string ls_out, ls_format = "csv", ls_mode = "estimate";
  auto* learn_cmd = app.add_subcommand("learn-sparse", "plant sparse functions and learn them");
  common(learn_cmd);
  learn_cmd->add_option("--n", ls.n, "variables");
  learn_cmd->add_option("--k", ls.k, "sparsity");
  learn_cmd->add_option("--r-core", ls.r_core, "Fourier dimension of the planted function");
  learn_cmd->add_option("--trials", ls.trials, "planted instances");
  learn_cmd->add_option("--delta", ls.delta, "failure probability");
  learn_cmd->add_option("--stall-factor", ls.stall_factor, "phase-1 stopping constant");
  learn_cmd->add_option("--phase2", ls_mode, "estimate or coupon")->check(CLI::IsMember({"estimate", "coupon"}));
  learn_cmd->add_option("--out", ls_out, "result table path (default stdout)");
  learn_cmd->add_option("--format", ls_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::size_t scan_n = 3;
  std::string scan_which = "improved", scan_out, scan_csv;
  auto* scan_cmd = app.add_subcommand("chang-scan", "check the Chang-type bounds on every function of n <= 4 variables");
  common(scan_cmd);
  scan_cmd->add_option("--n", scan_n, "variables");
  scan_cmd->add_option("--which", scan_which, "improved, original, weight, granularity or all");
  scan_cmd->add_option("--out", scan_out, "report JSON path (default stdout)");
  scan_cmd->add_option("--violations-csv", scan_csv, "one row per violation");

  ClassOptions ql_class;
  double stop_mass = kDefaultStopMass;
  std::optional<std::size_t> ql_sample;
  std::string ql_out, ql_format = "csv";
  auto* query_cmd = app.add_subcommand("query-learn", "entropy-greedy membership-query learning");
  common(query_cmd);
  add_class_options(query_cmd, ql_class);
  query_cmd->add_option("--stop-mass", stop_mass, "halt when a concept reaches this posterior mass");
  query_cmd->add_option("--sample", ql_sample, "learn this many random targets instead of all");
  query_cmd->add_option("--out", ql_out, "transcript path");
  query_cmd->add_option("--format", ql_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  ClassOptions adv_class;
  auto* adv_cmd = app.add_subcommand("adv-cert", "adversary-matrix split certificate");
  common(adv_cmd);
  add_class_options(adv_cmd, adv_class);

  std::string family = "random", gen_out;
  GeneratorParams gp{6, 4, 2, 0};
  std::size_t and_t = 3, add_m = 2;
  auto* gen_cmd = app.add_subcommand("gen-function", "emit a spectrum fixture");
  common(gen_cmd);
  gen_cmd->add_option("--family", family, "random, and or addressing")
      ->check(CLI::IsMember({"random", "and", "addressing"}));
  gen_cmd->add_option("--n", gp.n, "variables (random)");
  gen_cmd->add_option("--k", gp.k, "sparsity (random)");
  gen_cmd->add_option("--r-core", gp.r_core, "Fourier dimension (random)");
  gen_cmd->add_option("--t", and_t, "AND arity");
  gen_cmd->add_option("--m", add_m, "addressing block size, a power of two");
  gen_cmd->add_option("--out", gen_out, "spectrum JSON path (default stdout)");

  try {
    const std::vector<std::string> args = splice_config(raw_args);
    std::vector<char*> argv;
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (learn_cmd->parsed()) {
      ls.seed = seed;
      ls.jobs = jobs;
      ls.mode = parse_phase2_mode(ls_mode);
      return run_learn_sparse_cmd(ls, ls_out, ls_format, out);
    }
    if (scan_cmd->parsed()) {
      ScanOptions so;
      so.jobs = jobs;
      const ChangReport report = scan_all(scan_n, parse_scan_which(scan_which), so);
      Sink sink(scan_out, out);
      sink.stream() << chang_report_to_json(report).dump(2) << '\n';
      if (!scan_csv.empty()) {
        Sink csv(scan_csv, out);
        write_violations_csv(csv.stream(), report);
      }
      return report.violations.empty() ? exit_code::ok : exit_code::violation;
    }
    if (query_cmd->parsed()) {
      const ConceptClass cc = build_class(ql_class, seed);
      const QueryLearnReport rep = run_query_learn(cc, stop_mass, jobs, ql_sample, seed);
      if (!ql_out.empty()) {
        Sink sink(ql_out, out);
        if (ql_format == "json") {
          Json all = Json::array();
          for (std::size_t t = 0; t < rep.targets.size(); ++t) {
            Json steps = Json::array();
            for (const auto& s : rep.transcripts[t].steps) {
              steps.push_back({{"i", s.index},
                               {"bit", s.bit ? 1 : 0},
                               {"class_size", s.class_size},
                               {"max_mass", format_real(s.max_mass)},
                               {"E", format_real(s.energy)}});
            }
            all.push_back({{"target", rep.targets[t]}, {"steps", std::move(steps)}});
          }
          sink.stream() << all.dump(2) << '\n';
        } else {
          write_transcripts_csv(sink.stream(), cc, rep.transcripts, rep.targets);
        }
      }
      out << query_learn_report_to_json(rep).dump(2) << '\n';
      return exit_code::ok;
    }
    if (adv_cmd->parsed()) {
      const ConceptClass cc = build_class(adv_class, seed);
      const SplitCertificate cert = certify_split(cc);
      out << certificate_to_json(cert).dump(2) << '\n';
      return cert.split >= cert.threshold ? exit_code::ok : exit_code::violation;
    }
    if (gen_cmd->parsed()) {
      gp.seed = seed;
      const SparseSpectrum s = family == "and" ? and_function(and_t)
                               : family == "addressing" ? addressing_function(add_m)
                                                        : random_sparse_function(gp);
      Sink sink(gen_out, out);
      sink.stream() << spectrum_to_json(s).dump(2) << '\n';
      return exit_code::ok;
    }
    return exit_code::usage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "fsparse: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const Error& e) {
    err << "fsparse: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::InvalidArgument:
      case Errc::ParseError:
      case Errc::TooLarge:
      case Errc::Unsatisfiable:
      case Errc::IndexOutOfRange:
        return exit_code::usage;
      case Errc::TooConcentrated:
      case Errc::DegenerateClass:
      case Errc::EmptyPosterior:
        return exit_code::precondition;
      default:
        return exit_code::failure;
    }
  }
}

}  // namespace fsparse
