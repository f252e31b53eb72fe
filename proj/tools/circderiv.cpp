// circderiv: command-line front end for sampling circle-rooted random
// polynomials, computing derivative zeros and running convergence sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "circderiv/circle_law.hpp"
#include "circderiv/error.hpp"
#include "circderiv/experiments.hpp"
#include "circderiv/measure.hpp"
#include "circderiv/polynomial.hpp"
#include "circderiv/report_io.hpp"
#include "circderiv/rootfind.hpp"
#include "circderiv/text_util.hpp"

namespace {

using namespace circderiv;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::string config;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& part : detail::split(text, ',')) {
    const auto v = detail::parse_integer(part);
    if (v < 1) throw Error(ErrorKind::InvalidArgument, "degrees must be positive");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

json points_json(std::span<const cdouble> points) {
  json arr = json::array();
  for (const auto& z : points) arr.push_back({z.real(), z.imag()});
  return arr;
}

void emit_points(const GlobalOptions& g, std::span<const cdouble> points, json extra = json::object()) {
  Output out(g.out);
  if (g.format == "json") {
    extra["points"] = points_json(points);
    out.stream() << extra.dump(2) << '\n';
  } else {
    write_points_csv(out.stream(), points);
  }
}

EmpiricalMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open measure file '" + path + "'");
  return read_measure_csv(in);
}

// key = value lines from a config file, turned into --key=value arguments.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  while (std::getline(in, line)) {
    const std::string row = detail::trim(line);
    if (row.empty() || row.front() == '#' || row.front() == ';') continue;
    const auto eq = row.find('=');
    if (eq == std::string::npos) throw UsageError("config line without '=': " + row);
    std::string key = detail::trim(row.substr(0, eq));
    const std::string value = detail::trim(row.substr(eq + 1));
    if (key.rfind("--", 0) != 0) key = "--" + key;
    if (key == "--config") continue;
    args.push_back(key + "=" + value);
  }
  return args;
}

// Inserts config-file arguments right after the subcommand, so that explicit
// command-line flags (parsed later, last value wins) override them.
std::vector<std::string> expand_config(std::vector<std::string> args, const std::vector<std::string>& commands) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const auto extra = config_arguments(path);
  std::size_t pos = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (std::find(commands.begin(), commands.end(), args[i]) != commands.end()) {
      pos = i + 1;
      break;
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), extra.begin(), extra.end());
  return args;
}

int run(int argc, char** argv) {
  CLI::App app{"Zeros of derivatives of random polynomials with i.i.d. zeros on the unit circle"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Base random seed");
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", g.config, "File of 'key = value' lines; flags override it");

  // sample
  std::string law_text = "uniform";
  std::size_t n = 0;
  std::uint64_t stream = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Emit i.i.d. zeros drawn from a circle law");
  sample_cmd->add_option("--law", law_text, "uniform | atoms:z,w;... | arc:lo,hi");
  sample_cmd->add_option("--n", n, "Number of zeros")->required();
  sample_cmd->add_option("--stream", stream, "Stream index");

  // derive
  std::string scheme_text = "ordinary";
  std::string roots_text;
  int k = 1;
  auto* derive_cmd = app.add_subcommand("derive", "Emit the zeros of a generalized derivative");
  derive_cmd->add_option("--law", law_text, "Law of the sampled zeros");
  derive_cmd->add_option("--n", n, "Degree when sampling from --law");
  derive_cmd->add_option("--roots", roots_text, "Explicit roots 're+imi,...' instead of sampling");
  derive_cmd->add_option("--scheme", scheme_text, "ordinary | polar:re+imi | sznagy:l1,...");
  derive_cmd->add_option("--k", k, "Derivative order (ordinary scheme)");
  derive_cmd->add_option("--stream", stream, "Stream index");

  // prohorov
  std::string file_a;
  std::string file_b;
  double tol = 1e-9;
  auto* prohorov_cmd = app.add_subcommand("prohorov", "Prohorov distance between two measure CSV files");
  prohorov_cmd->add_option("first", file_a, "re,im[,weight] CSV")->required();
  prohorov_cmd->add_option("second", file_b, "re,im[,weight] CSV")->required();
  prohorov_cmd->add_option("--tol", tol, "Additive tolerance (>= 1e-9)");

  // converge / pairing share the sweep options
  ExperimentConfig config;
  std::string n_text = "50,100,200,400,800,1600";
  std::size_t seed_count = 20;
  double sznagy_cap = 4.0;
  auto add_sweep_options = [&](CLI::App* cmd) {
    cmd->add_option("--law", law_text, "Law of the zeros");
    cmd->add_option("--scheme", scheme_text, "ordinary | polar:re+imi | sznagy | sznagy:l1,...");
    cmd->add_option("--k", config.k, "Derivative order (ordinary scheme)");
    cmd->add_option("--n", n_text, "Comma-separated increasing degrees");
    cmd->add_option("--seeds", seed_count, "Number of streams of the base seed");
    cmd->add_option("--eps0", config.eps0, "Pairing radius");
    cmd->add_option("--q", config.q, "Pairing quota, 0 < eps0 < 1 - q");
    cmd->add_option("--sznagy-cap", sznagy_cap, "Upper bound on random Sz.-Nagy weights");
    cmd->add_option("--threads", config.threads, "Worker threads (0: CIRCLE_DERIVS_THREADS or all cores)");
  };
  auto* converge_cmd = app.add_subcommand("converge", "Convergence diagnostics over degrees and seeds");
  add_sweep_options(converge_cmd);
  converge_cmd->add_option("--p-max", config.p_max, "Largest power in the power-sum diagnostics (<= 8)");
  converge_cmd->add_option("--disk-r", config.disk_r, "Radius of the inner disk");
  converge_cmd->add_option("--target-atoms", config.target_atoms, "Atoms in the discretized target law");
  converge_cmd->add_option("--prohorov-tol", config.prohorov_tol, "Prohorov tolerance");

  auto* pairing_cmd = app.add_subcommand("pairing", "Zero / critical-point pairing fractions");
  add_sweep_options(pairing_cmd);

  // lemma7-selftest
  std::size_t trials = 200;
  auto* selftest_cmd = app.add_subcommand("lemma7-selftest", "Three-way power-sum agreement check");
  selftest_cmd->add_option("--trials", trials, "Number of random instances");

  std::vector<std::string> args(argv, argv + argc);
  args = expand_config(std::move(args), {"sample", "derive", "prohorov", "converge", "pairing", "lemma7-selftest"});
  std::vector<const char*> cargs;
  for (const auto& a : args) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (sample_cmd->parsed()) {
    const auto law = parse_law(law_text);
    emit_points(g, sample(law, n, SeedSpec{g.seed, stream}), json{{"law", law.to_string()}});
    return kExitOk;
  }

  if (derive_cmd->parsed()) {
    std::vector<cdouble> roots;
    if (!roots_text.empty()) {
      for (const auto& part : detail::split(roots_text, ',')) roots.push_back(parse_complex(part));
    } else {
      if (n < 2) throw UsageError("derive needs --n >= 2 or --roots");
      roots = sample(parse_law(law_text), n, SeedSpec{g.seed, stream});
    }
    const RootPoly poly(roots);
    const auto scheme = parse_scheme(scheme_text);
    if (k != 1 && !std::holds_alternative<Ordinary>(scheme))
      throw UsageError("--k other than 1 requires the ordinary scheme");
    const auto zeros = k == 1 ? derived_zeros(poly, scheme) : kth_derivative_zeros(poly, k);
    emit_points(g, zeros.zeros, json{{"scheme", to_string(scheme)}, {"k", k}, {"residual_max", zeros.residual_max}});
    return kExitOk;
  }

  if (prohorov_cmd->parsed()) {
    const auto result = prohorov(load_measure(file_a), load_measure(file_b), tol);
    Output out(g.out);
    if (g.format == "json") {
      out.stream() << json{{"distance", result.distance},
                           {"certificate_eps", result.certificate_eps},
                           {"certificate_flow", result.certificate_flow}}
                          .dump(2)
                   << '\n';
    } else {
      out.stream() << detail::format_real(result.distance) << '\n';
    }
    return kExitOk;
  }

  if (converge_cmd->parsed() || pairing_cmd->parsed()) {
    config.law = parse_law(law_text);
    config.scheme = parse_scheme_spec(scheme_text);
    config.scheme.sznagy_cap = sznagy_cap;
    config.n_list = parse_n_list(n_text);
    config.seeds = seed_streams(g.seed, seed_count);
    const auto rows = run_convergence(config);
    bool failed = false;
    for (const auto& r : rows) failed = failed || r.error.has_value();

    Output out(g.out);
    if (converge_cmd->parsed()) {
      if (g.format == "json") out.stream() << convergence_json(config, rows);
      else write_convergence_csv(out.stream(), config, rows);
    } else if (g.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) {
        json j{{"n", r.n}, {"seed", r.seed.seed}, {"stream", r.seed.stream}};
        if (r.error) j["error"] = *r.error;
        else j.update({{"pair_zeros", r.pairing_zeros_frac}, {"pair_crit", r.pairing_crit_frac}, {"pair_event", r.pairing_event}});
        arr.push_back(j);
      }
      out.stream() << json{{"eps0", config.eps0}, {"q", config.q}, {"rows", arr}}.dump(2) << '\n';
    } else {
      out.stream() << "n,seed,stream,pair_zeros,pair_crit,pair_event,error\n";
      for (const auto& r : rows) {
        out.stream() << r.n << ',' << r.seed.seed << ',' << r.seed.stream << ',';
        if (r.error) out.stream() << ",,," << *r.error << '\n';
        else
          out.stream() << detail::format_real(r.pairing_zeros_frac) << ',' << detail::format_real(r.pairing_crit_frac)
                       << ',' << (r.pairing_event ? 1 : 0) << ",\n";
      }
    }
    if (failed) std::cerr << "warning: some instances failed; see the error column\n";
    return failed ? kExitNumeric : kExitOk;
  }

  if (selftest_cmd->parsed()) {
    const auto report = lemma7_selftest(trials, SeedSpec{g.seed, 0});
    Output out(g.out);
    if (g.format == "json") {
      out.stream() << json{{"trials", report.trials},
                           {"max_discrepancy", report.max_discrepancy},
                           {"tolerance", kLemma7Tolerance},
                           {"failures", report.failures},
                           {"worst_trial", report.worst_trial},
                           {"worst_n", report.worst_n},
                           {"worst_p", report.worst_p},
                           {"worst_scheme", report.worst_scheme},
                           {"pass", report.pass}}
                          .dump(2)
                   << '\n';
    } else {
      out.stream() << "trials,max_discrepancy,tolerance,failures,worst_trial,worst_n,worst_p,worst_scheme,pass\n"
                   << report.trials << ',' << detail::format_real(report.max_discrepancy) << ','
                   << detail::format_real(kLemma7Tolerance) << ',' << report.failures << ','
                   << report.worst_trial << ',' << report.worst_n << ',' << report.worst_p << ','
                   << report.worst_scheme << ',' << (report.pass ? "pass" : "fail") << '\n';
    }
    return report.pass ? kExitOk : kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const circderiv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return circderiv::is_usage_error(e.kind()) ? kExitUsage : kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
