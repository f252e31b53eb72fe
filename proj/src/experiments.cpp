#include "circderiv/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include "circderiv/eigen_backend.hpp"
#include "circderiv/error.hpp"
#include "circderiv/measure.hpp"
#include "circderiv/powersum.hpp"
#include "circderiv/rootfind.hpp"
#include "circderiv/text_util.hpp"

namespace circderiv {

namespace {

constexpr unsigned kMaxDiagnosticPower = 8;
constexpr unsigned kPolarMomentMax = 3;

// Quantities of the target law shared by every cell of a sweep.
struct LawReference {
  EmpiricalMeasure target;
  double bias;
  std::vector<cdouble> moments;     // E[Z^p], p = 0..p_max
  std::vector<cdouble> char_values;  // phi_Z on the char grid
};

LawReference make_reference(const ExperimentConfig& config) {
  LawReference ref{discretized_target(config.law, config.target_atoms),
                   discretization_bias(config.law, config.target_atoms),
                   {},
                   {}};
  for (unsigned p = 0; p <= config.p_max; ++p) ref.moments.push_back(moment(config.law, p));
  for (const auto& t : config.char_grid) ref.char_values.push_back(law_char_fn(config.law, t));
  return ref;
}

ConvergenceRow run_cell(const ExperimentConfig& config, const LawReference& ref, std::size_t n,
                        SeedSpec seed) {
  ConvergenceRow row;
  row.n = n;
  row.seed = seed;
  try {
    Rng rng(seed);
    const auto zeros = sample(config.law, n, rng);
    const RootPoly poly(zeros);
    const auto lambda = instance_weights(config.scheme, zeros, rng);

    const auto derived = config.scheme.kind == SchemeKind::Ordinary
                             ? kth_derivative_zeros(poly, config.k)
                             : derived_zeros(poly, lambda);
    const auto& w = derived.zeros;
    const auto mu = EmpiricalMeasure::from_points(w);

    row.prohorov_to_target = prohorov(mu, ref.target, config.prohorov_tol).distance;
    row.target_bias = ref.bias;
    row.mass_in_disk_r = mass_in_disk(mu, config.disk_r);
    for (unsigned p = 1; p <= config.p_max; ++p)
      row.powersum_err.push_back(std::abs(direct_power_mean(w, p) - ref.moments[p]));
    for (std::size_t i = 0; i < config.char_grid.size(); ++i)
      row.char_err_max =
          std::max(row.char_err_max, std::abs(empirical_char(mu, config.char_grid[i]) - ref.char_values[i]));

    row.pairing_zeros_frac = pairing_fraction(w, zeros, config.eps0);
    row.pairing_crit_frac = pairing_fraction(zeros, w, config.eps0);
    const double zeros_hit = std::round(row.pairing_zeros_frac * static_cast<double>(zeros.size()));
    const double crit_hit = std::round(row.pairing_crit_frac * static_cast<double>(w.size()));
    row.pairing_event = zeros_hit >= std::floor(config.q * static_cast<double>(zeros.size())) &&
                        crit_hit >= std::floor(config.q * static_cast<double>(w.size()));

    row.containment_max_modulus = containment_check(w, 1.0).max_modulus;
    cdouble sum = 0.0;
    double abs_sum = 0.0;
    for (const auto& l : lambda) {
      sum += l;
      abs_sum += std::abs(l);
    }
    row.cor5_ratio_abs_sum = abs_sum / static_cast<double>(n);
    row.cor5_abs_ratio_sum = std::abs(sum) / static_cast<double>(n);
    if (config.scheme.kind == SchemeKind::Polar)
      row.b_m_est_err = polar_moment_errors(config.law, config.scheme.xi, zeros, kPolarMomentMax);
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

SchemeSpec parse_scheme_spec(std::string_view text) {
  const std::string s = detail::trim(text);
  SchemeSpec spec;
  if (s == "sznagy") {
    spec.kind = SchemeKind::SzNagyRandom;
    return spec;
  }
  const auto scheme = parse_scheme(s);
  if (const auto* polar = std::get_if<Polar>(&scheme)) {
    spec.kind = SchemeKind::Polar;
    spec.xi = polar->xi;
  } else if (const auto* nagy = std::get_if<SzNagy>(&scheme)) {
    spec.kind = SchemeKind::SzNagyFixed;
    spec.lambda = nagy->lambda;
  }
  return spec;
}

std::string to_string(const SchemeSpec& spec) {
  switch (spec.kind) {
    case SchemeKind::Ordinary: return "ordinary";
    case SchemeKind::Polar: return to_string(WeightScheme{Polar{spec.xi}});
    case SchemeKind::SzNagyFixed: return to_string(WeightScheme{SzNagy{spec.lambda}});
    case SchemeKind::SzNagyRandom: return "sznagy";
  }
  return "ordinary";
}

std::vector<cdouble> instance_weights(const SchemeSpec& spec, std::span<const cdouble> roots, Rng& rng) {
  const std::size_t n = roots.size();
  std::vector<cdouble> lambda(n, 1.0);
  switch (spec.kind) {
    case SchemeKind::Ordinary: break;
    case SchemeKind::Polar:
      for (std::size_t j = 0; j < n; ++j) lambda[j] = spec.xi - roots[j];
      break;
    case SchemeKind::SzNagyFixed:
      validate_sznagy(spec.lambda, n);
      for (std::size_t j = 0; j < n; ++j) lambda[j] = spec.lambda[j];
      break;
    case SchemeKind::SzNagyRandom: {
      if (!(spec.sznagy_cap > 1.0)) throw Error(ErrorKind::InvalidArgument, "Sz.-Nagy cap must exceed 1");
      std::vector<double> raw(n);
      double total = 0.0;
      for (auto& x : raw) {
        x = rng.uniform(1.0, spec.sznagy_cap);
        total += x;
      }
      for (std::size_t j = 0; j < n; ++j) lambda[j] = raw[j] * static_cast<double>(n) / total;
      break;
    }
  }
  return lambda;
}

std::vector<std::array<double, 2>> default_char_grid() {
  std::vector<std::array<double, 2>> grid;
  for (double radius : {0.5, 1.0, 2.0})
    for (int k = 0; k < 8; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / 8.0;
      grid.push_back({radius * std::cos(angle), radius * std::sin(angle)});
    }
  return grid;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); };
  if (n_list.empty()) fail("n list is empty");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) fail("n list must be strictly increasing");
  if (seeds.empty()) fail("at least one seed is required");
  if (k < 1) fail("derivative order k must be >= 1");
  if (static_cast<std::size_t>(k) >= n_list.front()) fail("k must be below every n");
  if (k > 1 && scheme.kind != SchemeKind::Ordinary) fail("k > 1 requires the ordinary scheme");
  if (p_max < 1 || p_max > kMaxDiagnosticPower) fail("p_max must lie in [1, 8]");
  if (!(disk_r > 0.0 && disk_r < 1.0)) fail("disk radius must lie in (0, 1)");
  if (!(q > 0.0 && q < 1.0)) fail("q must lie in (0, 1)");
  if (!(eps0 > 0.0 && eps0 < 1.0 - q)) fail("eps0 must satisfy 0 < eps0 < 1 - q");
  if (target_atoms < 1) fail("target needs at least one atom");
  if (!(prohorov_tol >= 1e-9)) fail("Prohorov tolerance must be >= 1e-9");
  if (scheme.kind == SchemeKind::SzNagyFixed)
    for (auto n : n_list) validate_sznagy(scheme.lambda, n);
  if (scheme.kind == SchemeKind::SzNagyRandom && !(scheme.sznagy_cap > 1.0))
    fail("Sz.-Nagy cap must exceed 1");
}

std::vector<SeedSpec> seed_streams(std::uint64_t base, std::size_t count) {
  std::vector<SeedSpec> seeds;
  for (std::size_t i = 0; i < count; ++i) seeds.push_back({base, i});
  return seeds;
}

int worker_count(int requested) {
  int workers = requested;
  if (workers <= 0) {
    workers = 0;
    if (const char* env = std::getenv("CIRCLE_DERIVS_THREADS")) {
      try {
        workers = static_cast<int>(detail::parse_integer(env));
      } catch (const Error&) {
        workers = 0;
      }
    }
  }
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return workers;
}

std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& config) {
  config.validate();
  const LawReference ref = make_reference(config);

  std::vector<std::pair<std::size_t, SeedSpec>> cells;
  for (auto n : config.n_list) {
    auto seeds = config.seeds;
    std::sort(seeds.begin(), seeds.end());
    for (const auto& s : seeds) cells.emplace_back(n, s);
  }
  std::vector<ConvergenceRow> rows(cells.size());

  const int workers = std::min<int>(worker_count(config.threads), static_cast<int>(cells.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++)
      rows[i] = run_cell(config, ref, cells[i].first, cells[i].second);
  };
  if (workers <= 1) {
    work();
  } else {
    limit_blas_threads(1);
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  return rows;
}

std::vector<double> polar_moment_errors(const CircleLaw& law, cdouble xi, std::span<const cdouble> zeros,
                                        unsigned m_max) {
  if (zeros.empty()) throw Error(ErrorKind::InvalidArgument, "no sample points");
  const double n = static_cast<double>(zeros.size());
  std::vector<double> errors;
  for (unsigned m = 0; m <= m_max; ++m) {
    cdouble acc = 0.0;
    for (const auto& z : zeros) acc += std::conj(xi - z) * std::pow(z, static_cast<int>(m + 1));
    const cdouble limit = std::conj(xi) * moment(law, m + 1) - moment(law, m);
    errors.push_back(std::abs(acc / n - limit));
  }
  return errors;
}

Lemma7SelftestReport lemma7_selftest(std::size_t trials, SeedSpec seed) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "self-test needs at least one trial");
  Lemma7SelftestReport report;
  report.trials = trials;
  const auto uniform = CircleLaw::uniform();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng({seed.seed, seed.stream * 0x100000000ULL + t});
    const auto n = static_cast<std::size_t>(3 + rng.below(10));
    const auto p = static_cast<unsigned>(1 + rng.below(6));
    const auto roots = sample(uniform, n, rng);
    WeightScheme scheme;
    switch (t % 4) {
      case 0: scheme = Ordinary{}; break;
      case 1: scheme = Polar{2.0}; break;
      case 2: scheme = Polar{{2.0, 1.0}}; break;
      default: {
        SchemeSpec random{SchemeKind::SzNagyRandom, 0.0, {}, 4.0};
        SzNagy nagy;
        for (const auto& l : instance_weights(random, roots, rng)) nagy.lambda.push_back(l.real());
        scheme = nagy;
      }
    }
    double diff = 0.0;
    try {
      diff = power_sum_report(RootPoly(roots), scheme, p).max_pairwise_diff;
    } catch (const Error&) {
      diff = std::numeric_limits<double>::infinity();
    }
    if (!(diff <= kLemma7Tolerance)) ++report.failures;
    if (t == 0 || !(diff <= report.max_discrepancy)) {
      report.max_discrepancy = diff;
      report.worst_trial = t;
      report.worst_n = n;
      report.worst_p = p;
      report.worst_scheme = std::holds_alternative<SzNagy>(scheme) ? "sznagy" : to_string(scheme);
    }
  }
  report.pass = report.failures == 0;
  return report;
}

}  // namespace circderiv
