#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circderiv/circle_law.hpp"
#include "circderiv/polynomial.hpp"
#include "circderiv/rng.hpp"

namespace circderiv {

enum class SchemeKind { Ordinary, Polar, SzNagyFixed, SzNagyRandom };

/// Experiment-level weight scheme. Unlike WeightScheme it can describe
/// per-instance random Sz.-Nagy weights.
struct SchemeSpec {
  SchemeKind kind = SchemeKind::Ordinary;
  cdouble xi = 0.0;
  std::vector<double> lambda;
  /// Upper bound on every random Sz.-Nagy weight; must exceed 1.
  double sznagy_cap = 4.0;
};

/// `ordinary` | `polar:re+imi` | `sznagy` (random) | `sznagy:l1,l2,...`.
SchemeSpec parse_scheme_spec(std::string_view text);
std::string to_string(const SchemeSpec& spec);

/// Concrete lambda for one instance. Random Sz.-Nagy weights are i.i.d.
/// uniform on [1, cap] rescaled to sum n, hence each stays <= cap.
std::vector<cdouble> instance_weights(const SchemeSpec& spec, std::span<const cdouble> roots, Rng& rng);

std::vector<std::array<double, 2>> default_char_grid();

struct ExperimentConfig {
  CircleLaw law = CircleLaw::uniform();
  SchemeSpec scheme;
  /// Derivative order; values above 1 require the ordinary scheme.
  int k = 1;
  std::vector<std::size_t> n_list{50, 100, 200, 400, 800, 1600};
  std::vector<SeedSpec> seeds;
  unsigned p_max = 4;
  double disk_r = 0.9;
  double eps0 = 0.1;
  double q = 0.5;
  std::size_t target_atoms = 4096;
  std::vector<std::array<double, 2>> char_grid = default_char_grid();
  double prohorov_tol = 1e-9;
  /// Worker threads; 0 defers to CIRCLE_DERIVS_THREADS, then to all cores.
  int threads = 0;

  /// Throws InvalidArgument on a violated invariant.
  void validate() const;
};

/// `count` streams of one base seed: {base, 0}, ..., {base, count - 1}.
std::vector<SeedSpec> seed_streams(std::uint64_t base, std::size_t count);

struct ConvergenceRow {
  std::size_t n = 0;
  SeedSpec seed;
  /// Set when the instance failed numerically; other fields are then unset.
  std::optional<std::string> error;

  double prohorov_to_target = 0.0;
  double target_bias = 0.0;
  double mass_in_disk_r = 0.0;
  /// |(1/(n-k)) sum W^p - E[Z^p]| for p = 1..p_max.
  std::vector<double> powersum_err;
  double char_err_max = 0.0;
  double pairing_zeros_frac = 0.0;
  double pairing_crit_frac = 0.0;
  /// Both pairing counts reach floor(q n) and floor(q (n - k)).
  bool pairing_event = false;
  double containment_max_modulus = 0.0;
  /// (1/n) sum |lambda_j|
  double cor5_ratio_abs_sum = 0.0;
  /// (1/n) |sum lambda_j|
  double cor5_abs_ratio_sum = 0.0;
  /// Polar scheme only: errors of the weighted moment estimates for m = 0..3.
  std::vector<double> b_m_est_err;
};

/// One row per (n, seed), in (n, seed) order, regardless of thread count.
std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& config);

/// |(1/n) sum conj(lambda_j) Z_j^{m+1} - (conj(xi) E[Z^{m+1}] - E[Z^m])| for
/// m = 0..m_max with lambda_j = xi - Z_j.
std::vector<double> polar_moment_errors(const CircleLaw& law, cdouble xi, std::span<const cdouble> zeros,
                                        unsigned m_max);

struct Lemma7SelftestReport {
  std::size_t trials = 0;
  double max_discrepancy = 0.0;
  std::size_t worst_trial = 0;
  std::size_t worst_n = 0;
  unsigned worst_p = 0;
  std::string worst_scheme;
  std::size_t failures = 0;
  bool pass = true;
};

inline constexpr double kLemma7Tolerance = 1e-8;

/// Three-way agreement of the power-sum routes on random circle instances
/// with n in [3, 12], p in [1, 6], cycling through ordinary, polar(2),
/// polar(2+i) and random Sz.-Nagy weights.
Lemma7SelftestReport lemma7_selftest(std::size_t trials, SeedSpec seed);

/// Resolved worker count for a requested value (see ExperimentConfig::threads).
int worker_count(int requested);

}  // namespace circderiv
