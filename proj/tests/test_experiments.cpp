#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "circderiv/experiments.hpp"
#include "circderiv/powersum.hpp"
#include "circderiv/report_io.hpp"
#include "test_support.hpp"

using namespace circderiv;
using std::numbers::pi;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n_list = {20, 40};
  c.seeds = seed_streams(5, 3);
  c.target_atoms = 512;
  return c;
}

std::string csv_of(const ExperimentConfig& c, const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  write_convergence_csv(out, c, rows);
  return out.str();
}

}  // namespace

TEST_CASE("single atom law: every diagnostic vanishes") {
  ExperimentConfig c = small_config();
  c.law = CircleLaw::atoms({1.0}, {1.0});
  for (const auto& row : run_convergence(c)) {
    REQUIRE_FALSE(row.error.has_value());
    CHECK(row.prohorov_to_target <= 1e-12);
    REQUIRE(row.powersum_err.size() == 4);
    for (double e : row.powersum_err) CHECK(e <= 1e-12);
    CHECK(row.mass_in_disk_r == 0.0);
    CHECK(row.pairing_zeros_frac == 1.0);
    CHECK(row.pairing_crit_frac == 1.0);
    CHECK(row.pairing_event);
  }
}

TEST_CASE("row count and ordering") {
  ExperimentConfig c = small_config();
  c.seeds = {SeedSpec{5, 2}, SeedSpec{5, 0}, SeedSpec{5, 1}};
  const auto rows = run_convergence(c);
  REQUIRE(rows.size() == c.n_list.size() * c.seeds.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == c.n_list[i / 3]);
    CHECK(rows[i].seed.stream == i % 3);
  }
}

TEST_CASE("results do not depend on the worker count") {
  ExperimentConfig c = small_config();
  c.threads = 1;
  const auto one = csv_of(c, run_convergence(c));
  c.threads = 2;
  const auto two = csv_of(c, run_convergence(c));
  CHECK(one == two);
  CHECK(one == csv_of(c, run_convergence(c)));
}

TEST_CASE("distinct streams give distinct rows") {
  ExperimentConfig c = small_config();
  const auto rows = run_convergence(c);
  CHECK(rows[0].prohorov_to_target != rows[1].prohorov_to_target);
  CHECK(rows[1].prohorov_to_target != rows[2].prohorov_to_target);
}

TEST_CASE("fields are finite and fractions lie in [0,1]") {
  ExperimentConfig c = small_config();
  c.law = CircleLaw::arc(0.0, pi);
  c.scheme = parse_scheme_spec("polar:3+0i");
  for (const auto& row : run_convergence(c)) {
    REQUIRE_FALSE(row.error.has_value());
    for (double f : {row.pairing_zeros_frac, row.pairing_crit_frac, row.mass_in_disk_r}) {
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
    }
    CHECK(std::isfinite(row.char_err_max));
    CHECK(row.b_m_est_err.size() == 4);
    CHECK(row.target_bias == doctest::Approx(0.5 * pi / 512));
  }
}

TEST_CASE("polar weight bounds and containment") {
  for (const char* xi_text : {"polar:1.5+0i", "polar:0+3i", "polar:-2+1i"}) {
    ExperimentConfig c = small_config();
    c.scheme = parse_scheme_spec(xi_text);
    const double xi = std::abs(c.scheme.xi);
    for (const auto& row : run_convergence(c)) {
      REQUIRE_FALSE(row.error.has_value());
      CHECK(row.cor5_ratio_abs_sum <= xi + 1.0 + 1e-9);
      CHECK(row.cor5_abs_ratio_sum >= xi - 1.0 - 1e-9);
      CHECK(row.containment_max_modulus <= 1.0 + 1e-9);
    }
  }
  for (const char* scheme : {"ordinary", "sznagy"}) {
    ExperimentConfig c = small_config();
    c.law = CircleLaw::arc(0.0, pi);
    c.scheme = parse_scheme_spec(scheme);
    for (const auto& row : run_convergence(c)) {
      REQUIRE_FALSE(row.error.has_value());
      CHECK(row.containment_max_modulus <= 1.0 + 1e-9);
      CHECK(row.cor5_abs_ratio_sum == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("higher derivative order") {
  ExperimentConfig c = small_config();
  c.k = 3;
  for (const auto& row : run_convergence(c)) {
    REQUIRE_FALSE(row.error.has_value());
    CHECK(row.containment_max_modulus <= 1.0 + 1e-9);
  }
}

TEST_CASE("degenerate instances become error rows") {
  ExperimentConfig c = small_config();
  c.law = parse_law("atoms:1+0i,1");
  c.scheme = parse_scheme_spec("polar:1+0i");
  const auto rows = run_convergence(c);
  REQUIRE(rows.size() == 6);
  for (const auto& row : rows) {
    REQUIRE(row.error.has_value());
    CHECK(row.error->find("DegenerateWeights") != std::string::npos);
  }
  const auto csv = csv_of(c, rows);
  const auto second_line = csv.substr(csv.find('\n') + 1, csv.find('\n', csv.find('\n') + 1) - csv.find('\n') - 1);
  CHECK(second_line.rfind("20,5,,", 0) == 0);
  CHECK(second_line.find("DegenerateWeights") != std::string::npos);
}

TEST_CASE("config validation") {
  auto expect_invalid = [](auto mutate) {
    ExperimentConfig c = small_config();
    mutate(c);
    CHECK_ERROR_KIND(c.validate(), ErrorKind::InvalidArgument);
  };
  CHECK_NOTHROW(small_config().validate());
  expect_invalid([](ExperimentConfig& c) { c.n_list = {40, 20}; });
  expect_invalid([](ExperimentConfig& c) { c.n_list = {20, 20}; });
  expect_invalid([](ExperimentConfig& c) { c.n_list.clear(); });
  expect_invalid([](ExperimentConfig& c) { c.seeds.clear(); });
  expect_invalid([](ExperimentConfig& c) { c.k = 20; });
  expect_invalid([](ExperimentConfig& c) { c.k = 0; });
  expect_invalid([](ExperimentConfig& c) {
    c.k = 2;
    c.scheme = parse_scheme_spec("polar:2+0i");
  });
  expect_invalid([](ExperimentConfig& c) { c.p_max = 9; });
  expect_invalid([](ExperimentConfig& c) { c.p_max = 0; });
  expect_invalid([](ExperimentConfig& c) { c.disk_r = 1.0; });
  expect_invalid([](ExperimentConfig& c) { c.q = 1.0; });
  expect_invalid([](ExperimentConfig& c) { c.eps0 = 0.5; });
  expect_invalid([](ExperimentConfig& c) { c.prohorov_tol = 1e-12; });
  expect_invalid([](ExperimentConfig& c) {
    c.scheme = parse_scheme_spec("sznagy");
    c.scheme.sznagy_cap = 1.0;
  });
  expect_invalid([](ExperimentConfig& c) { c.scheme = parse_scheme_spec("sznagy:1.5,0.5"); });
}

TEST_CASE("random Sz.-Nagy weights respect the cap and sum") {
  Rng rng(SeedSpec{3, 3});
  SchemeSpec spec = parse_scheme_spec("sznagy");
  spec.sznagy_cap = 2.5;
  const std::vector<cdouble> roots(50, 1.0);
  const auto lam = instance_weights(spec, roots, rng);
  cdouble sum = 0.0;
  for (const auto& l : lam) {
    CHECK(l.real() > 0.0);
    CHECK(l.real() <= 2.5);
    CHECK(l.imag() == 0.0);
    sum += l;
  }
  CHECK(std::abs(sum - 50.0) <= 1e-9);
}

TEST_CASE("scheme spec grammar") {
  CHECK(parse_scheme_spec("sznagy").kind == SchemeKind::SzNagyRandom);
  CHECK(parse_scheme_spec("sznagy:1,1").kind == SchemeKind::SzNagyFixed);
  CHECK(parse_scheme_spec("ordinary").kind == SchemeKind::Ordinary);
  const auto p = parse_scheme_spec("polar:3+0i");
  CHECK(p.kind == SchemeKind::Polar);
  CHECK(p.xi == cdouble(3.0));
  for (const char* s : {"ordinary", "sznagy", "polar:3+0i"}) CHECK(to_string(parse_scheme_spec(to_string(parse_scheme_spec(s)))) == to_string(parse_scheme_spec(s)));
}

TEST_CASE("polar_moment_errors is exact for a point mass") {
  const auto law = CircleLaw::atoms({1.0}, {1.0});
  const std::vector<cdouble> zeros(10, 1.0);
  const auto errs = polar_moment_errors(law, 3.0, zeros, 3);
  REQUIRE(errs.size() == 4);
  for (double e : errs) CHECK(e <= 1e-15);
}

TEST_CASE("convergence CSV and JSON layout") {
  ExperimentConfig c = small_config();
  c.scheme = parse_scheme_spec("polar:2+0i");
  const auto cols = convergence_columns(c);
  REQUIRE(cols.size() >= 4);
  CHECK(cols[0] == "n");
  CHECK(cols[1] == "seed");
  CHECK(cols[2] == "prohorov");
  CHECK(cols[3] == "mass_disk");
  CHECK(cols[4] == "psum_err_1");
  CHECK(cols.back() == "error");
  CHECK(std::find(cols.begin(), cols.end(), "bm_err_3") != cols.end());
  const auto rows = run_convergence(c);
  const auto json = convergence_json(c, rows);
  CHECK(json.find("\"config\"") != std::string::npos);
  CHECK(json.find("\"rows\"") != std::string::npos);
  const auto csv = csv_of(c, rows);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == rows.size() + 1);
}

TEST_CASE("lemma7 self test") {
  const auto a = lemma7_selftest(200, SeedSpec{1, 0});
  CHECK(a.trials == 200);
  CHECK(a.pass);
  CHECK(a.failures == 0);
  CHECK(a.max_discrepancy <= kLemma7Tolerance);
  const auto b = lemma7_selftest(200, SeedSpec{1, 0});
  CHECK(a.max_discrepancy == b.max_discrepancy);
  CHECK(a.worst_trial == b.worst_trial);
  CHECK(a.worst_n == b.worst_n);
  CHECK(a.worst_p == b.worst_p);
  CHECK(a.worst_scheme == b.worst_scheme);
}

TEST_CASE("tiny fixed instance has zero discrepancy") {
  const auto r = power_sum_report(RootPoly({1.0, -1.0}), Ordinary{}, 1);
  CHECK(r.max_pairwise_diff <= 1e-12);
}

TEST_CASE("worker count resolution") {
  CHECK(worker_count(3) == 3);
  CHECK(worker_count(0) >= 1);
}
