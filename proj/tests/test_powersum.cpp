#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "circderiv/powersum.hpp"
#include "circderiv/rootfind.hpp"
#include "test_support.hpp"

using namespace circderiv;

namespace {

const cdouble I(0.0, 1.0);

// Compositions of m into exactly `parts` positive parts, lexicographic.
void compositions(unsigned m, unsigned parts, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (parts == 0) {
    if (m == 0) out.push_back(cur);
    return;
  }
  for (unsigned first = 1; first + (parts - 1) <= m; ++first) {
    cur.push_back(first);
    compositions(m - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<double> random_sznagy(Rng& rng, std::size_t n) {
  std::vector<double> raw(n);
  for (auto& x : raw) x = rng.uniform(1.0, 4.0);
  const double s = std::accumulate(raw.begin(), raw.end(), 0.0);
  for (auto& x : raw) x *= double(n) / s;
  return raw;
}

}  // namespace

TEST_CASE("direct_power_mean examples") {
  const std::vector<cdouble> ones{1.0, 1.0, 1.0}, pm{1.0, -1.0}, ii{I, -I};
  CHECK(direct_power_mean(ones, 5) == cdouble(1.0));
  CHECK(std::abs(direct_power_mean(pm, 2) - 1.0) <= 1e-15);
  CHECK(std::abs(direct_power_mean(ii, 3)) <= 1e-15);
}

TEST_CASE("lemma7_power_mean examples") {
  const RootPoly p({1.0, -1.0});
  const std::vector<cdouble> ones{1.0, 1.0}, polar{1.0, 3.0};
  CHECK(std::abs(lemma7_power_mean(p, ones, 1)) <= 1e-15);
  CHECK(std::abs(lemma7_power_mean(p, polar, 1) - 0.5) <= 1e-15);

  Rng rng(SeedSpec{21, 0});
  const auto roots = testing::random_circle_points(rng, 8);
  const RootPoly q(roots);
  const std::vector<cdouble> lam(8, 1.0);
  const auto zeros = derived_zeros(q, Ordinary{}).zeros;
  CHECK(std::abs(lemma7_power_mean(q, lam, 4) - direct_power_mean(zeros, 4)) <= 1e-9);
}

TEST_CASE("trace_power_sum examples") {
  const std::vector<cdouble> ones2{1.0, 1.0}, ones3{1.0, 1.0, 1.0};
  CHECK(std::abs(trace_power_sum(RootPoly({1.0, -1.0}), ones2, 1)) <= 1e-15);
  CHECK(std::abs(trace_power_sum(RootPoly({1.0, 1.0, 1.0}), ones3, 2) - 2.0) <= 1e-14);

  Rng rng(SeedSpec{22, 0});
  const RootPoly p(testing::random_circle_points(rng, 6));
  const auto lam = resolve_weights(p, Polar{cdouble(2.0, 1.0)});
  CHECK(std::abs(trace_power_sum(p, lam, 3) - 5.0 * lemma7_power_mean(p, lam, 3)) <= 1e-10);
}

TEST_CASE("power_sum_report examples") {
  const RootPoly p({1.0, -1.0});
  const auto a = power_sum_report(p, Ordinary{}, 1);
  CHECK(std::abs(a.direct) <= 1e-15);
  CHECK(std::abs(a.lemma7) <= 1e-15);
  CHECK(std::abs(a.trace_oracle) <= 1e-15);
  CHECK(a.max_pairwise_diff <= 1e-15);

  const auto b = power_sum_report(p, Polar{2.0}, 1);
  CHECK(std::abs(b.direct - 0.5) <= 1e-12);
  CHECK(std::abs(b.lemma7 - 0.5) <= 1e-15);
  CHECK(std::abs(b.trace_oracle - 0.5) <= 1e-15);

  Rng rng(SeedSpec{23, 0});
  const RootPoly q(testing::random_circle_points(rng, 10));
  const auto c = power_sum_report(q, SzNagy{random_sznagy(rng, 10)}, 5);
  CHECK(c.p == 5);
  CHECK(c.max_pairwise_diff <= 1e-8);
  const double d = std::max({std::abs(c.direct - c.lemma7), std::abs(c.direct - c.trace_oracle),
                             std::abs(c.lemma7 - c.trace_oracle)});
  CHECK(c.max_pairwise_diff == d);
}

TEST_CASE("three-way agreement on 200 random instances") {
  Rng rng(SeedSpec{24, 0});
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 3 + rng.below(10);
    const unsigned p = 1 + static_cast<unsigned>(rng.below(6));
    const RootPoly poly(testing::random_circle_points(rng, n));
    WeightScheme scheme;
    switch (t % 4) {
      case 0: scheme = Ordinary{}; break;
      case 1: scheme = Polar{2.0}; break;
      case 2: scheme = Polar{cdouble(2.0, 1.0)}; break;
      default: scheme = SzNagy{random_sznagy(rng, n)};
    }
    worst = std::max(worst, power_sum_report(poly, scheme, p).max_pairwise_diff);
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("p = 1 closed form") {
  Rng rng(SeedSpec{25, 0});
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.below(30);
    const auto roots = testing::random_circle_points(rng, n);
    const RootPoly p(roots);
    const auto lam = resolve_weights(p, Polar{cdouble(1.5, -2.0)});
    const auto al = alpha(lam);
    cdouble sum_z = 0.0, sum_az = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum_z += roots[j];
      sum_az += al[j] * roots[j];
    }
    const cdouble want = (sum_z - sum_az) / double(n - 1);
    CHECK(std::abs(lemma7_power_mean(p, lam, 1) - want) <= 1e-14);
  }
}

TEST_CASE("remainder against the root power mean is O(1/n)") {
  const unsigned seeds = 5;
  for (unsigned p = 1; p <= 4; ++p) {
    auto worst_scaled = [&](std::size_t n) {
      double worst = 0.0;
      for (unsigned s = 0; s < seeds; ++s) {
        Rng rng(SeedSpec{26, s * 16 + p});
        const auto roots = testing::random_circle_points(rng, n);
        const std::vector<cdouble> lam(n, 1.0);
        const double diff = std::abs(lemma7_power_mean(RootPoly(roots), lam, p) - direct_power_mean(roots, p));
        worst = std::max(worst, diff * double(n));
      }
      return worst;
    };
    // For p = 1 the remainder vanishes identically; allow rounding of 1e-13.
    const double c_p = worst_scaled(100);
    CHECK(worst_scaled(400) / 400.0 <= c_p / 400.0 + 1e-13);
  }
}

TEST_CASE("correction term enumeration matches an independent generator") {
  for (unsigned p = 1; p <= kMaxLemma7Power; ++p) {
    std::vector<CorrectionTerm> got;
    for_each_correction_term(p, [&](const CorrectionTerm& t) { got.push_back(t); });

    std::vector<CorrectionTerm> want;
    std::size_t count_formula = 0;
    for (unsigned q = 1; q + 1 <= p; ++q) {
      for (unsigned r = 0; q + r + 1 <= p; ++r) {
        const unsigned m = p - q - r;
        count_formula += std::size_t{1} << (m - 1);
        for (unsigned s = 2; s <= m + 1; ++s) {
          std::vector<std::vector<unsigned>> hs;
          std::vector<unsigned> cur;
          compositions(m, s - 1, cur, hs);
          for (auto& h : hs) want.push_back(CorrectionTerm{q, r, s, h});
        }
      }
    }
    REQUIRE(got.size() == want.size());
    CHECK(got.size() == count_formula);
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].q == want[i].q);
      CHECK(got[i].r == want[i].r);
      CHECK(got[i].s == want[i].s);
      CHECK(got[i].h == want[i].h);
    }
  }
}

TEST_CASE("caps and argument errors") {
  const RootPoly p({1.0, -1.0, I});
  const std::vector<cdouble> lam(3, 1.0);
  CHECK_NOTHROW(lemma7_power_mean(p, lam, 12));
  CHECK_ERROR_KIND(lemma7_power_mean(p, lam, 13), ErrorKind::PTooLarge);
  CHECK_ERROR_KIND(lemma7_power_mean(p, lam, 0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(lemma7_power_mean(RootPoly({1.0}), std::vector<cdouble>{1.0}, 1), ErrorKind::InvalidArgument);
  const std::vector<cdouble> big(257, 1.0);
  std::vector<cdouble> roots(257);
  for (std::size_t j = 0; j < roots.size(); ++j) roots[j] = std::polar(1.0, 0.01 * double(j));
  CHECK_ERROR_KIND(trace_power_sum(RootPoly(roots), big, 1), ErrorKind::SizeTooLarge);
  const std::vector<cdouble> empty;
  CHECK_ERROR_KIND(direct_power_mean(empty, 1), ErrorKind::InvalidArgument);
}

TEST_CASE("closed form agrees with trace oracle at the largest power") {
  Rng rng(SeedSpec{27, 0});
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 3 + rng.below(10);
    const RootPoly p(testing::random_circle_points(rng, n));
    const auto lam = resolve_weights(p, Polar{cdouble(0.0, 2.5)});
    const auto tr = trace_power_sum(p, lam, 12) / double(n - 1);
    CHECK(std::abs(lemma7_power_mean(p, lam, 12) - tr) <= 1e-8);
  }
}
