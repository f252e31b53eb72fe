#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "circderiv/circle_law.hpp"
#include "test_support.hpp"

using namespace circderiv;
using std::numbers::pi;

namespace {

const cdouble I(0.0, 1.0);

std::vector<CircleLaw> builtin_laws() {
  return {CircleLaw::uniform(), CircleLaw::arc(0.0, pi), CircleLaw::arc(-1.0, 2.5),
          CircleLaw::atoms({1.0, -1.0, I}, {0.5, 0.3, 0.2})};
}

// Composite Simpson on [a, b] for a complex integrand.
template <class F>
cdouble simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  cdouble acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("sample: single atom law returns the atom") {
  const auto law = CircleLaw::atoms({1.0}, {1.0});
  const auto pts = sample(law, 5, SeedSpec{123, 4});
  REQUIRE(pts.size() == 5);
  for (const auto& z : pts) CHECK(z == cdouble(1.0, 0.0));
}

TEST_CASE("sample: uniform mean is small at n = 1e4") {
  const auto pts = sample(CircleLaw::uniform(), 10000, SeedSpec{7, 0});
  cdouble mean = 0.0;
  for (const auto& z : pts) mean += z;
  mean /= 10000.0;
  CHECK(std::abs(mean) <= 0.05);
}

TEST_CASE("sample: arc points stay on the upper half circle") {
  const auto pts = sample(CircleLaw::arc(0.0, pi), 10000, SeedSpec{7, 1});
  for (const auto& z : pts) {
    const double a = std::arg(z);
    REQUIRE(a >= -1e-15);
    REQUIRE(a <= pi + 1e-15);
  }
}

TEST_CASE("sample: unit modulus and determinism") {
  for (const auto& law : builtin_laws()) {
    const auto a = sample(law, 2000, SeedSpec{3, 9});
    const auto b = sample(law, 2000, SeedSpec{3, 9});
    CHECK(a == b);
    for (const auto& z : a) REQUIRE(std::abs(std::abs(z) - 1.0) <= 1e-12);
    CHECK(a != sample(law, 2000, SeedSpec{3, 10}));
  }
  CHECK_ERROR_KIND(sample(CircleLaw::uniform(), 0, SeedSpec{}), ErrorKind::InvalidArgument);
}

TEST_CASE("moment: examples") {
  CHECK(std::abs(moment(CircleLaw::uniform(), 3)) == 0.0);
  CHECK(moment(CircleLaw::uniform(), 0) == cdouble(1.0));
  const auto pm = CircleLaw::atoms({1.0, -1.0}, {0.5, 0.5});
  CHECK(std::abs(moment(pm, 2) - 1.0) <= 1e-15);

  // Oracle: Simpson quadrature of e^{i theta}/pi over [0, pi].
  const auto quad = simpson([](double t) { return std::exp(I * t) / pi; }, 0.0, pi, 2000);
  const auto m1 = moment(CircleLaw::arc(0.0, pi), 1);
  CHECK(std::abs(quad - 2.0 * I / pi) <= 1e-12);
  CHECK(std::abs(m1 - quad) <= 1e-12);
}

TEST_CASE("moment: arc matches quadrature for several p and bounded by 1") {
  const double lo = -1.0, hi = 2.5;
  const auto law = CircleLaw::arc(lo, hi);
  for (unsigned p = 0; p <= 6; ++p) {
    const auto quad = simpson([&](double t) { return std::exp(I * double(p) * t) / (hi - lo); }, lo, hi, 4000);
    CHECK(std::abs(moment(law, p) - quad) <= 1e-10);
  }
  for (const auto& l : builtin_laws())
    for (unsigned p = 0; p <= 8; ++p) CHECK(std::abs(moment(l, p)) <= 1.0 + 1e-12);
}

TEST_CASE("moment: Monte Carlo consistency at 1e5 samples") {
  std::uint64_t stream = 0;
  for (const auto& law : builtin_laws()) {
    const auto pts = sample(law, 100000, SeedSpec{2024, stream++});
    for (unsigned p = 1; p <= 4; ++p) {
      cdouble acc = 0.0;
      for (const auto& z : pts) acc += std::pow(z, static_cast<int>(p));
      CHECK(std::abs(acc / 1e5 - moment(law, p)) <= 0.02);
    }
  }
}

TEST_CASE("law_char_fn: examples") {
  for (const auto& law : builtin_laws()) CHECK(std::abs(law_char_fn(law, {0.0, 0.0}) - 1.0) <= 1e-12);
  const auto single = CircleLaw::atoms({1.0}, {1.0});
  CHECK(std::abs(law_char_fn(single, {pi, 0.0}) + 1.0) <= 1e-15);
  // Uniform on the circle: E[exp(i cos theta)] = J0(1).
  const auto phi = law_char_fn(CircleLaw::uniform(), {1.0, 0.0});
  CHECK(std::abs(phi - std::cyl_bessel_j(0.0, 1.0)) <= 1e-10);
  CHECK(phi.real() == doctest::Approx(0.7651976866).epsilon(1e-9));
}

TEST_CASE("law_char_fn: arc agrees with quadrature and Monte Carlo") {
  const auto law = CircleLaw::arc(0.0, pi);
  const std::array<double, 2> ts[] = {{1.0, 0.0}, {0.0, 2.0}, {-2.0, 3.0}, {2.5, -1.5}};
  const auto pts = sample(law, 100000, SeedSpec{5, 5});
  for (const auto& t : ts) {
    const auto quad = simpson([&](double th) { return std::exp(I * (t[0] * std::cos(th) + t[1] * std::sin(th))) / pi; },
                              0.0, pi, 4000);
    const auto phi = law_char_fn(law, t);
    CHECK(std::abs(phi - quad) <= 1e-9);
    cdouble mc = 0.0;
    for (const auto& z : pts) mc += std::exp(I * (t[0] * z.real() + t[1] * z.imag()));
    CHECK(std::abs(mc / 1e5 - phi) <= 0.02);
  }
}

TEST_CASE("law construction rejects invalid laws") {
  CHECK_ERROR_KIND(CircleLaw::atoms({1.1}, {1.0}), ErrorKind::InvalidLaw);
  CHECK_ERROR_KIND(CircleLaw::atoms({1.0, -1.0}, {0.5, 0.6}), ErrorKind::InvalidLaw);
  CHECK_ERROR_KIND(CircleLaw::atoms({1.0, -1.0}, {1.5, -0.5}), ErrorKind::InvalidLaw);
  CHECK_ERROR_KIND(CircleLaw::atoms({}, {}), ErrorKind::InvalidLaw);
  CHECK_ERROR_KIND(CircleLaw::arc(1.0, 1.0), ErrorKind::InvalidLaw);
  CHECK_ERROR_KIND(CircleLaw::arc(0.0, 7.0), ErrorKind::InvalidLaw);
  CHECK_NOTHROW(CircleLaw::arc(0.0, 2.0 * pi));
}

TEST_CASE("law grammar parses and round-trips") {
  CHECK(std::holds_alternative<UniformLaw>(parse_law("uniform").variant()));
  const auto a = parse_law("atoms:1+0i,0.25;-0.6-0.8i,0.75");
  const auto& atoms = std::get<AtomLaw>(a.variant());
  REQUIRE(atoms.points.size() == 2);
  CHECK(atoms.points[1] == cdouble(-0.6, -0.8));
  CHECK(atoms.weights[0] == 0.25);
  const auto arc = parse_law("arc:0,3.141592653589793");
  CHECK(std::get<ArcLaw>(arc.variant()).hi == pi);
  for (const auto& law : builtin_laws()) {
    const auto back = parse_law(law.to_string());
    CHECK(back.to_string() == law.to_string());
  }
  CHECK_ERROR_KIND(parse_law("gaussian"), ErrorKind::Parse);
  CHECK_ERROR_KIND(parse_law("arc:1"), ErrorKind::Parse);
  CHECK_ERROR_KIND(parse_law("atoms:1+0i"), ErrorKind::Parse);
  CHECK_ERROR_KIND(parse_law("atoms:2+0i,1"), ErrorKind::InvalidLaw);
}

TEST_CASE("complex grammar") {
  CHECK(parse_complex("1+0i") == cdouble(1, 0));
  CHECK(parse_complex("-0.5-2i") == cdouble(-0.5, -2));
  CHECK(parse_complex("3") == cdouble(3, 0));
  CHECK(parse_complex("-2i") == cdouble(0, -2));
  CHECK(parse_complex("1e-3+2e1i") == cdouble(1e-3, 20));
  CHECK(parse_complex(format_complex(cdouble(0.1, -1.0 / 3.0))) == cdouble(0.1, -1.0 / 3.0));
  CHECK_ERROR_KIND(parse_complex("abc"), ErrorKind::Parse);
  CHECK_ERROR_KIND(parse_complex(""), ErrorKind::Parse);
}
