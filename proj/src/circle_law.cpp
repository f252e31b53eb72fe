#include "circderiv/circle_law.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "circderiv/error.hpp"
#include "circderiv/text_util.hpp"

namespace circderiv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitTol = 1e-12;
constexpr double kQuadTol = 1e-10;

cdouble on_circle(double theta) { return {std::cos(theta), std::sin(theta)}; }

// ∫_lo^hi f(θ) dθ / (hi - lo) for a complex integrand, adaptive Gauss-Kronrod.
// The normalized integrand has L1 norm at most 1, so the relative tolerance
// handed to Boost bounds the absolute error as well.
template <class F>
cdouble average_over_arc(F&& f, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  const double len = hi - lo;
  auto re = [&](double th) { return f(th).real() / len; };
  auto im = [&](double th) { return f(th).imag() / len; };
  double err_re = 0.0;
  double err_im = 0.0;
  const double r = gauss_kronrod<double, 31>::integrate(re, lo, hi, 20, kQuadTol, &err_re);
  const double i = gauss_kronrod<double, 31>::integrate(im, lo, hi, 20, kQuadTol, &err_im);
  return {r, i};
}

}  // namespace

CircleLaw CircleLaw::uniform() { return CircleLaw(UniformLaw{}); }

CircleLaw CircleLaw::atoms(std::vector<cdouble> points, std::vector<double> weights) {
  if (points.empty()) throw Error(ErrorKind::InvalidLaw, "atom law needs at least one atom");
  if (points.size() != weights.size())
    throw Error(ErrorKind::InvalidLaw, "atom and weight counts differ");
  for (const auto& z : points) {
    if (!(std::abs(std::abs(z) - 1.0) <= kUnitTol))
      throw Error(ErrorKind::InvalidLaw, "atom " + format_complex(z) + " is off the unit circle");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorKind::InvalidLaw, "atom weights must be nonnegative");
    total += w;
  }
  if (!(std::abs(total - 1.0) <= kUnitTol))
    throw Error(ErrorKind::InvalidLaw, "atom weights must sum to 1");
  return CircleLaw(AtomLaw{std::move(points), std::move(weights)});
}

CircleLaw CircleLaw::arc(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi) || hi - lo > kTwoPi + 1e-15)
    throw Error(ErrorKind::InvalidLaw, "arc must satisfy lo < hi <= lo + 2pi");
  return CircleLaw(ArcLaw{lo, hi});
}

double CircleLaw::support_length() const {
  return std::visit(
      [](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, UniformLaw>) return kTwoPi;
        else if constexpr (std::is_same_v<T, ArcLaw>) return law.hi - law.lo;
        else return 0.0;
      },
      law_);
}

std::string CircleLaw::to_string() const {
  return std::visit(
      [](const auto& law) -> std::string {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, UniformLaw>) {
          return "uniform";
        } else if constexpr (std::is_same_v<T, ArcLaw>) {
          return "arc:" + detail::format_real(law.lo) + "," + detail::format_real(law.hi);
        } else {
          std::string out = "atoms:";
          for (std::size_t j = 0; j < law.points.size(); ++j) {
            if (j) out += ';';
            out += format_complex(law.points[j]) + "," + detail::format_real(law.weights[j]);
          }
          return out;
        }
      },
      law_);
}

cdouble parse_complex(std::string_view text) {
  const std::string s = detail::trim(text);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty complex number");
  if (s.back() != 'i') return {detail::parse_real(s), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return detail::parse_real(t);
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {detail::parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

std::string format_complex(cdouble z) {
  std::string im = detail::format_real(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return detail::format_real(z.real()) + im + "i";
}

CircleLaw parse_law(std::string_view text) {
  const std::string s = detail::trim(text);
  if (s == "uniform") return CircleLaw::uniform();
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::Parse, "unknown law '" + s + "'");
  const std::string head = s.substr(0, colon);
  const std::string body = s.substr(colon + 1);
  if (head == "arc") {
    const auto parts = detail::split(body, ',');
    if (parts.size() != 2) throw Error(ErrorKind::Parse, "arc expects 'arc:lo,hi'");
    return CircleLaw::arc(detail::parse_real(parts[0]), detail::parse_real(parts[1]));
  }
  if (head == "atoms") {
    std::vector<cdouble> points;
    std::vector<double> weights;
    for (const auto& item : detail::split(body, ';')) {
      const auto parts = detail::split(item, ',');
      if (parts.size() != 2) throw Error(ErrorKind::Parse, "atom entries are 'z,w'");
      points.push_back(parse_complex(parts[0]));
      weights.push_back(detail::parse_real(parts[1]));
    }
    return CircleLaw::atoms(std::move(points), std::move(weights));
  }
  throw Error(ErrorKind::Parse, "unknown law '" + head + "'");
}

std::vector<cdouble> sample(const CircleLaw& law, std::size_t n, SeedSpec seed) {
  Rng rng(seed);
  return sample(law, n, rng);
}

std::vector<cdouble> sample(const CircleLaw& law, std::size_t n, Rng& rng) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "sample size must be positive");
  std::vector<cdouble> out;
  out.reserve(n);
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, UniformLaw>) {
          for (std::size_t j = 0; j < n; ++j) out.push_back(on_circle(kTwoPi * rng.uniform()));
        } else if constexpr (std::is_same_v<T, ArcLaw>) {
          for (std::size_t j = 0; j < n; ++j) out.push_back(on_circle(rng.uniform(l.lo, l.hi)));
        } else {
          std::vector<double> cdf(l.weights.size());
          std::partial_sum(l.weights.begin(), l.weights.end(), cdf.begin());
          for (std::size_t j = 0; j < n; ++j) {
            const double u = rng.uniform() * cdf.back();
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end()) --it;
            out.push_back(l.points[static_cast<std::size_t>(it - cdf.begin())]);
          }
        }
      },
      law.variant());
  return out;
}

cdouble moment(const CircleLaw& law, unsigned p) {
  if (p == 0) return 1.0;
  return std::visit(
      [p](const auto& l) -> cdouble {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, UniformLaw>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, ArcLaw>) {
          const double pp = static_cast<double>(p);
          const cdouble num = std::polar(1.0, pp * l.hi) - std::polar(1.0, pp * l.lo);
          return num / cdouble(0.0, pp * (l.hi - l.lo));
        } else {
          cdouble acc = 0.0;
          for (std::size_t j = 0; j < l.points.size(); ++j)
            acc += l.weights[j] * std::pow(l.points[j], static_cast<int>(p));
          return acc;
        }
      },
      law.variant());
}

cdouble law_char_fn(const CircleLaw& law, std::array<double, 2> t) {
  auto integrand = [t](double th) {
    return std::polar(1.0, t[0] * std::cos(th) + t[1] * std::sin(th));
  };
  return std::visit(
      [&](const auto& l) -> cdouble {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, UniformLaw>) {
          return average_over_arc(integrand, 0.0, kTwoPi);
        } else if constexpr (std::is_same_v<T, ArcLaw>) {
          return average_over_arc(integrand, l.lo, l.hi);
        } else {
          cdouble acc = 0.0;
          for (std::size_t j = 0; j < l.points.size(); ++j) {
            const cdouble z = l.points[j];
            acc += l.weights[j] * std::polar(1.0, t[0] * z.real() + t[1] * z.imag());
          }
          return acc;
        }
      },
      law.variant());
}

}  // namespace circderiv
