#include "circderiv/polynomial.hpp"

#include <cmath>

#include "circderiv/circle_law.hpp"
#include "circderiv/error.hpp"
#include "circderiv/text_util.hpp"

namespace circderiv {

namespace {

constexpr double kPoleTol = 1e-14;
constexpr double kDegenerateRel = 1e-12;
constexpr double kSzNagySumTol = 1e-9;

std::vector<cdouble> multiply(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  std::vector<cdouble> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Product of the factors with indices [lo, hi).
std::vector<cdouble> product_range(std::span<const cdouble> roots, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return {-roots[lo], 1.0};
  const std::size_t mid = lo + (hi - lo) / 2;
  return multiply(product_range(roots, lo, mid), product_range(roots, mid, hi));
}

}  // namespace

RootPoly::RootPoly(std::vector<cdouble> roots) : roots_(std::move(roots)) {
  if (roots_.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial degree must be >= 1");
}

cdouble RootPoly::evaluate(cdouble z) const {
  cdouble acc = 1.0;
  for (const auto& r : roots_) acc *= z - r;
  return acc;
}

WeightScheme parse_scheme(std::string_view text) {
  const std::string s = detail::trim(text);
  if (s == "ordinary") return Ordinary{};
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  if (colon != std::string::npos) {
    const std::string body = s.substr(colon + 1);
    if (head == "polar") return Polar{parse_complex(body)};
    if (head == "sznagy") {
      SzNagy out;
      for (const auto& part : detail::split(body, ',')) out.lambda.push_back(detail::parse_real(part));
      validate_sznagy(out.lambda, out.lambda.size());
      return out;
    }
  }
  throw Error(ErrorKind::Parse, "unknown weight scheme '" + s + "'");
}

std::string to_string(const WeightScheme& scheme) {
  if (std::holds_alternative<Ordinary>(scheme)) return "ordinary";
  if (const auto* polar = std::get_if<Polar>(&scheme)) return "polar:" + format_complex(polar->xi);
  std::string out = "sznagy:";
  const auto& lambda = std::get<SzNagy>(scheme).lambda;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (j) out += ',';
    out += detail::format_real(lambda[j]);
  }
  return out;
}

void validate_sznagy(std::span<const double> lambda, std::size_t n) {
  if (lambda.size() != n)
    throw Error(ErrorKind::InvalidArgument, "Sz.-Nagy weight count " + std::to_string(lambda.size()) +
                                                " does not match degree " + std::to_string(n));
  double total = 0.0;
  for (double l : lambda) {
    if (!(l > 0.0)) throw Error(ErrorKind::InvalidArgument, "Sz.-Nagy weights must be positive");
    total += l;
  }
  if (!(std::abs(total - static_cast<double>(n)) <= kSzNagySumTol))
    throw Error(ErrorKind::InvalidArgument, "Sz.-Nagy weights must sum to the degree");
}

bool is_degenerate(std::span<const cdouble> lambda) {
  cdouble sum = 0.0;
  double abs_sum = 0.0;
  for (const auto& l : lambda) {
    sum += l;
    abs_sum += std::abs(l);
  }
  return std::abs(sum) <= kDegenerateRel * abs_sum;
}

std::vector<cdouble> resolve_weights(const RootPoly& poly, const WeightScheme& scheme) {
  const std::size_t n = poly.degree();
  std::vector<cdouble> lambda(n, 1.0);
  if (const auto* polar = std::get_if<Polar>(&scheme)) {
    for (std::size_t j = 0; j < n; ++j) lambda[j] = polar->xi - poly.roots()[j];
  } else if (const auto* nagy = std::get_if<SzNagy>(&scheme)) {
    validate_sznagy(nagy->lambda, n);
    for (std::size_t j = 0; j < n; ++j) lambda[j] = nagy->lambda[j];
  }
  if (is_degenerate(lambda))
    throw Error(ErrorKind::DegenerateWeights, "weights sum to zero, so deg Q < n - 1");
  return lambda;
}

cdouble log_derivative_value(const RootPoly& poly, std::span<const cdouble> lambda, cdouble z) {
  if (lambda.size() != poly.degree())
    throw Error(ErrorKind::InvalidArgument, "weight count does not match degree");
  cdouble acc = 0.0;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const cdouble d = z - poly.roots()[j];
    if (std::abs(d) <= kPoleTol)
      throw Error(ErrorKind::PoleProximity, "evaluation point coincides with a root");
    acc += lambda[j] / d;
  }
  return acc;
}

std::vector<cdouble> alpha(std::span<const cdouble> lambda) {
  if (lambda.empty() || is_degenerate(lambda))
    throw Error(ErrorKind::DegenerateWeights, "weights sum to zero");
  cdouble sum = 0.0;
  for (const auto& l : lambda) sum += l;
  std::vector<cdouble> out(lambda.begin(), lambda.end());
  for (auto& a : out) a /= sum;
  return out;
}

std::vector<cdouble> coefficients(const RootPoly& poly) {
  if (poly.degree() > kMaxCoefficientDegree)
    throw Error(ErrorKind::DegreeTooLarge,
                "coefficient expansion capped at degree " + std::to_string(kMaxCoefficientDegree));
  return product_range(poly.roots(), 0, poly.degree());
}

}  // namespace circderiv
