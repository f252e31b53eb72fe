#include "circderiv/powersum.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Dense>

#include "circderiv/error.hpp"
#include "circderiv/rootfind.hpp"

namespace circderiv {

namespace {

cdouble ipow(cdouble z, unsigned p) {
  cdouble acc = 1.0;
  cdouble base = z;
  while (p) {
    if (p & 1u) acc *= base;
    base *= base;
    p >>= 1u;
  }
  return acc;
}

cdouble pairwise_sum(std::span<const cdouble> xs) {
  if (xs.empty()) return 0.0;
  if (xs.size() <= 8) {
    cdouble acc = 0.0;
    for (const auto& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// Compositions of `total` into `parts` positive integers, lexicographic.
void compositions(unsigned total, unsigned parts, std::vector<unsigned>& prefix,
                  const std::function<void()>& emit) {
  if (parts == 1) {
    prefix.push_back(total);
    emit();
    prefix.pop_back();
    return;
  }
  for (unsigned first = 1; first + (parts - 1) <= total; ++first) {
    prefix.push_back(first);
    compositions(total - first, parts - 1, prefix, emit);
    prefix.pop_back();
  }
}

void check_power(unsigned p) {
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "power must be >= 1");
}

}  // namespace

cdouble direct_power_mean(std::span<const cdouble> points, unsigned p) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "power mean of an empty list");
  std::vector<cdouble> powers(points.size());
  std::transform(points.begin(), points.end(), powers.begin(), [p](cdouble w) { return ipow(w, p); });
  return pairwise_sum(powers) / static_cast<double>(points.size());
}

void for_each_correction_term(unsigned p, const std::function<void(const CorrectionTerm&)>& visit) {
  CorrectionTerm term;
  for (unsigned q = 1; q + 1 <= p; ++q)
    for (unsigned r = 0; q + r + 1 <= p; ++r) {
      const unsigned rest = p - q - r;
      for (unsigned s = 2; s <= rest + 1; ++s) {
        term.q = q;
        term.r = r;
        term.s = s;
        term.h.clear();
        compositions(rest, s - 1, term.h, [&] { visit(term); });
      }
    }
}

cdouble lemma7_power_mean(const RootPoly& poly, std::span<const cdouble> lambda, unsigned p) {
  check_power(p);
  if (p > kMaxLemma7Power)
    throw Error(ErrorKind::PTooLarge, "closed form capped at p = " + std::to_string(kMaxLemma7Power));
  const std::size_t n = poly.degree();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "closed form needs degree >= 2");
  if (lambda.size() != n) throw Error(ErrorKind::InvalidArgument, "weight count does not match degree");
  const auto a = alpha(lambda);
  const auto roots = poly.roots();

  // weighted[h] = sum_j a_j z_j^h, h = 0..p
  std::vector<cdouble> weighted(p + 1, 0.0);
  std::vector<cdouble> plain_terms(n);
  for (std::size_t j = 0; j < n; ++j) {
    cdouble zp = 1.0;
    for (unsigned h = 0; h <= p; ++h) {
      weighted[h] += a[j] * zp;
      if (h < p) zp *= roots[j];
    }
    plain_terms[j] = zp;
  }

  std::vector<cdouble> correction;
  for_each_correction_term(p, [&](const CorrectionTerm& t) {
    cdouble prod = (t.s % 2 == 0) ? 1.0 : -1.0;
    for (unsigned h : t.h) prod *= weighted[h];
    correction.push_back(prod * weighted[t.q + t.r]);
  });

  const double pp = static_cast<double>(p);
  const cdouble total = pairwise_sum(plain_terms) - pp * weighted[p] + pairwise_sum(correction);
  return total / static_cast<double>(n - 1);
}

cdouble trace_power_sum(const RootPoly& poly, std::span<const cdouble> lambda, unsigned p) {
  check_power(p);
  const std::size_t n = poly.degree();
  if (n > kMaxTraceDegree)
    throw Error(ErrorKind::SizeTooLarge, "trace oracle capped at degree " + std::to_string(kMaxTraceDegree));
  if (lambda.size() != n) throw Error(ErrorKind::InvalidArgument, "weight count does not match degree");
  const auto a = alpha(lambda);
  const auto roots = poly.roots();
  const auto dim = static_cast<Eigen::Index>(n);

  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      m(i, j) = (i == j ? roots[i] : 0.0) - roots[i] * a[i];

  Eigen::MatrixXcd power = m;
  for (unsigned k = 1; k < p; ++k) power = power * m;
  return power.trace();
}

PowerSumReport power_sum_report(const RootPoly& poly, const WeightScheme& scheme, unsigned p) {
  const auto lambda = resolve_weights(poly, scheme);
  const auto zeros = derived_zeros(poly, lambda);
  PowerSumReport report;
  report.p = p;
  report.direct = direct_power_mean(zeros.zeros, p);
  report.lemma7 = lemma7_power_mean(poly, lambda, p);
  report.trace_oracle = trace_power_sum(poly, lambda, p) / static_cast<double>(poly.degree() - 1);
  report.max_pairwise_diff = std::max({std::abs(report.direct - report.lemma7),
                                       std::abs(report.direct - report.trace_oracle),
                                       std::abs(report.lemma7 - report.trace_oracle)});
  return report;
}

}  // namespace circderiv
