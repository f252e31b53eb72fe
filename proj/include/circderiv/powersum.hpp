#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "circderiv/polynomial.hpp"

namespace circderiv {

inline constexpr unsigned kMaxLemma7Power = 12;
inline constexpr std::size_t kMaxTraceDegree = 256;

/// (1/m) sum points^p.
cdouble direct_power_mean(std::span<const cdouble> points, unsigned p);

/// One summand of the correction sum: indices q, r, s and the composition
/// (h_1, ..., h_{s-1}) of p - q - r into positive parts.
struct CorrectionTerm {
  unsigned q = 0;
  unsigned r = 0;
  unsigned s = 0;
  std::vector<unsigned> h;
};

/// Visits every correction term for power p in lexicographic (q, r, s, h)
/// order: q = 1..p-1, r = 0..p-q-1, s = 2..p-q-r+1, h ascending lexicographic.
void for_each_correction_term(unsigned p, const std::function<void(const CorrectionTerm&)>& visit);

/// Mean (1/(n-1)) sum w^p over the zeros w of Q, from the roots and weights
/// alone:
///   [ sum z_j^p - p sum a_j z_j^p
///     + sum_{q,r,s,h} (-1)^s prod_t (sum_j a_j z_j^{h_t}) (sum_j a_j z_j^{q+r}) ] / (n-1)
/// with a = alpha(lambda). Requires 1 <= p <= 12 (PTooLarge otherwise).
cdouble lemma7_power_mean(const RootPoly& poly, std::span<const cdouble> lambda, unsigned p);

/// tr((D - D L J)^p) = sum w^p, by explicit dense matrix powers. n <= 256.
cdouble trace_power_sum(const RootPoly& poly, std::span<const cdouble> lambda, unsigned p);

struct PowerSumReport {
  unsigned p = 0;
  /// Mean of p-th powers of the computed zeros.
  cdouble direct;
  cdouble lemma7;
  /// tr((D - D L J)^p) / (n - 1), so all three values are means.
  cdouble trace_oracle;
  double max_pairwise_diff = 0.0;
};

PowerSumReport power_sum_report(const RootPoly& poly, const WeightScheme& scheme, unsigned p);

}  // namespace circderiv
