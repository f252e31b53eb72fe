#include "circderiv/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "circderiv/eigen_backend.hpp"
#include "circderiv/error.hpp"

namespace circderiv {

namespace {

// Zeros this close to an input root are left as the eigensolver returned
// them: R has a pole there, so neither Newton nor the defect is meaningful.
constexpr double kCoincidentRoot = 1e-12;
constexpr double kContainmentSlack = 1e-9;

double nearest_root_distance(std::span<const cdouble> roots, cdouble w) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : roots) best = std::min(best, std::abs(w - z));
  return best;
}

// Distance from zeros[i] to the nearest other entry.
std::vector<double> separations(std::span<const cdouble> zeros) {
  std::vector<double> sep(zeros.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < zeros.size(); ++i)
    for (std::size_t j = i + 1; j < zeros.size(); ++j) {
      const double d = std::abs(zeros[i] - zeros[j]);
      sep[i] = std::min(sep[i], d);
      sep[j] = std::min(sep[j], d);
    }
  return sep;
}

// Newton correction R(w)/R'(w); zero when R' vanishes.
cdouble newton_step(std::span<const cdouble> roots, std::span<const cdouble> a, cdouble w) {
  cdouble r = 0.0;
  cdouble dr = 0.0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const cdouble inv = 1.0 / (w - roots[j]);
    r += a[j] * inv;
    dr -= a[j] * inv * inv;
  }
  return dr == 0.0 ? cdouble(0.0) : r / dr;
}

// A zero a few ulps from two nearly coincident roots cannot reach a small
// defect in double precision; it is accepted once the Newton correction is
// below the spacing of representable points around w.
bool rounding_limited(std::span<const cdouble> roots, std::span<const cdouble> a, cdouble w) {
  const double resolution = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(w));
  const cdouble step = newton_step(roots, a, w);
  return step != 0.0 && std::abs(step) <= resolution;
}

cdouble polish(std::span<const cdouble> roots, std::span<const cdouble> a, cdouble w,
               double separation, int max_steps) {
  double current = defect(roots, a, w);
  for (int step = 0; step < max_steps && current > 1e-15; ++step) {
    const cdouble delta = newton_step(roots, a, w);
    if (delta == 0.0) break;
    // A step longer than half the gap to the neighbouring zero may hop onto it.
    if (!(std::abs(delta) <= 0.5 * separation)) break;
    const cdouble next = w - delta;
    if (nearest_root_distance(roots, next) <= kCoincidentRoot) break;
    const double next_defect = defect(roots, a, next);
    if (!(next_defect < current)) break;
    w = next;
    current = next_defect;
  }
  return w;
}

}  // namespace

double defect(std::span<const cdouble> roots, std::span<const cdouble> alpha, cdouble w) {
  cdouble num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const cdouble d = w - roots[j];
    num += alpha[j] / d;
    den += std::abs(alpha[j]) / std::abs(d);
  }
  return den > 0.0 ? std::abs(num) / den : 0.0;
}

DerivedZeros derived_zeros(const RootPoly& poly, const WeightScheme& scheme,
                           const RootfindOptions& options) {
  const auto lambda = resolve_weights(poly, scheme);
  return derived_zeros(poly, lambda, options);
}

DerivedZeros derived_zeros(const RootPoly& poly, std::span<const cdouble> lambda,
                           const RootfindOptions& options) {
  const std::size_t n = poly.degree();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "derived zeros need degree >= 2");
  if (lambda.size() != n) throw Error(ErrorKind::InvalidArgument, "weight count does not match degree");
  const auto a = alpha(lambda);
  const auto roots = poly.roots();

  // M = D - D L J, column-major: M(i, j) = delta_ij z_i - z_i alpha_i.
  std::vector<cdouble> m(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m[i + j * n] = -roots[i] * a[i];
  for (std::size_t i = 0; i < n; ++i) m[i + i * n] += roots[i];

  auto eig = dense_eigenvalues(std::move(m), n);
  // z Q~(z) is the characteristic polynomial: drop one smallest-modulus value.
  const auto smallest = std::min_element(eig.begin(), eig.end(), [](cdouble x, cdouble y) {
    return std::abs(x) < std::abs(y);
  });
  eig.erase(smallest);

  DerivedZeros out;
  out.backend = options.refine ? Backend::Refined : Backend::Spectral;
  if (options.refine) {
    const auto sep = separations(eig);
    for (std::size_t i = 0; i < eig.size(); ++i) {
      if (nearest_root_distance(roots, eig[i]) <= kCoincidentRoot) continue;
      eig[i] = polish(roots, a, eig[i], sep[i], options.max_newton_steps);
    }
  }
  for (const auto& w : eig) {
    if (nearest_root_distance(roots, w) <= kCoincidentRoot) continue;
    const double d = defect(roots, a, w);
    if (d > options.defect_tol && rounding_limited(roots, a, w)) continue;
    out.residual_max = std::max(out.residual_max, d);
  }
  if (!(out.residual_max <= options.defect_tol)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "derived zero defect %.3g exceeds tolerance %.3g", out.residual_max,
                  options.defect_tol);
    throw Error(ErrorKind::RefinementFailure, msg);
  }
  out.zeros = std::move(eig);
  return out;
}

DerivedZeros kth_derivative_zeros(const RootPoly& poly, int k, const RootfindOptions& options) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "derivative order must be >= 1");
  if (static_cast<std::size_t>(k) >= poly.degree())
    throw Error(ErrorKind::OrderTooLarge, "derivative order " + std::to_string(k) +
                                              " must be below degree " + std::to_string(poly.degree()));
  DerivedZeros current{std::vector<cdouble>(poly.roots().begin(), poly.roots().end()), 0.0,
                       options.refine ? Backend::Refined : Backend::Spectral};
  double worst = 0.0;
  for (int stage = 0; stage < k; ++stage) {
    current = derived_zeros(RootPoly(std::move(current.zeros)), Ordinary{}, options);
    worst = std::max(worst, current.residual_max);
  }
  current.residual_max = worst;
  return current;
}

Containment containment_check(std::span<const cdouble> zeros, double bound) {
  Containment out;
  for (const auto& w : zeros) out.max_modulus = std::max(out.max_modulus, std::abs(w));
  out.pass = out.max_modulus <= bound + kContainmentSlack;
  return out;
}

}  // namespace circderiv
