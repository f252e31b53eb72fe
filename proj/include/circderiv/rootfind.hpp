#pragma once

#include <complex>
#include <span>
#include <vector>

#include "circderiv/polynomial.hpp"

namespace circderiv {

enum class Backend { Spectral, Refined };

/// Zeros W_1..W_{n-1} of a generalized derivative Q.
struct DerivedZeros {
  std::vector<cdouble> zeros;
  /// Largest defect (see defect()) over the checked zeros. Zeros on an input
  /// root, and zeros whose Newton correction is below rounding resolution,
  /// are not checked.
  double residual_max = 0.0;
  Backend backend = Backend::Refined;
};

struct RootfindOptions {
  /// Polish each eigenvalue with Newton steps on R(z) = sum alpha_j/(z - z_j).
  bool refine = true;
  int max_newton_steps = 4;
  double defect_tol = 1e-8;
};

/// Scale-free residual |sum a_j/(w - z_j)| / sum |a_j|/|w - z_j|.
double defect(std::span<const cdouble> roots, std::span<const cdouble> alpha, cdouble w);

/// Zeros of Q = P * sum lambda_j/(z - z_j) as the spectrum of D - D L J
/// (D = diag(z), L = diag(alpha), J = all-ones) minus its artificial zero
/// eigenvalue. Requires n >= 2.
DerivedZeros derived_zeros(const RootPoly& poly, const WeightScheme& scheme,
                           const RootfindOptions& options = {});
DerivedZeros derived_zeros(const RootPoly& poly, std::span<const cdouble> lambda,
                           const RootfindOptions& options = {});

/// n - k zeros of P^(k), by k successive ordinary derivatives.
DerivedZeros kth_derivative_zeros(const RootPoly& poly, int k, const RootfindOptions& options = {});

struct Containment {
  double max_modulus = 0.0;
  bool pass = true;
};

/// max |w_j| and whether it stays within bound + 1e-9.
Containment containment_check(std::span<const cdouble> zeros, double bound);

}  // namespace circderiv
