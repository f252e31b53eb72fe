#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "circderiv/circle_law.hpp"

namespace circderiv {

/// Finite atomic probability measure on the plane.
class EmpiricalMeasure {
 public:
  /// Weights must be positive and sum to 1 within 1e-12.
  EmpiricalMeasure(std::vector<cdouble> atoms, std::vector<double> weights);

  /// Uniform weight 1/m on each of the m points (repeats are kept as
  /// separate atoms).
  static EmpiricalMeasure from_points(std::vector<cdouble> points);

  std::span<const cdouble> atoms() const { return atoms_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<cdouble> atoms_;
  std::vector<double> weights_;
};

struct ProhorovResult {
  double distance = 0.0;
  /// The distance at which the coupling certificate was evaluated.
  double certificate_eps = 0.0;
  /// Maximum mass a coupling moves along pairs at distance <= certificate_eps.
  double certificate_flow = 0.0;
};

/**
 * Prohorov distance between two finite measures.
 *
 * For finite supports, pi(m1, m2) <= eps iff some coupling moves at least
 * 1 - eps of the mass along atom pairs at distance <= eps. The coupled mass
 * flow(eps) is a max-flow on the bipartite atom graph and only changes at
 * pairwise distances, so the distance is min over breakpoints d of
 * max(d, 1 - flow(d)), capped at 1. Breakpoints closer than `tol` are merged
 * upward, so the result lies in [pi, pi + tol]. Requires tol >= 1e-9.
 */
ProhorovResult prohorov(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2, double tol = 1e-9);

/// Reference value by direct enumeration of the defining inequalities over
/// all subsets of each support (closed eps-neighbourhoods). Throws
/// SupportTooLarge when the two measures have more than 16 atoms together.
double prohorov_bruteforce(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2);

/// Atomic stand-in for a circle law: m equispaced atoms (uniform law starting
/// at angle 0, arc law at sub-arc midpoints) or the law's own atoms.
EmpiricalMeasure discretized_target(const CircleLaw& law, std::size_t m);

/// Upper bound on the Prohorov distance between discretized_target(law, m)
/// and the law: half a sub-arc length, or 0 for atomic laws.
double discretization_bias(const CircleLaw& law, std::size_t m);

double mass_in_disk(const EmpiricalMeasure& m, double r);

/// sum_j w_j exp(i <t, x_j>) with the real dot product on the plane.
cdouble empirical_char(const EmpiricalMeasure& m, std::array<double, 2> t);

/// sum_j w_j x_j^r conj(x_j)^(mm - r), r <= mm.
cdouble mixed_power_mean(const EmpiricalMeasure& m, unsigned mm, unsigned r);

/// Fraction of probes whose nearest target lies strictly closer than eps0.
double pairing_fraction(std::span<const cdouble> targets, std::span<const cdouble> probes, double eps0);

/// `re,im` rows (or `re,im,weight` when weighted), 17 significant digits,
/// preceded by a header row.
void write_measure_csv(std::ostream& out, const EmpiricalMeasure& m, bool weighted);

/// Accepts `re,im` and `re,im,weight` rows. Blank lines, `#` comments and a
/// non-numeric header row are skipped. Weighted input is renormalized.
EmpiricalMeasure read_measure_csv(std::istream& in);

}  // namespace circderiv
