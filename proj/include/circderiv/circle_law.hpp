#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "circderiv/rng.hpp"

namespace circderiv {

using cdouble = std::complex<double>;

struct UniformLaw {};

struct AtomLaw {
  std::vector<cdouble> points;
  std::vector<double> weights;
};

/// Uniform on the arc {e^{iθ} : lo ≤ θ ≤ hi}.
struct ArcLaw {
  double lo = 0.0;
  double hi = 0.0;
};

/// A probability law supported on the unit circle. Construction validates
/// the invariants, so every CircleLaw value is usable as-is.
class CircleLaw {
 public:
  using Variant = std::variant<UniformLaw, AtomLaw, ArcLaw>;

  static CircleLaw uniform();
  /// Atoms must have modulus 1 and weights must be nonnegative summing to 1,
  /// both within 1e-12.
  static CircleLaw atoms(std::vector<cdouble> points, std::vector<double> weights);
  /// Requires lo < hi <= lo + 2π.
  static CircleLaw arc(double lo, double hi);

  const Variant& variant() const { return law_; }

  /// Length of the support measured along the circle (0 for atomic laws).
  double support_length() const;

  /// Canonical text form, parseable by parse_law().
  std::string to_string() const;

 private:
  explicit CircleLaw(Variant v) : law_(std::move(v)) {}
  Variant law_;
};

/// Grammar: `uniform` | `atoms:z1,w1;z2,w2;...` | `arc:lo,hi`.
/// Complex atoms are written `re+imi` (e.g. `1+0i`, `-0.6-0.8i`).
CircleLaw parse_law(std::string_view text);

/// Parses `re+imi`, `re-imi`, a bare real, or a bare imaginary `imi`.
cdouble parse_complex(std::string_view text);
std::string format_complex(cdouble z);

/// n i.i.d. draws. Each point is obtained from an angle via (cos θ, sin θ),
/// except atom draws, which return the stored atom.
std::vector<cdouble> sample(const CircleLaw& law, std::size_t n, SeedSpec seed);
std::vector<cdouble> sample(const CircleLaw& law, std::size_t n, Rng& rng);

/// E[Z^p] in closed form.
cdouble moment(const CircleLaw& law, unsigned p);

/// E[exp(i<t, Z>)] with <t, z> = t0 Re z + t1 Im z.
cdouble law_char_fn(const CircleLaw& law, std::array<double, 2> t);

}  // namespace circderiv
