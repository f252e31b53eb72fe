#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace circderiv {

using cdouble = std::complex<double>;

/// Monic polynomial P(z) = (z - z_1)...(z - z_n), held as its root multiset.
/// Roots are kept exactly in the order given.
class RootPoly {
 public:
  explicit RootPoly(std::vector<cdouble> roots);

  std::span<const cdouble> roots() const { return roots_; }
  std::size_t degree() const { return roots_.size(); }

  /// Product of linear factors.
  cdouble evaluate(cdouble z) const;

 private:
  std::vector<cdouble> roots_;
};

// Weight schemes for Q(z) = P(z) * sum_j lambda_j / (z - z_j).

/// lambda_j = 1, giving Q = P'.
struct Ordinary {};

/// lambda_j = xi - z_j, giving Q = n P(z) - (z - xi) P'(z).
struct Polar {
  cdouble xi;
};

/// Positive lambda_j with sum n.
struct SzNagy {
  std::vector<double> lambda;
};

using WeightScheme = std::variant<Ordinary, Polar, SzNagy>;

/// Grammar: `ordinary` | `polar:re+imi` | `sznagy:l1,l2,...`.
WeightScheme parse_scheme(std::string_view text);
std::string to_string(const WeightScheme& scheme);

/// Throws InvalidArgument unless lambda is positive, of length n, and sums to
/// n within 1e-9.
void validate_sznagy(std::span<const double> lambda, std::size_t n);

/// True when |sum lambda| <= 1e-12 * sum |lambda|.
bool is_degenerate(std::span<const cdouble> lambda);

std::vector<cdouble> resolve_weights(const RootPoly& poly, const WeightScheme& scheme);

/// R(z) = sum_j lambda_j / (z - z_j). Throws PoleProximity when z lies within
/// 1e-14 of a root.
cdouble log_derivative_value(const RootPoly& poly, std::span<const cdouble> lambda, cdouble z);

/// alpha_j = lambda_j / sum lambda. Throws DegenerateWeights on a zero sum.
std::vector<cdouble> alpha(std::span<const cdouble> lambda);

inline constexpr std::size_t kMaxCoefficientDegree = 64;

/// Coefficients c_0..c_n (ascending, c_n = 1) by balanced pairwise products of
/// the linear factors. Diagnostic only; throws DegreeTooLarge above 64.
std::vector<cdouble> coefficients(const RootPoly& poly);

}  // namespace circderiv
