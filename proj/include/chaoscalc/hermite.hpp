#pragma once

#include <span>
#include <vector>

#include "chaoscalc/multi_index.hpp"

namespace chaoscalc {

enum class PolyBasis { monomial, hermite };

/// Univariate polynomial, coefficient index = degree.
///
/// In the hermite basis, coefficient k multiplies the normalized Hermite
/// polynomial H_k (H_0 = 1, H_1 = x, (m+1)H_{m+1} = x H_m - H_{m-1}); these
/// equal the classical probabilists' polynomials He_k divided by k!.
struct UnivariatePoly {
    std::vector<double> coeffs;
    PolyBasis basis = PolyBasis::monomial;

    UnivariatePoly() = default;
    UnivariatePoly(std::vector<double> c, PolyBasis b);

    [[nodiscard]] bool is_zero() const { return coeffs.empty(); }
    [[nodiscard]] int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    /// Drops trailing zero coefficients so the zero polynomial is the empty vector.
    void normalize();
};

/// Value of the normalized Hermite polynomial H_m at x, via the recurrence.
double hermite_eval(int m, double x);

/// Exact monomial coefficients of H_m.
UnivariatePoly hermite_coeffs(int m);

/// Re-expresses the same polynomial function in the target basis.
/// The round trip is the identity (up to floating-point rounding).
UnivariatePoly basis_convert(const UnivariatePoly& p, PolyBasis target);

/// Evaluates a polynomial in either basis.
double poly_eval(const UnivariatePoly& p, double x);

/// Generalized Hermite polynomial of the count vector c at the sample g:
/// (c!)^{1/2} * prod_j H_{c_j}(g_j). Basis indices are 1-based into g.
double psi_eval(const CountVector& c, std::span<const double> g);

/// Same, keyed by an ordered multi-index.
double psi_eval(const MultiIndex& index, std::span<const double> g);

}  // namespace chaoscalc
