#pragma once

/**
 * @file specfun.hpp
 * @brief Complex-capable special functions: gamma, incomplete gamma/beta,
 *        incomplete Gauss hypergeometric, gamma ratios, generalized
 *        binomials, and Faa di Bruno partition machinery.
 *
 * The incomplete beta accepts an unrestricted second parameter whenever
 * y < 1 (the integrand (1-t)^{b-1} is bounded on [0,y]); the closed forms of
 * the fractional operators depend on exactly this extension.
 *
 * Everything here is pure and re-entrant; there is no global mutable state.
 */

#include <span>
#include <vector>

#include "irlfrac/quadrature.hpp"
#include "irlfrac/types.hpp"

namespace irlfrac::specfun {

/// Gamma function (Lanczos, reflection for Re(z) < 0.5).
/// Throws PoleError at nonpositive integers, OverflowError when |Gamma(z)|
/// exceeds the double range.  Accurate to >= 12 significant digits for
/// |z| <= 50.
Complex gamma(Complex z);

/// log Gamma(z); the imaginary part is NOT the continuous branch, only
/// exp(log_gamma(z)) is meaningful.
Complex log_gamma(Complex z);

/// 1/Gamma(z), entire; exactly 0 at z = 0, -1, -2, ...
Complex reciprocal_gamma(Complex z);

/// gamma(nu, x) / Gamma(nu, x) with Re(nu) > 0, x >= 0.  Power series below
/// x = Re(nu)+1, continued fraction above.
Complex lower_incomplete_gamma(Complex nu, double x);
Complex upper_incomplete_gamma(Complex nu, double x);

/// gamma(nu, x) / Gamma(nu), analytically continued to every nu (entire).
Complex lower_gamma_regularized(Complex nu, double x);

/// B_y(a, b) = int_0^y t^{a-1} (1-t)^{b-1} dt.
/// Requires 0 <= y <= 1 and Re(a) > 0; for y = 1 additionally Re(b) > 0.
/// For y < 1 the parameter b is unrestricted.
Complex incomplete_beta(double y, Complex a, Complex b);

/// B_y(a, b) continued in the first parameter to Re(a) <= 0 through
/// a B_y(a,b) = y^a (1-y)^b + (a+b) B_y(a+1,b).
/// Throws PoleError when a is a nonpositive integer (a genuine pole).
Complex incomplete_beta_ac(double y, Complex a, Complex b);

/// Complete beta via gamma functions.
Complex beta(Complex a, Complex b);

/// Gamma(-mu+k) / Gamma(-mu) as the pole-free product prod_{j<k} (-mu+j).
Complex gamma_ratio(Complex mu, int k);

/// binom(mu, k) = (-1)^k gamma_ratio(mu, k) / k!
Complex generalized_binomial(Complex mu, int k);

enum class Kind { Lower, Upper };

/// Incomplete Gauss hypergeometric function via its Euler integral,
/// normalized by B(b, c-b):
///   lower: (1/B(b,c-b)) int_0^y u^{b-1} (1-u)^{c-b-1} (1-ux)^{-a} du
///   upper: same integrand over [y, 1]
/// Requires Re(b) > 0, |x| < 1, 0 < y < 1; the upper kind additionally needs
/// Re(c-b) > 0 for the endpoint u = 1 to be integrable.
Complex incomplete_gauss_2f1(Kind kind, Complex a, Complex b, Complex c, double y, double x);

/// Unnormalized Euler integral of the above (no 1/B(b,c-b) factor); shared
/// with the closed-form layer, where the beta factor cancels against
/// 1/Gamma(-mu) and must not be introduced separately.
Complex incomplete_2f1_euler_integral(Kind kind, Complex a, Complex b, Complex c, double y, double x);

/// Complete 2F1 by its defining power series (|x| < 1); cross-check route.
Complex gauss_2f1(Complex a, Complex b, Complex c, double x);

/// One multiset (r_1, ..., r_k) with sum_j j*r_j = k; r = sum_j r_j.
struct Partition {
    std::vector<int> parts; // parts[j-1] = r_j
    int r = 0;              // sum of multiplicities
    int k = 0;              // weighted sum, equals the derivative order
};

/// All partitions of k in ascending lexicographic order of (r_1,...,r_k).
/// k must lie in [1, 16].
std::vector<Partition> faa_di_bruno_partitions(int k);

/// d^k/dx^k f(g(x)) from derivative values.  f_derivs[i-1] holds
/// f^(i) evaluated at g(x), g_derivs[i-1] holds g^(i)(x); both spans need at
/// least k entries.  Uses the standard coefficient k! / prod(r_j! (j!)^r_j).
Complex faa_di_bruno_derivative(std::span<const Complex> f_derivs,
                                std::span<const Complex> g_derivs, int k);

} // namespace irlfrac::specfun
