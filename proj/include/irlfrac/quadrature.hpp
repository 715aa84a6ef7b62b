#pragma once

/**
 * @file quadrature.hpp
 * @brief Adaptive integration of complex-valued integrands on real intervals.
 *
 * Two entry points:
 *
 *   integrate()                globally adaptive Gauss-Kronrod (7,15) with
 *                              interval bisection; the error estimate per
 *                              panel is the Kronrod-Gauss difference.
 *
 *   integrate_endpoint_power() dedicated path for integrands of the shape
 *                              smooth(t) * |t - endpoint|^sigma with
 *                              Re(sigma) > -1.  The slice next to the
 *                              singular endpoint is handled by expanding
 *                              `smooth` in a Taylor polynomial and
 *                              integrating each power moment analytically,
 *                              so exponents arbitrarily close to -1 (and
 *                              complex ones, which oscillate like
 *                              v^{i Im sigma}) lose no accuracy.
 *
 * All node/weight tables are immutable; both routines are pure and safe to
 * call concurrently.
 */

#include <functional>

#include "irlfrac/types.hpp"

namespace irlfrac::quad {

struct QuadConfig {
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    int singular_taylor_order = 8;
    double singular_split = 0.1; // fraction of interval length peeled off at the singular end

    void validate() const;
};

struct QuadResult {
    Complex value{0.0, 0.0};
    double err_estimate = 0.0; // absolute
    long n_evals = 0;
    bool converged = false;
};

using Integrand = std::function<Complex(double)>;

enum class Endpoint { Left, Right };

/// Integrate f over [a, b].  Throws NonFiniteIntegrand if f returns NaN/inf;
/// an exhausted subdivision budget is reported via converged = false.
QuadResult integrate(const Integrand& f, double a, double b, const QuadConfig& cfg = {});

/// Integrate smooth(t) * |t - s|^sigma over [a, b], where s is the endpoint
/// selected by singular_at and Re(sigma) > -1.  `smooth` must be evaluable on
/// all of [a, b] and analytic near the singular endpoint.
QuadResult integrate_endpoint_power(const Integrand& smooth, Complex sigma, double a, double b,
                                    Endpoint singular_at, const QuadConfig& cfg = {});

/// Central-difference derivative with `levels` Richardson extrapolation
/// stages (levels in 1..4), step h.  Shared by the operator recurrences and
/// the verification suites.
Complex central_derivative(const Integrand& f, double x, double h, int levels = 3);

} // namespace irlfrac::quad
