#pragma once

/**
 * @file closedforms.hpp
 * @brief Closed-form reference values for the incomplete RL operators on
 *        power functions, exponentials, and the hypergeometric family.
 *        These are the oracle layer for the operator tests.
 */

#include "irlfrac/types.hpp"

namespace irlfrac::closed {

/// D^mu [ t^lambda ; y ](x) = B_y(lambda+1, -mu) / Gamma(-mu) * x^{lambda-mu},
/// valid for every mu in C (Re(lambda) > -1, 0 < y < 1, x > 0).
Complex power_lower(Complex lambda, Complex mu, double x, double y);

/// D^mu { t^lambda ; y }(x) = B_{1-y}(-mu, lambda+1) / Gamma(-mu) * x^{lambda-mu}.
/// For Re(mu) >= 0 the beta/gamma quotient is continued through the
/// first-parameter recurrence of the incomplete beta, which keeps the
/// expression pole-free for every mu.
Complex power_upper(Complex lambda, Complex mu, double x, double y);

/// Classical RL differintegral of e^{alpha t} based at 0:
/// alpha^mu e^{alpha x} gamma(-mu, alpha x) / Gamma(-mu), any mu.
/// Restricted to real alpha > 0 (the incomplete gamma takes a real second
/// argument).
Complex classical_exp(Complex alpha, Complex mu, double x);

/// Classical RL differintegral of t^alpha based at 0, Re(mu) < 0:
/// x^{alpha-mu} B_1(-mu, alpha+1) / Gamma(-mu).
Complex classical_power(Complex alpha, Complex mu, double x);

/// D^mu [ t^{lambda-1} (1-t)^{-alpha} ; y ](x)
///   = Gamma(lambda)/Gamma(lambda-mu) x^{lambda-mu-1} 2F1(alpha,[lambda,lambda-mu;y];x),
/// assembled from the unnormalized Euler integral so gamma poles cancel.
/// Requires Re(lambda) > 0, |x| < 1, 0 < y < 1; any mu.
Complex power2_lower(Complex lambda, Complex alpha, Complex mu, double x, double y);

/// Upper companion of power2_lower.  Direct Euler integral for Re(mu) < 0;
/// for Re(mu) >= 0 deduced from the complete RL value minus the lower part
/// (their sum is the classical differintegral).
Complex power2_upper(Complex lambda, Complex alpha, Complex mu, double x, double y);

} // namespace irlfrac::closed
