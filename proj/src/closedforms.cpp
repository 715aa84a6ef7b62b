#include "irlfrac/closedforms.hpp"

#include <cmath>

#include "irlfrac/specfun.hpp"

namespace irlfrac::closed {

namespace {

Complex cpow(double base, Complex exponent) {
    return std::pow(Complex(base, 0.0), exponent);
}

void check_power_args(Complex lambda, double x, double y) {
    if (lambda.real() <= -1.0) throw DomainError("power closed forms require Re(lambda) > -1");
    if (!(x > 0.0)) throw DomainError("power closed forms require x > 0");
    if (!(y > 0.0 && y < 1.0)) throw DomainError("power closed forms require 0 < y < 1");
}

} // namespace

Complex power_lower(Complex lambda, Complex mu, double x, double y) {
    check_power_args(lambda, x, y);
    // second beta parameter unrestricted for y < 1, so no continuation needed
    Complex b = specfun::incomplete_beta(y, lambda + 1.0, -mu);
    return b * specfun::reciprocal_gamma(-mu) * cpow(x, lambda - mu);
}

Complex power_upper(Complex lambda, Complex mu, double x, double y) {
    check_power_args(lambda, x, y);
    const double z = 1.0 - y;
    const Complex a = -mu;
    const Complex b = lambda + 1.0;

    Complex ratio; // B_z(-mu, lambda+1) / Gamma(-mu), entire in mu
    if (a.real() > 0.0) {
        ratio = specfun::incomplete_beta(z, a, b) * specfun::reciprocal_gamma(a);
    } else {
        // walk B_z(a,b)/Gamma(a) down from Re(a+k) in (0,1]:
        //   R_j = z^{a+j} (1-z)^b / Gamma(a+j+1) + (a+j+b) R_{j+1}
        int k = int(std::floor(mu.real())) + 1;
        Complex r = specfun::incomplete_beta(z, a + double(k), b) *
                    specfun::reciprocal_gamma(a + double(k));
        const Complex yb = cpow(1.0 - z, b); // (1-z) = y
        for (int j = k - 1; j >= 0; --j) {
            Complex aj = a + double(j);
            r = cpow(z, aj) * yb * specfun::reciprocal_gamma(aj + 1.0) + (aj + b) * r;
        }
        ratio = r;
    }
    return ratio * cpow(x, lambda - mu);
}

Complex classical_exp(Complex alpha, Complex mu, double x) {
    if (alpha == Complex(0.0, 0.0)) throw DomainError("classical_exp requires alpha != 0");
    if (alpha.imag() != 0.0 || alpha.real() <= 0.0)
        throw DomainError("classical_exp implemented for real alpha > 0");
    if (!(x > 0.0)) throw DomainError("classical_exp requires x > 0");
    double w = alpha.real() * x;
    // alpha^mu e^{alpha x} * [gamma(-mu, alpha x)/Gamma(-mu)], the bracket
    // being entire in mu via the regularized series.
    return std::pow(alpha, mu) * std::exp(Complex(w, 0.0)) *
           specfun::lower_gamma_regularized(-mu, w);
}

Complex classical_power(Complex alpha, Complex mu, double x) {
    if (alpha.real() <= -1.0) throw DomainError("classical_power requires Re(alpha) > -1");
    if (mu.real() >= 0.0) throw DomainError("classical_power requires Re(mu) < 0");
    if (!(x > 0.0)) throw DomainError("classical_power requires x > 0");
    Complex b = specfun::incomplete_beta(1.0, -mu, alpha + 1.0);
    return cpow(x, alpha - mu) * b * specfun::reciprocal_gamma(-mu);
}

Complex power2_lower(Complex lambda, Complex alpha, Complex mu, double x, double y) {
    if (lambda.real() <= 0.0) throw DomainError("power2 forms require Re(lambda) > 0");
    Complex euler =
        specfun::incomplete_2f1_euler_integral(specfun::Kind::Lower, alpha, lambda, lambda - mu, y, x);
    return specfun::reciprocal_gamma(-mu) * cpow(x, lambda - mu - 1.0) * euler;
}

Complex power2_upper(Complex lambda, Complex alpha, Complex mu, double x, double y) {
    if (lambda.real() <= 0.0) throw DomainError("power2 forms require Re(lambda) > 0");
    if (mu.real() < 0.0) {
        Complex euler = specfun::incomplete_2f1_euler_integral(specfun::Kind::Upper, alpha, lambda,
                                                               lambda - mu, y, x);
        return specfun::reciprocal_gamma(-mu) * cpow(x, lambda - mu - 1.0) * euler;
    }
    // derivative orders: complete differintegral minus the lower part
    Complex complete = specfun::gamma(lambda) * specfun::reciprocal_gamma(lambda - mu) *
                       cpow(x, lambda - mu - 1.0) *
                       specfun::gauss_2f1(alpha, lambda, lambda - mu, x);
    return complete - power2_lower(lambda, alpha, mu, x, y);
}

} // namespace irlfrac::closed
