#include "irlfrac/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace irlfrac::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos g = 7, 9 coefficients (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma for Re(z) >= 0.5.
Complex lanczos_log_gamma(Complex z) {
    z -= 1.0;
    Complex sum = kLanczos[0];
    for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (z + double(i));
    Complex base = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(base) - base + std::log(sum);
}

// Quadrature settings used for the defining integrals in this module; the
// downstream identity checks need the betas to ~1e-12.
quad::QuadConfig specfun_quad() {
    quad::QuadConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-13;
    cfg.max_subdivisions = 4000;
    return cfg;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

Complex log_gamma(Complex z) {
    if (is_nonpositive_integer(z)) throw PoleError("gamma pole at nonpositive integer");
    if (z.real() >= 0.5) return lanczos_log_gamma(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(Complex(kPi, 0.0)) - std::log(std::sin(kPi * z)) - lanczos_log_gamma(1.0 - z);
}

Complex gamma(Complex z) {
    Complex lg = log_gamma(z);
    if (lg.real() > 709.0) throw OverflowError("gamma overflow");
    Complex value = std::exp(lg);
    if (!is_finite(value)) throw OverflowError("gamma overflow");
    return value;
}

Complex reciprocal_gamma(Complex z) {
    if (is_nonpositive_integer(z)) return {0.0, 0.0};
    Complex lg = log_gamma(z);
    if (lg.real() > 709.0) return {0.0, 0.0}; // 1/Gamma underflows to its limit
    return std::exp(-lg);
}

namespace {

// gamma(nu,x) by the standard series, valid for x < Re(nu)+1.
Complex lower_gamma_series(Complex nu, double x) {
    Complex term = 1.0 / nu;
    Complex sum = term;
    for (int n = 1; n < 800; ++n) {
        term *= x / (nu + double(n));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum * std::pow(Complex(x, 0.0), nu) * std::exp(-x);
}

// Gamma(nu,x) by modified Lentz continued fraction, for x >= Re(nu)+1.
Complex upper_gamma_cf(Complex nu, double x) {
    const double tiny = 1e-290;
    Complex b = x + 1.0 - nu;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i < 2000; ++i) {
        Complex an = -double(i) * (double(i) - nu);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        Complex del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x) * std::pow(Complex(x, 0.0), nu) * h;
}

} // namespace

Complex lower_incomplete_gamma(Complex nu, double x) {
    if (nu.real() <= 0.0) throw DomainError("lower_incomplete_gamma requires Re(nu) > 0");
    if (x < 0.0) throw DomainError("lower_incomplete_gamma requires x >= 0");
    if (x == 0.0) return {0.0, 0.0};
    if (x < nu.real() + 1.0) return lower_gamma_series(nu, x);
    return gamma(nu) - upper_gamma_cf(nu, x);
}

Complex upper_incomplete_gamma(Complex nu, double x) {
    if (nu.real() <= 0.0) throw DomainError("upper_incomplete_gamma requires Re(nu) > 0");
    if (x < 0.0) throw DomainError("upper_incomplete_gamma requires x >= 0");
    if (x == 0.0) return gamma(nu);
    if (x < nu.real() + 1.0) return gamma(nu) - lower_gamma_series(nu, x);
    return upper_gamma_cf(nu, x);
}

Complex lower_gamma_regularized(Complex nu, double x) {
    if (x < 0.0) throw DomainError("lower_gamma_regularized requires x >= 0");
    if (x == 0.0) return {0.0, 0.0};
    // gamma(nu,x)/Gamma(nu) = x^nu e^-x sum_n x^n / Gamma(nu+n+1), entire in nu.
    Complex sum{0.0, 0.0};
    double xn = 1.0;
    for (int n = 0; n < 600; ++n) {
        Complex term = xn * reciprocal_gamma(nu + double(n + 1));
        sum += term;
        if (n > x && std::abs(term) < 1e-17 * (std::abs(sum) + 1e-300)) break;
        xn *= x;
    }
    return sum * std::pow(Complex(x, 0.0), nu) * std::exp(-x);
}

Complex incomplete_beta(double y, Complex a, Complex b) {
    if (y < 0.0 || y > 1.0) throw DomainError("incomplete_beta requires 0 <= y <= 1");
    if (a.real() <= 0.0) throw DomainError("incomplete_beta requires Re(a) > 0");
    if (y == 1.0 && b.real() <= 0.0) throw DomainError("incomplete_beta at y = 1 requires Re(b) > 0");
    if (y == 0.0) return {0.0, 0.0};

    auto cfg = specfun_quad();
    if (y < 1.0) {
        auto smooth = [&](double t) { return std::pow(Complex(1.0 - t, 0.0), b - 1.0); };
        return integrate_endpoint_power(smooth, a - 1.0, 0.0, y, quad::Endpoint::Left, cfg).value;
    }
    // y == 1: both endpoints may be singular; split at 1/2.
    auto smooth_left = [&](double t) { return std::pow(Complex(1.0 - t, 0.0), b - 1.0); };
    auto smooth_right = [&](double t) { return std::pow(Complex(t, 0.0), a - 1.0); };
    Complex left = integrate_endpoint_power(smooth_left, a - 1.0, 0.0, 0.5, quad::Endpoint::Left, cfg).value;
    Complex right = integrate_endpoint_power(smooth_right, b - 1.0, 0.5, 1.0, quad::Endpoint::Right, cfg).value;
    return left + right;
}

Complex incomplete_beta_ac(double y, Complex a, Complex b) {
    if (a.real() > 0.0) return incomplete_beta(y, a, b);
    if (is_nonpositive_integer(a)) throw PoleError("incomplete beta pole: first parameter a nonpositive integer");
    if (y <= 0.0 || y > 1.0) throw DomainError("incomplete_beta_ac requires 0 < y <= 1");
    int k = int(std::floor(-a.real())) + 1; // Re(a + k) in (0, 1]
    Complex value = incomplete_beta(y, a + double(k), b);
    Complex one_minus_y_b = std::pow(Complex(1.0 - y, 0.0), b); // 0^b fine for Re(b) > 0 at y = 1
    for (int j = k - 1; j >= 0; --j) {
        Complex aj = a + double(j);
        value = (std::pow(Complex(y, 0.0), aj) * one_minus_y_b + (aj + b) * value) / aj;
    }
    return value;
}

Complex beta(Complex a, Complex b) {
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

Complex gamma_ratio(Complex mu, int k) {
    if (k < 0) throw DomainError("gamma_ratio requires k >= 0");
    Complex prod{1.0, 0.0};
    for (int j = 0; j < k; ++j) prod *= -mu + double(j);
    return prod;
}

Complex generalized_binomial(Complex mu, int k) {
    if (k < 0) throw DomainError("generalized_binomial requires k >= 0");
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * gamma_ratio(mu, k) / factorial(k);
}

Complex incomplete_2f1_euler_integral(Kind kind, Complex a, Complex b, Complex c, double y, double x) {
    if (b.real() <= 0.0) throw DomainError("incomplete 2F1 requires Re(b) > 0");
    if (!(y > 0.0 && y < 1.0)) throw DomainError("incomplete 2F1 requires 0 < y < 1");
    if (!(std::abs(x) < 1.0)) throw DomainError("incomplete 2F1 requires |x| < 1");
    auto cfg = specfun_quad();
    Complex cb = c - b;
    if (kind == Kind::Lower) {
        auto smooth = [&](double u) {
            return std::pow(Complex(1.0 - u, 0.0), cb - 1.0) * std::pow(Complex(1.0 - u * x, 0.0), -a);
        };
        return integrate_endpoint_power(smooth, b - 1.0, 0.0, y, quad::Endpoint::Left, cfg).value;
    }
    if (cb.real() <= 0.0)
        throw DomainError("upper incomplete 2F1 requires Re(c-b) > 0 (endpoint u = 1 not integrable)");
    auto smooth = [&](double u) {
        return std::pow(Complex(u, 0.0), b - 1.0) * std::pow(Complex(1.0 - u * x, 0.0), -a);
    };
    return integrate_endpoint_power(smooth, cb - 1.0, y, 1.0, quad::Endpoint::Right, cfg).value;
}

Complex incomplete_gauss_2f1(Kind kind, Complex a, Complex b, Complex c, double y, double x) {
    Complex integral = incomplete_2f1_euler_integral(kind, a, b, c, y, x);
    // 1/B(b, c-b) written with reciprocal gammas so poles of Gamma(c-b)
    // collapse the value to 0 instead of overflowing.
    return integral * gamma(c) * reciprocal_gamma(b) * reciprocal_gamma(c - b);
}

Complex gauss_2f1(Complex a, Complex b, Complex c, double x) {
    if (!(std::abs(x) < 1.0)) throw DomainError("gauss_2f1 series requires |x| < 1");
    if (is_nonpositive_integer(c)) throw PoleError("gauss_2f1 pole: c nonpositive integer");
    Complex term{1.0, 0.0};
    Complex sum = term;
    for (int n = 0; n < 4000; ++n) {
        term *= (a + double(n)) * (b + double(n)) / (c + double(n)) * x / double(n + 1);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

std::vector<Partition> faa_di_bruno_partitions(int k) {
    if (k < 1) throw DomainError("faa_di_bruno_partitions requires k >= 1");
    if (k > 16) throw LimitError("faa_di_bruno_partitions limited to k <= 16");
    std::vector<Partition> out;
    std::vector<int> parts(k, 0);
    // choose r_1, then r_2, ... ascending lexicographic order
    auto recurse = [&](auto&& self, int j, int remaining) -> void {
        if (j > k) {
            if (remaining == 0) {
                Partition p;
                p.parts = parts;
                p.k = k;
                p.r = 0;
                for (int v : parts) p.r += v;
                out.push_back(std::move(p));
            }
            return;
        }
        for (int rj = 0; rj * j <= remaining; ++rj) {
            parts[j - 1] = rj;
            self(self, j + 1, remaining - rj * j);
        }
        parts[j - 1] = 0;
    };
    recurse(recurse, 1, k);
    return out;
}

Complex faa_di_bruno_derivative(std::span<const Complex> f_derivs,
                                std::span<const Complex> g_derivs, int k) {
    if (k < 1) throw DomainError("faa_di_bruno_derivative requires k >= 1");
    if (k > 16) throw LimitError("faa_di_bruno_derivative limited to k <= 16");
    if (int(f_derivs.size()) < k || int(g_derivs.size()) < k)
        throw ArityError("faa_di_bruno_derivative needs k derivative values for f and g");

    Complex total{0.0, 0.0};
    for (const Partition& p : faa_di_bruno_partitions(k)) {
        double denom = 1.0;
        Complex gprod{1.0, 0.0};
        for (int j = 1; j <= k; ++j) {
            int rj = p.parts[j - 1];
            if (rj == 0) continue;
            denom *= factorial(rj) * std::pow(factorial(j), rj);
            for (int m = 0; m < rj; ++m) gprod *= g_derivs[j - 1];
        }
        total += (factorial(k) / denom) * f_derivs[p.r - 1] * gprod;
    }
    return total;
}

} // namespace irlfrac::specfun
