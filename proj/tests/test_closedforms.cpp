#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irlfrac/builtins.hpp"
#include "irlfrac/closedforms.hpp"
#include "irlfrac/operators.hpp"
#include "irlfrac/specfun.hpp"

using irlfrac::Complex;
using namespace irlfrac::closed;

namespace {

bool close(Complex a, Complex b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-30});
}

Complex cpow(double b, Complex e) { return std::pow(Complex(b, 0.0), e); }

} // namespace

TEST_CASE("power_lower: constant-function form") {
    // lambda = 0: (1 - (1-y)^{-mu}) x^{-mu} / Gamma(1-mu)
    for (Complex mu : {Complex(-0.8, 0.0), Complex(0.6, 0.0), Complex(-0.5, 0.4)}) {
        double x = 1.3, y = 0.4;
        Complex got = power_lower({0.0, 0.0}, mu, x, y);
        Complex expected = (1.0 - cpow(1.0 - y, -mu)) * cpow(x, -mu) *
                           irlfrac::specfun::reciprocal_gamma(1.0 - mu);
        CHECK(close(got, expected, 1e-11));
    }
}

TEST_CASE("power forms assemble the complete RL value") {
    // lower + upper = Gamma(lambda+1)/Gamma(lambda-mu+1) x^{lambda-mu}
    for (Complex mu : {Complex(-0.7, 0.0), Complex(0.4, 0.0), Complex(1.3, 0.0)}) {
        Complex lam{0.9, 0.0};
        double x = 1.2, y = 0.55;
        Complex total = power_lower(lam, mu, x, y) + power_upper(lam, mu, x, y);
        Complex whole = irlfrac::specfun::gamma(lam + 1.0) *
                        irlfrac::specfun::reciprocal_gamma(lam - mu + 1.0) * cpow(x, lam - mu);
        CHECK(close(total, whole, 1e-10));
    }
}

TEST_CASE("power forms at integer derivative orders") {
    // lower vanishes; upper reproduces the plain n-th derivative
    Complex lam{2.5, 0.0};
    double x = 1.1, y = 0.5;
    CHECK(power_lower(lam, {1.0, 0.0}, x, y) == Complex(0.0, 0.0));
    Complex up1 = power_upper(lam, {1.0, 0.0}, x, y);
    CHECK(close(up1, 2.5 * cpow(x, {1.5, 0.0}), 1e-10));
    Complex up2 = power_upper(lam, {2.0, 0.0}, x, y);
    CHECK(close(up2, 2.5 * 1.5 * cpow(x, {0.5, 0.0}), 1e-10));
}

TEST_CASE("power forms against the quadrature-backed operators") {
    auto spot = [](double lam, Complex mu) {
        auto f = irlfrac::builtins::power_spec({lam, 0.0}, 2.0);
        irlfrac::ops::EvalRequest req{f, irlfrac::ops::Order(mu), 1.0, irlfrac::ops::CutRatio(0.5),
                                      irlfrac::ops::Side::Lower, irlfrac::ops::Form::Form1, {}};
        Complex lower_num = irlfrac::ops::lower_differint(req).value;
        req.side = irlfrac::ops::Side::Upper;
        Complex upper_num = irlfrac::ops::differint(req).value;
        CHECK(close(lower_num, power_lower({lam, 0.0}, mu, 1.0, 0.5), 1e-8));
        CHECK(close(upper_num, power_upper({lam, 0.0}, mu, 1.0, 0.5), 1e-8));
    };
    spot(0.5, {-0.5, 0.0}); // the paper's (0.5, -0.5, 1, 0.5) point
    spot(0.5, {0.4, 0.0});
    spot(2.5, {-0.5, 0.4});
}

TEST_CASE("classical_exp: antiderivative cases") {
    // mu = -1, alpha = 1: e^x - 1
    Complex v = classical_exp({1.0, 0.0}, {-1.0, 0.0}, 0.9);
    CHECK(close(v, Complex(std::exp(0.9) - 1.0, 0.0), 1e-12));
    // mu = -2, alpha = 1: e^x - 1 - x
    Complex v2 = classical_exp({1.0, 0.0}, {-2.0, 0.0}, 0.9);
    CHECK(close(v2, Complex(std::exp(0.9) - 1.9, 0.0), 1e-11));
}

TEST_CASE("classical_exp: operator as oracle") {
    auto expf = irlfrac::builtins::exp_spec({2.0, 0.0}, 1.0);
    Complex got = classical_exp({2.0, 0.0}, {-0.5, 0.0}, 0.7);
    Complex oracle =
        irlfrac::ops::classical_rl(expf, irlfrac::ops::Order(Complex(-0.5, 0.0)), 0.0, 0.7).value;
    CHECK(close(got, oracle, 1e-9));
    // derivative order via the entire continuation, against the Caputo path
    Complex got_d = classical_exp({2.0, 0.0}, {0.5, 0.0}, 0.7);
    Complex oracle_d =
        irlfrac::ops::classical_rl(expf, irlfrac::ops::Order(Complex(0.5, 0.0)), 0.0, 0.7).value;
    CHECK(close(got_d, oracle_d, 1e-8));
}

TEST_CASE("classical_power: power rule and gamma-ratio route") {
    Complex v = classical_power({1.7, 0.0}, {-1.0, 0.0}, 1.3);
    CHECK(close(v, cpow(1.3, {2.7, 0.0}) / 2.7, 1e-11));
    // quadrature-backed beta against the pure gamma expression
    Complex alpha{0.8, 0.0}, mu{-0.6, 0.0};
    Complex got = classical_power(alpha, mu, 1.1);
    Complex viagamma = irlfrac::specfun::gamma(alpha + 1.0) *
                       irlfrac::specfun::reciprocal_gamma(alpha - mu + 1.0) * cpow(1.1, alpha - mu);
    CHECK(close(got, viagamma, 1e-11));
    CHECK_THROWS_AS(classical_power({0.5, 0.0}, {0.5, 0.0}, 1.0), irlfrac::DomainError);
}

TEST_CASE("classical_exp domain restrictions") {
    CHECK_THROWS_AS(classical_exp({0.0, 0.0}, {-0.5, 0.0}, 1.0), irlfrac::DomainError);
    CHECK_THROWS_AS(classical_exp({-1.0, 0.0}, {-0.5, 0.0}, 1.0), irlfrac::DomainError);
}

TEST_CASE("power2: alpha = 0 reduces to the plain power forms") {
    Complex lam{1.2, 0.0};
    for (Complex mu : {Complex(-0.4, 0.0), Complex(0.3, 0.0)}) {
        Complex got = power2_lower(lam, {0.0, 0.0}, mu, 0.3, 0.5);
        Complex expected = power_lower(lam - 1.0, mu, 0.3, 0.5);
        CHECK(close(got, expected, 1e-9));
        Complex got_u = power2_upper(lam, {0.0, 0.0}, mu, 0.3, 0.5);
        Complex expected_u = power_upper(lam - 1.0, mu, 0.3, 0.5);
        CHECK(close(got_u, expected_u, 1e-9));
    }
}

TEST_CASE("power2: lower + upper assemble the complete hypergeometric value") {
    Complex lam{1.2, 0.0}, alpha{0.7, 0.0}, mu{-0.4, 0.0};
    double x = 0.3, y = 0.5;
    Complex total = power2_lower(lam, alpha, mu, x, y) + power2_upper(lam, alpha, mu, x, y);
    Complex whole = irlfrac::specfun::gamma(lam) * irlfrac::specfun::reciprocal_gamma(lam - mu) *
                    cpow(x, lam - mu - 1.0) * irlfrac::specfun::gauss_2f1(alpha, lam, lam - mu, x);
    CHECK(close(total, whole, 1e-9));
}

TEST_CASE("power2 against the operator on t^{lambda-1}(1-t)^{-alpha}") {
    Complex lam{1.2, 0.0}, alpha{0.7, 0.0}, mu{-0.4, 0.0};
    double x = 0.3, y = 0.5;
    auto f = irlfrac::builtins::power2_spec(lam, alpha, 0.95);
    irlfrac::ops::EvalRequest req{f, irlfrac::ops::Order(mu), x, irlfrac::ops::CutRatio(y),
                                  irlfrac::ops::Side::Lower, irlfrac::ops::Form::Form1, {}};
    Complex lower_num = irlfrac::ops::lower_differint(req).value;
    CHECK(close(lower_num, power2_lower(lam, alpha, mu, x, y), 1e-6));
    req.side = irlfrac::ops::Side::Upper;
    Complex upper_num = irlfrac::ops::differint(req).value;
    CHECK(close(upper_num, power2_upper(lam, alpha, mu, x, y), 1e-6));
}

TEST_CASE("power2 derivative order against the operator") {
    Complex lam{1.2, 0.0}, alpha{0.7, 0.0}, mu{0.35, 0.0};
    double x = 0.45, y = 0.5;
    auto f = irlfrac::builtins::power2_spec(lam, alpha, 0.95);
    irlfrac::ops::EvalRequest req{f, irlfrac::ops::Order(mu), x, irlfrac::ops::CutRatio(y),
                                  irlfrac::ops::Side::Lower, irlfrac::ops::Form::Form1, {}};
    CHECK(close(irlfrac::ops::lower_differint(req).value, power2_lower(lam, alpha, mu, x, y), 1e-6));
    req.side = irlfrac::ops::Side::Upper;
    CHECK(close(irlfrac::ops::differint(req).value, power2_upper(lam, alpha, mu, x, y), 1e-6));
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(power_lower({-1.5, 0.0}, {0.5, 0.0}, 1.0, 0.5), irlfrac::DomainError);
    CHECK_THROWS_AS(power_lower({0.5, 0.0}, {0.5, 0.0}, -1.0, 0.5), irlfrac::DomainError);
    CHECK_THROWS_AS(power2_lower({-0.2, 0.0}, {0.5, 0.0}, {0.5, 0.0}, 0.3, 0.5),
                    irlfrac::DomainError);
}
