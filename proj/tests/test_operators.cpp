#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irlfrac/builtins.hpp"
#include "irlfrac/closedforms.hpp"
#include "irlfrac/operators.hpp"
#include "irlfrac/specfun.hpp"

using irlfrac::Complex;
using namespace irlfrac::ops;

namespace {

EvalRequest request(const FunctionSpec& f, Complex mu, double x, double y, Side side,
                    Form form = Form::Form1) {
    return EvalRequest{f, Order(mu), x, CutRatio(y), side, form, {}};
}

bool close(Complex a, Complex b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-30});
}

} // namespace

TEST_CASE("types: order classification and cut ratio") {
    CHECK_FALSE(Order(Complex(-0.5, 0.0)).derivative_regime());
    CHECK(Order(Complex(0.0, 0.4)).derivative_regime()); // boundary Re = 0 counts as derivative
    CHECK(Order(Complex(0.0, 0.4)).whole_steps() == 1);
    CHECK(Order(Complex(1.3, 0.0)).whole_steps() == 2);
    CHECK_THROWS_AS(CutRatio(0.0), irlfrac::DomainError);
    CHECK_THROWS_AS(CutRatio(1.0), irlfrac::DomainError);
}

TEST_CASE("function spec: spot check accepts correct and rejects wrong derivatives") {
    auto good = make_function_spec([](double t) { return Complex(std::sin(t), 0.0); },
                                   {[](double t) { return Complex(std::cos(t), 0.0); }}, 2.0,
                                   Smoothness::Analytic);
    CHECK(close(good.derivative(1, 0.5), Complex(std::cos(0.5), 0.0), 1e-12));

    CHECK_THROWS_AS(
        make_function_spec([](double t) { return Complex(std::sin(t), 0.0); },
                           {[](double t) { return Complex(2.0 * std::cos(t), 0.0); }}, 2.0,
                           Smoothness::Analytic),
        irlfrac::DomainError);
}

TEST_CASE("function spec: FD fallback is gated by the smoothness tag") {
    FunctionSpec no_fallback;
    no_fallback.value = [](double t) { return Complex(std::sin(t), 0.0); };
    no_fallback.domain_bound = 2.0;
    no_fallback.smoothness = Smoothness::L1;
    CHECK_THROWS_AS(no_fallback.derivative(1, 0.5), irlfrac::MissingDerivatives);

    FunctionSpec with_fallback = no_fallback;
    with_fallback.smoothness = Smoothness::CN;
    CHECK(close(with_fallback.derivative(1, 0.5), Complex(std::cos(0.5), 0.0), 1e-7));
}

TEST_CASE("lower differint: plain integral of 1 at order -1") {
    auto one = irlfrac::builtins::const_spec({1.0, 0.0}, 2.0);
    for (double y : {0.25, 0.5, 0.8}) {
        auto r = lower_differint(request(one, {-1.0, 0.0}, 1.2, y, Side::Lower));
        CHECK(r.converged);
        CHECK(close(r.value, Complex(y * 1.2, 0.0), 1e-11));
    }
}

TEST_CASE("lower differint: exactly zero at nonnegative integer orders") {
    auto f = irlfrac::builtins::exp_spec({1.0, 0.0}, 2.0);
    for (double n : {0.0, 1.0, 3.0}) {
        auto r = lower_differint(request(f, {n, 0.0}, 1.0, 0.5, Side::Lower));
        CHECK(r.value == Complex(0.0, 0.0));
        CHECK(r.converged);
        CHECK(r.n_evals == 0);
    }
}

TEST_CASE("lower differint matches the power closed form for all regimes") {
    for (double lam : {0.0, 0.5, 2.5}) {
        auto f = irlfrac::builtins::power_spec({lam, 0.0}, 2.0);
        for (Complex mu : {Complex(-1.5, 0.0), Complex(-0.3, 0.0), Complex(0.4, 0.0),
                           Complex(1.3, 0.0), Complex(-0.5, 0.4)}) {
            auto r = lower_differint(request(f, mu, 1.1, 0.4, Side::Lower));
            Complex expected = irlfrac::closed::power_lower({lam, 0.0}, mu, 1.1, 0.4);
            CHECK(close(r.value, expected, 1e-9));
        }
    }
}

TEST_CASE("upper integral: constant closed form") {
    // f = 1, Re(mu) < 0: (1-y)^{-mu} x^{-mu} / Gamma(1-mu)
    auto one = irlfrac::builtins::const_spec({1.0, 0.0}, 2.0);
    for (Complex mu : {Complex(-0.5, 0.0), Complex(-1.7, 0.0), Complex(-0.5, 0.4)}) {
        for (double y : {0.3, 0.7}) {
            auto r = upper_incomplete_integral(request(one, mu, 1.3, y, Side::Upper));
            Complex expected = std::pow(Complex(1.0 - y, 0.0), -mu) *
                               std::pow(Complex(1.3, 0.0), -mu) *
                               irlfrac::specfun::reciprocal_gamma(1.0 - mu);
            CHECK(close(r.value, expected, 1e-10));
        }
    }
}

TEST_CASE("upper integral rejects derivative orders") {
    auto one = irlfrac::builtins::const_spec({1.0, 0.0}, 2.0);
    CHECK_THROWS_AS(upper_incomplete_integral(request(one, {0.5, 0.0}, 1.0, 0.5, Side::Upper)),
                    irlfrac::DomainError);
}

TEST_CASE("frozen operator spot values (mpmath, 40 digits)") {
    auto sinf = irlfrac::builtins::sin_spec(2.0);
    auto expf = irlfrac::builtins::exp_spec({1.0, 0.0}, 2.0);

    auto lo = lower_differint(request(sinf, {-0.5, 0.0}, 1.0, 0.5, Side::Lower));
    CHECK(close(lo.value, {0.08545625770638199033088, 0.0}, 1e-10));
    auto up = upper_incomplete_integral(request(sinf, {-0.5, 0.0}, 1.0, 0.5, Side::Upper));
    CHECK(close(up.value, {0.5842280018712815766308, 0.0}, 1e-10));

    auto lo_c = lower_differint(request(expf, {-0.5, 0.4}, 1.0, 0.5, Side::Lower));
    CHECK(close(lo_c.value, {0.5216060104599771255523, -0.2914510042253652386733}, 1e-10));
    auto up_c = upper_incomplete_integral(request(expf, {-0.5, 0.4}, 1.0, 0.5, Side::Upper));
    CHECK(close(up_c.value, {1.815476847312045209567, 0.731525105581614436768}, 1e-10));
}

TEST_CASE("form equivalence on a spot grid") {
    auto f = irlfrac::builtins::power_spec({0.5, 0.0}, 2.5);
    for (Complex mu : {Complex(-0.3, 0.0), Complex(-1.5, 0.0), Complex(-0.5, 0.4)}) {
        for (Side side : {Side::Lower, Side::Upper}) {
            Complex v1 = differint(request(f, mu, 1.4, 0.6, side, Form::Form1)).value;
            Complex v2 = differint(request(f, mu, 1.4, 0.6, side, Form::Form2)).value;
            Complex v3 = differint(request(f, mu, 1.4, 0.6, side, Form::Form3)).value;
            CHECK(close(v1, v2, 1e-8));
            CHECK(close(v1, v3, 1e-8));
            CHECK(close(v2, v3, 1e-8));
        }
    }
    // lower forms also hold in the derivative regime
    Complex d1 = lower_differint(request(f, {0.7, 0.0}, 1.4, 0.6, Side::Lower, Form::Form1)).value;
    Complex d2 = lower_differint(request(f, {0.7, 0.0}, 1.4, 0.6, Side::Lower, Form::Form2)).value;
    Complex d3 = lower_differint(request(f, {0.7, 0.0}, 1.4, 0.6, Side::Lower, Form::Form3)).value;
    CHECK(close(d1, d2, 1e-8));
    CHECK(close(d1, d3, 1e-8));
}

TEST_CASE("upper derivative: identity at mu = 0 and the constant closed form") {
    auto sinf = irlfrac::builtins::sin_spec(2.0);
    auto r = upper_incomplete_derivative(request(sinf, {0.0, 0.0}, 1.1, 0.45, Side::Upper));
    CHECK(close(r.value, Complex(std::sin(1.1), 0.0), 1e-9));

    auto one = irlfrac::builtins::const_spec({1.0, 0.0}, 2.0);
    auto half = upper_incomplete_derivative(request(one, {0.5, 0.0}, 1.0, 0.5, Side::Upper));
    Complex expected = std::pow(0.5, -0.5) * irlfrac::specfun::reciprocal_gamma({0.5, 0.0});
    CHECK(close(half.value, expected, 1e-9));
}

TEST_CASE("upper derivative matches the power closed form (analytic continuation)") {
    for (double lam : {0.0, 0.5, 2.5}) {
        auto f = irlfrac::builtins::power_spec({lam, 0.0}, 2.0);
        for (Complex mu : {Complex(0.4, 0.0), Complex(1.3, 0.0)}) {
            auto r = upper_incomplete_derivative(request(f, mu, 1.1, 0.4, Side::Upper));
            Complex expected = irlfrac::closed::power_upper({lam, 0.0}, mu, 1.1, 0.4);
            CHECK(close(r.value, expected, 1e-8));
        }
    }
}

TEST_CASE("additivity: lower + upper = classical RL") {
    auto expf = irlfrac::builtins::exp_spec({1.0, 0.0}, 2.5);
    for (Complex mu : {Complex(-0.3, 0.0), Complex(-1.5, 0.0), Complex(-0.5, 0.4)}) {
        for (double y : {0.2, 0.5, 0.8}) {
            Complex lo = lower_differint(request(expf, mu, 1.2, y, Side::Lower)).value;
            Complex up = upper_incomplete_integral(request(expf, mu, 1.2, y, Side::Upper)).value;
            Complex whole = classical_rl(expf, Order(mu), 0.0, 1.2).value;
            CHECK(close(lo + up, whole, 1e-7));
        }
    }
    // derivative orders with polynomial f
    auto poly = irlfrac::builtins::power_spec({2.0, 0.0}, 2.5);
    for (Complex mu : {Complex(0.5, 0.0), Complex(1.5, 0.0)}) {
        Complex lo = lower_differint(request(poly, mu, 1.2, 0.5, Side::Lower)).value;
        Complex up = upper_incomplete_derivative(request(poly, mu, 1.2, 0.5, Side::Upper)).value;
        Complex whole = classical_rl(poly, Order(mu), 0.0, 1.2).value;
        CHECK(close(lo + up, whole, 1e-7));
    }
}

TEST_CASE("classical RL: trivial and closed-form values") {
    auto one = irlfrac::builtins::const_spec({1.0, 0.0}, 2.0);
    auto r = classical_rl(one, Order(Complex(-1.0, 0.0)), 0.0, 1.7);
    CHECK(close(r.value, Complex(1.7, 0.0), 1e-11));

    // e^{alpha t}: alpha^mu e^{alpha x} gamma(-mu, alpha x)/Gamma(-mu)
    auto expf = irlfrac::builtins::exp_spec({2.0, 0.0}, 2.0);
    Complex mu{-0.5, 0.0};
    auto got = classical_rl(expf, Order(mu), 0.0, 0.7);
    Complex expected = irlfrac::closed::classical_exp({2.0, 0.0}, mu, 0.7);
    CHECK(close(got.value, expected, 1e-9));

    // t^alpha: Gamma(alpha+1)/Gamma(alpha-mu+1) x^{alpha-mu}
    auto pw = irlfrac::builtins::power_spec({1.3, 0.0}, 2.0);
    auto got2 = classical_rl(pw, Order(Complex(-0.6, 0.0)), 0.0, 1.4);
    Complex expected2 = irlfrac::specfun::gamma({2.3, 0.0}) *
                        irlfrac::specfun::reciprocal_gamma({2.9, 0.0}) *
                        std::pow(Complex(1.4, 0.0), Complex(1.9, 0.0));
    CHECK(close(got2.value, expected2, 1e-9));

    // derivative regime reduces to the plain derivative at integer order
    auto got3 = classical_rl(pw, Order(Complex(1.0, 0.0)), 0.2, 1.4);
    CHECK(close(got3.value, Complex(1.3 * std::pow(1.4, 0.3), 0.0), 1e-9));
}

TEST_CASE("recurrence derivative agrees with the direct paths") {
    auto f = irlfrac::builtins::power_spec({1.5, 0.0}, 2.5);
    auto expf = irlfrac::builtins::exp_spec({1.0, 0.0}, 2.5);
    for (double mu : {0.3, 0.7, 1.4}) {
        for (Side side : {Side::Lower, Side::Upper}) {
            auto req_f = request(f, {mu, 0.0}, 1.1, 0.5, side);
            auto req_e = request(expf, {mu, 0.0}, 1.1, 0.5, side);
            Complex rec_f = recurrence_derivative(side, req_f);
            Complex rec_e = recurrence_derivative(side, req_e);
            Complex direct_f = differint(req_f).value;
            Complex direct_e = differint(req_e).value;
            CHECK(close(rec_f, direct_f, 1e-5));
            CHECK(close(rec_e, direct_e, 1e-5));
        }
    }
}

TEST_CASE("recurrence derivative: constant function cross-check at mu = 0.5") {
    // f = 1, upper: direct decomposition vs order recurrence, both against
    // (1-y)^{-1/2} x^{-1/2} / Gamma(1/2)
    auto one = irlfrac::builtins::const_spec({1.0, 0.0}, 2.0);
    auto req = request(one, {0.5, 0.0}, 1.0, 0.5, Side::Upper);
    Complex direct = upper_incomplete_derivative(req).value;
    Complex rec = recurrence_derivative(Side::Upper, req);
    Complex expected = std::pow(0.5, -0.5) * irlfrac::specfun::reciprocal_gamma({0.5, 0.0});
    CHECK(close(direct, expected, 1e-9));
    CHECK(close(rec, expected, 1e-6));
}

TEST_CASE("recurrence derivative: mu = 0 lower vanishes both ways") {
    auto sinf = irlfrac::builtins::sin_spec(2.0);
    auto req = request(sinf, {0.0, 0.0}, 1.0, 0.5, Side::Lower);
    Complex rec = recurrence_derivative(Side::Lower, req);
    CHECK(std::abs(rec) < 1e-7); // d/dx int_0^{yx} f = y f(yx), cancelled by the correction
    CHECK(lower_differint(req).value == Complex(0.0, 0.0));
}

TEST_CASE("recurrence derivative: complex order") {
    auto f = irlfrac::builtins::exp_spec({1.0, 0.0}, 2.5);
    for (Side side : {Side::Lower, Side::Upper}) {
        auto req = request(f, {0.4, 0.3}, 1.1, 0.5, side);
        Complex direct = differint(req).value;
        Complex rec = recurrence_derivative(side, req);
        CHECK(close(direct, rec, 1e-8));
    }
}

TEST_CASE("recurrence derivative: depth guard") {
    auto f = irlfrac::builtins::power_spec({1.0, 0.0}, 2.0);
    CHECK_THROWS_AS(recurrence_derivative(Side::Lower, request(f, {4.2, 0.0}, 1.0, 0.5, Side::Lower)),
                    irlfrac::DepthExceeded);
}

TEST_CASE("composition identities at a representative order") {
    auto sq = irlfrac::builtins::power_spec({2.0, 0.0}, 2.0);
    auto [lhs, rhs] = composition_lhs_rhs(CompositionIdentity::DLower, sq, {2.5, 0.0}, 1.0, 0.5);
    CHECK(close(lhs, rhs, 1e-6));

    auto lin = irlfrac::builtins::power_spec({1.0, 0.0}, 2.0);
    auto [lhs2, rhs2] = composition_lhs_rhs(CompositionIdentity::UpperD, lin, {2.2, 0.0}, 1.0, 0.5);
    CHECK(close(lhs2, rhs2, 1e-6));

    auto one = irlfrac::builtins::const_spec({1.0, 0.0}, 2.0);
    auto [lhs3, rhs3] = composition_lhs_rhs(CompositionIdentity::LowerD, one, {2.5, 0.0}, 1.0, 0.5);
    CHECK(std::abs(lhs3) < 1e-12);
    CHECK(std::abs(rhs3) < 1e-9);

    CHECK_THROWS_AS(composition_lhs_rhs(CompositionIdentity::DLower, sq, {0.9, 0.0}, 1.0, 0.5),
                    irlfrac::DomainError);
}

TEST_CASE("operators are linear in the function argument") {
    auto f = irlfrac::builtins::sin_spec(2.0);
    auto g = irlfrac::builtins::exp_spec({0.7, 0.0}, 2.0);
    Complex a{1.3, 0.0}, b{-0.4, 0.0};
    FunctionSpec combo;
    combo.value = [&, a, b](double t) { return a * f(t) + b * g(t); };
    combo.domain_bound = 2.0;
    combo.smoothness = Smoothness::Analytic;

    for (Side side : {Side::Lower, Side::Upper}) {
        Complex mu{-0.7, 0.0};
        Complex lhs = differint(request(combo, mu, 1.2, 0.35, side)).value;
        Complex rhs = a * differint(request(f, mu, 1.2, 0.35, side)).value +
                      b * differint(request(g, mu, 1.2, 0.35, side)).value;
        CHECK(close(lhs, rhs, 1e-8));
    }
}

TEST_CASE("homogeneity: power-law output scales as x^(lambda - mu)") {
    auto f = irlfrac::builtins::power_spec({0.8, 0.0}, 3.0);
    Complex mu{-0.6, 0.0};
    Complex lam{0.8, 0.0};
    Complex c1 = lower_differint(request(f, mu, 0.7, 0.5, Side::Lower)).value /
                 std::pow(Complex(0.7, 0.0), lam - mu);
    Complex c2 = lower_differint(request(f, mu, 1.9, 0.5, Side::Lower)).value /
                 std::pow(Complex(1.9, 0.0), lam - mu);
    CHECK(close(c1, c2, 1e-8));
}

TEST_CASE("request validation") {
    auto f = irlfrac::builtins::sin_spec(1.0);
    CHECK_THROWS_AS(lower_differint(request(f, {-0.5, 0.0}, 1.5, 0.5, Side::Lower)),
                    irlfrac::DomainError); // x beyond the domain bound
    CHECK_THROWS_AS(lower_differint(request(f, {-0.5, 0.0}, 0.0, 0.5, Side::Lower)),
                    irlfrac::DomainError); // x = 0 excluded
}
