#include "irlfrac/builtins.hpp"

#include <cmath>
#include <numbers>

namespace irlfrac::builtins {

namespace {

constexpr int kDerivOrders = 32; // enough for the K = 25/20 series checks

Complex power_value(Complex lambda, int k, double t) {
    // k-th derivative of t^lambda: lambda (lambda-1) ... (lambda-k+1) t^{lambda-k}
    Complex coeff{1.0, 0.0};
    for (int j = 0; j < k; ++j) coeff *= lambda - double(j);
    if (coeff == Complex(0.0, 0.0)) return {0.0, 0.0}; // integer lambda differentiated away
    if (t == 0.0) {
        Complex e = lambda - double(k);
        if (e == Complex(0.0, 0.0)) return coeff;
        if (e.real() > 0.0) return {0.0, 0.0};
        throw DomainError("power function derivative unbounded at t = 0");
    }
    return coeff * std::pow(Complex(t, 0.0), lambda - double(k));
}

ops::FunctionSpec finish(ops::FunctionSpec spec) {
    // builtins carry exact closed-form derivatives; the FD spot check in
    // make_function_spec still guards the low orders
    return ops::make_function_spec(std::move(spec.value), std::move(spec.derivs),
                                   spec.domain_bound, spec.smoothness);
}

} // namespace

ops::FunctionSpec power_spec(Complex lambda, double domain_bound) {
    if (lambda.real() <= -1.0) throw DomainError("power builtin requires Re(lambda) > -1");
    ops::FunctionSpec spec;
    spec.value = [lambda](double t) { return power_value(lambda, 0, t); };
    for (int k = 1; k <= kDerivOrders; ++k)
        spec.derivs.push_back([lambda, k](double t) { return power_value(lambda, k, t); });
    spec.domain_bound = domain_bound;
    bool integer_lambda = lambda.imag() == 0.0 && lambda.real() == std::floor(lambda.real());
    spec.smoothness = integer_lambda ? ops::Smoothness::Analytic : ops::Smoothness::CN;
    return finish(std::move(spec));
}

ops::FunctionSpec exp_spec(Complex alpha, double domain_bound) {
    ops::FunctionSpec spec;
    spec.value = [alpha](double t) { return std::exp(alpha * t); };
    for (int k = 1; k <= kDerivOrders; ++k)
        spec.derivs.push_back(
            [alpha, k](double t) { return std::pow(alpha, double(k)) * std::exp(alpha * t); });
    spec.domain_bound = domain_bound;
    spec.smoothness = ops::Smoothness::Analytic;
    return finish(std::move(spec));
}

ops::FunctionSpec sin_spec(double domain_bound) {
    ops::FunctionSpec spec;
    spec.value = [](double t) { return Complex(std::sin(t), 0.0); };
    for (int k = 1; k <= kDerivOrders; ++k)
        spec.derivs.push_back([k](double t) {
            return Complex(std::sin(t + 0.5 * k * std::numbers::pi), 0.0);
        });
    spec.domain_bound = domain_bound;
    spec.smoothness = ops::Smoothness::Analytic;
    return finish(std::move(spec));
}

ops::FunctionSpec const_spec(Complex c, double domain_bound) {
    ops::FunctionSpec spec;
    spec.value = [c](double) { return c; };
    for (int k = 1; k <= kDerivOrders; ++k)
        spec.derivs.push_back([](double) { return Complex(0.0, 0.0); });
    spec.domain_bound = domain_bound;
    spec.smoothness = ops::Smoothness::Analytic;
    return finish(std::move(spec));
}

ops::FunctionSpec power2_spec(Complex lambda, Complex alpha, double domain_bound) {
    if (lambda.real() <= 0.0) throw DomainError("power2 builtin requires Re(lambda) > 0");
    if (!(domain_bound < 1.0)) throw DomainError("power2 builtin requires domain_bound < 1");
    ops::FunctionSpec spec;
    // d^k/dt^k [ t^{lambda-1} (1-t)^{-alpha} ] by the product rule:
    // sum_j C(k,j) (lambda-1)_falling(j) t^{lambda-1-j} (alpha)_rising(k-j) (1-t)^{-alpha-(k-j)}
    auto deriv = [lambda, alpha](int k, double t) {
        Complex total{0.0, 0.0};
        double ckj = 1.0;
        for (int j = 0; j <= k; ++j) {
            Complex falling{1.0, 0.0};
            for (int i = 0; i < j; ++i) falling *= lambda - 1.0 - double(i);
            Complex rising{1.0, 0.0};
            for (int i = 0; i < k - j; ++i) rising *= alpha + double(i);
            Complex term = falling * rising;
            if (term != Complex(0.0, 0.0)) {
                term *= std::pow(Complex(t, 0.0), lambda - 1.0 - double(j)) *
                        std::pow(Complex(1.0 - t, 0.0), -alpha - double(k - j));
            }
            total += ckj * term;
            ckj = ckj * (k - j) / (j + 1);
        }
        return total;
    };
    spec.value = [deriv](double t) { return deriv(0, t); };
    for (int k = 1; k <= kDerivOrders; ++k)
        spec.derivs.push_back([deriv, k](double t) { return deriv(k, t); });
    spec.domain_bound = domain_bound;
    spec.smoothness = ops::Smoothness::CN;
    return finish(std::move(spec));
}

ops::FunctionSpec make(const std::string& name, Complex lambda, Complex alpha, double domain_bound) {
    if (name == "power") return power_spec(lambda, domain_bound);
    if (name == "exp") return exp_spec(alpha, domain_bound);
    if (name == "sin") return sin_spec(domain_bound);
    if (name == "const") return const_spec({1.0, 0.0}, domain_bound);
    if (name == "power2") return power2_spec(lambda, alpha, domain_bound);
    throw DomainError("unknown builtin function: " + name);
}

} // namespace irlfrac::builtins
