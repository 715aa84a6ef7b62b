#include "irlfrac/operators.hpp"

#include <algorithm>
#include <cmath>

#include "irlfrac/specfun.hpp"

namespace irlfrac::ops {

namespace {

Complex cpow(double base, Complex exponent) {
    return std::pow(Complex(base, 0.0), exponent);
}

// FD step for the fallback derivative; widened per order to keep the
// difference quotients above roundoff.
double fallback_step(double t, double bound, int k) {
    double scale = std::max(std::abs(t), 0.05 * bound);
    double h = scale * std::pow(1e-15, 1.0 / (2 * k + 2));
    return std::min(h, 0.45 * bound / (k + 1));
}

} // namespace

Complex FunctionSpec::derivative(int k, double t) const {
    if (k <= 0) return value(t);
    if (k <= int(derivs.size())) return derivs[k - 1](t);
    if (!fd_fallback_allowed())
        throw MissingDerivatives("derivative of order " + std::to_string(k) +
                                 " not supplied and FD fallback not allowed by smoothness tag");
    if (k > 6) throw MissingDerivatives("FD fallback limited to order 6");
    int base = int(derivs.size());
    // differentiate the highest supplied callback numerically
    std::function<Complex(double)> target = base > 0 ? derivs[base - 1] : value;
    int missing = k - base;
    std::function<Complex(double)> g = target;
    for (int level = 0; level < missing; ++level) {
        auto prev = g;
        double b = domain_bound;
        g = [prev, b, level](double s) {
            double h = fallback_step(s, b, level + 1);
            if (s - h < 0.0) h = 0.5 * s;
            if (s + h > b) h = 0.5 * (b - s);
            return quad::central_derivative([&](double u) { return prev(u); }, s, h, 3);
        };
    }
    return g(t);
}

FunctionSpec make_function_spec(std::function<Complex(double)> value,
                                std::vector<std::function<Complex(double)>> derivs,
                                double domain_bound, Smoothness smoothness) {
    if (!(domain_bound > 0.0)) throw DomainError("domain bound must be positive");
    if (!value) throw DomainError("function spec needs a value callback");
    FunctionSpec spec{std::move(value), std::move(derivs), domain_bound, smoothness};

    // Spot-check each supplied derivative against a finite difference of the
    // callback one order below, at three fixed interior points.
    const double points[3] = {0.31 * domain_bound, 0.57 * domain_bound, 0.83 * domain_bound};
    for (size_t k = 0; k < spec.derivs.size(); ++k) {
        auto lower = (k == 0) ? spec.value : spec.derivs[k - 1];
        for (double t : points) {
            double h = 1e-4 * domain_bound;
            Complex fd = quad::central_derivative([&](double u) { return lower(u); }, t, h, 3);
            Complex given = spec.derivs[k](t);
            double scale = std::max({std::abs(fd), std::abs(given), 1e-8});
            if (std::abs(fd - given) > 1e-4 * scale)
                throw DomainError("derivative callback of order " + std::to_string(k + 1) +
                                  " fails the finite-difference spot check");
        }
    }
    return spec;
}

void EvalRequest::validate() const {
    if (!(x > 0.0)) throw DomainError("x must be positive (operators vanish in the x -> 0 limit)");
    if (x > f.domain_bound) throw DomainError("x exceeds the function's domain bound");
    quad.validate();
}

quad::QuadResult lower_differint(const EvalRequest& req) {
    req.validate();
    const Complex mu = req.order.mu;
    const double x = req.x;
    const double y = req.y.value;
    const Complex rg = specfun::reciprocal_gamma(-mu);

    if (rg == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), 0.0, 0, true}; // mu in {0,1,2,...}

    const Complex kernel_exp = -mu - 1.0;
    quad::QuadResult raw;
    Complex prefactor;
    switch (req.form == Form::Auto ? Form::Form1 : req.form) {
        case Form::Form1:
            raw = quad::integrate([&](double t) { return cpow(x - t, kernel_exp) * req.f(t); }, 0.0,
                                  y * x, req.quad);
            prefactor = rg;
            break;
        case Form::Form2:
            raw = quad::integrate([&](double u) { return cpow(1.0 - u, kernel_exp) * req.f(u * x); },
                                  0.0, y, req.quad);
            prefactor = rg * cpow(x, -mu);
            break;
        default: // Form3
            raw = quad::integrate(
                [&](double w) { return cpow(1.0 - w * y, kernel_exp) * req.f(y * w * x); }, 0.0, 1.0,
                req.quad);
            prefactor = rg * cpow(x, -mu) * y;
            break;
    }
    return {prefactor * raw.value, std::abs(prefactor) * raw.err_estimate, raw.n_evals, raw.converged};
}

quad::QuadResult upper_incomplete_integral(const EvalRequest& req) {
    req.validate();
    const Complex mu = req.order.mu;
    if (mu.real() >= 0.0)
        throw DomainError("upper_incomplete_integral requires Re(mu) < 0 (integral regime)");
    const double x = req.x;
    const double y = req.y.value;
    const Complex sigma = -mu - 1.0; // Re(sigma) > -1 here
    const bool singular = sigma.real() < 0.0;
    const Complex rg = specfun::reciprocal_gamma(-mu);

    quad::QuadResult raw;
    Complex prefactor;
    switch (req.form == Form::Auto ? Form::Form1 : req.form) {
        case Form::Form1: {
            auto smooth = [&](double t) { return req.f(t); };
            raw = singular ? quad::integrate_endpoint_power(smooth, sigma, y * x, x,
                                                            quad::Endpoint::Right, req.quad)
                           : quad::integrate([&](double t) { return cpow(x - t, sigma) * req.f(t); },
                                             y * x, x, req.quad);
            prefactor = rg;
            break;
        }
        case Form::Form2: {
            auto smooth = [&](double u) { return req.f(u * x); };
            raw = singular ? quad::integrate_endpoint_power(smooth, sigma, y, 1.0,
                                                            quad::Endpoint::Right, req.quad)
                           : quad::integrate(
                                 [&](double u) { return cpow(1.0 - u, sigma) * req.f(u * x); }, y,
                                 1.0, req.quad);
            prefactor = rg * cpow(x, -mu);
            break;
        }
        default: { // Form3: substitute t = (1-v)x, singular end at v = 0
            auto smooth = [&](double v) { return req.f((1.0 - v) * x); };
            raw = singular ? quad::integrate_endpoint_power(smooth, sigma, 0.0, 1.0 - y,
                                                            quad::Endpoint::Left, req.quad)
                           : quad::integrate(
                                 [&](double v) { return cpow(v, sigma) * req.f((1.0 - v) * x); },
                                 0.0, 1.0 - y, req.quad);
            prefactor = rg * cpow(x, -mu);
            break;
        }
    }
    return {prefactor * raw.value, std::abs(prefactor) * raw.err_estimate, raw.n_evals, raw.converged};
}

quad::QuadResult upper_incomplete_derivative(const EvalRequest& req) {
    req.validate();
    const Complex mu = req.order.mu;
    if (mu.real() < 0.0)
        throw DomainError("upper_incomplete_derivative requires Re(mu) >= 0");
    const int n = req.order.whole_steps();
    const double x = req.x;
    const double a = req.y.value * x;

    Complex boundary{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
        Complex fk = (k == 0) ? req.f(a) : req.f.derivative(k, a);
        boundary += fk * cpow(x - a, double(k) - mu) * specfun::reciprocal_gamma(double(k + 1) - mu);
    }

    EvalRequest tail = req;
    tail.order = Order(mu - double(n)); // Re in [-1, 0)
    tail.form = Form::Form1;
    FunctionSpec fn;
    fn.value = [f = req.f, n](double t) { return f.derivative(n, t); };
    fn.domain_bound = req.f.domain_bound;
    fn.smoothness = req.f.smoothness;
    tail.f = std::move(fn);

    quad::QuadResult integral = upper_incomplete_integral(tail);
    return {boundary + integral.value, integral.err_estimate, integral.n_evals, integral.converged};
}

quad::QuadResult upper_differint(const EvalRequest& req) {
    return req.order.derivative_regime() ? upper_incomplete_derivative(req)
                                         : upper_incomplete_integral(req);
}

quad::QuadResult differint(const EvalRequest& req) {
    return req.side == Side::Lower ? lower_differint(req) : upper_differint(req);
}

namespace {

Complex recurrence_eval(Side side, const EvalRequest& base, Complex mu, double x, double h) {
    if (mu.real() < 0.0) {
        EvalRequest req = base;
        req.order = Order(mu);
        req.x = x;
        return side == Side::Lower ? lower_differint(req).value : upper_incomplete_integral(req).value;
    }
    const double y = base.y.value;
    Complex correction = y * cpow(1.0 - y, -mu) * cpow(x, -mu) * base.f(x * y) *
                         specfun::reciprocal_gamma(1.0 - mu);
    Complex dd = quad::central_derivative(
        [&](double s) { return recurrence_eval(side, base, mu - 1.0, s, h); }, x, h, 3);
    return side == Side::Lower ? dd - correction : dd + correction;
}

} // namespace

Complex recurrence_derivative(Side side, const EvalRequest& req, double fd_step) {
    req.validate();
    const Complex mu = req.order.mu;
    if (mu.real() < 0.0) throw DomainError("recurrence_derivative requires Re(mu) >= 0");
    if (req.order.whole_steps() > 4)
        throw DepthExceeded("recurrence depth capped at 4 (numerical differentiation noise)");
    double h = fd_step > 0.0 ? fd_step : 1e-4 * req.x;
    // keep the full FD stencil (depth shifts compound) inside (0, b]
    double margin = req.f.domain_bound - req.x;
    if (margin <= 0.0) throw DomainError("recurrence FD stencil needs x strictly below the domain bound");
    h = std::min({h, margin / (req.order.whole_steps() + 1.0), 0.25 * req.x});
    return recurrence_eval(side, req, mu, req.x, h);
}

quad::QuadResult classical_rl(const FunctionSpec& f, Order order, double a, double x,
                              const quad::QuadConfig& cfg) {
    if (!(a < x)) throw DomainError("classical_rl requires a < x");
    cfg.validate();
    const Complex mu = order.mu;

    if (mu.real() < 0.0) {
        Complex rg = specfun::reciprocal_gamma(-mu);
        auto smooth = [&](double t) { return f(t); };
        quad::QuadResult raw =
            quad::integrate_endpoint_power(smooth, -mu - 1.0, a, x, quad::Endpoint::Right, cfg);
        return {rg * raw.value, std::abs(rg) * raw.err_estimate, raw.n_evals, raw.converged};
    }

    const int n = order.whole_steps();
    Complex boundary{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
        Complex fk = (k == 0) ? f(a) : f.derivative(k, a);
        boundary += fk * cpow(x - a, double(k) - mu) * specfun::reciprocal_gamma(double(k + 1) - mu);
    }
    Complex sigma = double(n) - mu - 1.0; // Re in (-1, 0]
    Complex rg = specfun::reciprocal_gamma(double(n) - mu);
    auto smooth = [&](double t) { return f.derivative(n, t); };
    quad::QuadResult raw =
        sigma.real() < 0.0
            ? quad::integrate_endpoint_power(smooth, sigma, a, x, quad::Endpoint::Right, cfg)
            : quad::integrate([&](double t) { return cpow(x - t, sigma) * f.derivative(n, t); }, a,
                              x, cfg);
    return {boundary + rg * raw.value, std::abs(rg) * raw.err_estimate, raw.n_evals, raw.converged};
}

std::pair<Complex, Complex> composition_lhs_rhs(CompositionIdentity which, const FunctionSpec& f,
                                                Complex integral_order, double x, double y,
                                                const quad::QuadConfig& cfg) {
    const Complex p = integral_order;
    if (p.real() <= 1.0) throw DomainError("composition identities require Re(p) > 1");
    CutRatio cut(y);

    auto lower_I = [&](Complex q, double xx, const FunctionSpec& g) {
        EvalRequest req{g, Order(-q), xx, cut, Side::Lower, Form::Form1, cfg};
        return lower_differint(req).value;
    };
    auto upper_I = [&](Complex q, double xx, const FunctionSpec& g) {
        EvalRequest req{g, Order(-q), xx, cut, Side::Upper, Form::Form1, cfg};
        return upper_incomplete_integral(req).value;
    };

    FunctionSpec fprime;
    if (which == CompositionIdentity::LowerD || which == CompositionIdentity::UpperD) {
        fprime.value = [&f](double t) { return f.derivative(1, t); };
        fprime.domain_bound = f.domain_bound;
        fprime.smoothness = f.smoothness;
    }

    const Complex gamma_p = specfun::gamma(p);
    const Complex edge = cpow(1.0 - y, p - 1.0) * cpow(x, p - 1.0) / gamma_p;
    const double fd_h = 1e-4 * x;

    switch (which) {
        case CompositionIdentity::DLower: {
            Complex lhs = quad::central_derivative(
                [&](double s) { return lower_I(p, s, f); }, x, fd_h, 3);
            Complex rhs = y * edge * f(x * y) + lower_I(p - 1.0, x, f);
            return {lhs, rhs};
        }
        case CompositionIdentity::LowerD: {
            Complex lhs = lower_I(p, x, fprime);
            Complex rhs = (cpow(x, p - 1.0) / gamma_p) * (cpow(1.0 - y, p - 1.0) * f(x * y) - f(0.0)) +
                          lower_I(p - 1.0, x, f);
            return {lhs, rhs};
        }
        case CompositionIdentity::DUpper: {
            Complex lhs = quad::central_derivative(
                [&](double s) { return upper_I(p, s, f); }, x, fd_h, 3);
            Complex rhs = -y * edge * f(x * y) + upper_I(p - 1.0, x, f);
            return {lhs, rhs};
        }
        default: { // UpperD
            Complex lhs = upper_I(p, x, fprime);
            Complex rhs = -edge * f(x * y) + upper_I(p - 1.0, x, f);
            return {lhs, rhs};
        }
    }
}

} // namespace irlfrac::ops
