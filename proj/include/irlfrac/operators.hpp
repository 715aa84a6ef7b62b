#pragma once

/**
 * @file operators.hpp
 * @brief Lower and upper incomplete Riemann-Liouville differintegrals, the
 *        classical RL operator, and the analytic-continuation recurrences.
 *
 * Conventions, used consistently everywhere:
 *   - Order carries the DIFFERENTIATION order mu; the operator of
 *     integration order p is reached with mu = -p.
 *   - The cut ratio y in (0,1) splits [0,x] at t = y*x; "lower" truncates
 *     the kernel integral to [0, yx], "upper" to [yx, x].
 *   - The lower integral forms hold for every mu in C (the kernel
 *     singularity at t = x is outside [0, yx]); the upper side needs the
 *     Caputo-style decomposition once Re(mu) >= 0.
 */

#include <functional>
#include <utility>
#include <vector>

#include "irlfrac/quadrature.hpp"
#include "irlfrac/types.hpp"

namespace irlfrac::ops {

/// Differentiation order; integration order is the negation.
struct Order {
    Complex mu{0.0, 0.0};

    Order() = default;
    Order(Complex m) : mu(m) {
        if (!is_finite(mu)) throw DomainError("order must be finite");
    }
    Order(double m) : Order(Complex(m, 0.0)) {}

    bool derivative_regime() const { return mu.real() >= 0.0; }
    /// n = floor(Re(mu)) + 1, the integer step count of the derivative regime.
    int whole_steps() const { return int(std::floor(mu.real())) + 1; }
};

/// Incompleteness parameter, strictly inside (0,1).
struct CutRatio {
    double value;
    explicit CutRatio(double y) : value(y) {
        if (!(y > 0.0 && y < 1.0)) throw DomainError("cut ratio y must satisfy 0 < y < 1");
    }
};

enum class Smoothness { L1OnLowerCut, L1, LInfinity, CN, Analytic };

/// A user function on [0, b]: value callback, optional derivative callbacks
/// (derivs[k-1] is the k-th derivative), and a smoothness tag.  The tag
/// gates the finite-difference fallback: only CN/Analytic functions may have
/// missing derivatives filled in numerically.
struct FunctionSpec {
    std::function<Complex(double)> value;
    std::vector<std::function<Complex(double)>> derivs;
    double domain_bound = 1.0;
    Smoothness smoothness = Smoothness::L1;

    Complex operator()(double t) const { return value(t); }

    bool fd_fallback_allowed() const {
        return smoothness == Smoothness::CN || smoothness == Smoothness::Analytic;
    }

    /// k-th derivative at t (k >= 1).  Uses the supplied callbacks, then the
    /// FD fallback when the tag allows it; otherwise throws
    /// MissingDerivatives.
    Complex derivative(int k, double t) const;
};

/// Checked constructor: verifies supplied derivative callbacks against
/// finite differences at three interior spot points (relative error 1e-4).
FunctionSpec make_function_spec(std::function<Complex(double)> value,
                                std::vector<std::function<Complex(double)>> derivs,
                                double domain_bound, Smoothness smoothness);

enum class Side { Lower, Upper };
enum class Form { Auto, Form1, Form2, Form3 };

struct EvalRequest {
    FunctionSpec f;
    Order order;
    double x = 1.0;
    CutRatio y{0.5};
    Side side = Side::Lower;
    Form form = Form::Auto;
    quad::QuadConfig quad{};

    void validate() const;
};

/// Lower incomplete RL differintegral, valid for every mu in C:
/// (1/Gamma(-mu)) int_0^{yx} (x-t)^{-mu-1} f(t) dt  (or forms 2/3).
/// Returns exact 0 when mu is a nonnegative integer (1/Gamma(-mu) = 0).
quad::QuadResult lower_differint(const EvalRequest& req);

/// Upper incomplete RL integral, Re(mu) < 0:
/// (1/Gamma(-mu)) int_{yx}^x (x-t)^{-mu-1} f(t) dt  (or forms 2/3).
/// Kernel exponents with Re(-mu-1) in (-1,0) route through the
/// endpoint-singular quadrature path.
quad::QuadResult upper_incomplete_integral(const EvalRequest& req);

/// Upper incomplete RL derivative, Re(mu) >= 0, via the Caputo-style
/// decomposition of the classical RL derivative based at a = xy:
///   sum_{k<n} f^(k)(a) (x-a)^{k-mu} / Gamma(k+1-mu)
///   + (1/Gamma(n-mu)) int_a^x (x-t)^{n-mu-1} f^(n)(t) dt.
quad::QuadResult upper_incomplete_derivative(const EvalRequest& req);

/// Regime dispatch for the upper side.
quad::QuadResult upper_differint(const EvalRequest& req);

/// Either side, either regime.
quad::QuadResult differint(const EvalRequest& req);

/// Derivative through the order-recurrence definitions
///   D^mu = d/dx(D^{mu-1}) -/+ y (1-y)^{-mu} x^{-mu} f(xy) / Gamma(1-mu)
/// (minus for lower, plus for upper), applied floor(Re mu)+1 times down into
/// the integral regime; each d/dx is a central difference with 3-level
/// Richardson at step fd_step (default 1e-4 * x).  Depth is capped at 4.
Complex recurrence_derivative(Side side, const EvalRequest& req, double fd_step = 0.0);

/// Classical Riemann-Liouville differintegral on [a, x] (reference oracle).
quad::QuadResult classical_rl(const FunctionSpec& f, Order order, double a, double x,
                              const quad::QuadConfig& cfg = {});

enum class CompositionIdentity { DLower, LowerD, DUpper, UpperD };

/// Both sides of one composition identity (Theorems relating d/dx and the
/// incomplete integrals), evaluated by independent numerical paths.
/// `integral_order` is the order p of I^p with Re(p) > 1.
std::pair<Complex, Complex> composition_lhs_rhs(CompositionIdentity which, const FunctionSpec& f,
                                                Complex integral_order, double x, double y,
                                                const quad::QuadConfig& cfg = {});

} // namespace irlfrac::ops
