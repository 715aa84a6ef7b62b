#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace irlfrac {

using Complex = std::complex<double>;

/// Thrown when an argument lies outside an operation's documented domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Gamma-type pole hit exactly (z a nonpositive integer).
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Result magnitude exceeds the representable double range.
struct OverflowError : std::range_error {
    using std::range_error::range_error;
};

/// Combinatorial or recursion guard exceeded.
struct LimitError : std::length_error {
    using std::length_error::length_error;
};

/// Too few derivative values supplied for the requested order.
struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A quadrature-backed operation could not produce a usable value.
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An integrand produced NaN or infinity.
struct NonFiniteIntegrand : QuadratureFailure {
    using QuadratureFailure::QuadratureFailure;
};

/// Derivative callbacks required but not supplied (and no fallback allowed).
struct MissingDerivatives : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Recurrence depth above the numerical-differentiation guard.
struct DepthExceeded : std::length_error {
    using std::length_error::length_error;
};

/// A series expansion was requested for a function not tagged analytic.
struct AnalyticityRequired : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// True when z is a real nonpositive integer (a pole of Gamma).
inline bool is_nonpositive_integer(Complex z) {
    if (z.imag() != 0.0) return false;
    double r = z.real();
    return r <= 0.0 && r == std::floor(r);
}

} // namespace irlfrac
