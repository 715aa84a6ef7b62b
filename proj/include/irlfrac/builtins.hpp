#pragma once

/**
 * @file builtins.hpp
 * @brief The named function menu shared by the CLI, the bindings, and the
 *        verification grids.  Every builtin carries closed-form derivative
 *        callbacks so the derivative-regime operators never need numerical
 *        fallbacks.
 */

#include <string>

#include "irlfrac/operators.hpp"

namespace irlfrac::builtins {

/// t^lambda (t >= 0; the value at t = 0 is defined only for Re(lambda) >= 0).
ops::FunctionSpec power_spec(Complex lambda, double domain_bound);

/// e^{alpha t}.
ops::FunctionSpec exp_spec(Complex alpha, double domain_bound);

/// sin t.
ops::FunctionSpec sin_spec(double domain_bound);

/// Constant c.
ops::FunctionSpec const_spec(Complex c, double domain_bound);

/// t^{lambda-1} (1-t)^{-alpha}; requires domain_bound < 1.
ops::FunctionSpec power2_spec(Complex lambda, Complex alpha, double domain_bound);

/// Lookup by CLI name: power | exp | sin | power2 | const.
/// Throws DomainError for unknown names.
ops::FunctionSpec make(const std::string& name, Complex lambda, Complex alpha, double domain_bound);

} // namespace irlfrac::builtins
