#pragma once

/**
 * @file verify.hpp
 * @brief Executable identity, bound, and counterexample checks producing
 *        CheckReports, plus the named suites driven by the CLI.
 *
 * Expected failure is a first-class polarity: counterexample reports carry
 * expect_pass = false and count as "unexpected" only when they accidentally
 * pass.  Suites honor the IRLFRAC_THREADS cap and aggregate their reports in
 * deterministic parameter order regardless of the execution schedule.
 */

#include <map>
#include <string>
#include <vector>

#include "irlfrac/operators.hpp"

namespace irlfrac::verify {

struct CheckReport {
    std::string name;
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool expect_pass = true;
    std::map<std::string, std::string> metadata;

    bool unexpected() const { return passed != expect_pass; }
};

/// Builds a report; passed <=> abs_err <= tol or rel_err <= tol.
CheckReport make_check(std::string name, Complex lhs, Complex rhs, double tolerance,
                       std::map<std::string, std::string> metadata = {}, bool expect_pass = true);

struct BoundReport {
    std::string name;
    double measured_norm = 0.0;
    double bound_value = 0.0;
    double slack = 0.0; // bound - measured
    bool passed = false;
    std::map<std::string, std::string> metadata;
};

/// BoundReport through the common serialization schema (lhs = measured,
/// rhs = bound, abs_err = violation magnitude).
CheckReport as_check(const BoundReport& bound);

/// Corollary inequality `which` in 1..5 for real integral order mu > 0:
///   1: L1 lower, 0 < mu <= 1      (1-y)^{mu-1} b^mu / Gamma(mu+1) * ||f||_L1[0,yb]
///   2: L1 lower, mu > 1           b^mu / Gamma(mu+1) * ||f||_L1[0,yb]
///   3: L1 upper, mu > 1           (1-y)^{mu-1} b^mu / Gamma(mu+1) * ||f||_L1[0,b]
///   4: Linf lower                 (1-(1-y)^mu) b^mu / Gamma(mu+1) * ||f||_Linf[0,yb]
///   5: Linf upper                 (1-y)^mu b^mu / Gamma(mu+1) * ||f||_Linf[0,b]
/// Operator norms by 256-panel composite quadrature (L1) or 1024-point
/// sampling (Linf).
BoundReport check_norm_bounds(const ops::FunctionSpec& f, double mu, double b, double y, int which,
                              double tolerance = 1e-9);

/// mu -> 0+ limits along mu_sequence (decreasing positive reals): the lower
/// incomplete integral tends to 0 and the upper to f(x).  Final-entry
/// reports carry the aggregate verdict (last value within tol and monotone
/// decreasing over the last three entries).
std::vector<CheckReport> check_zero_order_limits(const ops::FunctionSpec& f, double x, double y,
                                                 const std::vector<double>& mu_sequence,
                                                 double tolerance = 1e-2);

/// Monomial Leibniz lemma: D^mu[t^n f; y] as a finite gamma-ratio sum.
CheckReport leibniz_monomial_check(const ops::FunctionSpec& f, int n, Complex mu, double x,
                                   double y, ops::Side side, double tolerance = 1e-8);

/// Infinite Leibniz series against direct quadrature on the product f*g;
/// g must carry the Analytic tag.  Pass criterion uses
/// max(tolerance, 10 * geometric tail of the last terms).
CheckReport leibniz_series_check(const ops::FunctionSpec& f, const ops::FunctionSpec& g, Complex mu,
                                 double x, double y, ops::Side side, int truncation = 25,
                                 double tolerance = 1e-6);

/// Chain rule for f(g(t)) via Faa di Bruno composite derivatives.
CheckReport chain_rule_check(const ops::FunctionSpec& f_outer, const ops::FunctionSpec& g_inner,
                             Complex mu, double x, double y, ops::Side side, int truncation = 20,
                             double tolerance = 1e-5);

enum class SemigroupVariant { LowerIntegrals, LowerDerivatives, UpperIntegrals, UpperDerivatives };

/// Beta-product value of the nested operator versus the single operator of
/// order mu+nu on t^lambda; expected to FAIL by more than the tolerance.
CheckReport semigroup_failure_report(Complex lambda, Complex mu, Complex nu, double y,
                                     SemigroupVariant variant = SemigroupVariant::LowerIntegrals,
                                     double tolerance = 1e-3);

/// Nested numerical operator versus the beta-product formula (same quantity
/// two ways); expected to PASS tightly even though the semigroup fails.
CheckReport semigroup_nested_consistency(Complex lambda, Complex mu, Complex nu, double y,
                                         SemigroupVariant variant = SemigroupVariant::LowerIntegrals,
                                         double tolerance = 1e-7);

/// y -> 1 limit where the incomplete betas become complete and the classical
/// semigroup identity is restored.
CheckReport semigroup_complete_limit(Complex lambda, Complex mu, Complex nu, double tolerance = 1e-8);

/// D^mu I^mu [t^lambda; y] / t^lambda versus 1; expected to FAIL.
CheckReport inversion_failure_report(Complex lambda, Complex mu, double y, ops::Side side,
                                     double tolerance = 1e-3);

/// Nested numerical D^mu I^mu versus the beta-product formula; expected PASS.
CheckReport inversion_nested_consistency(Complex lambda, Complex mu, double y, ops::Side side,
                                         double tolerance = 1e-7);

/// Complete-beta limit restoring the classical left inverse.
CheckReport inversion_complete_limit(Complex lambda, Complex mu, double tolerance = 1e-8);

/// All four composition identities over a grid of integral orders Re > 1.
std::vector<CheckReport> composition_theorem_suite(const ops::FunctionSpec& f,
                                                   const std::vector<Complex>& integral_orders,
                                                   double x, double y, double tolerance = 1e-5);

/// Exact beta-recurrence reduction of one composition identity for t^lambda
/// (both sides in closed form, no quadrature of operators, no FD).
CheckReport composition_exact_beta_check(ops::CompositionIdentity which, Complex lambda,
                                         Complex integral_order, double x, double y,
                                         double tolerance = 1e-10);

struct SuiteResult {
    std::string suite;
    std::vector<CheckReport> checks;
    int unexpected_count() const;
};

const std::vector<std::string>& suite_names(); // forms bounds limits leibniz chain counterexamples composition

/// Runs one named suite (or "all"); throws DomainError for unknown names.
std::vector<SuiteResult> run_suites(const std::string& selector);

std::string csv_header();
std::string to_csv(const CheckReport& r);
std::string to_jsonl(const CheckReport& r);

} // namespace irlfrac::verify
