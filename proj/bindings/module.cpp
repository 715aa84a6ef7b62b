#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "irlfrac/builtins.hpp"
#include "irlfrac/closedforms.hpp"
#include "irlfrac/operators.hpp"
#include "irlfrac/specfun.hpp"
#include "irlfrac/verify.hpp"

namespace py = pybind11;
using irlfrac::Complex;

namespace {

irlfrac::ops::Side parse_side(const std::string& side) {
    if (side == "lower") return irlfrac::ops::Side::Lower;
    if (side == "upper") return irlfrac::ops::Side::Upper;
    throw irlfrac::DomainError("side must be 'lower' or 'upper'");
}

irlfrac::ops::Form parse_form(const std::string& form) {
    if (form == "auto") return irlfrac::ops::Form::Auto;
    if (form == "1") return irlfrac::ops::Form::Form1;
    if (form == "2") return irlfrac::ops::Form::Form2;
    if (form == "3") return irlfrac::ops::Form::Form3;
    throw irlfrac::DomainError("form must be auto|1|2|3");
}

py::dict eval_builtin(const std::string& function, Complex order, const std::string& side, double x,
                      double y, double lambda, double alpha, const std::string& form) {
    double max_x = x;
    double bound = function == "power2" ? 0.95 : std::max(1.0, max_x) * 1.25;
    auto f = irlfrac::builtins::make(function, {lambda, 0.0}, {alpha, 0.0}, bound);
    irlfrac::ops::EvalRequest req{f,
                                  irlfrac::ops::Order(order),
                                  x,
                                  irlfrac::ops::CutRatio(y),
                                  parse_side(side),
                                  parse_form(form),
                                  {}};
    auto r = irlfrac::ops::differint(req);
    py::dict out;
    out["value"] = r.value;
    out["err_estimate"] = r.err_estimate;
    out["n_evals"] = r.n_evals;
    out["converged"] = r.converged;
    return out;
}

py::dict classical_rl_builtin(const std::string& function, Complex order, double x, double lambda,
                              double alpha) {
    double bound = function == "power2" ? 0.95 : std::max(1.0, x) * 1.25;
    auto f = irlfrac::builtins::make(function, {lambda, 0.0}, {alpha, 0.0}, bound);
    auto r = irlfrac::ops::classical_rl(f, irlfrac::ops::Order(order), 0.0, x);
    py::dict out;
    out["value"] = r.value;
    out["err_estimate"] = r.err_estimate;
    out["n_evals"] = r.n_evals;
    out["converged"] = r.converged;
    return out;
}

py::list run_verify(const std::string& suite) {
    py::list rows;
    for (const auto& sr : irlfrac::verify::run_suites(suite)) {
        for (const auto& c : sr.checks) {
            py::dict row;
            row["suite"] = sr.suite;
            row["name"] = c.name;
            row["lhs"] = c.lhs;
            row["rhs"] = c.rhs;
            row["abs_err"] = c.abs_err;
            row["rel_err"] = c.rel_err;
            row["tolerance"] = c.tolerance;
            row["passed"] = c.passed;
            row["expect_pass"] = c.expect_pass;
            rows.append(row);
        }
    }
    return rows;
}

} // namespace

PYBIND11_MODULE(_irlfrac, m) {
    m.doc() = "Incomplete Riemann-Liouville fractional differintegrals";

    // special functions
    m.def("gamma", &irlfrac::specfun::gamma, py::arg("z"));
    m.def("reciprocal_gamma", &irlfrac::specfun::reciprocal_gamma, py::arg("z"));
    m.def("lower_incomplete_gamma", &irlfrac::specfun::lower_incomplete_gamma, py::arg("nu"),
          py::arg("x"));
    m.def("upper_incomplete_gamma", &irlfrac::specfun::upper_incomplete_gamma, py::arg("nu"),
          py::arg("x"));
    m.def("incomplete_beta", &irlfrac::specfun::incomplete_beta, py::arg("y"), py::arg("a"),
          py::arg("b"));
    m.def("gamma_ratio", &irlfrac::specfun::gamma_ratio, py::arg("mu"), py::arg("k"));
    m.def("generalized_binomial", &irlfrac::specfun::generalized_binomial, py::arg("mu"),
          py::arg("k"));
    m.def(
        "incomplete_gauss_2f1",
        [](const std::string& kind, Complex a, Complex b, Complex c, double y, double x) {
            auto k = kind == "lower" ? irlfrac::specfun::Kind::Lower : irlfrac::specfun::Kind::Upper;
            return irlfrac::specfun::incomplete_gauss_2f1(k, a, b, c, y, x);
        },
        py::arg("kind"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("y"), py::arg("x"));
    m.def("gauss_2f1", &irlfrac::specfun::gauss_2f1, py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("x"));
    m.def(
        "faa_di_bruno_partitions",
        [](int k) {
            py::list out;
            for (const auto& p : irlfrac::specfun::faa_di_bruno_partitions(k)) out.append(p.parts);
            return out;
        },
        py::arg("k"));
    m.def(
        "faa_di_bruno_derivative",
        [](const std::vector<Complex>& fd, const std::vector<Complex>& gd, int k) {
            return irlfrac::specfun::faa_di_bruno_derivative(fd, gd, k);
        },
        py::arg("f_derivs"), py::arg("g_derivs"), py::arg("k"));

    // closed forms
    m.def("power_lower", &irlfrac::closed::power_lower, py::arg("lam"), py::arg("mu"), py::arg("x"),
          py::arg("y"));
    m.def("power_upper", &irlfrac::closed::power_upper, py::arg("lam"), py::arg("mu"), py::arg("x"),
          py::arg("y"));
    m.def("classical_exp", &irlfrac::closed::classical_exp, py::arg("alpha"), py::arg("mu"),
          py::arg("x"));
    m.def("classical_power", &irlfrac::closed::classical_power, py::arg("alpha"), py::arg("mu"),
          py::arg("x"));

    // operators over the builtin function menu
    m.def("differint", &eval_builtin, py::arg("function"), py::arg("order"), py::arg("side"),
          py::arg("x"), py::arg("y"), py::arg("lam") = 1.0, py::arg("alpha") = 1.0,
          py::arg("form") = "auto",
          "Evaluate the lower/upper incomplete RL differintegral of a named builtin.");
    m.def("classical_rl", &classical_rl_builtin, py::arg("function"), py::arg("order"), py::arg("x"),
          py::arg("lam") = 1.0, py::arg("alpha") = 1.0);

    // verification suites
    m.def("verify_suite", &run_verify, py::arg("suite"),
          "Run a named verification suite; returns a list of report dicts.");

    py::register_exception<irlfrac::DomainError>(m, "DomainError");
    py::register_exception<irlfrac::PoleError>(m, "PoleError");
}
