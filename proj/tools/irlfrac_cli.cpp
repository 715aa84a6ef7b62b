// Command-line front end: evaluation, tabulation, and verification runs.
//
// Exit codes: 0 success, 1 unexpected verify polarity, 2 configuration
// error, 3 numerical failure.  Output formatting is fixed at 17 significant
// digits with a lowercase exponent so reruns are byte-identical.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irlfrac/builtins.hpp"
#include "irlfrac/operators.hpp"
#include "irlfrac/verify.hpp"

namespace {

using irlfrac::Complex;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Complex parse_complex(const std::string& text) {
    std::string s = text;
    double re = 0.0, im = 0.0;
    size_t comma = s.find(',');
    try {
        size_t used = 0;
        re = std::stod(comma == std::string::npos ? s : s.substr(0, comma), &used);
        if (comma == std::string::npos) {
            if (used != s.size()) throw ConfigError("trailing characters in complex value: " + text);
        } else {
            size_t used_im = 0;
            std::string imag_part = s.substr(comma + 1);
            im = std::stod(imag_part, &used_im);
            if (used_im != imag_part.size())
                throw ConfigError("trailing characters in complex value: " + text);
        }
    } catch (const std::invalid_argument&) {
        throw ConfigError("cannot parse complex value: " + text);
    } catch (const std::out_of_range&) {
        throw ConfigError("complex value out of range: " + text);
    }
    return {re, im};
}

std::vector<double> parse_range(const std::string& text) {
    size_t c1 = text.find(':');
    if (c1 == std::string::npos) {
        try {
            return {std::stod(text)};
        } catch (...) {
            throw ConfigError("cannot parse value: " + text);
        }
    }
    size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError("range needs start:stop:count, got: " + text);
    double start, stop;
    long count;
    try {
        start = std::stod(text.substr(0, c1));
        stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        count = std::stol(text.substr(c2 + 1));
    } catch (...) {
        throw ConfigError("cannot parse range: " + text);
    }
    if (count < 1) throw ConfigError("empty range: " + text);
    std::vector<double> out;
    for (long i = 0; i < count; ++i)
        out.push_back(count == 1 ? start : start + (stop - start) * double(i) / double(count - 1));
    return out;
}

bool is_range(const std::string& text) { return text.find(':') != std::string::npos; }

double parse_double(const std::string& text, const std::string& what) {
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw ConfigError("trailing characters in " + what + ": " + text);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("cannot parse " + what + ": " + text);
    }
}

struct CommonOpts {
    std::string function = "power";
    double lambda = 1.0;
    double alpha = 1.0;
    std::string order;
    std::string side = "lower";
    std::string x_text;
    std::string y_text;
    std::string form = "auto";
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    std::string output = "-";
    std::string format = "csv";
    bool print_config = false;
};

// Canonical flag string; re-parsing it reproduces the identical run.
std::string canonical_args(const std::string& subcommand, const CommonOpts& o) {
    auto range_or_value = [](const std::string& text) {
        std::vector<double> v = parse_range(text);
        if (v.size() == 1 && !is_range(text)) return fmt(v[0]);
        return fmt(v.front()) + ":" + fmt(v.back()) + ":" + std::to_string(v.size());
    };
    std::ostringstream os;
    os << subcommand << " --function " << o.function << " --lambda " << fmt(o.lambda)
       << " --alpha " << fmt(o.alpha);
    if (!o.order.empty()) {
        if (is_range(o.order)) {
            os << " --order " << range_or_value(o.order);
        } else {
            Complex mu = parse_complex(o.order);
            os << " --order " << fmt(mu.real());
            if (mu.imag() != 0.0) os << "," << fmt(mu.imag());
        }
    }
    os << " --side " << o.side << " --x " << range_or_value(o.x_text);
    if (!o.y_text.empty()) os << " --y " << range_or_value(o.y_text);
    os << " --form " << o.form << " --abs-tol " << fmt(o.abs_tol) << " --rel-tol "
       << fmt(o.rel_tol) << " --output " << o.output << " --format " << o.format;
    return os.str();
}

irlfrac::ops::Form parse_form(const std::string& form) {
    if (form == "auto") return irlfrac::ops::Form::Auto;
    if (form == "1") return irlfrac::ops::Form::Form1;
    if (form == "2") return irlfrac::ops::Form::Form2;
    if (form == "3") return irlfrac::ops::Form::Form3;
    throw ConfigError("unknown form: " + form);
}

// Evaluation of a single side at one x; classical uses base a = 0.
irlfrac::quad::QuadResult eval_one(const CommonOpts& opts, const irlfrac::ops::FunctionSpec& f,
                                   Complex mu, const std::string& side, double x, double y) {
    irlfrac::quad::QuadConfig cfg;
    cfg.abs_tol = opts.abs_tol;
    cfg.rel_tol = opts.rel_tol;
    if (side == "classical") return irlfrac::ops::classical_rl(f, irlfrac::ops::Order(mu), 0.0, x, cfg);
    irlfrac::ops::EvalRequest req{f,
                                  irlfrac::ops::Order(mu),
                                  x,
                                  irlfrac::ops::CutRatio(y),
                                  side == "lower" ? irlfrac::ops::Side::Lower : irlfrac::ops::Side::Upper,
                                  parse_form(opts.form),
                                  cfg};
    return irlfrac::ops::differint(req);
}

std::ostream& open_output(const CommonOpts& opts, std::ofstream& file) {
    if (opts.output == "-") return std::cout;
    file.open(opts.output);
    if (!file) throw ConfigError("cannot open output file: " + opts.output);
    return file;
}

irlfrac::ops::FunctionSpec build_function(const CommonOpts& opts, double max_x) {
    double bound = opts.function == "power2" ? std::max(0.95, std::min(0.999, max_x * 1.001))
                                             : std::max(1.0, max_x) * 1.25;
    if (opts.function == "power2" && max_x >= 1.0)
        throw ConfigError("power2 is defined on [0,1); choose x < 1");
    return irlfrac::builtins::make(opts.function, {opts.lambda, 0.0}, {opts.alpha, 0.0}, bound);
}

void emit_row_csv(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& fields,
                  bool header_done) {
    if (!header_done) {
        for (size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i].first;
        os << "\n";
    }
    for (size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i].second;
    os << "\n";
}

void emit_row_jsonl(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& fields) {
    os << "{";
    for (size_t i = 0; i < fields.size(); ++i) {
        const auto& [k, v] = fields[i];
        bool quoted = v.empty() || (!std::isdigit(uint8_t(v[0])) && v[0] != '-' && v != "true" && v != "false");
        os << (i ? "," : "") << "\"" << k << "\":";
        if (quoted)
            os << "\"" << v << "\"";
        else
            os << v;
    }
    os << "}\n";
}

int cmd_eval(const CommonOpts& opts) {
    Complex mu = parse_complex(opts.order);
    std::vector<double> xs = parse_range(opts.x_text);
    double max_x = *std::max_element(xs.begin(), xs.end());
    bool needs_y = opts.side != "classical";
    double y = 0.5;
    if (needs_y) {
        if (opts.y_text.empty()) throw ConfigError("--y is required for side " + opts.side);
        y = parse_double(opts.y_text, "--y");
        if (!(y > 0.0 && y < 1.0)) throw ConfigError("--y must lie strictly inside (0,1)");
    }
    auto f = build_function(opts, max_x);
    if (opts.print_config) {
        std::cout << canonical_args("eval", opts) << "\n";
        return 0;
    }

    std::ofstream file;
    std::ostream& os = open_output(opts, file);
    bool header_done = false;
    for (double x : xs) {
        std::vector<std::pair<std::string, std::string>> fields;
        if (opts.side == "both") {
            auto lo = eval_one(opts, f, mu, "lower", x, y);
            auto up = eval_one(opts, f, mu, "upper", x, y);
            fields = {{"x", fmt(x)},
                      {"lower_re", fmt(lo.value.real())},
                      {"lower_im", fmt(lo.value.imag())},
                      {"upper_re", fmt(up.value.real())},
                      {"upper_im", fmt(up.value.imag())},
                      {"err_estimate", fmt(lo.err_estimate + up.err_estimate)},
                      {"n_evals", std::to_string(lo.n_evals + up.n_evals)}};
        } else {
            auto r = eval_one(opts, f, mu, opts.side, x, y);
            fields = {{"x", fmt(x)},
                      {"value_re", fmt(r.value.real())},
                      {"value_im", fmt(r.value.imag())},
                      {"err_estimate", fmt(r.err_estimate)},
                      {"n_evals", std::to_string(r.n_evals)}};
        }
        if (opts.format == "csv") {
            emit_row_csv(os, fields, header_done);
            header_done = true;
        } else {
            emit_row_jsonl(os, fields);
        }
    }
    return 0;
}

int cmd_table(const CommonOpts& opts) {
    bool order_is_range = is_range(opts.order);
    bool y_is_range = !opts.y_text.empty() && is_range(opts.y_text);
    if (order_is_range == y_is_range)
        throw ConfigError("table: exactly one of --order / --y must be a range start:stop:count");
    if (opts.side == "both")
        throw ConfigError("table emits one value column; use --side lower|upper|classical");
    if (opts.side == "classical" && y_is_range)
        throw ConfigError("the classical operator does not depend on --y; sweep --order instead");
    if (opts.side != "classical" && order_is_range && opts.y_text.empty())
        throw ConfigError("--y is required for side " + opts.side);
    std::vector<double> xs = parse_range(opts.x_text);
    double max_x = *std::max_element(xs.begin(), xs.end());
    auto f = build_function(opts, max_x);
    if (opts.print_config) {
        std::cout << canonical_args("table", opts) << "\n";
        return 0;
    }

    std::vector<double> sweep = order_is_range ? parse_range(opts.order) : parse_range(opts.y_text);
    std::ofstream file;
    std::ostream& os = open_output(opts, file);
    bool header_done = false;
    for (double s : sweep) {
        Complex mu = order_is_range ? Complex(s, 0.0) : parse_complex(opts.order);
        double y = 0.5;
        if (order_is_range && !opts.y_text.empty()) y = parse_double(opts.y_text, "--y");
        if (!order_is_range) y = s;
        if (opts.side != "classical" && !(y > 0.0 && y < 1.0))
            throw ConfigError("swept/fixed y must lie inside (0,1)");
        for (double x : xs) {
            auto r = eval_one(opts, f, mu, opts.side, x, y);
            std::vector<std::pair<std::string, std::string>> fields = {
                {"sweep_var", fmt(s)},
                {"x", fmt(x)},
                {"value_re", fmt(r.value.real())},
                {"value_im", fmt(r.value.imag())},
                {"err_estimate", fmt(r.err_estimate)}};
            if (opts.format == "csv") {
                emit_row_csv(os, fields, header_done);
                header_done = true;
            } else {
                emit_row_jsonl(os, fields);
            }
        }
    }
    return 0;
}

int cmd_verify(const std::string& suite, const CommonOpts& opts) {
    auto known = irlfrac::verify::suite_names();
    if (suite != "all" && std::find(known.begin(), known.end(), suite) == known.end())
        throw ConfigError("unknown suite: " + suite);

    auto results = irlfrac::verify::run_suites(suite);
    std::ofstream file;
    std::ostream& os = open_output(opts, file);
    long checks = 0, unexpected = 0;
    if (opts.format == "csv") os << irlfrac::verify::csv_header() << "\n";
    for (const auto& sr : results) {
        for (const auto& check : sr.checks) {
            os << (opts.format == "csv" ? irlfrac::verify::to_csv(check)
                                        : irlfrac::verify::to_jsonl(check))
               << (opts.format == "csv" ? "\n" : "");
            ++checks;
        }
        unexpected += sr.unexpected_count();
    }
    os << "suites=" << results.size() << " checks=" << checks << " unexpected=" << unexpected
       << "\n";
    return unexpected == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"incomplete Riemann-Liouville fractional differintegrals"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string suite;

    auto add_common = [&](CLI::App* cmd, bool needs_order, bool needs_x) {
        cmd->add_option("--function", opts.function)
            ->check(CLI::IsMember({"power", "exp", "sin", "power2", "const"}));
        cmd->add_option("--lambda", opts.lambda);
        cmd->add_option("--alpha", opts.alpha);
        auto* o = cmd->add_option("--order", opts.order, "complex order re[,im]");
        if (needs_order) o->required();
        cmd->add_option("--side", opts.side)->check(CLI::IsMember({"lower", "upper", "both", "classical"}));
        auto* x = cmd->add_option("--x", opts.x_text, "value or start:stop:count");
        if (needs_x) x->required();
        cmd->add_option("--y", opts.y_text);
        cmd->add_option("--form", opts.form)->check(CLI::IsMember({"auto", "1", "2", "3"}));
        cmd->add_option("--abs-tol", opts.abs_tol);
        cmd->add_option("--rel-tol", opts.rel_tol);
        cmd->add_option("--output", opts.output);
        cmd->add_option("--format", opts.format)->check(CLI::IsMember({"csv", "jsonl"}));
        cmd->add_flag("--print-config", opts.print_config,
                      "validate, print the canonical flag string, and exit");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate differintegrals over x values");
    add_common(eval, true, true);
    CLI::App* table = app.add_subcommand("table", "sweep order or cut ratio into a long-format table");
    add_common(table, true, true);
    CLI::App* verify = app.add_subcommand("verify", "run identity/bound/counterexample suites");
    verify->add_option("--suite", suite, "all|forms|bounds|limits|leibniz|chain|counterexamples|composition")
        ->required();
    verify->add_option("--output", opts.output);
    verify->add_option("--format", opts.format)->check(CLI::IsMember({"csv", "jsonl"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(opts);
        if (table->parsed()) return cmd_table(opts);
        return cmd_verify(suite, opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const irlfrac::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
