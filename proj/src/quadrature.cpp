#include "irlfrac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace irlfrac::quad {

namespace {

// Gauss-Kronrod (7,15) on [-1,1].  Abscissae/weights from QUADPACK dqk15;
// the even-indexed Kronrod nodes are the 7 Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    Complex kronrod{0.0, 0.0};
    double err = 0.0;
};

PanelResult gk15(const Integrand& f, double a, double b, long& n_evals) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    Complex fc = f(mid);
    if (!is_finite(fc)) throw NonFiniteIntegrand("integrand not finite at t = " + std::to_string(mid));
    Complex kron = kWgk[7] * fc;
    Complex gauss = kWg[3] * fc;
    n_evals += 1;

    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        Complex f1 = f(mid - dx);
        Complex f2 = f(mid + dx);
        n_evals += 2;
        if (!is_finite(f1)) throw NonFiniteIntegrand("integrand not finite at t = " + std::to_string(mid - dx));
        if (!is_finite(f2)) throw NonFiniteIntegrand("integrand not finite at t = " + std::to_string(mid + dx));
        kron += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

struct Segment {
    double a, b;
    Complex value;
    double err;
};

struct SegmentOrder {
    bool operator()(const Segment& lhs, const Segment& rhs) const { return lhs.err < rhs.err; }
};

// Width below which splitting a panel cannot move any sample point.
bool splittable(const Segment& s) {
    double scale = std::max({std::abs(s.a), std::abs(s.b), 1e-300});
    return (s.b - s.a) > 8.0 * std::numeric_limits<double>::epsilon() * scale;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// k-th derivative by the (k+1)-point central difference at step h.
Complex central_kth(const Integrand& f, double c, double h, int k, long& n_evals) {
    Complex acc{0.0, 0.0};
    for (int i = 0; i <= k; ++i) {
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom(k, i) * f(c + (0.5 * k - i) * h);
    }
    n_evals += k + 1;
    return acc / std::pow(h, k);
}

// Richardson ladder on step halving; entry [levels-1] is the refined value.
Complex richardson_kth(const Integrand& f, double c, double h, int k, int levels, long& n_evals) {
    std::vector<Complex> row(levels);
    for (int l = 0; l < levels; ++l) row[l] = central_kth(f, c, h / std::pow(2.0, l), k, n_evals);
    // central differences carry only even-order error terms
    double pow4 = 4.0;
    for (int stage = 1; stage < levels; ++stage) {
        for (int l = levels - 1; l >= stage; --l)
            row[l] = (pow4 * row[l] - row[l - 1]) / (pow4 - 1.0);
        pow4 *= 4.0;
    }
    return row[levels - 1];
}

} // namespace

void QuadConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
    if (singular_taylor_order < 0) throw DomainError("singular_taylor_order must be >= 0");
    if (!(singular_split > 0.0 && singular_split < 1.0)) throw DomainError("singular_split must lie in (0,1)");
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadConfig& cfg) {
    cfg.validate();
    if (a > b) throw DomainError("integrate: a > b");
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    std::priority_queue<Segment, std::vector<Segment>, SegmentOrder> queue;
    PanelResult first = gk15(f, a, b, out.n_evals);
    queue.push({a, b, first.kronrod, first.err});
    Complex total = first.kronrod;
    double total_err = first.err;
    int segments = 1;

    auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

    while (total_err > tolerance() && segments < cfg.max_subdivisions) {
        Segment worst = queue.top();
        if (!splittable(worst)) break; // bisection can no longer move any node
        queue.pop();
        double mid = 0.5 * (worst.a + worst.b);
        PanelResult left = gk15(f, worst.a, mid, out.n_evals);
        PanelResult right = gk15(f, mid, worst.b, out.n_evals);
        total += left.kronrod + right.kronrod - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push({worst.a, mid, left.kronrod, left.err});
        queue.push({mid, worst.b, right.kronrod, right.err});
        ++segments;
    }

    out.value = total;
    out.err_estimate = total_err;
    out.converged = total_err <= tolerance();
    return out;
}

QuadResult integrate_endpoint_power(const Integrand& smooth, Complex sigma, double a, double b,
                                    Endpoint singular_at, const QuadConfig& cfg) {
    cfg.validate();
    if (a > b) throw DomainError("integrate_endpoint_power: a > b");
    if (sigma.real() <= -1.0) throw DomainError("endpoint exponent must satisfy Re(sigma) > -1");
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    const double len = b - a;
    const double slice = cfg.singular_split * len;
    const int order = cfg.singular_taylor_order;
    const bool left = singular_at == Endpoint::Left;
    const double center = left ? a + 0.5 * slice : b - 0.5 * slice;

    // Taylor coefficients of smooth about the slice midpoint.  High orders
    // use a single wide central difference: narrowing the step amplifies
    // roundoff faster than Richardson gains accuracy there, while the
    // corresponding moments shrink like (slice/2)^k and absorb the noise.
    std::vector<Complex> coeff(order + 1);
    coeff[0] = smooth(center);
    out.n_evals += 1;
    if (!is_finite(coeff[0])) throw NonFiniteIntegrand("smooth part not finite at slice midpoint");
    for (int k = 1; k <= order; ++k) {
        double h = slice / (k + 2);
        int levels = k <= 2 ? 4 : (k <= 4 ? 2 : 1);
        Complex dk = richardson_kth(smooth, center, h, k, levels, out.n_evals);
        if (!is_finite(dk)) throw NonFiniteIntegrand("smooth part not finite inside singular slice");
        coeff[k] = dk / factorial(k);
    }

    // Moments M_k = int_0^slice v^sigma (v - slice/2)^k dv, with v the
    // distance to the singular endpoint; for a right-side singularity the
    // Taylor variable flips sign, handled by the (-1)^k below.
    const double half_slice = 0.5 * slice;
    std::vector<Complex> moments(order + 1);
    for (int k = 0; k <= order; ++k) {
        Complex mk{0.0, 0.0};
        for (int m = 0; m <= k; ++m) {
            Complex power_int = std::pow(Complex(slice, 0.0), sigma + double(m) + 1.0) / (sigma + double(m) + 1.0);
            mk += binom(k, m) * std::pow(-half_slice, k - m) * power_int;
        }
        moments[k] = mk;
    }

    Complex singular_part{0.0, 0.0};
    for (int k = 0; k <= order; ++k) {
        Complex term = coeff[k] * moments[k];
        if (!left && (k % 2 == 1)) term = -term;
        singular_part += term;
    }
    double tail = std::abs(coeff[order] * moments[order]);
    if (order >= 1) tail = std::max(tail, 0.25 * std::abs(coeff[order - 1] * moments[order - 1]));

    // Remainder slice carries the assembled integrand; v >= slice there.
    auto assembled = [&](double t) {
        double v = left ? t - a : b - t;
        return smooth(t) * std::pow(Complex(v, 0.0), sigma);
    };
    QuadConfig rest_cfg = cfg;
    rest_cfg.abs_tol = 0.5 * cfg.abs_tol;
    QuadResult rest = left ? integrate(assembled, a + slice, b, rest_cfg)
                           : integrate(assembled, a, b - slice, rest_cfg);

    out.value = singular_part + rest.value;
    out.n_evals += rest.n_evals;
    out.err_estimate = rest.err_estimate + tail;
    out.converged = rest.converged && out.err_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
    return out;
}

Complex central_derivative(const Integrand& f, double x, double h, int levels) {
    levels = std::clamp(levels, 1, 4);
    auto first = [&](double step) {
        return (f(x + step) - f(x - step)) / (2.0 * step);
    };
    std::vector<Complex> row(levels);
    for (int l = 0; l < levels; ++l) row[l] = first(h / std::pow(2.0, l));
    double pow4 = 4.0;
    for (int stage = 1; stage < levels; ++stage) {
        for (int l = levels - 1; l >= stage; --l)
            row[l] = (pow4 * row[l] - row[l - 1]) / (pow4 - 1.0);
        pow4 *= 4.0;
    }
    return row[levels - 1];
}

} // namespace irlfrac::quad
