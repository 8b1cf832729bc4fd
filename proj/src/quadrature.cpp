#include "biphoton/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/special_functions.hpp"

namespace biphoton {

double default_quadrature_rel_tol() {
    static const double cached = [] {
        const char* env = std::getenv("BIPHOTON_QUAD_RELTOL");
        if (env == nullptr || *env == '\0') return 1e-9;
        char* end = nullptr;
        const double parsed = std::strtod(env, &end);
        if (end == env || *end != '\0' || !std::isfinite(parsed) || parsed <= 0.0) {
            std::fprintf(stderr,
                         "warning: ignoring malformed BIPHOTON_QUAD_RELTOL='%s'\n", env);
            return 1e-9;
        }
        return std::clamp(parsed, 1e-13, 1e-3);
    }();
    return cached;
}

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (the classic QUADPACK dqk15 constants).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double value;   // K15 estimate
    double error;   // scaled |K15 - G7|
};

PanelResult gk15(const Integrand& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double result_gauss = wg[3] * fc;
    double result_kronrod = wgk[7] * fc;
    double resabs = wgk[7] * std::fabs(fc);

    double fv[15];
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        result_kronrod += wgk[j] * (f1 + f2);
        resabs += wgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1)
            result_gauss += wg[j / 2] * (f1 + f2);
    }

    const double mean = 0.5 * result_kronrod;
    double resasc = wgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j]
                  * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));

    const double value = result_kronrod * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);

    double err = std::fabs((result_kronrod - result_gauss) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    return {value, err};
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

std::string describe(double value, double error)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "value ~ %.6g, error estimate %.3g", value,
                  error);
    return buf;
}

// Blockwise Kahan accumulator.
struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double x)
    {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double tolerance_for(const QuadratureSpec& spec, double value)
{
    return std::max(spec.abs_tol, spec.rel_tol * std::fabs(value));
}

} // namespace

IntegralResult integrate_1d(const Integrand& f, double a, double b,
                            const QuadratureSpec& spec)
{
    if (a == b)
        return {0.0, 0.0, 0};

    std::priority_queue<Panel> queue;
    const PanelResult first = gk15(f, a, b);
    queue.push({a, b, first.value, first.error});
    double total_value = first.value;
    double total_error = first.error;

    const double min_width =
        100.0 * std::numeric_limits<double>::epsilon()
        * std::max({std::fabs(a), std::fabs(b), 1.0});

    int splits = 0;
    while (total_error > tolerance_for(spec, total_value)) {
        if (splits >= spec.max_subdivisions || queue.empty())
            throw NonConvergence("integrate_1d: subdivision budget exhausted ("
                                 + describe(total_value, total_error) + ")");
        const Panel worst = queue.top();
        queue.pop();
        if (worst.b - worst.a < min_width) {
            // Roundoff-limited panel: retire it from the queue but keep its
            // error in the total, so an unresolvable feature (e.g. an
            // endpoint singularity) is reported, not hidden. If the retired
            // error alone exceeds the tolerance the split budget runs out on
            // the remaining panels and NonConvergence is thrown.
            if (queue.empty())
                throw NonConvergence(
                    "integrate_1d: interval width at roundoff limit ("
                    + describe(total_value, total_error) + ")");
            ++splits;
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const PanelResult left = gk15(f, worst.a, mid);
        const PanelResult right = gk15(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.value, left.error});
        queue.push({mid, worst.b, right.value, right.error});
        ++splits;
    }
    return {total_value, total_error, splits};
}

IntegralResult integrate_to_infinity(const Integrand& f, double a,
                                     const QuadratureSpec& spec, double scale)
{
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw ConfigInvalid("integrate_to_infinity: scale must be positive");
    const auto mapped = [&f, a, scale](double t) {
        const double om = 1.0 - t;
        const double x = a + scale * t / om;
        return f(x) * scale / (om * om);
    };
    return integrate_1d(mapped, 0.0, 1.0, spec);
}

IntegralResult integrate_periodic_tail(const Integrand& f, double a,
                                       double period,
                                       const QuadratureSpec& spec)
{
    if (!(period > 0.0))
        throw ConfigInvalid("integrate_periodic_tail: period must be > 0");

    // Per-block tolerances well below the requested overall tolerance.
    QuadratureSpec block_spec;
    block_spec.rel_tol = std::min(1e-12, spec.rel_tol * 1e-3);
    block_spec.abs_tol = 0.0;
    block_spec.max_subdivisions = 50;

    constexpr int k0 = 16;      // first ladder rung: 16 blocks
    constexpr int rungs = 7;    // 16, 32, ..., 1024 blocks

    KahanSum partial;
    double block_err = 0.0;
    int blocks_done = 0;
    int evals = 0;

    double ladder_h[rungs];
    double ladder_p[rungs];

    double extrapolated = 0.0;
    double extrap_err = std::numeric_limits<double>::infinity();
    int rung = 0;
    for (; rung < rungs; ++rung) {
        const int target = k0 << rung;
        for (; blocks_done < target; ++blocks_done) {
            const double lo = a + blocks_done * period;
            const double hi = a + (blocks_done + 1) * period;
            IntegralResult blk;
            try {
                blk = integrate_1d(f, lo, hi, block_spec);
            } catch (const NonConvergence&) {
                // A hard block: retry at the caller's tolerance before
                // giving up on the whole integral.
                blk = integrate_1d(f, lo, hi, spec);
            }
            partial.add(blk.value);
            block_err += blk.error;
            evals += blk.subdivisions + 1;
        }
        ladder_h[rung] = 1.0 / double(target);
        ladder_p[rung] = partial.sum;

        if (rung >= 2) {
            // Neville tableau in h -> 0 over the rungs so far.
            double tab[rungs];
            std::copy(ladder_p, ladder_p + rung + 1, tab);
            for (int m = 1; m <= rung; ++m)
                for (int i = rung; i >= m; --i) {
                    const double h_i = ladder_h[i];
                    const double h_im = ladder_h[i - m];
                    tab[i] = tab[i] + (tab[i] - tab[i - 1]) * h_i
                                          / (h_im - h_i);
                }
            const double prev = extrapolated;
            extrapolated = tab[rung];
            extrap_err = std::fabs(extrapolated - prev) + block_err;
            if (rung >= 3
                && extrap_err <= tolerance_for(spec, extrapolated))
                return {extrapolated, extrap_err, evals};
        }
    }
    if (extrap_err <= tolerance_for(spec, extrapolated))
        return {extrapolated, extrap_err, evals};
    throw NonConvergence("integrate_periodic_tail: block ladder exhausted ("
                         + describe(extrapolated, extrap_err) + ")");
}

double radial_integral_2d(const Integrand& g, const QuadratureSpec& spec,
                          double oscillation_period_u, double scale_u)
{
    if (oscillation_period_u > 0.0)
        return pi
               * integrate_periodic_tail(g, 0.0, oscillation_period_u, spec)
                     .value;
    const double scale = scale_u > 0.0 ? scale_u : 1.0;
    return pi * integrate_to_infinity(g, 0.0, spec, scale).value;
}

namespace {

// int_X^inf sin^2 x / x^2 dx at X = K pi, where sin 2X = 0 and cos 2X = 1:
// 1/(2X) - 1/(4X^3) + 3/(4X^5) + O(X^-7).
double order0_tail(double X)
{
    const double iX = 1.0 / X;
    const double iX2 = iX * iX;
    return 0.5 * iX - 0.25 * iX * iX2 + 0.75 * iX * iX2 * iX2;
}

} // namespace

IntegralResult sinc_sq_moment(int order, std::optional<CutoffSpec> cutoff,
                              const QuadratureSpec& spec)
{
    if (order != 0 && order != 1)
        throw ConfigInvalid("sinc_sq_moment: order must be 0 or 1");
    if (order == 1 && !cutoff)
        throw MissingCutoff(
            "sinc_sq_moment: order 1 diverges logarithmically; "
            "a cutoff is required");
    if (cutoff && !(cutoff->x_max > 1.0))
        throw ConfigInvalid("sinc_sq_moment: cutoff x_max must exceed 1");

    const auto integrand = [order](double x) {
        const double s = sinc(x);
        const double s2 = s * s;
        return order == 0 ? s2 : x * s2;
    };

    QuadratureSpec block_spec;
    block_spec.rel_tol = 1e-13;
    block_spec.abs_tol = 0.0;
    block_spec.max_subdivisions = 16;

    KahanSum sum;
    double err = 0.0;
    int evals = 0;

    const auto add_panel = [&](double lo, double hi) {
        const PanelResult blk = gk15(integrand, lo, hi);
        if (blk.error <= 1e-12 * std::max(std::fabs(blk.value), 1e-3)) {
            sum.add(blk.value);
            err += blk.error;
            ++evals;
        } else {
            const IntegralResult fine = integrate_1d(integrand, lo, hi,
                                                     block_spec);
            sum.add(fine.value);
            err += fine.error;
            evals += fine.subdivisions + 1;
        }
    };
    // Half-period panels: a K15 panel over half a period of sin^2 is exact to
    // ~1e-17 relative, so the block sum stays one-pass even for millions of
    // periods.
    const auto add_block = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        add_panel(lo, mid);
        add_panel(mid, hi);
    };

    if (!cutoff) {
        // Full [0, inf): 512 whole periods plus the analytic tail.
        constexpr int blocks = 512;
        for (int k = 0; k < blocks; ++k)
            add_block(k * pi, (k + 1) * pi);
        const double X = blocks * pi;
        sum.add(order0_tail(X));
        err += 10.0 / std::pow(X, 7);
        const double value = sum.sum;
        if (err > tolerance_for(spec, value))
            throw NonConvergence("sinc_sq_moment: block sum error "
                                 + describe(value, err));
        return {value, err, evals};
    }

    const double x_max = cutoff->x_max;
    const double whole = std::floor(x_max / pi);
    const long n_whole = static_cast<long>(whole);
    for (long k = 0; k < n_whole; ++k)
        add_block(k * pi, (k + 1) * pi);
    if (whole * pi < x_max)
        add_block(whole * pi, x_max);

    const double value = sum.sum;
    if (err > tolerance_for(spec, value))
        throw NonConvergence("sinc_sq_moment: block sum error "
                             + describe(value, err));
    return {value, err, evals};
}

} // namespace biphoton
