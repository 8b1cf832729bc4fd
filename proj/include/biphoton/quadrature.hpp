#pragma once

#include <functional>
#include <optional>

// Adaptive Gauss-Kronrod quadrature plus the oscillatory-integral machinery
// the momentum moments need. Oscillatory integrands are never fed to plain
// adaptive subdivision over long ranges; they are partitioned at the zeros of
// sin (multiples of pi) and block-summed.

namespace biphoton {

// Default relative tolerance for a fresh QuadratureSpec: 1e-9, unless the
// BIPHOTON_QUAD_RELTOL environment variable overrides it (value clamped to
// [1e-13, 1e-3]; malformed values warn on stderr and are ignored). Read
// once per process, so every default-constructed spec agrees.
double default_quadrature_rel_tol();

struct QuadratureSpec {
    double rel_tol = default_quadrature_rel_tol();
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

// Upper integration limit for the log-divergent first sinc^2 moment,
// in units of the sinc argument. Must exceed 1.
struct CutoffSpec {
    double x_max;
};

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;     // estimated absolute error bound
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive G7/K15 on the finite interval [a, b].
IntegralResult integrate_1d(const Integrand& f, double a, double b,
                            const QuadratureSpec& spec = {});

// int_a^inf f dx via the map x = a + scale * t/(1-t). The integrand must
// decay and must not oscillate on an ever-shrinking t-scale; use the
// periodic-tail variant for that. Pass the characteristic decay length of f
// as scale so the transform places the integrand's structure at moderate t;
// the default unit scale resolves features within a few decades of 1.
IntegralResult integrate_to_infinity(const Integrand& f, double a,
                                     const QuadratureSpec& spec = {},
                                     double scale = 1.0);

// int_a^inf f dx for integrands whose tail oscillates with the given period
// and decays algebraically: one-period blocks are summed and the partial sums
// (whose remainder has a power-series tail in 1/K) are Richardson-
// extrapolated to K -> inf.
IntegralResult integrate_periodic_tail(const Integrand& f, double a,
                                       double period,
                                       const QuadratureSpec& spec = {});

// 2 pi int_0^inf g(r^2) r dr, reduced to pi int_0^inf g(u) du with u = r^2.
// Pass the oscillation period of g in u (e.g. pi/c for g = sinc^2(c u)) to
// route through the periodic-tail machinery. For non-oscillatory g, scale_u
// is the characteristic decay length in u (e.g. 1/w^2 for exp(-u w^2));
// 0 means unit scale.
double radial_integral_2d(const Integrand& g, const QuadratureSpec& spec = {},
                          double oscillation_period_u = 0.0,
                          double scale_u = 0.0);

// Moments of sinc^2(x) = (sin x / x)^2:
//   order 0:  int sinc^2 dx          convergent; without a cutoff the full
//             [0, inf) value is returned (block sum + analytic tail), with a
//             cutoff the integral stops at x_max.
//   order 1:  int x sinc^2 dx        log-divergent; a cutoff is required and
//             the integral runs over [0, x_max].
// Blocks are [k pi, (k+1) pi]; throws MissingCutoff for order 1 without one.
IntegralResult sinc_sq_moment(int order,
                              std::optional<CutoffSpec> cutoff = std::nullopt,
                              const QuadratureSpec& spec = {});

} // namespace biphoton
