#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/quadrature.hpp"
#include "biphoton/spdc_state.hpp"
#include "biphoton/special_functions.hpp"

using namespace biphoton;

namespace {

double rel_err(double got, double want)
{
    return std::fabs(got - want) / std::fabs(want);
}

SpdcConfig reference_config()
{
    SpdcConfig cfg;
    cfg.lambda_p = 1e-6;
    cfg.w_p = 1e-3;
    cfg.L = 1e-3;
    cfg.n_o = 1.5;
    return cfg;
}

SpdcConfig random_config(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SpdcConfig cfg;
    cfg.lambda_p = 4e-7 * std::pow(5.0, u(rng));      // 0.4..2 um
    cfg.w_p = 1e-5 * std::pow(300.0, u(rng));         // 10 um..3 mm
    cfg.L = 1e-4 * std::pow(300.0, u(rng));           // 0.1..30 mm
    cfg.n_o = 1.2 + 1.0 * u(rng);
    return cfg;
}

Vec2 rotated(const Vec2& v, double angle)
{
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

} // namespace

TEST_CASE("derived config quantities on the reference point")
{
    const SpdcConfig cfg = reference_config();
    CHECK(rel_err(cfg.omega_p(), 2.0 * pi * 2.99792458e8 / 1e-6) < 1e-15);
    CHECK(rel_err(cfg.sinc_coefficient(), 2.6525823848649223e-11) < 1e-14);
    CHECK(rel_err(cfg.x_max(), 1047.1975511965977) < 1e-14);
}

TEST_CASE("normalization constant: reference value and explicit scalings")
{
    const SpdcConfig cfg = reference_config();
    CHECK(rel_err(normalization_constant(cfg), 2.6161017124319836e-9) < 1e-12);

    SpdcConfig c2 = cfg;
    c2.w_p *= 2.0;
    CHECK(rel_err(normalization_constant(c2), 2.0 * normalization_constant(cfg)) < 1e-14);
    c2 = cfg;
    c2.L *= 4.0;
    CHECK(rel_err(normalization_constant(c2), 2.0 * normalization_constant(cfg)) < 1e-14);
    c2 = cfg;
    c2.lambda_p *= 4.0;
    CHECK(rel_err(normalization_constant(c2), 2.0 * normalization_constant(cfg)) < 1e-14);
    c2 = cfg;
    c2.n_o = 4.0 * cfg.n_o;
    CHECK(rel_err(normalization_constant(c2), 0.5 * normalization_constant(cfg)) < 1e-14);
}

TEST_CASE("normalization closure: factorized integrals multiply to 1")
{
    // (1/4) N^2 * [Gaussian radial integral] * [sinc^2 radial integral] = 1.
    // First with the closed-form factor values, then fully numerically.
    const SpdcConfig cfg = reference_config();
    const double n = normalization_constant(cfg);
    const double c_s = cfg.sinc_coefficient();
    const double closed = 0.25 * n * n * (pi / (cfg.w_p * cfg.w_p))
                          * (pi * pi / (2.0 * c_s));
    CHECK(rel_err(closed, 1.0) < 1e-10);

    std::mt19937_64 rng(20260822);
    for (int trial = 0; trial < 8; ++trial) {
        const SpdcConfig c = random_config(rng);
        const double nn = normalization_constant(c);
        const double cs = c.sinc_coefficient();
        const double wp2 = c.w_p * c.w_p;
        const double gauss = radial_integral_2d(
            [wp2](double u) { return std::exp(-u * wp2); }, {}, 0.0, 1.0 / wp2);
        const double osc = radial_integral_2d(
            [cs](double u) { const double s = sinc(cs * u); return s * s; },
            {}, pi / cs);
        CHECK(rel_err(0.25 * nn * nn * gauss * osc, 1.0) < 1e-6);
    }
}

TEST_CASE("amplitude peak, first sinc zero, and density consistency")
{
    const SpdcConfig cfg = reference_config();
    const double n = normalization_constant(cfg);
    CHECK(amplitude({0, 0}, {0, 0}, cfg) == n);

    // k1 = -k2 with c_s |2 k1|^2 = pi sits on the first phase-matching zero.
    const double k = 0.5 * std::sqrt(pi / cfg.sinc_coefficient());
    const Vec2 k1{k, 0.0};
    const Vec2 k2{-k, 0.0};
    CHECK(std::fabs(amplitude(k1, k2, cfg)) < 1e-15 * n);

    // density in sum/difference coordinates equals the squared amplitude.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec2 a{3.0e3 * u(rng), 3.0e3 * u(rng)};
        const Vec2 b{2.0e5 * u(rng), 2.0e5 * u(rng)};
        const double amp = amplitude(a, b, cfg);
        const double den = density_q(to_sum_difference(a, b), cfg);
        CHECK(std::fabs(den - amp * amp) <= 5e-15 * n * n);
    }
    CHECK(density_q({{0, 0}, {0, 0}}, cfg) == n * n);
}

TEST_CASE("exchange symmetry is exact")
{
    const SpdcConfig cfg = reference_config();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec2 a{1e4 * u(rng), 1e4 * u(rng)};
        const Vec2 b{1e5 * u(rng), 1e5 * u(rng)};
        CHECK(amplitude(a, b, cfg) == amplitude(b, a, cfg));
    }
}

TEST_CASE("density is rotation invariant in each coordinate")
{
    const SpdcConfig cfg = reference_config();
    const double c_s = cfg.sinc_coefficient();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        // Keep q_+ within 3/w_p and c_s q_-^2 within the central sinc lobe so
        // the density stays well away from zeros and underflow.
        const double qp = 3.0 / cfg.w_p * u(rng);
        const double qm = std::sqrt(2.0 / c_s * u(rng));
        const double phi_p = 2.0 * pi * u(rng);
        const double phi_m = 2.0 * pi * u(rng);
        const TransversePoint p{{qp * std::cos(phi_p), qp * std::sin(phi_p)},
                                {qm * std::cos(phi_m), qm * std::sin(phi_m)}};
        const TransversePoint q{rotated(p.q_plus, 2.0 * pi * u(rng)),
                                rotated(p.q_minus, 2.0 * pi * u(rng))};
        CHECK(rel_err(density_q(q, cfg), density_q(p, cfg)) < 1e-13);
    }
}

TEST_CASE("density peaks at the origin")
{
    const SpdcConfig cfg = reference_config();
    const double peak = density_q({{0, 0}, {0, 0}}, cfg);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const TransversePoint p{{2e3 * u(rng), 2e3 * u(rng)},
                                {4e5 * u(rng), 4e5 * u(rng)}};
        if (norm_sq(p.q_plus) + norm_sq(p.q_minus) == 0.0) continue;
        CHECK(density_q(p, cfg) < peak);
    }
}

TEST_CASE("sum/difference coordinates round-trip")
{
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec2 k1{1e5 * u(rng), 1e5 * u(rng)};
        const Vec2 k2{1e5 * u(rng), 1e5 * u(rng)};
        const auto [r1, r2] = to_photon_wavevectors(to_sum_difference(k1, k2));
        const double scale = 1e5;
        CHECK(std::fabs(r1.x - k1.x) < 1e-15 * scale);
        CHECK(std::fabs(r1.y - k1.y) < 1e-15 * scale);
        CHECK(std::fabs(r2.x - k2.x) < 1e-15 * scale);
        CHECK(std::fabs(r2.y - k2.y) < 1e-15 * scale);
    }
}

TEST_CASE("anisotropy validity ratio and flag")
{
    SpdcConfig cfg = reference_config();   // L = w_p = 1 mm, |n_p'| = 0.1
    const AnisotropyCheck boundary = anisotropy_validity(cfg);
    CHECK(rel_err(boundary.ratio, 0.1) < 1e-14);
    CHECK(boundary.pass);

    cfg.n_p_prime_abs = 0.0;
    const AnisotropyCheck iso = anisotropy_validity(cfg);
    CHECK(iso.ratio == 0.0);
    CHECK(iso.pass);

    cfg = reference_config();
    cfg.L = 1e-2;
    cfg.w_p = 1e-4;
    const AnisotropyCheck bad = anisotropy_validity(cfg);
    CHECK(rel_err(bad.ratio, 10.0) < 1e-14);
    CHECK_FALSE(bad.pass);

    // The threshold is a parameter, not a constant.
    CHECK(anisotropy_validity(reference_config(), 0.05).pass == false);
    CHECK_THROWS_AS(anisotropy_validity(reference_config(), 0.0), ConfigInvalid);
}

TEST_CASE("config validation rejects unphysical parameters")
{
    SpdcConfig cfg = reference_config();
    cfg.lambda_p = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigInvalid);
    cfg = reference_config();
    cfg.w_p = -1e-3;
    CHECK_THROWS_AS(cfg.validate(), ConfigInvalid);
    cfg = reference_config();
    cfg.L = std::nan("");
    CHECK_THROWS_AS(cfg.validate(), ConfigInvalid);
    cfg = reference_config();
    cfg.n_o = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigInvalid);
    cfg = reference_config();
    cfg.n_p_prime_abs = -0.1;
    CHECK_THROWS_AS(cfg.validate(), ConfigInvalid);

    // Sub-wavelength crystal: x_max <= 1 is out of the paraxial domain.
    cfg = reference_config();
    cfg.L = 0.9 * 2.0 * cfg.n_o * cfg.lambda_p / pi;
    CHECK_THROWS_AS(cfg.validate(), ConfigInvalid);
    reference_config().validate();   // and the reference point is fine
}
