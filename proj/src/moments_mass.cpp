#include "biphoton/moments_mass.hpp"

#include <cmath>

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/quadrature.hpp"
#include "biphoton/special_functions.hpp"

namespace biphoton {

namespace {

// <q_-^2> = [pi/c_s^2 int x sinc^2 x dx] / [pi^2/(2 c_s)]: the density ratio
// fixes the prefactor of the order-1 integral at 2/(pi c_s) = 16 n_o/(L lambda_p).
double sinc_moment_prefactor(const SpdcConfig& cfg)
{
    return 2.0 / (pi * cfg.sinc_coefficient());
}

} // namespace

double q_plus_sq_mean(const SpdcConfig& cfg, MomentMethod method)
{
    cfg.validate();
    if (method == MomentMethod::analytic_log) {
        return 1.0 / (cfg.w_p * cfg.w_p);
    }
    const double wp2 = cfg.w_p * cfg.w_p;
    const double num = radial_integral_2d(
        [wp2](double u) { return u * std::exp(-u * wp2); }, {}, 0.0, 1.0 / wp2);
    const double den = radial_integral_2d(
        [wp2](double u) { return std::exp(-u * wp2); }, {}, 0.0, 1.0 / wp2);
    return num / den;
}

double q_minus_sq_mean(const SpdcConfig& cfg, MomentMethod method)
{
    cfg.validate();
    if (method == MomentMethod::analytic_log) {
        return 4.0 * pi * cfg.n_o / (cfg.L * cfg.lambda_p) * std::log(cfg.x_max());
    }
    const IntegralResult i1 = sinc_sq_moment(1, CutoffSpec{cfg.x_max()});
    return sinc_moment_prefactor(cfg) * i1.value;
}

double q_minus_sq_mean_closed_form(const SpdcConfig& cfg)
{
    cfg.validate();
    return sinc_moment_prefactor(cfg) * sin_sq_over_x_integral(cfg.x_max());
}

double q_minus_sq_mean_alt_prefactor(const SpdcConfig& cfg)
{
    cfg.validate();
    const IntegralResult i1 = sinc_sq_moment(1, CutoffSpec{cfg.x_max()});
    return i1.value / cfg.sinc_coefficient();
}

DeficitResult momentum_deficit(const SpdcConfig& cfg, MomentMethod method)
{
    const BiphotonMoments m = compute_moments(cfg, method);
    return {m.delta_p, m.mean_longitudinal_momentum, m.paraxial_ratio,
            m.paraxial_ok};
}

BiphotonMoments compute_moments(const SpdcConfig& cfg, MomentMethod method)
{
    cfg.validate();
    BiphotonMoments m;
    m.method = method;
    m.q_plus_sq = q_plus_sq_mean(cfg, method);
    m.q_minus_sq = q_minus_sq_mean(cfg, method);
    const double omega = cfg.omega_p();
    m.delta_p = hbar * c_light / (2.0 * omega) * (m.q_plus_sq + m.q_minus_sq);
    m.mean_longitudinal_momentum = hbar * omega / c_light - m.delta_p;
    m.paraxial_ratio = c_light * m.delta_p / (hbar * omega);
    m.paraxial_ok = m.paraxial_ratio < 0.01;
    return m;
}

MassResult biphoton_mass(const SpdcConfig& cfg, MomentMethod method)
{
    const BiphotonMoments m = compute_moments(cfg, method);
    const double energy = hbar * cfg.omega_p();
    const double cdp = c_light * m.delta_p;
    MassResult r;
    r.moment_method = method;
    if (method == MomentMethod::analytic_log) {
        r.mass = hbar / c_light * std::sqrt(m.q_plus_sq + m.q_minus_sq);
    } else {
        r.mass = std::sqrt(2.0 * energy * cdp) / (c_light * c_light);
    }
    r.exact_square_mass =
        std::sqrt(cdp * (2.0 * energy - cdp)) / (c_light * c_light);
    r.paraxial_ok = m.paraxial_ok;
    r.anisotropy_ok = anisotropy_validity(cfg).pass;
    return r;
}

SchmidtMass mass_via_schmidt(const SpdcConfig& cfg, double schmidt_number)
{
    cfg.validate();
    if (!(schmidt_number >= 1.0) || !std::isfinite(schmidt_number)) {
        throw ConfigInvalid("schmidt number must be finite and >= 1");
    }
    const double lg = std::log(cfg.x_max());
    const double base = hbar / (c_light * cfg.w_p);
    const double k = schmidt_number;
    SchmidtMass m;
    m.full = base * std::sqrt(1.0 + k * k / pi * lg);
    m.reduced = base * k * std::sqrt(lg / pi);
    return m;
}

double diffraction_length(const SpdcConfig& cfg)
{
    cfg.validate();
    return cfg.w_p * cfg.w_p / cfg.lambda_p;
}

CrystalRegime regime(const SpdcConfig& cfg, double threshold)
{
    cfg.validate();
    if (!(threshold > 1.0) || !std::isfinite(threshold)) {
        throw ConfigInvalid("regime threshold must exceed 1");
    }
    const double ld = diffraction_length(cfg);
    if (cfg.L * threshold <= ld) return CrystalRegime::short_crystal;
    if (cfg.L >= threshold * ld) return CrystalRegime::strong_focusing;
    return CrystalRegime::intermediate;
}

const char* regime_name(CrystalRegime regime)
{
    switch (regime) {
    case CrystalRegime::short_crystal: return "short_crystal";
    case CrystalRegime::intermediate: return "intermediate";
    case CrystalRegime::strong_focusing: return "strong_focusing";
    }
    return "unknown";
}

} // namespace biphoton
