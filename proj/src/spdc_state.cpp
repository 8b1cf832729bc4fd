#include "biphoton/spdc_state.hpp"

#include <cmath>
#include <string>

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/special_functions.hpp"

namespace biphoton {

Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }
double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
double norm_sq(const Vec2& v) { return v.x * v.x + v.y * v.y; }

double SpdcConfig::omega_p() const {
    return 2.0 * pi * c_light / lambda_p;
}

double SpdcConfig::sinc_coefficient() const {
    return L * lambda_p / (8.0 * pi * n_o);
}

double SpdcConfig::x_max() const {
    return pi * L / (2.0 * n_o * lambda_p);
}

namespace {

void require_positive_length(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigInvalid(std::string(name) + " must be a positive finite length");
    }
}

} // namespace

void SpdcConfig::validate() const {
    require_positive_length(lambda_p, "lambda_p");
    require_positive_length(w_p, "w_p");
    require_positive_length(L, "L");
    if (!(n_o > 1.0) || !std::isfinite(n_o)) {
        throw ConfigInvalid("n_o must exceed 1 (ordinary index of a dense medium)");
    }
    if (!(n_p_prime_abs >= 0.0) || !std::isfinite(n_p_prime_abs)) {
        throw ConfigInvalid("n_p_prime_abs must be a finite non-negative number");
    }
    if (!(x_max() > 1.0)) {
        throw ConfigInvalid("crystal too short: paraxial cutoff x_max = "
                            "pi L / (2 n_o lambda_p) must exceed 1");
    }
}

TransversePoint to_sum_difference(const Vec2& k1_perp, const Vec2& k2_perp) {
    return {k1_perp + k2_perp, k1_perp - k2_perp};
}

std::pair<Vec2, Vec2> to_photon_wavevectors(const TransversePoint& point) {
    return {0.5 * (point.q_plus + point.q_minus),
            0.5 * (point.q_plus - point.q_minus)};
}

double normalization_constant(const SpdcConfig& cfg) {
    cfg.validate();
    return cfg.w_p / (pi * pi) * std::sqrt(cfg.L * cfg.lambda_p / cfg.n_o);
}

double amplitude(const Vec2& k1_perp, const Vec2& k2_perp,
                 const SpdcConfig& cfg) {
    const double n = normalization_constant(cfg);
    const double sum_sq = norm_sq(k1_perp + k2_perp);
    const double diff_sq = norm_sq(k1_perp - k2_perp);
    const double gauss = std::exp(-0.5 * sum_sq * cfg.w_p * cfg.w_p);
    return n * gauss * sinc(cfg.sinc_coefficient() * diff_sq);
}

double density_q(const TransversePoint& point, const SpdcConfig& cfg) {
    const double n = normalization_constant(cfg);
    const double gauss = std::exp(-norm_sq(point.q_plus) * cfg.w_p * cfg.w_p);
    const double s = sinc(cfg.sinc_coefficient() * norm_sq(point.q_minus));
    return n * n * gauss * s * s;
}

AnisotropyCheck anisotropy_validity(const SpdcConfig& cfg, double threshold) {
    cfg.validate();
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw ConfigInvalid("anisotropy threshold must be positive and finite");
    }
    AnisotropyCheck check;
    check.ratio = cfg.L * cfg.n_p_prime_abs / cfg.w_p;
    check.threshold = threshold;
    check.pass = check.ratio <= threshold;
    return check;
}

} // namespace biphoton
