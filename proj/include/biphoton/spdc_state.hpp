#pragma once

#include <utility>

// Degenerate type-I collinear SPDC biphoton state in the transverse-momentum
// representation: configuration, normalized joint amplitude, and the joint
// density in the factorizing sum/difference coordinates. Frequencies are
// hard-coded degenerate (omega_p for the pump, omega_p/2 per photon); no
// spectral degree of freedom is modeled.

namespace biphoton {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

Vec2 operator+(const Vec2& a, const Vec2& b);
Vec2 operator-(const Vec2& a, const Vec2& b);
Vec2 operator*(double s, const Vec2& v);
double dot(const Vec2& a, const Vec2& b);
double norm_sq(const Vec2& v);

// Pump/crystal parameters, SI units. The derived quantities below are pure
// arithmetic on the fields; validate() checks the physical domain and is
// called by every operation that consumes a config.
struct SpdcConfig {
    double lambda_p = 0.0;       // pump wavelength [m]
    double w_p = 0.0;            // pump waist [m]
    double L = 0.0;              // crystal length [m]
    double n_o = 0.0;            // ordinary refractive index
    double n_p_prime_abs = 0.1;  // |dn_p/d theta| for the anisotropy check

    double omega_p() const;           // pump angular frequency 2 pi c / lambda_p [rad/s]
    double sinc_coefficient() const;  // c_s = L lambda_p / (8 pi n_o) [m^2]
    double x_max() const;             // paraxial cutoff pi L / (2 n_o lambda_p)

    // Throws ConfigInvalid naming the offending field. Requires positive
    // finite lengths, n_o > 1, n_p_prime_abs >= 0, and x_max > 1.
    void validate() const;
};

// Sum/difference transverse wave vectors q_pm = k_perp1 +- k_perp2 [1/m];
// the joint density factorizes in these coordinates.
struct TransversePoint {
    Vec2 q_plus;
    Vec2 q_minus;
};

TransversePoint to_sum_difference(const Vec2& k1_perp, const Vec2& k2_perp);
std::pair<Vec2, Vec2> to_photon_wavevectors(const TransversePoint& point);

// Amplitude normalization factor (w_p / pi^2) sqrt(L lambda_p / n_o) [m^2].
double normalization_constant(const SpdcConfig& cfg);

// Real normalized joint amplitude
//   N exp(-|k1+k2|^2 w_p^2 / 2) sinc(c_s |k1-k2|^2).
double amplitude(const Vec2& k1_perp, const Vec2& k2_perp,
                 const SpdcConfig& cfg);

// Joint probability density N^2 exp(-q_+^2 w_p^2) sinc^2(c_s q_-^2) [m^4];
// equals amplitude^2 under q_pm = k1 +- k2. Normalized so that
// (1/4) int d2q_+ d2q_- density = 1.
double density_q(const TransversePoint& point, const SpdcConfig& cfg);

// Transverse-walkoff validity ratio L |n_p'| / w_p. The plane-wave pump
// treatment needs ratio << 1; pass is ratio <= threshold. Downstream reports
// carry a warning when the check fails.
struct AnisotropyCheck {
    double ratio = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

AnisotropyCheck anisotropy_validity(const SpdcConfig& cfg,
                                    double threshold = 0.1);

} // namespace biphoton
