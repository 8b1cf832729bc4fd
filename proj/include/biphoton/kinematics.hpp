#pragma once

#include <vector>

// Relativistic 4-vector algebra for photon groups: invariant mass, mean
// velocity, Lorentz boosts, rest-frame construction, and the mass carried by
// a focused Gaussian pump pulse.

namespace biphoton {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

Vec3 operator+(const Vec3& u, const Vec3& v);
Vec3 operator-(const Vec3& u, const Vec3& v);
Vec3 operator*(double s, const Vec3& v);
double dot(const Vec3& u, const Vec3& v);
double norm(const Vec3& v);

// One particle: energy in J, momentum in kg m/s.
struct FourMomentum {
    double energy = 0.0;
    Vec3 momentum;
};

// On-shell photon of angular frequency omega [rad/s] travelling along
// `direction` (any nonzero vector; normalized internally).
FourMomentum photon(double omega, const Vec3& direction);

// Frequency-degenerate photon pair with angle theta between wave vectors.
struct PhotonPair {
    double omega = 0.0;   // rad/s, common frequency
    double theta = 0.0;   // rad, in [0, pi]
};

// Gaussian pump pulse: wavelength, waist, and how many photons it carries.
struct PumpPulse {
    double lambda_p = 0.0;      // m
    double w_p = 0.0;           // m
    double photon_count = 1.0;  // dimensionless N

    double omega_p() const;       // 2 pi c / lambda_p
    double total_energy() const;  // N hbar omega_p
    bool waist_ratio_ok() const;  // w_p / lambda_p >= 10
};

// sqrt(E_tot^2 - c^2 p_tot^2)/c^2 with compensated (double-double)
// accumulation so near-collinear groups keep all the significance the inputs
// have. Radicand magnitudes within 1e-12 E_tot^2 sit below the on-shell
// storage noise of double components and report as exactly zero; radicands
// below -1e-12 E_tot^2 throw SpacelikeTotal.
double invariant_mass(const std::vector<FourMomentum>& group);

// (2 hbar omega / c^2) sin(theta/2); equals invariant_mass of the two
// constructed 4-vectors.
double pair_mass_from_angle(const PhotonPair& pair);

// c sqrt(1 - m^2 c^4 / E_tot^2); exactly c for m = 0.
double mean_velocity(double total_energy, double mass);

// 1 - v/c evaluated cancellation-free as mu^2/(1 + sqrt(1 - mu^2)) with
// mu = m c^2 / E_tot.
double light_speed_deficit(double total_energy, double mass);

// Pure (rotation-free) boost of p by velocity beta (units of c), |beta| < 1.
FourMomentum lorentz_boost(const FourMomentum& p, const Vec3& beta);

// beta = c p_tot / E_tot; boosting the group by this beta zeroes its total
// spatial momentum. Throws MasslessGroup when no rest frame exists.
Vec3 rest_frame_beta(const std::vector<FourMomentum>& group);

// Pulse mass from its energy, wavelength and waist: E_tot lambda_p /
// (2 pi c^2 w_p); per photon this is hbar/(c w_p) independent of lambda_p.
double pump_mass_total(const PumpPulse& pulse);
double pump_mass_per_photon(const PumpPulse& pulse);

} // namespace biphoton
