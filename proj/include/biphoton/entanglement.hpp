#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "biphoton/moments_mass.hpp"
#include "biphoton/spdc_state.hpp"

// Entanglement measures of the biphoton state on the 1D transverse slice
// (y-components fixed at zero): characteristic widths of the sum and
// difference factors, the width-ratio parameter R (analytic and measured on
// a discretized kernel), regime estimates for the Schmidt number K, and a
// numeric K from the singular-value spectrum of the sampled kernel.

namespace biphoton {

// Characteristic 1/e widths of the joint density factors:
//   sum (Gaussian) factor  a = 1/w_p
//   difference (phase-matching) factor  b = 2 pi sqrt(n_o / (L lambda_p)).
struct AnalyticWidths {
    double a = 0.0;   // [1/m]
    double b = 0.0;   // [1/m]
};

AnalyticWidths analytic_widths(const SpdcConfig& cfg);

// R = max(a,b) / min(a,b) >= 1; equals 1 only for a separable (a = b) state.
double r_parameter_analytic(const SpdcConfig& cfg);

// Regime formula for K: 2 pi w_p sqrt(n_o/(L lambda_p)) for a short crystal,
// sqrt(L/L_d) for strong focusing. In between neither asymptotic applies;
// the width ratio is returned with low_confidence set.
struct KRegimeEstimate {
    double value = 0.0;
    bool low_confidence = false;
    CrystalRegime regime = CrystalRegime::intermediate;
};

KRegimeEstimate k_regime_estimate(const SpdcConfig& cfg);

// psi sampled on a uniform square grid: values(i, j) = psi(grid[i], grid[j]).
// The matrix inherits the exchange symmetry of the state.
struct DiscretizedKernel {
    std::vector<double> grid;   // k samples [1/m]
    Eigen::MatrixXd values;
    double step = 0.0;          // grid spacing [1/m]
};

struct KernelGridSpec {
    int points = 512;
    double half_extent = 0.0;   // [1/m]; 0 selects 6 * (largest width scale)
};

// Joint amplitude of cfg on the 1D slice.
DiscretizedKernel build_sinc_kernel(const SpdcConfig& cfg,
                                    KernelGridSpec spec = {});

// Double-Gaussian stand-in with the same width scales:
//   psi = exp(-(k1+k2)^2/(2 a^2) - (k1-k2)^2/(2 b^2)),
// the state whose width ratio and Schmidt number have closed forms
// (both equal (a^2+b^2)/(2ab)) — the oracle kernel for the numeric paths.
DiscretizedKernel build_surrogate_kernel(double width_sum, double width_diff,
                                         KernelGridSpec spec = {});

// Closed forms for the surrogate: rms widths of the marginal and the
// conditional (fixed-partner) densities, and the Schmidt number.
double surrogate_marginal_rms(double width_sum, double width_diff);
double surrogate_conditional_rms(double width_sum, double width_diff);
double surrogate_schmidt_number(double width_sum, double width_diff);

enum class WidthKind { rms, fwhm };

// Width of the single-photon (marginal) density sum_j |psi(k1, k_j)|^2.
// Throws WidthHitsBoundary when the profile has not decayed to 1e-3 of its
// peak at the grid edge, GridTooCoarse when the width is under 4 grid steps.
double marginal_width(const DiscretizedKernel& kernel,
                      WidthKind kind = WidthKind::rms);

// Width of |psi(k1, k2_fixed)|^2 at the grid column nearest k2_fixed
// (default 0: partner detector held at the axis). Same error contract.
double conditional_width(const DiscretizedKernel& kernel,
                         double k2_fixed = 0.0,
                         WidthKind kind = WidthKind::rms);

// Measured width ratio. The two widths live on different scales (max vs min
// of a, b), so each is measured on its own grid: the marginal on extent
// 6*max(a,b), the conditional on extent 6*min(a,b), spec.points each.
struct NumericWidths {
    double marginal = 0.0;      // [1/m]
    double conditional = 0.0;   // [1/m]
    double r = 0.0;             // marginal / conditional
};

NumericWidths r_parameter_numeric(const SpdcConfig& cfg,
                                  KernelGridSpec spec = {},
                                  WidthKind kind = WidthKind::rms);
NumericWidths surrogate_width_ratio(double width_sum, double width_diff,
                                    KernelGridSpec spec = {},
                                    WidthKind kind = WidthKind::rms);

// Schmidt number 1/sum(lambda_i^2) from the singular values of the sampled
// kernel (lambda_i = (sigma_i * step)^2 after internal normalization).
// Throws NonNormalizable when the kernel carries no finite weight.
double schmidt_number_svd(const DiscretizedKernel& kernel);

// Grid-doubling driver: evaluates schmidt_number_svd on builder(n) for
// n = start_grid, 2*start_grid, ... until the value changes by less than
// rel_change_tol or max_grid is reached. start_grid == max_grid gives a
// single-shot estimate with converged = false.
struct SchmidtEstimate {
    double value = 0.0;
    bool converged = false;
    int grid = 0;
    double last_change = 0.0;   // relative change at the final step; NaN if single-shot

    // Returns value, or throws NotConverged with a remediation hint.
    double require_converged() const;
};

SchmidtEstimate schmidt_number_converged(
    const std::function<DiscretizedKernel(int)>& builder, int start_grid = 512,
    int max_grid = 4096, double rel_change_tol = 0.01);

// One-stop report for a config: analytic widths and R, the regime K
// estimate, the two-grid numeric R, and the grid-doubling K_svd (single-shot
// when max_svd_grid <= spec.points).
struct EntanglementReport {
    AnalyticWidths widths;
    double r_analytic = 0.0;
    NumericWidths r_numeric;
    KRegimeEstimate k_regime;
    SchmidtEstimate k_svd;
    CrystalRegime regime = CrystalRegime::intermediate;
};

EntanglementReport compute_entanglement_report(const SpdcConfig& cfg,
                                               KernelGridSpec spec = {},
                                               int max_svd_grid = 4096,
                                               WidthKind kind = WidthKind::rms);

} // namespace biphoton
