#include "biphoton/entanglement.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/special_functions.hpp"

namespace biphoton {

AnalyticWidths analytic_widths(const SpdcConfig& cfg)
{
    cfg.validate();
    return {1.0 / cfg.w_p,
            2.0 * pi * std::sqrt(cfg.n_o / (cfg.L * cfg.lambda_p))};
}

double r_parameter_analytic(const SpdcConfig& cfg)
{
    const AnalyticWidths w = analytic_widths(cfg);
    return std::max(w.a, w.b) / std::min(w.a, w.b);
}

KRegimeEstimate k_regime_estimate(const SpdcConfig& cfg)
{
    KRegimeEstimate est;
    est.regime = regime(cfg);
    switch (est.regime) {
    case CrystalRegime::short_crystal:
        est.value = 2.0 * pi * cfg.w_p
                    * std::sqrt(cfg.n_o / (cfg.L * cfg.lambda_p));
        break;
    case CrystalRegime::strong_focusing:
        est.value = std::sqrt(cfg.L / diffraction_length(cfg));
        break;
    case CrystalRegime::intermediate:
        est.value = std::max(r_parameter_analytic(cfg), 1.0);
        est.low_confidence = true;
        break;
    }
    return est;
}

namespace {

void validate_grid_spec(const KernelGridSpec& spec)
{
    if (spec.points < 16 || spec.points > 16384)
        throw ConfigInvalid("kernel grid points must be in [16, 16384]");
    if (!(spec.half_extent >= 0.0) || !std::isfinite(spec.half_extent))
        throw ConfigInvalid("kernel half extent must be finite and >= 0");
}

DiscretizedKernel sampled_kernel(int points, double half_extent,
                                 const std::function<double(double, double)>& psi)
{
    DiscretizedKernel kernel;
    kernel.grid.resize(points);
    kernel.step = 2.0 * half_extent / (points - 1);
    for (int i = 0; i < points; ++i)
        kernel.grid[i] = -half_extent + i * kernel.step;
    kernel.values.resize(points, points);
    for (int i = 0; i < points; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double v = psi(kernel.grid[i], kernel.grid[j]);
            kernel.values(i, j) = v;
            kernel.values(j, i) = v;
        }
    }
    return kernel;
}

} // namespace

DiscretizedKernel build_sinc_kernel(const SpdcConfig& cfg, KernelGridSpec spec)
{
    cfg.validate();
    validate_grid_spec(spec);
    const AnalyticWidths w = analytic_widths(cfg);
    const double extent =
        spec.half_extent > 0.0 ? spec.half_extent : 6.0 * std::max(w.a, w.b);
    // Same expression as amplitude() with the config factors hoisted out of
    // the O(points^2) loop.
    const double n = normalization_constant(cfg);
    const double half_w2 = 0.5 * cfg.w_p * cfg.w_p;
    const double c_s = cfg.sinc_coefficient();
    return sampled_kernel(spec.points, extent, [=](double k1, double k2) {
        const double s = k1 + k2;
        const double d = k1 - k2;
        return n * std::exp(-half_w2 * s * s) * sinc(c_s * d * d);
    });
}

DiscretizedKernel build_surrogate_kernel(double width_sum, double width_diff,
                                         KernelGridSpec spec)
{
    validate_grid_spec(spec);
    if (!(width_sum > 0.0) || !(width_diff > 0.0)
        || !std::isfinite(width_sum) || !std::isfinite(width_diff))
        throw ConfigInvalid("surrogate widths must be positive and finite");
    const double extent = spec.half_extent > 0.0
                              ? spec.half_extent
                              : 6.0 * std::max(width_sum, width_diff);
    const double ia2 = 0.5 / (width_sum * width_sum);
    const double ib2 = 0.5 / (width_diff * width_diff);
    return sampled_kernel(spec.points, extent, [=](double k1, double k2) {
        const double s = k1 + k2;
        const double d = k1 - k2;
        return std::exp(-ia2 * s * s - ib2 * d * d);
    });
}

double surrogate_marginal_rms(double width_sum, double width_diff)
{
    return std::sqrt(width_sum * width_sum + width_diff * width_diff)
           / (2.0 * std::sqrt(2.0));
}

double surrogate_conditional_rms(double width_sum, double width_diff)
{
    return width_sum * width_diff
           / (std::sqrt(2.0)
              * std::sqrt(width_sum * width_sum + width_diff * width_diff));
}

double surrogate_schmidt_number(double width_sum, double width_diff)
{
    return (width_sum * width_sum + width_diff * width_diff)
           / (2.0 * width_sum * width_diff);
}

namespace {

double width_of_profile(const std::vector<double>& profile,
                        const std::vector<double>& grid, double step,
                        WidthKind kind)
{
    double total = 0.0, peak = 0.0;
    for (double p : profile) {
        total += p;
        peak = std::max(peak, p);
    }
    if (!(total > 0.0) || !std::isfinite(total))
        throw NonNormalizable("width profile carries no finite weight");
    if (std::max(profile.front(), profile.back()) > 1e-3 * peak)
        throw WidthHitsBoundary(
            "density has not decayed at the grid edge; increase the extent");

    double width = 0.0;
    if (kind == WidthKind::rms) {
        double mean = 0.0;
        for (size_t i = 0; i < profile.size(); ++i)
            mean += profile[i] * grid[i];
        mean /= total;
        double var = 0.0;
        for (size_t i = 0; i < profile.size(); ++i) {
            const double d = grid[i] - mean;
            var += profile[i] * d * d;
        }
        width = std::sqrt(var / total);
    } else {
        const auto peak_it = std::max_element(profile.begin(), profile.end());
        const size_t m = size_t(peak_it - profile.begin());
        const double half = 0.5 * peak;
        size_t lo = m;
        while (lo > 0 && profile[lo] >= half) --lo;
        size_t hi = m;
        while (hi + 1 < profile.size() && profile[hi] >= half) ++hi;
        if (profile[lo] >= half || profile[hi] >= half)
            throw WidthHitsBoundary(
                "half-maximum crossing falls outside the grid");
        // Linear interpolation on both flanks.
        const double left = grid[lo]
                            + step * (half - profile[lo])
                                  / (profile[lo + 1] - profile[lo]);
        const double right = grid[hi]
                             - step * (half - profile[hi])
                                   / (profile[hi - 1] - profile[hi]);
        width = right - left;
    }
    if (width < 4.0 * step)
        throw GridTooCoarse(
            "width spans fewer than 4 grid steps; increase points "
            "or shrink the extent");
    return width;
}

} // namespace

double marginal_width(const DiscretizedKernel& kernel, WidthKind kind)
{
    const int n = int(kernel.grid.size());
    std::vector<double> profile(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double v = kernel.values(i, j);
            acc += v * v;
        }
        profile[i] = acc * kernel.step;
    }
    return width_of_profile(profile, kernel.grid, kernel.step, kind);
}

double conditional_width(const DiscretizedKernel& kernel, double k2_fixed,
                         WidthKind kind)
{
    const int n = int(kernel.grid.size());
    if (k2_fixed < kernel.grid.front() - 0.5 * kernel.step
        || k2_fixed > kernel.grid.back() + 0.5 * kernel.step)
        throw ConfigInvalid("conditional slice position lies outside the grid");
    const int j0 = std::clamp(
        int(std::lround((k2_fixed - kernel.grid.front()) / kernel.step)), 0,
        n - 1);
    std::vector<double> profile(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double v = kernel.values(i, j0);
        profile[i] = v * v;
    }
    return width_of_profile(profile, kernel.grid, kernel.step, kind);
}

namespace {

NumericWidths two_grid_ratio(double scale_max, double scale_min,
                             const KernelGridSpec& spec, WidthKind kind,
                             const std::function<DiscretizedKernel(
                                 const KernelGridSpec&)>& builder)
{
    // The marginal width lives on the larger scale, the conditional on the
    // smaller; measuring each on its own grid keeps both resolved at any
    // anisotropy. An explicit half_extent overrides the marginal grid and
    // shrinks the conditional grid by the same factor.
    KernelGridSpec marginal_spec = spec;
    if (marginal_spec.half_extent <= 0.0)
        marginal_spec.half_extent = 6.0 * scale_max;
    KernelGridSpec conditional_spec = spec;
    conditional_spec.half_extent =
        marginal_spec.half_extent * (scale_min / scale_max);
    NumericWidths w;
    w.marginal = marginal_width(builder(marginal_spec), kind);
    w.conditional = conditional_width(builder(conditional_spec), 0.0, kind);
    w.r = w.marginal / w.conditional;
    return w;
}

} // namespace

NumericWidths r_parameter_numeric(const SpdcConfig& cfg, KernelGridSpec spec,
                                  WidthKind kind)
{
    cfg.validate();
    validate_grid_spec(spec);
    const AnalyticWidths w = analytic_widths(cfg);
    return two_grid_ratio(std::max(w.a, w.b), std::min(w.a, w.b), spec, kind,
                          [&cfg](const KernelGridSpec& s) {
                              return build_sinc_kernel(cfg, s);
                          });
}

NumericWidths surrogate_width_ratio(double width_sum, double width_diff,
                                    KernelGridSpec spec, WidthKind kind)
{
    validate_grid_spec(spec);
    return two_grid_ratio(std::max(width_sum, width_diff),
                          std::min(width_sum, width_diff), spec, kind,
                          [&](const KernelGridSpec& s) {
                              return build_surrogate_kernel(width_sum,
                                                            width_diff, s);
                          });
}

double schmidt_number_svd(const DiscretizedKernel& kernel)
{
    const double step_sq = kernel.step * kernel.step;
    const double weight = kernel.values.array().square().sum() * step_sq;
    if (!(weight > 0.0) || !std::isfinite(weight))
        throw NonNormalizable("kernel carries no finite weight");
    // Schmidt weights are the squared singular values of (values * step),
    // normalized to unit total.
    Eigen::BDCSVD<Eigen::MatrixXd> svd(kernel.values);
    const Eigen::VectorXd sigma = svd.singularValues();
    double sum_sq = 0.0;
    for (int i = 0; i < sigma.size(); ++i) {
        const double lambda = sigma[i] * sigma[i] * step_sq / weight;
        sum_sq += lambda * lambda;
    }
    return 1.0 / sum_sq;
}

double SchmidtEstimate::require_converged() const
{
    if (converged) return value;
    char buf[160];
    if (std::isnan(last_change)) {
        std::snprintf(buf, sizeof buf,
                      "schmidt number is a single-shot estimate at grid %d; "
                      "raise the grid ceiling to test convergence",
                      grid);
    } else {
        std::snprintf(buf, sizeof buf,
                      "schmidt number still changing by %.3g%% at grid %d; "
                      "raise the grid ceiling",
                      100.0 * last_change, grid);
    }
    throw NotConverged(buf);
}

SchmidtEstimate schmidt_number_converged(
    const std::function<DiscretizedKernel(int)>& builder, int start_grid,
    int max_grid, double rel_change_tol)
{
    if (start_grid < 16 || max_grid < start_grid)
        throw ConfigInvalid(
            "schmidt grids must satisfy 16 <= start_grid <= max_grid");
    if (!(rel_change_tol > 0.0))
        throw ConfigInvalid("schmidt convergence tolerance must be positive");

    SchmidtEstimate est;
    est.last_change = std::numeric_limits<double>::quiet_NaN();
    double previous = std::numeric_limits<double>::quiet_NaN();
    int grid = start_grid;
    for (;;) {
        est.value = schmidt_number_svd(builder(grid));
        est.grid = grid;
        if (std::isfinite(previous)) {
            est.last_change = std::fabs(est.value - previous)
                              / std::fabs(est.value);
            if (est.last_change < rel_change_tol) {
                est.converged = true;
                return est;
            }
        }
        if (grid >= max_grid) return est;
        previous = est.value;
        grid = std::min(2 * grid, max_grid);
    }
}

EntanglementReport compute_entanglement_report(const SpdcConfig& cfg,
                                               KernelGridSpec spec,
                                               int max_svd_grid,
                                               WidthKind kind)
{
    cfg.validate();
    validate_grid_spec(spec);
    EntanglementReport report;
    report.widths = analytic_widths(cfg);
    report.r_analytic = r_parameter_analytic(cfg);
    report.r_numeric = r_parameter_numeric(cfg, spec, kind);
    report.k_regime = k_regime_estimate(cfg);
    report.regime = regime(cfg);
    const KernelGridSpec svd_spec{spec.points, spec.half_extent};
    report.k_svd = schmidt_number_converged(
        [&cfg, &svd_spec](int n) {
            KernelGridSpec s = svd_spec;
            s.points = n;
            return build_sinc_kernel(cfg, s);
        },
        spec.points, std::max(max_svd_grid, spec.points));
    return report;
}

} // namespace biphoton
