#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "biphoton/spdc_state.hpp"

namespace biphoton {

// One sweep dimension over a config field.  `name` is one of
// "w_p", "L", "lambda_p".  Spacing is log (geometric) by default.
struct SweepAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log_spacing = true;

  // The grid points, start..stop inclusive; count == 1 yields {start}.
  // ConfigInvalid on a bad name, nonpositive count, or a nonpositive
  // endpoint with log spacing.
  std::vector<double> values() const;
};

// Parses "name=start:stop:count" with an optional ":log" / ":lin" tail,
// e.g. "L=1e-4:1e-1:25:log".  ConfigInvalid on malformed input.
SweepAxis parse_axis_spec(const std::string& text);

// One fully evaluated sweep point.  Numeric-path fields are NaN (with a
// matching entry in `flags`) when that path failed for this config;
// analytic fields are always present.
struct SweepRow {
  SpdcConfig cfg;
  double n_norm = 0.0;             // wavefunction normalization [m^2]
  double q_plus_sq = 0.0;          // <q+^2> [1/m^2]
  double q_minus_sq_log = 0.0;     // log-regularized <q-^2> [1/m^2]
  double q_minus_sq_numeric = 0.0; // cutoff-quadrature <q-^2> [1/m^2]
  double delta_p = 0.0;            // momentum deficit, numeric moments [kg m/s]
  double mass_log = 0.0;           // invariant mass, log moments [kg]
  double mass_numeric = 0.0;       // invariant mass, numeric moments [kg]
  double a = 0.0;                  // sum-coordinate width [1/m]
  double b = 0.0;                  // difference-coordinate width [1/m]
  double r_analytic = 0.0;         // b/a anisotropy ratio
  double r_numeric = 0.0;          // discretized marginal/conditional ratio
  double k_regime = 0.0;           // regime-interpolated Schmidt number
  double k_svd = 0.0;              // single-shot SVD Schmidt number
  double mass_via_k = 0.0;         // mass reconstructed from k_regime [kg]
  std::string regime;              // short_crystal | intermediate | strong_focusing
  std::vector<std::string> flags;  // warnings; empty when clean
};

struct SweepOptions {
  // Grid for the single-shot discretized quantities (r_numeric, k_svd).
  int kernel_points = 512;
};

// Evaluates every output for one config.  Numeric-path failures are
// recorded as NaN + flag instead of aborting the row; ConfigInvalid
// (an unphysical config) still propagates.
SweepRow compute_sweep_row(const SpdcConfig& cfg, const SweepOptions& opt = {});

// Cartesian sweep over one or two axes applied to `base`; the first
// axis is the outer loop.  Row order is deterministic.
std::vector<SweepRow> run_sweep(const SpdcConfig& base,
                                const std::vector<SweepAxis>& axes,
                                const SweepOptions& opt = {});

// Column names, in output order, with units in brackets.
const std::vector<std::string>& sweep_column_names();

// CSV with a units header; doubles at 17 significant digits so the
// text round-trips bit-exactly.  Byte-identical for identical rows.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_csv(const std::string& csv);

// JSON object {"columns": [...], "rows": [{field: value, ...}]}; NaN is
// encoded as null.  Round-trips bit-exactly through sweep_from_json.
nlohmann::ordered_json sweep_to_json(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_json(const nlohmann::ordered_json& j);

}  // namespace biphoton
