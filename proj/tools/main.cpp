#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "biphoton/config_io.hpp"
#include "biphoton/constants.hpp"
#include "biphoton/entanglement.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/kinematics.hpp"
#include "biphoton/moments_mass.hpp"
#include "biphoton/spdc_state.hpp"
#include "biphoton/sweep.hpp"

namespace {

using biphoton::ConfigInvalid;
using nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void set_num(ordered_json& obj, const char* key, double v) {
  if (std::isnan(v)) {
    obj[key] = nullptr;
  } else {
    obj[key] = v;
  }
}

// stdout by default, --output file when given.
void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigInvalid("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw ConfigInvalid("failed writing output file '" + path + "'");
}

void warn(const std::string& message) {
  std::fprintf(stderr, "warning: %s\n", message.c_str());
}

// Angles are radians ("1.57", "0.5e0") or pi fractions: "pi", "pi/2",
// "3pi/4", "-pi/6", "0.5pi".
double parse_angle(const std::string& spec) {
  const auto bad = [&] {
    return ConfigInvalid("cannot parse angle '" + spec +
                         "' (use radians or forms like pi, pi/2, 3pi/4)");
  };
  std::string s;
  for (char c : spec) {
    if (c != ' ' && c != '\t') s += c;
  }
  if (s.empty()) throw bad();

  const auto full_number = [&](const std::string& t) {
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) throw bad();
    return v;
  };

  const auto pos = s.find("pi");
  if (pos == std::string::npos) return full_number(s);

  const std::string prefix = s.substr(0, pos);
  double coef = 1.0;
  if (prefix == "-") {
    coef = -1.0;
  } else if (!prefix.empty() && prefix != "+") {
    coef = full_number(prefix);
  }
  const std::string suffix = s.substr(pos + 2);
  double denom = 1.0;
  if (!suffix.empty()) {
    if (suffix[0] != '/') throw bad();
    denom = full_number(suffix.substr(1));
    if (denom == 0.0) throw bad();
  }
  return coef * biphoton::pi / denom;
}

// --config file plus individual overrides; flags win over the file.
struct ConfigArgs {
  std::string path;
  std::optional<double> lambda_p, w_p, L, n_o, n_p_prime;
};

void add_config_flags(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("-c,--config", args.path, "key = value config file");
  cmd->add_option("--lambda-p", args.lambda_p, "pump vacuum wavelength [m]");
  cmd->add_option("--waist", args.w_p, "pump beam waist [m]");
  cmd->add_option("--length", args.L, "crystal length [m]");
  cmd->add_option("--n-o", args.n_o, "ordinary refractive index");
  cmd->add_option("--n-p-prime", args.n_p_prime, "|dn/dtheta| walk-off magnitude");
}

biphoton::SpdcConfig resolve_config(const ConfigArgs& a) {
  biphoton::SpdcConfig cfg;
  if (!a.path.empty()) {
    cfg = biphoton::load_config_file(a.path);
  } else {
    const auto require = [&](const std::optional<double>& v, const char* flag) {
      if (!v) {
        throw ConfigInvalid(std::string("missing ") + flag +
                            " (pass it or provide --config)");
      }
      return *v;
    };
    cfg.lambda_p = require(a.lambda_p, "--lambda-p");
    cfg.w_p = require(a.w_p, "--waist");
    cfg.L = require(a.L, "--length");
    cfg.n_o = require(a.n_o, "--n-o");
  }
  if (a.lambda_p) cfg.lambda_p = *a.lambda_p;
  if (a.w_p) cfg.w_p = *a.w_p;
  if (a.L) cfg.L = *a.L;
  if (a.n_o) cfg.n_o = *a.n_o;
  if (a.n_p_prime) cfg.n_p_prime_abs = *a.n_p_prime;
  cfg.validate();
  return cfg;
}

ordered_json config_json(const biphoton::SpdcConfig& cfg) {
  ordered_json j;
  j["lambda_p_m"] = cfg.lambda_p;
  j["w_p_m"] = cfg.w_p;
  j["L_m"] = cfg.L;
  j["n_o"] = cfg.n_o;
  j["n_p_prime_abs"] = cfg.n_p_prime_abs;
  return j;
}

std::string config_line(const biphoton::SpdcConfig& cfg) {
  return "lambda_p = " + fmt(cfg.lambda_p) + " m, w_p = " + fmt(cfg.w_p) +
         " m, L = " + fmt(cfg.L) + " m, n_o = " + fmt(cfg.n_o) +
         ", |n_p'| = " + fmt(cfg.n_p_prime_abs);
}

// ---------------------------------------------------------------- pair-mass

struct PairMassArgs {
  std::optional<double> lambda, omega;
  std::string theta_text;
  int count = 1;
  bool json = false;
  std::string output;
};

void run_pair_mass(const PairMassArgs& a) {
  using namespace biphoton;
  if (a.lambda && a.omega) throw ConfigInvalid("give --lambda or --omega, not both");
  if (!a.lambda && !a.omega) throw ConfigInvalid("one of --lambda or --omega is required");
  double omega;
  if (a.omega) {
    omega = *a.omega;
  } else {
    if (!(*a.lambda > 0.0) || !std::isfinite(*a.lambda)) {
      throw ConfigInvalid("--lambda must be positive and finite");
    }
    omega = 2.0 * pi * c_light / *a.lambda;
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ConfigInvalid("--omega must be positive and finite");
  }
  const double lambda = 2.0 * pi * c_light / omega;
  const double theta = parse_angle(a.theta_text);
  if (!(theta >= 0.0) || !(theta <= pi)) {
    throw ConfigInvalid("--theta must lie in [0, pi]");
  }

  const double m = pair_mass_from_angle({omega, theta});
  const double m_max = pair_mass_from_angle({omega, pi});
  const double energy = 2.0 * hbar * omega;
  const double v = mean_velocity(energy, m);
  const double deficit = light_speed_deficit(energy, m);
  // N identical pairs: 4-momenta add, so mass and energy scale by N.
  const double group_mass = a.count * m;

  if (a.json) {
    ordered_json j;
    j["command"] = "pair-mass";
    j["lambda_m"] = lambda;
    j["omega_rad_per_s"] = omega;
    j["theta_rad"] = theta;
    j["mass_kg"] = m;
    j["mass_g"] = m * biphoton::kg_to_gram;
    j["mass_max_kg"] = m_max;
    j["energy_J"] = energy;
    j["v_over_c"] = v / c_light;
    j["one_minus_v_over_c"] = deficit;
    j["pair_count"] = a.count;
    j["group_mass_kg"] = group_mass;
    emit(j.dump(2) + "\n", a.output);
    return;
  }
  std::string out;
  out += "pair mass\n";
  out += "  lambda        = " + fmt(lambda) + " m\n";
  out += "  omega         = " + fmt(omega) + " rad/s\n";
  out += "  theta         = " + fmt(theta) + " rad\n";
  out += "  m_pair        = " + fmt(m) + " kg  (" + fmt(m * biphoton::kg_to_gram) + " g)\n";
  out += "  m_max(pi)     = " + fmt(m_max) + " kg\n";
  out += "  m/m_max       = " + fmt(m_max > 0.0 ? m / m_max : 0.0) + "\n";
  out += "  v_mean/c      = " + fmt(v / c_light) + "   (1 - v/c = " + fmt(deficit) + ")\n";
  out += "  pairs         = " + std::to_string(a.count) + "\n";
  out += "  m_group       = " + fmt(group_mass) + " kg  (" +
         fmt(group_mass * biphoton::kg_to_gram) + " g)\n";
  emit(out, a.output);
}

// --------------------------------------------------------------------- pump

struct PumpArgs {
  double lambda = 0.0;
  double waist = 0.0;
  double count = 1.0;
  bool json = false;
  std::string output;
};

void run_pump(const PumpArgs& a) {
  using namespace biphoton;
  const PumpPulse pulse{a.lambda, a.waist, a.count};
  if (!(pulse.lambda_p > 0.0) || !std::isfinite(pulse.lambda_p)) {
    throw ConfigInvalid("--lambda must be positive and finite");
  }
  if (!(pulse.w_p > 0.0) || !std::isfinite(pulse.w_p)) {
    throw ConfigInvalid("--waist must be positive and finite");
  }
  if (!(pulse.photon_count > 0.0) || !std::isfinite(pulse.photon_count)) {
    throw ConfigInvalid("--count must be positive and finite");
  }
  if (!pulse.waist_ratio_ok()) {
    warn("waist is under 10 wavelengths; the paraxial pulse model is marginal here");
  }
  const double omega = pulse.omega_p();
  const double energy = pulse.total_energy();
  const double m_total = pump_mass_total(pulse);
  const double m_photon = pump_mass_per_photon(pulse);
  const double v = mean_velocity(energy, m_total);
  const double deficit = light_speed_deficit(energy, m_total);

  if (a.json) {
    ordered_json j;
    j["command"] = "pump";
    j["lambda_p_m"] = pulse.lambda_p;
    j["waist_m"] = pulse.w_p;
    j["photon_count"] = pulse.photon_count;
    j["omega_p_rad_per_s"] = omega;
    j["energy_J"] = energy;
    j["mass_total_kg"] = m_total;
    j["mass_total_g"] = m_total * kg_to_gram;
    j["mass_per_photon_kg"] = m_photon;
    j["v_over_c"] = v / c_light;
    j["one_minus_v_over_c"] = deficit;
    emit(j.dump(2) + "\n", a.output);
    return;
  }
  std::string out;
  out += "pump pulse mass\n";
  out += "  lambda_p      = " + fmt(pulse.lambda_p) + " m\n";
  out += "  waist         = " + fmt(pulse.w_p) + " m\n";
  out += "  photons       = " + fmt(pulse.photon_count) + "\n";
  out += "  omega_p       = " + fmt(omega) + " rad/s\n";
  out += "  energy        = " + fmt(energy) + " J\n";
  out += "  m_total       = " + fmt(m_total) + " kg  (" + fmt(m_total * kg_to_gram) + " g)\n";
  out += "  m_per_photon  = " + fmt(m_photon) + " kg   [hbar/(c w_p)]\n";
  out += "  v_mean/c      = " + fmt(v / c_light) + "   (1 - v/c = " + fmt(deficit) + ")\n";
  emit(out, a.output);
}

// --------------------------------------------------------------------- spdc

struct SpdcArgs {
  ConfigArgs config;
  bool json = false;
  std::string output;
};

void run_spdc(const SpdcArgs& a) {
  using namespace biphoton;
  const SpdcConfig cfg = resolve_config(a.config);

  const BiphotonMoments mom_log = compute_moments(cfg, MomentMethod::analytic_log);
  const BiphotonMoments mom_num = compute_moments(cfg, MomentMethod::numeric_exact);
  const double q_minus_alt = q_minus_sq_mean_alt_prefactor(cfg);
  const MassResult mass_log = biphoton_mass(cfg, MomentMethod::analytic_log);
  const MassResult mass_num = biphoton_mass(cfg, MomentMethod::numeric_exact);
  const AnisotropyCheck aniso = anisotropy_validity(cfg);
  const double n_norm = normalization_constant(cfg);
  const double l_d = diffraction_length(cfg);
  const std::string regime_label = regime_name(regime(cfg));
  const double pump_unit = hbar * cfg.omega_p() / (c_light * c_light);

  if (!aniso.pass) {
    warn("anisotropy ratio " + fmt(aniso.ratio) + " exceeds " + fmt(aniso.threshold) +
         "; the transverse-isotropic model is stretched for this crystal");
  }
  if (!mom_log.paraxial_ok) {
    warn("paraxial ratio " + fmt(mom_log.paraxial_ratio) +
         " exceeds 0.01; momentum moments leave the small-angle regime");
  }

  if (a.json) {
    ordered_json j;
    j["command"] = "spdc";
    j["config"] = config_json(cfg);
    ordered_json derived;
    derived["omega_p_rad_per_s"] = cfg.omega_p();
    derived["sinc_coefficient_m2"] = cfg.sinc_coefficient();
    derived["x_max"] = cfg.x_max();
    derived["normalization_m2"] = n_norm;
    derived["diffraction_length_m"] = l_d;
    derived["regime"] = regime_label;
    j["derived"] = derived;
    ordered_json mo;
    mo["q_plus_sq_per_m2"] = mom_log.q_plus_sq;
    mo["q_minus_sq_log_per_m2"] = mom_log.q_minus_sq;
    mo["q_minus_sq_numeric_per_m2"] = mom_num.q_minus_sq;
    mo["q_minus_sq_alt_prefactor_per_m2"] = q_minus_alt;
    mo["delta_p_log_kg_m_per_s"] = mom_log.delta_p;
    mo["delta_p_numeric_kg_m_per_s"] = mom_num.delta_p;
    mo["mean_longitudinal_log_kg_m_per_s"] = mom_log.mean_longitudinal_momentum;
    mo["mean_longitudinal_numeric_kg_m_per_s"] = mom_num.mean_longitudinal_momentum;
    mo["paraxial_ratio"] = mom_log.paraxial_ratio;
    mo["paraxial_ok"] = mom_log.paraxial_ok;
    j["moments"] = mo;
    ordered_json ma;
    ma["mass_log_kg"] = mass_log.mass;
    ma["mass_numeric_kg"] = mass_num.mass;
    ma["mass_log_g"] = mass_log.mass * kg_to_gram;
    ma["mass_numeric_g"] = mass_num.mass * kg_to_gram;
    ma["mass_log_pump_units"] = mass_log.mass / pump_unit;
    ma["mass_numeric_pump_units"] = mass_num.mass / pump_unit;
    ma["exact_square_mass_numeric_kg"] = mass_num.exact_square_mass;
    j["mass"] = ma;
    ordered_json checks;
    checks["anisotropy_ratio"] = aniso.ratio;
    checks["anisotropy_ok"] = aniso.pass;
    j["checks"] = checks;
    emit(j.dump(2) + "\n", a.output);
    return;
  }
  std::string out;
  out += "spdc biphoton state\n";
  out += "  config: " + config_line(cfg) + "\n";
  out += "  omega_p        = " + fmt(cfg.omega_p()) + " rad/s\n";
  out += "  x_max          = " + fmt(cfg.x_max()) + "\n";
  out += "  N              = " + fmt(n_norm) + " m^2\n";
  out += "  L_d            = " + fmt(l_d) + " m   regime: " + regime_label + "\n";
  out += "  <q+^2>         = " + fmt(mom_log.q_plus_sq) + " 1/m^2\n";
  out += "  <q-^2> log     = " + fmt(mom_log.q_minus_sq) + " 1/m^2\n";
  out += "  <q-^2> numeric = " + fmt(mom_num.q_minus_sq) + " 1/m^2   (alt prefactor " +
         fmt(q_minus_alt) + ")\n";
  out += "  delta_p log    = " + fmt(mom_log.delta_p) + " kg m/s\n";
  out += "  delta_p num    = " + fmt(mom_num.delta_p) + " kg m/s\n";
  out += "  paraxial ratio = " + fmt(mom_log.paraxial_ratio) +
         (mom_log.paraxial_ok ? "  (ok)" : "  (NOT ok)") + "\n";
  out += "  anisotropy     = " + fmt(aniso.ratio) +
         (aniso.pass ? "  (ok, " : "  (NOT ok, ") + "threshold " + fmt(aniso.threshold) + ")\n";
  out += "  m (log)        = " + fmt(mass_log.mass) + " kg  (" +
         fmt(mass_log.mass * kg_to_gram) + " g, " + fmt(mass_log.mass / pump_unit) +
         " pump units)\n";
  out += "  m (numeric)    = " + fmt(mass_num.mass) + " kg  (" +
         fmt(mass_num.mass * kg_to_gram) + " g, " + fmt(mass_num.mass / pump_unit) +
         " pump units)\n";
  emit(out, a.output);
}

// ------------------------------------------------------------- entanglement

struct EntanglementArgs {
  ConfigArgs config;
  int kernel_points = 512;
  int kernel_max_grid = 4096;
  bool fwhm = false;
  bool require_converged = false;
  bool json = false;
  std::string output;
};

void run_entanglement(const EntanglementArgs& a) {
  using namespace biphoton;
  const SpdcConfig cfg = resolve_config(a.config);
  const WidthKind kind = a.fwhm ? WidthKind::fwhm : WidthKind::rms;
  const KernelGridSpec spec{a.kernel_points, 0.0};
  const EntanglementReport rep =
      compute_entanglement_report(cfg, spec, a.kernel_max_grid, kind);
  const SchmidtMass k_mass = mass_via_schmidt(cfg, rep.k_regime.value);
  const double mass_log = biphoton_mass(cfg, MomentMethod::analytic_log).mass;
  const std::string regime_label = regime_name(rep.regime);

  if (rep.k_regime.low_confidence) {
    warn("crystal is in the intermediate regime; K estimate falls back to the "
         "width ratio and carries low confidence");
  }
  if (!rep.k_svd.converged) {
    if (std::isnan(rep.k_svd.last_change)) {
      warn("K_svd is a single-shot estimate at grid " + std::to_string(rep.k_svd.grid) +
           "; raise --kernel-max-grid above --kernel-points to test convergence");
    } else {
      warn("K_svd still changed by " + fmt(100.0 * rep.k_svd.last_change) +
           "% at grid " + std::to_string(rep.k_svd.grid) +
           "; raise --kernel-max-grid for a converged value");
    }
  }
  if (a.require_converged) rep.k_svd.require_converged();

  if (a.json) {
    ordered_json j;
    j["command"] = "entanglement";
    j["config"] = config_json(cfg);
    ordered_json an;
    an["a_per_m"] = rep.widths.a;
    an["b_per_m"] = rep.widths.b;
    an["R_analytic"] = rep.r_analytic;
    an["K_regime"] = rep.k_regime.value;
    an["K_regime_low_confidence"] = rep.k_regime.low_confidence;
    an["regime"] = regime_label;
    j["analytic"] = an;
    ordered_json nu;
    nu["kernel_points"] = a.kernel_points;
    nu["width_kind"] = a.fwhm ? "fwhm" : "rms";
    nu["marginal_width_per_m"] = rep.r_numeric.marginal;
    nu["conditional_width_per_m"] = rep.r_numeric.conditional;
    nu["R_numeric"] = rep.r_numeric.r;
    j["numeric"] = nu;
    ordered_json sv;
    sv["K_svd"] = rep.k_svd.value;
    sv["grid"] = rep.k_svd.grid;
    sv["converged"] = rep.k_svd.converged;
    set_num(sv, "last_change", rep.k_svd.last_change);
    j["svd"] = sv;
    ordered_json ma;
    ma["mass_log_kg"] = mass_log;
    ma["mass_via_K_full_kg"] = k_mass.full;
    ma["mass_via_K_reduced_kg"] = k_mass.reduced;
    j["mass"] = ma;
    emit(j.dump(2) + "\n", a.output);
    return;
  }
  std::string out;
  out += "transverse-momentum entanglement\n";
  out += "  config: " + config_line(cfg) + "\n";
  out += "  a (sum width)  = " + fmt(rep.widths.a) + " 1/m\n";
  out += "  b (diff width) = " + fmt(rep.widths.b) + " 1/m\n";
  out += "  R analytic     = " + fmt(rep.r_analytic) + "\n";
  out += "  R numeric      = " + fmt(rep.r_numeric.r) + "   (marginal " +
         fmt(rep.r_numeric.marginal) + ", conditional " + fmt(rep.r_numeric.conditional) +
         ", " + (a.fwhm ? "fwhm" : "rms") + ")\n";
  out += "  K regime       = " + fmt(rep.k_regime.value) + "   [" + regime_label +
         (rep.k_regime.low_confidence ? ", low confidence]" : "]") + "\n";
  out += "  K svd          = " + fmt(rep.k_svd.value) + "   (grid " +
         std::to_string(rep.k_svd.grid) +
         (rep.k_svd.converged ? ", converged)" : ", NOT converged)") + "\n";
  out += "  m (log)        = " + fmt(mass_log) + " kg\n";
  out += "  m via K        = " + fmt(k_mass.reduced) + " kg  (full " + fmt(k_mass.full) +
         " kg)\n";
  emit(out, a.output);
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
  ConfigArgs config;
  std::vector<std::string> axis_specs;
  int kernel_points = 512;
  bool json = false;
  std::string output;
};

void run_sweep_cmd(const SweepArgs& a) {
  using namespace biphoton;
  const SpdcConfig base = resolve_config(a.config);
  std::vector<SweepAxis> axes;
  for (const auto& text : a.axis_specs) axes.push_back(parse_axis_spec(text));
  SweepOptions opt;
  opt.kernel_points = a.kernel_points;
  const std::vector<SweepRow> rows = run_sweep(base, axes, opt);

  size_t flagged = 0;
  for (const auto& r : rows) {
    if (!r.flags.empty()) ++flagged;
  }
  if (flagged > 0) {
    warn(std::to_string(flagged) + " of " + std::to_string(rows.size()) +
         " sweep rows carry flags (see the flags column)");
  }
  if (a.json) {
    emit(sweep_to_json(rows).dump(2) + "\n", a.output);
  } else {
    emit(sweep_to_csv(rows), a.output);
  }
}

void add_output_flags(CLI::App* cmd, bool& json, std::string& output) {
  cmd->add_flag("--json", json, "machine-readable JSON instead of text");
  cmd->add_option("-o,--output", output, "write to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Lorentz-invariant mass and transverse-momentum entanglement of "
      "photon pairs from collinear degenerate SPDC"};
  app.set_version_flag("--version", "biphoton 1.0.0");
  app.require_subcommand(1);

  PairMassArgs pair_args;
  auto* pair_cmd = app.add_subcommand(
      "pair-mass", "Invariant mass of a frequency-degenerate photon pair");
  pair_cmd->add_option("--lambda", pair_args.lambda, "photon wavelength [m]");
  pair_cmd->add_option("--omega", pair_args.omega, "photon angular frequency [rad/s]");
  pair_cmd->add_option("--theta", pair_args.theta_text,
                       "opening angle, radians or pi fraction (pi, pi/2, 3pi/4)")
      ->required();
  pair_cmd->add_option("--count", pair_args.count, "number of identical pairs in the group")
      ->check(CLI::Range(1, 1000000000));
  add_output_flags(pair_cmd, pair_args.json, pair_args.output);

  PumpArgs pump_args;
  auto* pump_cmd =
      app.add_subcommand("pump", "Mass carried by a focused Gaussian pump pulse");
  pump_cmd->add_option("--lambda", pump_args.lambda, "pump vacuum wavelength [m]")
      ->required();
  pump_cmd->add_option("--waist", pump_args.waist, "beam waist [m]")->required();
  pump_cmd->add_option("--count", pump_args.count, "photons in the pulse");
  add_output_flags(pump_cmd, pump_args.json, pump_args.output);

  SpdcArgs spdc_args;
  auto* spdc_cmd = app.add_subcommand(
      "spdc", "Momentum moments and invariant mass of the biphoton state");
  add_config_flags(spdc_cmd, spdc_args.config);
  add_output_flags(spdc_cmd, spdc_args.json, spdc_args.output);

  EntanglementArgs ent_args;
  auto* ent_cmd = app.add_subcommand(
      "entanglement", "Anisotropy ratio R and Schmidt number K of the state");
  add_config_flags(ent_cmd, ent_args.config);
  ent_cmd->add_option("--kernel-points", ent_args.kernel_points,
                      "grid points per axis for discretized widths and SVD")
      ->check(CLI::Range(16, 16384));
  ent_cmd->add_option("--kernel-max-grid", ent_args.kernel_max_grid,
                      "grid ceiling for the K_svd doubling driver")
      ->check(CLI::Range(16, 16384));
  ent_cmd->add_flag("--fwhm", ent_args.fwhm,
                    "measure widths as FWHM instead of rms");
  ent_cmd->add_flag("--require-converged", ent_args.require_converged,
                    "fail (exit 3) if K_svd has not converged at the grid ceiling");
  add_output_flags(ent_cmd, ent_args.json, ent_args.output);

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Evaluate the full pipeline over a 1D or 2D parameter grid");
  add_config_flags(sweep_cmd, sweep_args.config);
  sweep_cmd->add_option("--axis", sweep_args.axis_specs,
                        "axis spec name=start:stop:count[:log|lin]; repeat for 2D "
                        "(name: w_p, L, or lambda_p)")
      ->required()
      ->expected(1, 2);
  sweep_cmd->add_option("--kernel-points", sweep_args.kernel_points,
                        "grid for the single-shot R_numeric / K_svd columns")
      ->check(CLI::Range(16, 16384));
  add_output_flags(sweep_cmd, sweep_args.json, sweep_args.output);

  pair_cmd->callback([&] { run_pair_mass(pair_args); });
  pump_cmd->callback([&] { run_pump(pump_args); });
  spdc_cmd->callback([&] { run_spdc(spdc_args); });
  ent_cmd->callback([&] { run_entanglement(ent_args); });
  sweep_cmd->callback([&] { run_sweep_cmd(sweep_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? 0 : 2;
  } catch (const ConfigInvalid& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const biphoton::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
