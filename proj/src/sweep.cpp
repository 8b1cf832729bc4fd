#include "biphoton/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "biphoton/entanglement.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/moments_mass.hpp"

namespace biphoton {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void apply_axis(SpdcConfig& cfg, const std::string& name, double value) {
  if (name == "w_p") {
    cfg.w_p = value;
  } else if (name == "L") {
    cfg.L = value;
  } else if (name == "lambda_p") {
    cfg.lambda_p = value;
  } else {
    throw ConfigInvalid("unknown sweep axis '" + name + "' (use w_p, L, or lambda_p)");
  }
}

}  // namespace

std::vector<double> SweepAxis::values() const {
  if (name != "w_p" && name != "L" && name != "lambda_p") {
    throw ConfigInvalid("unknown sweep axis '" + name + "' (use w_p, L, or lambda_p)");
  }
  if (count < 1) throw ConfigInvalid("sweep axis '" + name + "' needs a positive point count");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw ConfigInvalid("sweep axis '" + name + "' has a non-finite endpoint");
  }
  if (count == 1) return {start};
  std::vector<double> out(count);
  if (log_spacing) {
    if (!(start > 0.0) || !(stop > 0.0)) {
      throw ConfigInvalid("sweep axis '" + name + "' needs positive endpoints for log spacing");
    }
    const double step = std::log(stop / start) / (count - 1);
    for (int i = 0; i < count; ++i) out[i] = start * std::exp(step * i);
  } else {
    const double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) out[i] = start + step * i;
  }
  out.back() = stop;  // land exactly on the endpoint
  return out;
}

SweepAxis parse_axis_spec(const std::string& text) {
  const auto bad = [&](const std::string& why) {
    return ConfigInvalid("bad axis spec '" + text + "': " + why +
                         " (expected name=start:stop:count[:log|lin])");
  };
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw bad("missing name=");
  SweepAxis axis;
  axis.name = text.substr(0, eq);

  std::vector<std::string> parts;
  std::string rest = text.substr(eq + 1);
  std::istringstream in(rest);
  std::string piece;
  while (std::getline(in, piece, ':')) parts.push_back(piece);
  if (parts.size() < 3 || parts.size() > 4) throw bad("need start:stop:count");

  const auto num = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw bad("malformed number '" + s + "'");
    return v;
  };
  axis.start = num(parts[0]);
  axis.stop = num(parts[1]);
  const double count = num(parts[2]);
  if (count != std::floor(count) || count < 1 || count > 100000) {
    throw bad("count must be a positive integer");
  }
  axis.count = static_cast<int>(count);
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      axis.log_spacing = true;
    } else if (parts[3] == "lin") {
      axis.log_spacing = false;
    } else {
      throw bad("spacing must be 'log' or 'lin'");
    }
  }
  axis.values();  // validate eagerly
  return axis;
}

SweepRow compute_sweep_row(const SpdcConfig& cfg, const SweepOptions& opt) {
  cfg.validate();
  SweepRow row;
  row.cfg = cfg;

  row.n_norm = normalization_constant(cfg);
  row.q_plus_sq = q_plus_sq_mean(cfg);
  row.q_minus_sq_log = q_minus_sq_mean(cfg, MomentMethod::analytic_log);

  const AnalyticWidths widths = analytic_widths(cfg);
  row.a = widths.a;
  row.b = widths.b;
  row.r_analytic = r_parameter_analytic(cfg);
  const KRegimeEstimate kest = k_regime_estimate(cfg);
  row.k_regime = kest.value;
  row.regime = regime_name(regime(cfg));

  const MassResult m_log = biphoton_mass(cfg, MomentMethod::analytic_log);
  row.mass_log = m_log.mass;

  bool mass_via_k_undefined = false;
  if (kest.value >= 1.0) {
    row.mass_via_k = mass_via_schmidt(cfg, kest.value).reduced;
  } else {
    row.mass_via_k = kNan;
    mass_via_k_undefined = true;
  }

  bool numeric_moment_failed = false;
  try {
    const BiphotonMoments mom = compute_moments(cfg, MomentMethod::numeric_exact);
    row.q_minus_sq_numeric = mom.q_minus_sq;
    row.delta_p = mom.delta_p;
    row.mass_numeric = biphoton_mass(cfg, MomentMethod::numeric_exact).mass;
  } catch (const Error&) {
    row.q_minus_sq_numeric = kNan;
    row.delta_p = kNan;
    row.mass_numeric = kNan;
    numeric_moment_failed = true;
  }

  const KernelGridSpec grid{opt.kernel_points, 0.0};
  bool r_numeric_failed = false;
  try {
    row.r_numeric = r_parameter_numeric(cfg, grid).r;
  } catch (const Error&) {
    row.r_numeric = kNan;
    r_numeric_failed = true;
  }

  bool k_svd_failed = false;
  try {
    row.k_svd = schmidt_number_svd(build_sinc_kernel(cfg, grid));
  } catch (const Error&) {
    row.k_svd = kNan;
    k_svd_failed = true;
  }

  if (!m_log.anisotropy_ok) row.flags.push_back("anisotropy");
  if (!m_log.paraxial_ok) row.flags.push_back("paraxial");
  if (kest.low_confidence) row.flags.push_back("k_regime_low_confidence");
  if (mass_via_k_undefined) row.flags.push_back("mass_via_k_undefined");
  if (numeric_moment_failed) row.flags.push_back("numeric_moment_failed");
  if (r_numeric_failed) row.flags.push_back("r_numeric_failed");
  if (k_svd_failed) row.flags.push_back("k_svd_failed");
  return row;
}

std::vector<SweepRow> run_sweep(const SpdcConfig& base,
                                const std::vector<SweepAxis>& axes,
                                const SweepOptions& opt) {
  if (axes.empty() || axes.size() > 2) {
    throw ConfigInvalid("sweep needs one or two axes");
  }
  if (axes.size() == 2 && axes[0].name == axes[1].name) {
    throw ConfigInvalid("sweep axes must name different parameters");
  }
  std::vector<std::vector<double>> grids;
  for (const auto& axis : axes) grids.push_back(axis.values());

  std::vector<SweepRow> rows;
  const auto evaluate = [&](const SpdcConfig& cfg, const std::string& where) {
    try {
      rows.push_back(compute_sweep_row(cfg, opt));
    } catch (const ConfigInvalid& e) {
      throw ConfigInvalid("at sweep point " + where + ": " + e.what());
    }
  };
  for (double v0 : grids[0]) {
    SpdcConfig cfg0 = base;
    apply_axis(cfg0, axes[0].name, v0);
    if (axes.size() == 1) {
      evaluate(cfg0, axes[0].name + "=" + fmt17(v0));
    } else {
      for (double v1 : grids[1]) {
        SpdcConfig cfg = cfg0;
        apply_axis(cfg, axes[1].name, v1);
        evaluate(cfg, axes[0].name + "=" + fmt17(v0) + ", " + axes[1].name + "=" + fmt17(v1));
      }
    }
  }
  return rows;
}

const std::vector<std::string>& sweep_column_names() {
  static const std::vector<std::string> names = {
      "lambda_p_m [m]",
      "w_p_m [m]",
      "L_m [m]",
      "n_o [1]",
      "n_p_prime_abs [1]",
      "N_norm [m^2]",
      "q_plus_sq [1/m^2]",
      "q_minus_sq_log [1/m^2]",
      "q_minus_sq_numeric [1/m^2]",
      "delta_p [kg m/s]",
      "mass_log [kg]",
      "mass_numeric [kg]",
      "a [1/m]",
      "b [1/m]",
      "R_analytic [1]",
      "R_numeric [1]",
      "K_regime [1]",
      "K_svd [1]",
      "mass_via_K [kg]",
      "regime",
      "flags",
  };
  return names;
}

namespace {

std::vector<double> row_numbers(const SweepRow& r) {
  return {r.cfg.lambda_p, r.cfg.w_p,          r.cfg.L,
          r.cfg.n_o,      r.cfg.n_p_prime_abs, r.n_norm,
          r.q_plus_sq,    r.q_minus_sq_log,   r.q_minus_sq_numeric,
          r.delta_p,      r.mass_log,         r.mass_numeric,
          r.a,            r.b,                r.r_analytic,
          r.r_numeric,    r.k_regime,         r.k_svd,
          r.mass_via_k};
}

void set_row_numbers(SweepRow& r, const std::vector<double>& v) {
  r.cfg.lambda_p = v[0];
  r.cfg.w_p = v[1];
  r.cfg.L = v[2];
  r.cfg.n_o = v[3];
  r.cfg.n_p_prime_abs = v[4];
  r.n_norm = v[5];
  r.q_plus_sq = v[6];
  r.q_minus_sq_log = v[7];
  r.q_minus_sq_numeric = v[8];
  r.delta_p = v[9];
  r.mass_log = v[10];
  r.mass_numeric = v[11];
  r.a = v[12];
  r.b = v[13];
  r.r_analytic = v[14];
  r.r_numeric = v[15];
  r.k_regime = v[16];
  r.k_svd = v[17];
  r.mass_via_k = v[18];
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = join(sweep_column_names(), ',') + "\n";
  for (const auto& r : rows) {
    std::vector<std::string> cells;
    for (double v : row_numbers(r)) cells.push_back(fmt17(v));
    cells.push_back(r.regime);
    cells.push_back(join(r.flags, ';'));
    out += join(cells, ',') + "\n";
  }
  return out;
}

std::vector<SweepRow> sweep_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ConfigInvalid("empty sweep CSV");
  if (line == join(sweep_column_names(), ',') + "\r") line.pop_back();
  if (line != join(sweep_column_names(), ',')) {
    throw ConfigInvalid("sweep CSV header does not match the expected columns");
  }
  const size_t n_cols = sweep_column_names().size();
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != n_cols) {
      throw ConfigInvalid("sweep CSV row has " + std::to_string(cells.size()) +
                          " cells, expected " + std::to_string(n_cols));
    }
    std::vector<double> nums;
    for (size_t i = 0; i + 2 < n_cols; ++i) {
      char* end = nullptr;
      const double v = std::strtod(cells[i].c_str(), &end);
      if (cells[i].empty() || end != cells[i].c_str() + cells[i].size()) {
        throw ConfigInvalid("sweep CSV cell '" + cells[i] + "' is not a number");
      }
      nums.push_back(v);
    }
    SweepRow row;
    set_row_numbers(row, nums);
    row.regime = cells[n_cols - 2];
    if (!cells[n_cols - 1].empty()) row.flags = split(cells[n_cols - 1], ';');
    rows.push_back(row);
  }
  return rows;
}

namespace {

void set_json_number(nlohmann::ordered_json& obj, const char* key, double v) {
  if (std::isnan(v)) {
    obj[key] = nullptr;
  } else {
    obj[key] = v;
  }
}

double get_json_number(const nlohmann::ordered_json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigInvalid(std::string("sweep JSON row is missing '") + key + "'");
  if (it->is_null()) return kNan;
  if (!it->is_number()) throw ConfigInvalid(std::string("sweep JSON field '") + key + "' is not a number");
  return it->get<double>();
}

const char* const kJsonNumberKeys[] = {
    "lambda_p_m", "w_p_m",          "L_m",
    "n_o",        "n_p_prime_abs",  "N_norm",
    "q_plus_sq",  "q_minus_sq_log", "q_minus_sq_numeric",
    "delta_p",    "mass_log",       "mass_numeric",
    "a",          "b",              "R_analytic",
    "R_numeric",  "K_regime",       "K_svd",
    "mass_via_K"};

}  // namespace

nlohmann::ordered_json sweep_to_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json j;
  j["columns"] = sweep_column_names();
  auto& out_rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    const auto nums = row_numbers(r);
    for (size_t i = 0; i < nums.size(); ++i) set_json_number(o, kJsonNumberKeys[i], nums[i]);
    o["regime"] = r.regime;
    o["flags"] = r.flags;
    out_rows.push_back(std::move(o));
  }
  return j;
}

std::vector<SweepRow> sweep_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) {
    throw ConfigInvalid("sweep JSON must be an object with a 'rows' array");
  }
  std::vector<SweepRow> rows;
  for (const auto& o : j["rows"]) {
    std::vector<double> nums;
    for (const char* key : kJsonNumberKeys) nums.push_back(get_json_number(o, key));
    SweepRow row;
    set_row_numbers(row, nums);
    if (!o.contains("regime") || !o["regime"].is_string()) {
      throw ConfigInvalid("sweep JSON row is missing 'regime'");
    }
    row.regime = o["regime"].get<std::string>();
    if (!o.contains("flags") || !o["flags"].is_array()) {
      throw ConfigInvalid("sweep JSON row is missing 'flags'");
    }
    for (const auto& f : o["flags"]) row.flags.push_back(f.get<std::string>());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace biphoton
