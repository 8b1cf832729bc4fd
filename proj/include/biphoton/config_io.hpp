#pragma once

#include <string>

#include "biphoton/spdc_state.hpp"

namespace biphoton {

// Flat key = value config format. Recognized keys (all SI units):
//   lambda_p_m      pump vacuum wavelength [m]          (required)
//   w_p_m           pump beam waist [m]                 (required)
//   L_m             crystal length [m]                  (required)
//   n_o             ordinary refractive index           (required)
//   n_p_prime_abs   |dn/dtheta| walk-off magnitude      (optional, default 0.1)
// Blank lines and lines starting with '#' are skipped; inline "  # ..."
// comments after the value are allowed.  Unknown, duplicate, or
// malformed keys raise ConfigInvalid naming the offending key/line.
// The parsed config is validated before it is returned.
SpdcConfig parse_config_text(const std::string& text);

// Reads the file at `path` and parses it; ConfigInvalid on unreadable file.
SpdcConfig load_config_file(const std::string& path);

// Serializes cfg in the same key = value format (17 significant digits,
// stable key order) so that parse_config_text round-trips it exactly.
std::string config_to_text(const SpdcConfig& cfg);

}  // namespace biphoton
