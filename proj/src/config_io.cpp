#include "biphoton/config_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigInvalid("config key '" + key + "' has no value");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw ConfigInvalid("config key '" + key + "' has a malformed value '" + t + "'");
  }
  return v;
}

}  // namespace

SpdcConfig parse_config_text(const std::string& text) {
  std::map<std::string, double> values;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigInvalid("config line " + std::to_string(line_no) +
                          " is not of the form key = value: '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigInvalid("config line " + std::to_string(line_no) + " has an empty key");
    }
    if (key != "lambda_p_m" && key != "w_p_m" && key != "L_m" && key != "n_o" &&
        key != "n_p_prime_abs") {
      throw ConfigInvalid("unknown config key '" + key + "'");
    }
    if (values.count(key)) throw ConfigInvalid("duplicate config key '" + key + "'");
    values[key] = parse_number(key, line.substr(eq + 1));
  }

  SpdcConfig cfg;
  const auto require = [&](const char* key) {
    const auto it = values.find(key);
    if (it == values.end()) throw ConfigInvalid(std::string("missing config key '") + key + "'");
    return it->second;
  };
  cfg.lambda_p = require("lambda_p_m");
  cfg.w_p = require("w_p_m");
  cfg.L = require("L_m");
  cfg.n_o = require("n_o");
  if (values.count("n_p_prime_abs")) cfg.n_p_prime_abs = values["n_p_prime_abs"];
  cfg.validate();
  return cfg;
}

SpdcConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_to_text(const SpdcConfig& cfg) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "lambda_p_m = %.17g\n"
                "w_p_m = %.17g\n"
                "L_m = %.17g\n"
                "n_o = %.17g\n"
                "n_p_prime_abs = %.17g\n",
                cfg.lambda_p, cfg.w_p, cfg.L, cfg.n_o, cfg.n_p_prime_abs);
  return buf;
}

}  // namespace biphoton
