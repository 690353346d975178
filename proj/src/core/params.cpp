#include "core/params.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rsim {

namespace {

struct Field {
  const char* key;
  double SystemParams::*member;
};

constexpr Field kDoubleFields[] = {
    {"storage_t1", &SystemParams::storage_t1},
    {"storage_thermal_pop", &SystemParams::storage_thermal_pop},
    {"storage_kappa_up", &SystemParams::storage_kappa_up},
    {"ancilla_t1_ge", &SystemParams::ancilla_t1_ge},
    {"ancilla_t1_ef", &SystemParams::ancilla_t1_ef},
    {"ancilla_t1_fh", &SystemParams::ancilla_t1_fh},
    {"ancilla_t2_ge", &SystemParams::ancilla_t2_ge},
    {"ancilla_t2_gf", &SystemParams::ancilla_t2_gf},
    {"ancilla_thermal_pop", &SystemParams::ancilla_thermal_pop},
    {"anharmonicity", &SystemParams::anharmonicity},
    {"dispersive_shift_chi_st", &SystemParams::dispersive_shift_chi_st},
    {"t_map", &SystemParams::t_map},
    {"t_readout_reset", &SystemParams::t_readout_reset},
    {"demolition_prob", &SystemParams::demolition_prob},
    {"storage_freq", &SystemParams::storage_freq},
    {"ancilla_freq", &SystemParams::ancilla_freq},
    {"readout_freq", &SystemParams::readout_freq},
    {"storage_kerr", &SystemParams::storage_kerr},
};

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("SystemParams: " + what);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("SystemParams: bad value for key '" + key +
                                "': '" + text + "'");
  }
}

}  // namespace

void SystemParams::validate() const {
  auto positive_time = [](double v, const char* name) {
    require(std::isfinite(v) && v > 0.0, std::string(name) + " must be > 0");
  };
  positive_time(storage_t1, "storage_t1");
  positive_time(ancilla_t1_ge, "ancilla_t1_ge");
  positive_time(ancilla_t1_ef, "ancilla_t1_ef");
  positive_time(ancilla_t1_fh, "ancilla_t1_fh");
  positive_time(ancilla_t2_ge, "ancilla_t2_ge");
  positive_time(ancilla_t2_gf, "ancilla_t2_gf");
  positive_time(t_map, "t_map");
  positive_time(t_readout_reset, "t_readout_reset");

  auto population = [](double v, const char* name) {
    require(std::isfinite(v) && v >= 0.0 && v < 1.0,
            std::string(name) + " must lie in [0,1)");
  };
  population(storage_thermal_pop, "storage_thermal_pop");
  population(ancilla_thermal_pop, "ancilla_thermal_pop");
  population(demolition_prob, "demolition_prob");

  require(std::isfinite(storage_kappa_up) && storage_kappa_up >= 0.0,
          "storage_kappa_up must be >= 0");
  require(ancilla_t2_ge <= 2.0 * ancilla_t1_ge + 1e-15,
          "ancilla_t2_ge must not exceed 2*ancilla_t1_ge");
  // the (g,f) coherence decays through the f lifetime
  require(ancilla_t2_gf <= 2.0 * ancilla_t1_ef + 1e-15,
          "ancilla_t2_gf must not exceed 2*ancilla_t1_ef");
  require(n_max >= 1, "n_max must be >= 1");
}

std::map<std::string, double> params_as_map(const SystemParams& p) {
  std::map<std::string, double> m;
  for (const auto& f : kDoubleFields) m[f.key] = p.*(f.member);
  m["n_max"] = static_cast<double>(p.n_max);
  return m;
}

void params_set_key(SystemParams& p, const std::string& key, double value) {
  if (key == "n_max") {
    double r = std::round(value);
    if (!std::isfinite(value) || std::abs(value - r) > 1e-9)
      throw std::invalid_argument("SystemParams: n_max must be an integer");
    p.n_max = static_cast<int>(r);
    return;
  }
  for (const auto& f : kDoubleFields) {
    if (key == f.key) {
      p.*(f.member) = value;
      return;
    }
  }
  throw std::invalid_argument("SystemParams: unknown key '" + key + "'");
}

double params_get_key(const SystemParams& p, const std::string& key) {
  if (key == "n_max") return static_cast<double>(p.n_max);
  for (const auto& f : kDoubleFields)
    if (key == f.key) return p.*(f.member);
  throw std::invalid_argument("SystemParams: unknown key '" + key + "'");
}

SystemParams params_from_string(const std::string& text) {
  SystemParams p;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("SystemParams: line " +
                                  std::to_string(lineno) + " is not key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    params_set_key(p, key, parse_double(key, value));
  }
  p.validate();
  return p;
}

SystemParams params_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_string(buf.str());
}

std::string params_to_string(const SystemParams& p) {
  std::ostringstream out;
  char buf[64];
  for (const auto& f : kDoubleFields) {
    std::snprintf(buf, sizeof buf, "%.17g", p.*(f.member));
    out << f.key << " = " << buf << "\n";
  }
  out << "n_max = " << p.n_max << "\n";
  return out.str();
}

void params_to_file(const SystemParams& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write config file: " + path);
  out << params_to_string(p);
}

}  // namespace rsim
