#pragma once

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "landau_dirac/errors.hpp"

namespace landau_dirac {

// Pauli-branch label. The numeric value is the sign in front of the shift -2*lambda*B.
enum class Sigma : int { plus = 1, minus = -1 };

enum class Spin { up, down };

constexpr int sign(Sigma s) noexcept { return static_cast<int>(s); }
constexpr Sigma flip(Sigma s) noexcept { return s == Sigma::plus ? Sigma::minus : Sigma::plus; }
constexpr char symbol(Sigma s) noexcept { return s == Sigma::plus ? '+' : '-'; }
constexpr const char* symbol(Spin s) noexcept { return s == Spin::up ? "up" : "down"; }

// Converts between the internal scheme (M = 1, b = eB/M^2) and display values
// carrying the caller's mass scale.
struct UnitScale {
  double reference_mass = 1.0;

  double to_display_energy(double e) const { return e * reference_mass; }
  double from_display_energy(double e) const { return e / reference_mass; }
  double to_display_field(double b) const { return b * reference_mass * reference_mass; }
  double from_display_field(double eb) const { return eb / (reference_mass * reference_mass); }
  double to_display_length(double x) const { return x / reference_mass; }
  double from_display_length(double x) const { return x * reference_mass; }
};

// Physical configuration in the dimensionless scheme. The proton charge is
// absorbed into field_b = eB/M^2, and lambda is measured in units of e so that
// the Pauli energy lambda*B equals lambda * field_b.
struct FieldConfig {
  double mass = 1.0;
  double field_b = 0.0;
  int charge = 1;
  double kappa = 0.0;
  double lambda = 0.0;
  UnitScale units{};

  bool neutral() const noexcept { return charge == 0; }
  // |Z| eB
  double zb() const noexcept { return std::abs(charge) * field_b; }
  // lambda * B
  double lambda_b() const noexcept { return lambda * field_b; }
  // total magnetic moment in units of the Dirac value
  double mu() const noexcept { return 1.0 + kappa; }
};

inline FieldConfig make_config(double mass, double field_eb, int charge, double kappa) {
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw error(error_kind::invalid_config, "mass must be positive and finite");
  if (!(field_eb >= 0.0) || !std::isfinite(field_eb))
    throw error(error_kind::invalid_config, "field eB must be non-negative and finite");
  if (!std::isfinite(kappa)) throw error(error_kind::invalid_config, "kappa must be finite");

  FieldConfig cfg;
  cfg.units.reference_mass = mass;
  cfg.mass = 1.0;
  cfg.field_b = cfg.units.from_display_field(field_eb);
  cfg.charge = charge;
  cfg.kappa = kappa;
  const double coupling = charge == 0 ? 1.0 : static_cast<double>(charge);
  cfg.lambda = kappa * coupling / (4.0 * cfg.mass);
  return cfg;
}

// Copy of cfg with a different field strength (internal units).
inline FieldConfig with_field(FieldConfig cfg, double b) {
  if (!(b >= 0.0) || !std::isfinite(b))
    throw error(error_kind::invalid_config, "field b must be non-negative and finite");
  cfg.field_b = b;
  return cfg;
}

inline FieldConfig with_kappa(FieldConfig cfg, double kappa) {
  if (!std::isfinite(kappa)) throw error(error_kind::invalid_config, "kappa must be finite");
  const double coupling = cfg.charge == 0 ? 1.0 : static_cast<double>(cfg.charge);
  cfg.kappa = kappa;
  cfg.lambda = kappa * coupling / (4.0 * cfg.mass);
  return cfg;
}

struct QuantumNumbers {
  Sigma sigma = Sigma::plus;
  int n_rho = 0;
  int m = 0;
  double p_z = 0.0;

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

// Lexicographic order on (sigma, n_rho, m, p_z) with sigma=+ first.
inline bool qn_less(const QuantumNumbers& a, const QuantumNumbers& b) {
  if (a.sigma != b.sigma) return a.sigma == Sigma::plus;
  if (a.n_rho != b.n_rho) return a.n_rho < b.n_rho;
  if (a.m != b.m) return a.m < b.m;
  return a.p_z < b.p_z;
}

namespace detail {

inline std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, const char* what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  T value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw error(error_kind::parse, std::string("cannot parse ") + what + " from '" +
                                       std::string(text) + "'");
  return value;
}

}  // namespace detail

inline const char* charge_class(int charge) {
  return charge > 0 ? "Z>0" : (charge < 0 ? "Z<0" : "Z=0");
}

// Canonical label, e.g. "(+,Z>0,n=2,m=-1,pz=0.3)". p_z uses the shortest
// decimal that round-trips exactly.
inline std::string state_label(const QuantumNumbers& qn, const FieldConfig& cfg) {
  std::string s = "(";
  s += symbol(qn.sigma);
  s += ',';
  s += charge_class(cfg.charge);
  s += ",n=" + std::to_string(qn.n_rho);
  s += ",m=" + std::to_string(qn.m);
  s += ",pz=" + detail::shortest(qn.p_z) + ")";
  return s;
}

inline QuantumNumbers parse_state_label(std::string_view label) {
  label = detail::trim(label);
  if (label.size() < 2 || label.front() != '(' || label.back() != ')')
    throw error(error_kind::parse, "state label must be parenthesised: '" + std::string(label) + "'");
  label = label.substr(1, label.size() - 2);

  std::string_view fields[5];
  for (int i = 0; i < 5; ++i) {
    const auto comma = label.find(',');
    if (i < 4 && comma == std::string_view::npos)
      throw error(error_kind::parse, "state label needs five fields");
    fields[i] = i < 4 ? label.substr(0, comma) : label;
    if (i < 4) label.remove_prefix(comma + 1);
  }
  if (fields[4].find(',') != std::string_view::npos)
    throw error(error_kind::parse, "state label has too many fields");

  QuantumNumbers qn;
  if (fields[0] == "+") qn.sigma = Sigma::plus;
  else if (fields[0] == "-") qn.sigma = Sigma::minus;
  else throw error(error_kind::parse, "sigma must be + or -");

  if (fields[1] != "Z>0" && fields[1] != "Z<0" && fields[1] != "Z=0")
    throw error(error_kind::parse, "charge class must be Z>0, Z<0 or Z=0");

  auto value_of = [](std::string_view f, std::string_view key) {
    if (f.substr(0, key.size()) != key)
      throw error(error_kind::parse, "expected field " + std::string(key));
    return f.substr(key.size());
  };
  qn.n_rho = detail::parse_number<int>(value_of(fields[2], "n="), "n_rho");
  qn.m = detail::parse_number<int>(value_of(fields[3], "m="), "m");
  qn.p_z = detail::parse_number<double>(value_of(fields[4], "pz="), "p_z");
  if (qn.n_rho < 0) throw error(error_kind::parse, "n_rho must be non-negative");
  return qn;
}

// Values read from a flat key-value config file. Missing keys stay empty so
// that command-line flags can fill or override them.
struct ConfigValues {
  std::optional<double> mass;
  std::optional<double> field_b;
  std::optional<int> charge_z;
  std::optional<double> kappa;

  FieldConfig resolve() const {
    return make_config(mass.value_or(1.0), field_b.value_or(0.2), charge_z.value_or(1),
                       kappa.value_or(0.0));
  }
};

// Accepts "key = value" or "key: value" lines; '#' starts a comment.
inline ConfigValues parse_config_text(std::string_view text) {
  ConfigValues out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    if (auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = detail::trim(v);
    if (v.empty()) continue;
    auto sep = v.find_first_of("=:");
    if (sep == std::string_view::npos)
      throw error(error_kind::parse, "config line " + std::to_string(lineno) + ": expected key = value");
    const auto key = detail::trim(v.substr(0, sep));
    const auto val = v.substr(sep + 1);
    if (key == "mass") out.mass = detail::parse_number<double>(val, "mass");
    else if (key == "field_b") out.field_b = detail::parse_number<double>(val, "field_b");
    else if (key == "charge_z") out.charge_z = detail::parse_number<int>(val, "charge_z");
    else if (key == "kappa") out.kappa = detail::parse_number<double>(val, "kappa");
    else
      throw error(error_kind::parse,
                  "config line " + std::to_string(lineno) + ": unknown key '" + std::string(key) + "'");
  }
  return out;
}

inline ConfigValues parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(error_kind::io, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace landau_dirac
