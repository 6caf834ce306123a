#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "landau_dirac/model.hpp"
#include "landau_dirac/verify.hpp"

namespace landau_dirac::io {

inline nlohmann::ordered_json config_json(const FieldConfig& cfg) {
  nlohmann::ordered_json j;
  j["mass"] = cfg.units.reference_mass;
  j["field_b"] = cfg.field_b;
  j["charge_z"] = cfg.charge;
  j["kappa"] = cfg.kappa;
  j["lambda"] = cfg.lambda;
  return j;
}

inline nlohmann::ordered_json report_json(const verify::Report& rep, const FieldConfig& cfg, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["level"] = rep.level;
  j["config"] = config_json(cfg);
  j["seed"] = seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks)
    j["checks"].push_back({{"name", c.name},
                           {"measured", c.measured},
                           {"tolerance", c.tolerance},
                           {"passed", c.passed},
                           {"detail", c.detail}});
  j["passed"] = rep.passed();
  return j;
}

// One line per check: PASS/FAIL, name, measured against tolerance, detail.
inline void print_report(std::ostream& os, const verify::Report& rep) {
  for (const auto& c : rep.checks) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s  %-28s %10.3g <= %-10.3g ", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                  c.measured, c.tolerance);
    os << buf << c.detail << '\n';
  }
  os << (rep.passed() ? "verify: all checks passed" : "verify: FAILED") << " (" << rep.checks.size() << " checks, level "
     << rep.level << ")\n";
}

}  // namespace landau_dirac::io
