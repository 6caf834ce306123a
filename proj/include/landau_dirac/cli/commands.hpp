#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "landau_dirac/errors.hpp"
#include "landau_dirac/io/csv.hpp"
#include "landau_dirac/io/report.hpp"
#include "landau_dirac/model.hpp"
#include "landau_dirac/oracle/grid_hamiltonian.hpp"
#include "landau_dirac/spectra.hpp"
#include "landau_dirac/spinors.hpp"
#include "landau_dirac/verify.hpp"
#include "landau_dirac/version.hpp"

namespace landau_dirac::cli {

// All user-facing quantities are in display units: energies and momenta in
// units of the configured mass scale, field as eB, lengths as 1/energy.
struct RangeOptions {
  int n_min = 0;
  int n_max = 3;
  int m_min = -3;
  int m_max = 3;
  std::vector<double> p_z{0.0};
  std::vector<double> p_perp{0.0};
};

struct StateOptions {
  std::string sigma = "+";
  int n_rho = 0;
  int m = 0;
  double p_z = 0.0;
  double p_x = 0.0;  // neutral only
  double p_y = 0.0;  // neutral only
};

struct SweepOptions {
  std::string param = "b";  // b | kappa
  std::vector<double> values;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
};

struct RunOptions {
  std::string command;
  double mass = 1.0;
  double field_b = 0.2;  // eB
  int charge_z = 1;
  double kappa = 0.0;
  std::string out;
  std::uint64_t seed = 20240611;
  int grid_n = 96;
  double grid_extent = 0.0;  // 0: automatic
  bool nonrel = false;
  bool allow_zero = false;
  std::string level = "quick";
  std::string fault;     // test fixture only
  bool replay = false;   // set when replaying a manifest; the manifest is then left untouched
  RangeOptions ranges;
  StateOptions state;
  SweepOptions sweep;

  FieldConfig config() const { return make_config(mass, field_b, charge_z, kappa); }
};

inline void apply_config(RunOptions& o, const ConfigValues& v) {
  if (v.mass) o.mass = *v.mass;
  if (v.field_b) o.field_b = *v.field_b;
  if (v.charge_z) o.charge_z = *v.charge_z;
  if (v.kappa) o.kappa = *v.kappa;
}

// ---- manifest ----------------------------------------------------------------

inline nlohmann::ordered_json manifest_json(const RunOptions& o, const std::vector<std::string>& outputs) {
  nlohmann::ordered_json j;
  j["command"] = o.command;
  j["config"] = {{"mass", o.mass}, {"field_b", o.field_b}, {"charge_z", o.charge_z}, {"kappa", o.kappa}};
  j["seed"] = o.seed;
  j["grid"] = {{"points", o.grid_n}, {"extent", o.grid_extent}};
  j["flags"] = {{"nonrel", o.nonrel}, {"allow_zero", o.allow_zero}, {"level", o.level}};
  if (!o.fault.empty()) j["flags"]["fault"] = o.fault;
  j["ranges"] = {{"n_min", o.ranges.n_min}, {"n_max", o.ranges.n_max}, {"m_min", o.ranges.m_min},
                 {"m_max", o.ranges.m_max}, {"p_z", o.ranges.p_z},     {"p_perp", o.ranges.p_perp}};
  j["state"] = {{"sigma", o.state.sigma}, {"n_rho", o.state.n_rho}, {"m", o.state.m},
                {"p_z", o.state.p_z},     {"p_x", o.state.p_x},       {"p_y", o.state.p_y}};
  j["sweep"] = {{"param", o.sweep.param}, {"values", o.sweep.values}, {"from", o.sweep.from},
                {"to", o.sweep.to},       {"steps", o.sweep.steps}};
  j["outputs"] = outputs;
  j["version"] = version;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  j["timestamp"] = stamp;
  return j;
}

inline RunOptions options_from_manifest(const nlohmann::json& j) {
  try {
    RunOptions o;
    o.command = j.at("command").get<std::string>();
    const auto& c = j.at("config");
    o.mass = c.at("mass").get<double>();
    o.field_b = c.at("field_b").get<double>();
    o.charge_z = c.at("charge_z").get<int>();
    o.kappa = c.at("kappa").get<double>();
    o.seed = j.at("seed").get<std::uint64_t>();
    o.grid_n = j.at("grid").at("points").get<int>();
    o.grid_extent = j.at("grid").at("extent").get<double>();
    const auto& f = j.at("flags");
    o.nonrel = f.at("nonrel").get<bool>();
    o.allow_zero = f.at("allow_zero").get<bool>();
    o.level = f.at("level").get<std::string>();
    o.fault = f.value("fault", std::string{});
    const auto& r = j.at("ranges");
    o.ranges = {r.at("n_min").get<int>(), r.at("n_max").get<int>(), r.at("m_min").get<int>(), r.at("m_max").get<int>(),
                r.at("p_z").get<std::vector<double>>(), r.at("p_perp").get<std::vector<double>>()};
    const auto& s = j.at("state");
    o.state = {s.at("sigma").get<std::string>(), s.at("n_rho").get<int>(), s.at("m").get<int>(),
               s.at("p_z").get<double>(),         s.at("p_x").get<double>(),  s.at("p_y").get<double>()};
    const auto& w = j.at("sweep");
    o.sweep = {w.at("param").get<std::string>(), w.at("values").get<std::vector<double>>(), w.at("from").get<double>(),
               w.at("to").get<double>(), w.at("steps").get<int>()};
    const auto outs = j.at("outputs").get<std::vector<std::string>>();
    if (!outs.empty()) o.out = outs.front();
    return o;
  } catch (const nlohmann::json::exception& e) {
    throw error(error_kind::parse, std::string("malformed manifest: ") + e.what());
  }
}

inline RunOptions read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(error_kind::io, "cannot open manifest '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw error(error_kind::parse, "manifest '" + path + "' is not valid JSON: " + e.what());
  }
  return options_from_manifest(j);
}

inline void write_manifest(const RunOptions& o, const std::vector<std::string>& outputs) {
  if (o.out.empty() || o.replay) return;
  auto os = io::open_output(o.out + ".manifest.json");
  os << manifest_json(o, outputs).dump(2) << '\n';
}

// ---- helpers -----------------------------------------------------------------

inline Sigma parse_sigma(const std::string& s) {
  if (s == "+" || s == "plus") return Sigma::plus;
  if (s == "-" || s == "minus") return Sigma::minus;
  throw error(error_kind::parse, "sigma must be + or -, got '" + s + "'");
}

// The census rule that makes a (sigma, n_rho = 0, m) state identically zero.
inline std::string census_reason(const QuantumNumbers& qn, int charge) {
  if (charge > 0) return "for Z>0 every sigma=- state with n_rho=0 and m>=0 is a zero state";
  if (qn.m >= 0) return "for Z<0 both sigma states with n_rho=0 and m>=0 are zero states";
  return "for Z<0 every sigma=+ state with n_rho=0 and m<0 is a zero state";
}

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;
};

inline void open(Output& out, const std::string& path) {
  if (path.empty()) return;
  out.file = io::open_output(path);
  out.os = &out.file;
}

inline std::string num(double x) { return io::format_double(x); }

// ---- spectrum ----------------------------------------------------------------

inline int cmd_spectrum(const RunOptions& o) {
  const FieldConfig cfg = o.config();
  const UnitScale& u = cfg.units;
  const RangeOptions& r = o.ranges;
  if (r.n_min < 0 || r.n_max < r.n_min || r.m_max < r.m_min)
    throw error(error_kind::invalid_config, "invalid n/m ranges");
  SpectrumRanges sr;
  sr.n_min = r.n_min;
  sr.n_max = r.n_max;
  sr.m_min = r.m_min;
  sr.m_max = r.m_max;
  sr.p_z.clear();
  for (double pz : r.p_z) sr.p_z.push_back(u.from_display_energy(pz));
  sr.p_perp.clear();
  for (double pp : r.p_perp) {
    if (!(pp >= 0.0)) throw error(error_kind::invalid_config, "p_perp values must be non-negative");
    sr.p_perp.push_back(u.from_display_energy(pp));
  }
  const auto rows = spectrum_table(cfg, sr);

  Output out;
  open(out, o.out);
  io::CsvWriter csv(*out.os);
  std::vector<std::string> head{"label", "sigma", "n_rho", "m", "p_z"};
  if (cfg.neutral()) head.push_back("p_perp");
  for (const char* h : {"E_perp", "E_total", "degeneracy_class", "branch_flags"}) head.push_back(h);
  if (o.nonrel) {
    head.push_back("E_nonrel");
    head.push_back("delta_nonrel");
  }
  csv.row(head);
  for (const auto& lvl : rows) {
    std::vector<std::string> f{state_label(lvl.qn, cfg), std::string(1, symbol(lvl.qn.sigma)),
                               std::to_string(lvl.qn.n_rho), std::to_string(lvl.qn.m),
                               num(u.to_display_energy(lvl.qn.p_z))};
    if (cfg.neutral()) f.push_back(num(u.to_display_energy(lvl.p_perp)));
    f.push_back(num(u.to_display_energy(lvl.e_perp)));
    f.push_back(num(u.to_display_energy(lvl.e_total)));
    f.push_back(std::to_string(lvl.degeneracy_class));
    f.push_back(lvl.flags());
    if (o.nonrel) {
      const double enr = cfg.neutral() ? neutral_nonrel_energy(lvl.qn.sigma, lvl.p_perp * lvl.p_perp +
                                                                                   lvl.qn.p_z * lvl.qn.p_z, cfg)
                                       : nonrel_energy_preshift(lvl.qn, cfg);
      f.push_back(num(u.to_display_energy(enr)));
      f.push_back(num(u.to_display_energy((lvl.e_total - cfg.mass) - enr)));
    }
    csv.row(f);
  }
  write_manifest(o, {o.out});
  return 0;
}

// ---- wavefunction --------------------------------------------------------------

inline int cmd_wavefunction(const RunOptions& o) {
  const FieldConfig cfg = o.config();
  const UnitScale& u = cfg.units;
  const StateOptions& s = o.state;
  const Sigma sigma = parse_sigma(s.sigma);
  if (o.grid_n < 2) throw error(error_kind::invalid_config, "wavefunction grid needs at least 2 points per side");

  SpinorState st;
  double extent = 0.0;
  if (cfg.neutral()) {
    st = neutral_spinor({u.from_display_energy(s.p_x), u.from_display_energy(s.p_y), u.from_display_energy(s.p_z)},
                        sigma, cfg);
    extent = o.grid_extent > 0.0 ? u.from_display_length(o.grid_extent) : 10.0;
  } else {
    if (!(cfg.field_b > 0.0)) throw error(error_kind::invalid_config, "charged states need field_b > 0");
    const QuantumNumbers qn{sigma, s.n_rho, s.m, u.from_display_energy(s.p_z)};
    if (qn.n_rho < 0) throw error(error_kind::domain, "n_rho must be non-negative");
    if (is_vanishing_state(qn.sigma, qn.n_rho, qn.m, cfg.charge) && !o.allow_zero)
      throw error(error_kind::precondition, "state " + state_label(qn, cfg) +
                                                " is identically zero: " + census_reason(qn, cfg.charge) +
                                                ". Pass --allow-zero to dump it anyway");
    st = make_charged_state(qn, cfg);
    const int reach = 4 * (s.n_rho + 1) + 2 * std::abs(s.m) + 2;
    extent = o.grid_extent > 0.0 ? u.from_display_length(o.grid_extent)
                                 : std::max(oracle::envelope_extent(cfg), std::sqrt(2.0 * reach / cfg.zb()) * 1.5);
  }

  Output out;
  open(out, o.out);
  std::ostream& os = *out.os;
  io::CsvWriter csv(os);
  csv.comment(std::string("landau_dirac ") + version);
  csv.comment("config: mass=" + num(o.mass) + " field_b=" + num(o.field_b) + " charge_z=" + std::to_string(cfg.charge) +
              " kappa=" + num(cfg.kappa) + " lambda=" + num(cfg.lambda));
  std::string state = "state: " + state_label(st.qn, cfg);
  if (cfg.neutral()) state += " p_x=" + num(s.p_x) + " p_y=" + num(s.p_y);
  state += st.vanishing ? " (identically zero)" : "";
  csv.comment(state + " E=" + num(u.to_display_energy(st.energy())));
  csv.comment(cfg.neutral() ? "norm: psi^dagger psi = 2E (plane wave)"
                            : "norm: transverse integral of psi^dagger psi = 2E (2 pi)^2 per unit z-length");
  csv.comment("grid: t=0 z=0, " + std::to_string(o.grid_n) + "x" + std::to_string(o.grid_n) + " points on [-" +
              num(u.to_display_length(extent)) + ", " + num(u.to_display_length(extent)) + "]^2");
  csv.row({"x", "y", "re1", "im1", "re2", "im2", "re3", "im3", "re4", "im4"});
  const double h = 2.0 * extent / (o.grid_n - 1);
  for (int i = 0; i < o.grid_n; ++i)
    for (int j = 0; j < o.grid_n; ++j) {
      const double x = -extent + i * h, y = -extent + j * h;
      const SpinorValue v = eval_spinor(st, 0.0, {x, y, 0.0});
      std::vector<std::string> f{num(u.to_display_length(x)), num(u.to_display_length(y))};
      for (const auto& c : v.comp) {
        f.push_back(num(c.real()));
        f.push_back(num(c.imag()));
      }
      csv.row(f);
    }
  write_manifest(o, {o.out});
  return 0;
}

// ---- sweep -------------------------------------------------------------------

inline std::vector<double> sweep_values(const SweepOptions& s) {
  std::vector<double> v = s.values;
  if (v.empty()) {
    if (s.steps < 1) throw error(error_kind::invalid_config, "sweep needs --values or --from/--to/--steps (steps >= 1)");
    for (int i = 0; i <= s.steps; ++i) v.push_back(s.from + (s.to - s.from) * i / s.steps);
    v.back() = s.to;
  }
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw error(error_kind::invalid_config, "sweep values must be strictly increasing");
  return v;
}

// One row per sweep point: the level pair (sigma = +/-) at the selected
// (n_rho, m, p_z) [or p_perp for neutral] and its splitting E_perp(-) - E_perp(+).
inline int cmd_sweep(const RunOptions& o) {
  if (o.sweep.param != "b" && o.sweep.param != "kappa")
    throw error(error_kind::invalid_config, "sweep parameter must be b or kappa");
  const std::vector<double> values = sweep_values(o.sweep);
  Output out;
  open(out, o.out);
  io::CsvWriter csv(*out.os);
  csv.row({"param", "value", "kappa", "field_b", "lambda_b", "label_plus", "label_minus", "E_perp_plus", "E_perp_minus",
           "E_total_plus", "E_total_minus", "splitting", "flags_plus", "flags_minus"});
  for (double v : values) {
    RunOptions point = o;
    (o.sweep.param == "b" ? point.field_b : point.kappa) = v;
    const FieldConfig cfg = point.config();
    const UnitScale& u = cfg.units;
    EnergyLevel lv[2];
    for (int k = 0; k < 2; ++k) {
      const Sigma s = k == 0 ? Sigma::plus : Sigma::minus;
      const double pz = u.from_display_energy(o.state.p_z);
      if (cfg.neutral()) {
        const double pp = u.from_display_energy(std::hypot(o.state.p_x, o.state.p_y));
        lv[k] = neutral_energy_level(s, pp, pz, cfg);
      } else {
        lv[k] = energy_level({s, o.state.n_rho, o.state.m, pz}, cfg);
      }
    }
    csv.row({o.sweep.param, num(v), num(cfg.kappa), num(point.field_b), num(u.to_display_energy(cfg.lambda_b())),
             state_label(lv[0].qn, cfg), state_label(lv[1].qn, cfg), num(u.to_display_energy(lv[0].e_perp)),
             num(u.to_display_energy(lv[1].e_perp)), num(u.to_display_energy(lv[0].e_total)),
             num(u.to_display_energy(lv[1].e_total)), num(u.to_display_energy(lv[1].e_perp - lv[0].e_perp)),
             lv[0].flags(), lv[1].flags()});
  }
  write_manifest(o, {o.out});
  return 0;
}

// ---- verify ------------------------------------------------------------------

// Prints one line per check; the JSON report goes to --out when given.
// Returns 0 iff every check passed.
inline int cmd_verify(const RunOptions& o, std::ostream& log = std::cout) {
  const FieldConfig cfg = o.config();
  verify::VerifyOptions vo;
  vo.level = o.level;
  vo.seed = o.seed;
  vo.grid_points = o.grid_n;
  vo.grid_extent = o.grid_extent > 0.0 ? cfg.units.from_display_length(o.grid_extent) : 0.0;
  vo.fault = verify::parse_fault(o.fault);
  const verify::Report rep = verify::run_verify(cfg, vo);
  io::print_report(log, rep);
  if (!o.out.empty()) {
    auto os = io::open_output(o.out);
    os << io::report_json(rep, cfg, o.seed).dump(2) << '\n';
  }
  write_manifest(o, {o.out});
  return rep.passed() ? 0 : 1;
}

inline int run_command(const RunOptions& o) {
  if (o.command == "spectrum") return cmd_spectrum(o);
  if (o.command == "wavefunction") return cmd_wavefunction(o);
  if (o.command == "sweep") return cmd_sweep(o);
  if (o.command == "verify") return cmd_verify(o);
  throw error(error_kind::invalid_config, "unknown command '" + o.command + "'");
}

}  // namespace landau_dirac::cli
