#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "landau_dirac/cli/commands.hpp"

namespace ld = landau_dirac;

int main(int argc, char** argv) {
  CLI::App app{"Exact Landau-level states and spectra of Dirac fermions with anomalous magnetic moments"};
  app.set_version_flag("--version", std::string(ld::version));
  app.require_subcommand(0, 1);
  app.fallthrough();

  ld::cli::RunOptions o;
  std::string config_path, manifest_path;
  std::optional<double> mass, field_b, kappa;
  std::optional<int> charge;

  app.add_option("--config", config_path, "Key-value config file (mass, field_b, charge_z, kappa)");
  app.add_option("--manifest", manifest_path, "Replay a run manifest written by an earlier run");
  app.add_option("--out", o.out, "Output path (stdout when omitted)");
  app.add_option("--seed", o.seed, "Seed for random sample points");
  app.add_option("--grid-n", o.grid_n, "Grid points per side");
  app.add_option("--grid-extent", o.grid_extent, "Grid half extent (0 selects it automatically)");
  app.add_flag("--nonrel", o.nonrel, "Add the non-relativistic comparison columns");
  app.add_flag("--allow-zero", o.allow_zero, "Dump identically zero states instead of failing");
  app.add_option("--level", o.level, "Verification level")->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--mass", mass, "Mass scale M");
  app.add_option("--field-b", field_b, "Field strength eB");
  app.add_option("--charge", charge, "Charge number Z (0 for neutral)");
  app.add_option("--kappa", kappa, "Anomalous moment kappa");
  app.add_option("--inject-fault", o.fault, "")->group("");

  auto* spectrum = app.add_subcommand("spectrum", "Tabulate energy levels as CSV");
  spectrum->add_option("--n-min", o.ranges.n_min, "Lowest n_rho");
  spectrum->add_option("--n-max", o.ranges.n_max, "Highest n_rho");
  spectrum->add_option("--m-min", o.ranges.m_min, "Lowest m");
  spectrum->add_option("--m-max", o.ranges.m_max, "Highest m");
  spectrum->add_option("--pz", o.ranges.p_z, "Longitudinal momenta")->delimiter(',');
  spectrum->add_option("--p-perp", o.ranges.p_perp, "Transverse momenta (neutral only)")->delimiter(',');

  auto* wavefunction = app.add_subcommand("wavefunction", "Dump a spinor on a transverse grid as CSV");
  auto* sweep = app.add_subcommand("sweep", "Tabulate the level pair and its splitting over kappa or b");
  for (auto* sub : {wavefunction, sweep}) {
    sub->add_option("--n", o.state.n_rho, "Radial quantum number n_rho");
    sub->add_option("--m", o.state.m, "Angular quantum number m");
    sub->add_option("--pz", o.state.p_z, "Longitudinal momentum");
    sub->add_option("--px", o.state.p_x, "Transverse momentum x (neutral only)");
    sub->add_option("--py", o.state.p_y, "Transverse momentum y (neutral only)");
  }
  wavefunction->add_option("--sigma", o.state.sigma, "Pauli branch + or -");
  sweep->add_option("--param", o.sweep.param, "Swept parameter")->check(CLI::IsMember({"b", "kappa"}));
  sweep->add_option("--values", o.sweep.values, "Explicit sweep values")->delimiter(',');
  sweep->add_option("--from", o.sweep.from, "First sweep value");
  sweep->add_option("--to", o.sweep.to, "Last sweep value");
  sweep->add_option("--steps", o.sweep.steps, "Number of sweep values");

  app.add_subcommand("verify", "Run the verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!manifest_path.empty()) {
      const std::string out_override = o.out;
      o = ld::cli::read_manifest(manifest_path);
      if (!out_override.empty()) o.out = out_override;
      o.replay = true;
    } else {
      if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
      }
      o.command = app.get_subcommands().front()->get_name();
      if (!config_path.empty()) ld::cli::apply_config(o, ld::parse_config_file(config_path));
      if (mass) o.mass = *mass;
      if (field_b) o.field_b = *field_b;
      if (charge) o.charge_z = *charge;
      if (kappa) o.kappa = *kappa;
    }
    return ld::cli::run_command(o);
  } catch (const std::exception& e) {
    std::cerr << "landau_dirac: " << e.what() << '\n';
    return 2;
  }
}
