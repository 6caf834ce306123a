// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "landau_dirac/verify.hpp"

using namespace landau_dirac;
using namespace landau_dirac::verify;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool passed = true;
  std::string detail;

  void add(const CheckResult& c) {
    passed = passed && c.passed;
    if (!detail.empty()) detail += "; ";
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.3g/%.3g", c.measured, c.tolerance);
    detail += c.name + buf + (c.passed ? "" : " FAILED");
  }
  void add(const std::vector<CheckResult>& cs) {
    for (const auto& c : cs) add(c);
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0.0 || secs < limit_s;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  std::printf("AC%-2d %s  %s [%.1fs%s] %s\n", id, ok ? "PASS" : "FAIL", title, secs,
              limit_s > 0.0 ? (in_time ? "" : " over limit") : "", o.detail.c_str());
  std::fflush(stdout);
}

struct GridCase {
  double kappa, b;
};
const std::vector<GridCase> kGridCases{{0.0, 0.1}, {0.0, 0.3}, {1.0, 0.1}, {1.0, 0.3}};

}  // namespace

int main() {
  const StateFamily family;  // Z = +-1, kappa in {0, 1.79}, b = 0.2, n_rho <= 4, |m| <= 4, p_z in {0, 0.3}

  criterion(1, "first-order system residuals", 10.0, [&] {
    Outcome o;
    o.add(check_first_order(family, 50, kSeed));
    return o;
  });

  criterion(2, "normalization and orthogonality", 30.0, [&] {
    Outcome o;
    o.add(check_normalization(family));
    return o;
  });

  criterion(3, "ladder algebra and commutator", 0.0, [&] {
    Outcome o;
    o.add(check_ladder(6, 6, 0.2, {1, -1}, 100, kSeed));
    return o;
  });

  std::vector<double> taus(kGridCases.size());
  criterion(4, "spectrum cross-check against the grid oracle", 120.0, [&] {
    Outcome o;
    for (std::size_t i = 0; i < kGridCases.size(); ++i) {
      const FieldConfig cfg = make_config(1.0, kGridCases[i].b, 1, kGridCases[i].kappa);
      const oracle::GridSpec grid = grid_for(cfg, 96);
      oracle::TauCalibration tau;
      o.add(check_eigen_levels(cfg, grid, 8, &tau));
      taus[i] = tau.tau;
      o.add(check_targeted_levels(cfg, grid, tau.tau));
      o.add(check_tau_shrink(cfg, 96));
    }
    return o;
  });

  criterion(5, "Pauli splitting 4 lambda B", 0.0, [&] {
    Outcome o;
    o.add(check_pauli_closed_form({1, -1}, {0.0, 1.0, 1.79}, {0.1, 0.2, 0.3}, 6, 6));
    for (std::size_t i = 0; i < kGridCases.size(); ++i) {
      if (kGridCases[i].kappa == 0.0) continue;
      const FieldConfig cfg = make_config(1.0, kGridCases[i].b, 1, kGridCases[i].kappa);
      const double tau = taus[i] > 0.0 ? taus[i] : oracle::calibrate_tau(cfg, grid_for(cfg, 96)).tau;
      o.add(check_pauli_oracle(cfg, grid_for(cfg, 96), tau));
    }
    return o;
  });

  criterion(6, "degeneracy law over m in [0, 50]", 0.0, [&] {
    Outcome o;
    o.add(check_degeneracy({1, -1}, {0.0, 1.79}, {0.1, 0.2, 0.3}, 4, 50, {0.0, 0.3}));
    return o;
  });

  criterion(7, "vanishing-state census and fault injection", 0.0, [&] {
    Outcome o;
    o.add(check_census({1, -1}, {0.0, 1.79}, 0.2, 6));
    CheckResult injected = check_census({1, -1}, {0.0, 1.79}, 0.2, 6, Fault::vanishing);
    std::size_t tried = 0, caught = 0;
    for (int z : {1, -1})
      for (double k : {0.0, 1.79}) {
        const FieldConfig cfg = make_config(1.0, 0.2, z, k);
        const StateRanges r = census_ranges(6);
        const StateEnumeration clean = enumerate_states(cfg, r);
        for (std::size_t i = 0; i < clean.states.size(); ++i) {
          if (clean.states[i].qn.n_rho != 0) continue;
          StateEnumeration bad = clean;
          bad.vanishing.push_back(bad.states[i].qn);
          bad.states.erase(bad.states.begin() + static_cast<std::ptrdiff_t>(i));
          ++tried;
          if (census_mismatches(bad, cfg, r) > 0) ++caught;
        }
      }
    o.add(CheckResult{"fault_injection", double(tried - caught), 0.0, !injected.passed && tried > 0 && caught == tried,
                      std::to_string(caught) + "/" + std::to_string(tried) + " injections caught"});
    o.detail += " (" + std::to_string(caught) + "/" + std::to_string(tried) + " injected states caught)";
    return o;
  });

  criterion(8, "non-relativistic limits", 0.0, [&] {
    Outcome o;
    o.add(check_nonrel({1, -1}, {0.0, 1.79}, {1e-2, 1e-3, 1e-4}, 2, 2, kSeed));
    return o;
  });

  criterion(9, "neutral solutions", 0.0, [&] {
    Outcome o;
    o.add(check_neutral({0.0, 1.0, 1.79, -1.91}, {0.1, 0.2, 0.3}, kSeed));
    return o;
  });

  ErratumSummary erratum;
  criterion(10, "erratum diagnostic against the printed spinors", 0.0, [&] {
    erratum = erratum_table({1, -1}, {1.79}, 0.2, 3, 3, {0.0, 0.3});
    Outcome o;
    const CheckResult c = check_erratum(erratum);
    o.passed = c.passed;
    o.detail = std::to_string(erratum.entries.size()) + " states compared, " +
               std::to_string(erratum.by_branch.size()) + " branches (listed below)";
    return o;
  });
  for (const auto& [branch, counts] : erratum.by_branch) {
    std::string line = "     " + branch + ":";
    for (const auto& [status, n] : counts) line += " " + status + "=" + std::to_string(n);
    std::printf("%s\n", line.c_str());
  }

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
