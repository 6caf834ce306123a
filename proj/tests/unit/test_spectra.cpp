#include <catch_amalgamated.hpp>

#include <cfloat>
#include <cmath>

#include "landau_dirac/spectra.hpp"

using namespace landau_dirac;
using Catch::Approx;

namespace {

// E = sqrt((sqrt(M^2 + 2|Z| b N) - sigma 2 lambda B)^2 + p_z^2), written out
// from the raw parameters with N the Landau number.
double reference_energy(int sigma, int landau_n, int z, double b, double kappa, double pz) {
  const double lb = kappa * z / 4.0 * b;
  const double ep = std::sqrt(1.0 + 2.0 * std::abs(z) * b * landau_n) - sigma * 2.0 * lb;
  return std::sqrt(ep * ep + pz * pz);
}

}  // namespace

TEST_CASE("hand values of the charged spectrum") {
  const FieldConfig d = make_config(1.0, 0.2, 1, 0.0);
  CHECK(total_energy({Sigma::plus, 0, 0, 0.0}, d) == 1.0);
  CHECK(total_energy({Sigma::plus, 1, 0, 0.0}, d) == Approx(std::sqrt(1.4)).epsilon(1e-15));
  CHECK(total_energy({Sigma::plus, 0, -1, 0.0}, d) == Approx(std::sqrt(1.4)).epsilon(1e-15));
  CHECK(total_energy({Sigma::plus, 0, 0, 0.3}, d) == Approx(std::sqrt(1.09)).epsilon(1e-15));

  const FieldConfig k = make_config(1.0, 0.2, 1, 1.0);
  CHECK(total_energy({Sigma::plus, 0, 0, 0.0}, k) == Approx(0.9).epsilon(1e-15));
  CHECK(energy_level({Sigma::minus, 0, 0, 0.0}, k).e_total == Approx(1.1).epsilon(1e-15));

  const FieldConfig n = make_config(1.0, 0.2, -1, 1.0);
  CHECK(energy_level({Sigma::plus, 0, -1, 0.0}, n).e_perp == Approx(1.1).epsilon(1e-15));
  CHECK(energy_level({Sigma::minus, 0, -1, 0.0}, n).e_perp == Approx(0.9).epsilon(1e-15));
}

TEST_CASE("landau number per charge sign") {
  CHECK(landau_number(2, 3, 1) == 2);
  CHECK(landau_number(2, -3, 1) == 5);
  CHECK(landau_number(2, 3, -1) == 5);
  CHECK(landau_number(2, -3, -1) == 2);
}

TEST_CASE("charged spectrum against the written-out formula") {
  for (int z : {1, -1, 2})
    for (double kappa : {0.0, 1.79, -1.91})
      for (double b : {0.05, 0.2, 0.3})
        for (int s : {1, -1})
          for (int n = 0; n <= 4; ++n)
            for (int m = -4; m <= 4; ++m)
              for (double pz : {0.0, 0.3}) {
                const FieldConfig cfg = make_config(1.0, b, z, kappa);
                const int ln = n + (z > 0 ? (std::abs(m) - m) / 2 : (std::abs(m) + m) / 2);
                const EnergyLevel lvl = energy_level({s > 0 ? Sigma::plus : Sigma::minus, n, m, pz}, cfg);
                CHECK(lvl.e_total == Approx(reference_energy(s, ln, z, b, kappa, pz)).epsilon(4e-16));
              }
}

TEST_CASE("per-spin layer: the level equals the spin-up formula for Z>0 and spin-down for Z<0") {
  for (int z : {1, -1}) {
    const FieldConfig cfg = make_config(1.0, 0.2, z, 1.79);
    for (int n = 0; n <= 3; ++n)
      for (int m = -3; m <= 3; ++m)
        for (Sigma s : {Sigma::plus, Sigma::minus}) {
          const QuantumNumbers q{s, n, m, 0.0};
          const Spin own = z > 0 ? Spin::up : Spin::down;
          const Spin other = z > 0 ? Spin::down : Spin::up;
          CHECK(transverse_energy(own, q, cfg) == energy_level(q, cfg).e_perp);
          const int am = std::abs(m);
          const int shifted = z > 0 ? 2 * (n + 1) + am - m : 2 * (n + 1) + am + m;
          const double expect = std::sqrt(1.0 + 0.2 * shifted) - sign(s) * 2.0 * cfg.lambda_b();
          CHECK(transverse_energy(other, q, cfg) == Approx(expect).epsilon(1e-15));
        }
  }
}

TEST_CASE("Pauli splitting is 4 lambda B") {
  for (int z : {1, -1})
    for (double kappa : {0.0, 1.0, 1.79}) {
      const FieldConfig cfg = make_config(1.0, 0.3, z, kappa);
      for (int n = 0; n <= 5; ++n)
        for (int m = -5; m <= 5; ++m) {
          const double split = energy_level({Sigma::minus, n, m, 0.0}, cfg).e_perp -
                               energy_level({Sigma::plus, n, m, 0.0}, cfg).e_perp;
          CHECK(std::abs(split - 4.0 * cfg.lambda_b()) <= 4 * DBL_EPSILON);
        }
    }
  const FieldConfig zero = make_config(1.0, 0.3, 1, 0.0);
  CHECK(energy_level({Sigma::minus, 2, 1, 0.0}, zero).e_perp == energy_level({Sigma::plus, 2, 1, 0.0}, zero).e_perp);
}

TEST_CASE("degeneracy in m is exact") {
  for (int z : {1, -1}) {
    const FieldConfig cfg = make_config(1.0, 0.2, z, 1.79);
    for (Sigma s : {Sigma::plus, Sigma::minus})
      for (int n = 0; n <= 3; ++n) {
        const double ref = energy_level({s, n, 0, 0.3}, cfg).e_total;
        for (int a = 1; a <= 50; ++a) CHECK(energy_level({s, n, z * a, 0.3}, cfg).e_total == ref);
        // the opposite direction raises the level
        CHECK(energy_level({s, n, -z, 0.3}, cfg).e_total > ref);
      }
  }
}

TEST_CASE("vanishing census at n_rho = 0") {
  for (int m = -3; m <= 3; ++m) {
    CHECK(!is_vanishing_state(Sigma::plus, 0, m, 1));
    CHECK(is_vanishing_state(Sigma::minus, 0, m, 1) == (m >= 0));
    CHECK(is_vanishing_state(Sigma::plus, 0, m, -1));
    CHECK(is_vanishing_state(Sigma::minus, 0, m, -1) == (m >= 0));
    for (Sigma s : {Sigma::plus, Sigma::minus}) {
      CHECK(!is_vanishing_state(s, 1, m, 1));
      CHECK(!is_vanishing_state(s, 1, m, -1));
      CHECK(!is_vanishing_state(s, 0, m, 0));
    }
  }
}

TEST_CASE("neutral spectrum") {
  const FieldConfig cfg = make_config(1.0, 0.2, 0, -1.91);
  const double lb = -1.91 / 4 * 0.2;
  for (double pp : {0.0, 0.5, 2.0})
    for (double pz : {0.0, -0.7}) {
      for (Sigma s : {Sigma::plus, Sigma::minus}) {
        const double ep = std::sqrt(1.0 + pp * pp) - sign(s) * 2.0 * lb;
        CHECK(neutral_total_energy(s, pp * pp, pz, cfg) == Approx(std::sqrt(ep * ep + pz * pz)).epsilon(4e-16));
      }
      const double split = neutral_transverse_energy(Sigma::minus, pp * pp, cfg) -
                           neutral_transverse_energy(Sigma::plus, pp * pp, cfg);
      CHECK(std::abs(split - 4 * lb) <= 4 * DBL_EPSILON);
    }
  CHECK_THROWS_AS(energy_level({Sigma::plus, 0, 0, 0.0}, cfg), landau_dirac::error);
  CHECK_THROWS_AS(neutral_transverse_energy(Sigma::plus, -1.0, cfg), landau_dirac::error);
}

TEST_CASE("negative transverse branch is flagged and rejected") {
  const FieldConfig cfg = make_config(1.0, 0.5, 1, 10.0);
  const EnergyLevel lvl = energy_level({Sigma::plus, 0, 0, 0.0}, cfg);
  CHECK(!lvl.positive_branch);
  CHECK(lvl.flags() == "negative_e_perp");
  CHECK_THROWS_AS(total_energy({Sigma::plus, 0, 0, 0.0}, cfg), landau_dirac::error);
  CHECK(energy_level({Sigma::minus, 0, 0, 0.0}, make_config(1.0, 0.2, 1, 1.0)).flags() == "vanishing");
}

TEST_CASE("non-relativistic energies") {
  // lowest level, Z>0, sigma=+: E - M = -kappa b / 2 exactly and nonrel agrees
  const FieldConfig low = make_config(1.0, 0.01, 1, 1.79);
  CHECK(nonrel_energy({Sigma::plus, 0, 0, 0.0}, low) == Approx(-1.79 * 0.01 / 2).epsilon(1e-14));
  // the error shrinks like b^2
  for (int z : {1, -1})
    for (int n = 1; n <= 2; ++n)
      for (Sigma s : {Sigma::plus, Sigma::minus}) {
        double prev = 0;
        for (double b : {1e-2, 1e-3}) {
          const FieldConfig cfg = make_config(1.0, b, z, 1.79);
          const QuantumNumbers q{s, n, z > 0 ? -1 : 1, 0.0};
          const double err = std::abs((total_energy(q, cfg) - 1.0) - nonrel_energy_preshift(q, cfg));
          if (prev > 0) CHECK(prev / err == Approx(100).epsilon(0.05));
          prev = err;
        }
      }
  // relabelling: sigma=+ with Z>0 uses the same quantum numbers in both forms
  const FieldConfig cfg = make_config(1.0, 0.2, 1, 1.79);
  for (int m = -2; m <= 2; ++m)
    CHECK(nonrel_energy_preshift({Sigma::plus, 1, m, 0.3}, cfg) == nonrel_energy({Sigma::plus, 1, m, 0.3}, cfg));
  const FieldConfig neutral = make_config(1.0, 0.2, 0, 1.0);
  CHECK(neutral_nonrel_energy(Sigma::plus, 0.5, neutral) == Approx(0.25 - 0.1));
}

TEST_CASE("spectrum table") {
  const FieldConfig cfg = make_config(1.0, 0.2, 1, 1.79);
  SpectrumRanges one;
  const auto pair = spectrum_table(cfg, one);
  REQUIRE(pair.size() == 2);
  CHECK(pair[0].qn.sigma == Sigma::plus);
  CHECK(pair[1].vanishing);

  SpectrumRanges r;
  r.n_max = 2;
  r.m_min = -2;
  r.m_max = 2;
  r.p_z = {0.0, 0.3};
  const auto rows = spectrum_table(cfg, r);
  CHECK(rows.size() == 2 * 3 * 5 * 2);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i - 1].e_total <= rows[i].e_total);
    CHECK(rows[i].degeneracy_class == rows[i - 1].degeneracy_class + (rows[i].e_total != rows[i - 1].e_total));
  }
  SpectrumRanges bad = r;
  bad.n_min = -1;
  CHECK_THROWS_AS(spectrum_table(cfg, bad), landau_dirac::error);
  SpectrumRanges empty = r;
  empty.m_max = -3;
  CHECK(spectrum_table(cfg, empty).empty());
}
