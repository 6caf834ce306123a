#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "landau_dirac/spinors.hpp"

using namespace landau_dirac;
using Catch::Approx;

namespace {

using Spinor = std::array<cplx, 4>;

Spinor at(const SpinorState& st, double x, double y, double z) { return eval_spinor(st, 0.0, {x, y, z}).comp; }

// Fourth-order centred derivative of every component along (dx, dy, dz).
Spinor derivative(const SpinorState& st, double x, double y, double z, double dx, double dy, double dz) {
  const double h = std::abs(dx + dy + dz);
  const Spinor a = at(st, x + 2 * dx, y + 2 * dy, z + 2 * dz), b = at(st, x + dx, y + dy, z + dz);
  const Spinor c = at(st, x - dx, y - dy, z - dz), d = at(st, x - 2 * dx, y - 2 * dy, z - 2 * dz);
  Spinor out;
  for (int k = 0; k < 4; ++k) out[k] = (-a[k] + 8.0 * b[k] - 8.0 * c[k] + d[k]) / (12.0 * h);
  return out;
}

// (H - E) psi with H = alpha.pi - 2 lambda B beta Sigma_z + beta M in the
// Dirac representation, pi = -i grad - Z e A, A = B(-y, x, 0)/2, derivatives
// by finite differences. Returns max |(H - E) psi| / max |E psi|.
double dirac_residual(const SpinorState& st, double x, double y, double z) {
  const double h = 1e-3;
  const cplx I{0, 1};
  const FieldConfig& c = st.cfg;
  const double zb = c.charge * c.field_b;
  const Spinor psi = at(st, x, y, z);
  const Spinor dx = derivative(st, x, y, z, h, 0, 0);
  const Spinor dy = derivative(st, x, y, z, 0, h, 0);
  const Spinor dz = derivative(st, x, y, z, 0, 0, h);
  Spinor px, py, pz;
  for (int k = 0; k < 4; ++k) {
    px[k] = -I * dx[k] + 0.5 * zb * y * psi[k];
    py[k] = -I * dy[k] - 0.5 * zb * x * psi[k];
    pz[k] = -I * dz[k];
  }
  const double M = c.mass, lb2 = 2.0 * c.lambda_b(), E = st.energy();
  // sigma.p on a two-spinor (u, d): (p_z u + (p_x - i p_y) d, (p_x + i p_y) u - p_z d)
  auto sp = [&](int u, int d) {
    return std::array<cplx, 2>{pz[u] + px[d] - I * py[d], px[u] + I * py[u] - pz[d]};
  };
  const auto on_chi = sp(2, 3);
  const auto on_phi = sp(0, 1);
  const std::array<cplx, 4> r{
      on_chi[0] + (M - lb2 - E) * psi[0],
      on_chi[1] + (M + lb2 - E) * psi[1],
      on_phi[0] + (-M + lb2 - E) * psi[2],
      on_phi[1] + (-M - lb2 - E) * psi[3],
  };
  double worst = 0, scale = 0;
  for (int k = 0; k < 4; ++k) {
    worst = std::max(worst, std::abs(r[k]));
    scale = std::max(scale, E * std::abs(psi[k]));
  }
  return worst / scale;
}

// Transverse inner products on a polar grid: Simpson in rho, trapezoid in phi
// (exact for the angular harmonics involved). Each state is sampled once with
// the quadrature weight folded in as sqrt(w).
struct PolarSamples {
  std::vector<cplx> v;
};

PolarSamples polar_samples(const SpinorState& st) {
  const int nr = 3000, nphi = 24;
  const double R = std::sqrt(2.0 * 90.0 / st.cfg.zb());
  const double h = R / nr;
  PolarSamples out;
  out.v.reserve(std::size_t(nr + 1) * nphi * 4);
  for (int i = 0; i <= nr; ++i) {
    const double rho = i * h;
    const double w = ((i == 0 || i == nr) ? 1 : (i % 2 ? 4 : 2)) * rho * (h / 3) * (2 * std::numbers::pi / nphi);
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2 * std::numbers::pi * j / nphi;
      const Spinor u = at(st, rho * std::cos(phi), rho * std::sin(phi), 0.0);
      for (const auto& c : u) out.v.push_back(std::sqrt(w) * c);
    }
  }
  return out;
}

cplx overlap(const PolarSamples& a, const PolarSamples& b) {
  cplx s{};
  for (std::size_t k = 0; k < a.v.size(); ++k) s += std::conj(a.v[k]) * b.v[k];
  return s;
}

}  // namespace

TEST_CASE("charged states solve the Dirac-Pauli equation by finite differences") {
  for (int z : {1, -1})
    for (double kappa : {0.0, 1.79})
      for (Sigma s : {Sigma::plus, Sigma::minus})
        for (int n = 0; n <= 2; ++n)
          for (int m = -2; m <= 2; ++m)
            for (double pz : {0.0, 0.3}) {
              const FieldConfig cfg = make_config(1.0, 0.2, z, kappa);
              const SpinorState st = make_charged_state({s, n, m, pz}, cfg);
              if (st.vanishing) continue;
              double worst = 0;
              for (auto [x, y] : {std::pair{0.9, -0.6}, {-1.7, 2.2}, {3.1, 0.4}})
                worst = std::max(worst, dirac_residual(st, x, y, 0.25));
              INFO(state_label(st.qn, cfg) << " kappa=" << kappa);
              CHECK(worst < 1e-8);
            }
}

TEST_CASE("normalization 2E (2 pi)^2 and orthogonality by direct integration") {
  for (int z : {1, -1}) {
    const FieldConfig cfg = make_config(1.0, 0.2, z, 1.79);
    std::vector<SpinorState> states;
    for (Sigma s : {Sigma::plus, Sigma::minus})
      for (int n = 0; n <= 2; ++n)
        for (int m : {-1, 0, 1}) {
          SpinorState st = make_charged_state({s, n, m, 0.3}, cfg);
          if (!st.vanishing) states.push_back(st);
        }
    std::vector<PolarSamples> samples;
    for (const auto& st : states) samples.push_back(polar_samples(st));
    for (std::size_t i = 0; i < states.size(); ++i) {
      const double target = norm_target(states[i].energy());
      CHECK(overlap(samples[i], samples[i]).real() == Approx(target).epsilon(1e-9));
      for (std::size_t j = i + 1; j < states.size(); ++j) CHECK(std::abs(overlap(samples[i], samples[j])) < 1e-9 * target);
    }
  }
}

TEST_CASE("norm convention value") { CHECK(norm_target(0.5) == Approx(4 * std::numbers::pi * std::numbers::pi)); }

TEST_CASE("lowest sigma=+ state at p_z=0 has a single nonzero component") {
  const FieldConfig cfg = make_config(1.0, 0.2, 1, 1.0);
  const SpinorState st = make_charged_state({Sigma::plus, 0, 0, 0.0}, cfg);
  CHECK(st.energy() == Approx(0.9));
  for (double x : {-2.0, 0.0, 1.5}) {
    const Spinor v = at(st, x, 0.5 * x + 0.1, 0.0);
    CHECK(std::abs(v[0]) > 0.0);
    for (int k = 1; k < 4; ++k) CHECK(v[k] == cplx{});
  }
}

TEST_CASE("enumeration separates the zero states") {
  StateRanges r;
  r.n_max = 1;
  r.m_min = -3;
  r.m_max = 3;
  r.p_z = {0.0, 0.3};
  const StateEnumeration pos = enumerate_states(make_config(1.0, 0.2, 1, 1.79), r);
  CHECK(pos.vanishing.size() == 4 * 2);  // sigma=-, m = 0..3
  const StateEnumeration neg = enumerate_states(make_config(1.0, 0.2, -1, 1.79), r);
  CHECK(neg.vanishing.size() == (4 * 2 + 3) * 2);  // both sigma at m >= 0, sigma=+ at m < 0
  for (const auto& q : pos.vanishing) CHECK((q.sigma == Sigma::minus && q.n_rho == 0 && q.m >= 0));
  CHECK(pos.states.size() + pos.vanishing.size() == 2 * 2 * 7 * 2);
  for (const auto& st : pos.states) CHECK(!st.vanishing);
  // ordering: sigma, n, m, p_z
  for (std::size_t i = 1; i < pos.states.size(); ++i) CHECK(qn_less(pos.states[i - 1].qn, pos.states[i].qn));
}

TEST_CASE("vanishing states evaluate to zero") {
  const FieldConfig cfg = make_config(1.0, 0.2, -1, 1.0);
  const SpinorState st = make_charged_state({Sigma::minus, 0, 2, 0.0}, cfg);
  CHECK(st.vanishing);
  for (const auto& c : at(st, 0.3, 0.4, 0.0)) CHECK(c == cplx{});
}

TEST_CASE("neutral plane waves") {
  for (double kappa : {1.0, -1.91})
    for (Sigma s : {Sigma::plus, Sigma::minus})
      for (std::array<double, 3> p : {std::array<double, 3>{0, 0, 0}, {0.3, -0.2, 0.4}, {1.2, 0.5, 0}, {0, 0, -0.8}}) {
        const FieldConfig cfg = make_config(1.0, 0.2, 0, kappa);
        const SpinorState st = neutral_spinor(p, s, cfg);
        const double pp2 = p[0] * p[0] + p[1] * p[1];
        const double ep = std::sqrt(1 + pp2) - sign(s) * 2 * (kappa / 4) * 0.2;
        CHECK(st.energy() == Approx(std::sqrt(ep * ep + p[2] * p[2])).epsilon(1e-15));
        for (auto [x, y, z] : {std::array<double, 3>{0.1, 0.2, 0.3}, {-2.0, 1.0, 4.0}}) {
          CHECK(dirac_residual(st, x, y, z) < 1e-9);
          double dens = 0;
          for (const auto& c : at(st, x, y, z)) dens += std::norm(c);
          CHECK(dens == Approx(2 * st.energy()).epsilon(1e-13));
        }
      }
}

TEST_CASE("non-relativistic limit spinor has no lower components") {
  const FieldConfig cfg = make_config(1.0, 1e-3, 1, 1.79);
  const SpinorState st = make_charged_state({Sigma::plus, 1, -1, 0.0}, cfg);
  const SpinorState nr = nonrel_limit_spinor(st);
  CHECK(nr.nonrelativistic);
  CHECK(nr.coefficients.c[2] == cplx{});
  CHECK(nr.coefficients.c[3] == cplx{});
}

TEST_CASE("charged constructors reject neutral configs") {
  CHECK_THROWS_AS(make_charged_state({Sigma::plus, 0, 0, 0.0}, make_config(1.0, 0.2, 0, 1.0)), landau_dirac::error);
  CHECK_THROWS_AS(make_charged_state({Sigma::plus, -1, 0, 0.0}, make_config(1.0, 0.2, 1, 1.0)), landau_dirac::error);
}
