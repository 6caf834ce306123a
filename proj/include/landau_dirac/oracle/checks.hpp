#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "landau_dirac/basis.hpp"
#include "landau_dirac/errors.hpp"
#include "landau_dirac/oracle/dirac_matrices.hpp"
#include "landau_dirac/spinors.hpp"

namespace landau_dirac::oracle {

// Seeded transverse sample points. Charged states: uniform in a disc that
// covers the classical orbit of the largest slot; neutral states: uniform in
// a cube of side 10.
inline std::vector<Point> sample_points(const SpinorState& st, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  pts.reserve(count);
  if (st.kind == StateKind::neutral) {
    for (int i = 0; i < count; ++i) pts.push_back({10.0 * u(rng) - 5.0, 10.0 * u(rng) - 5.0, 10.0 * u(rng) - 5.0});
    return pts;
  }
  int n = 0, m = 0;
  for (const auto& b : st.coefficients.basis) {
    n = std::max(n, b.n_rho);
    m = std::max(m, std::abs(b.m));
  }
  const double radius = std::sqrt(2.0 * (4.0 * n + 2.0 * m + 8.0) / st.cfg.zb());
  for (int i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(u(rng));
    const double phi = 2.0 * std::numbers::pi * u(rng);
    pts.push_back({r * std::cos(phi), r * std::sin(phi), 0.0});
  }
  return pts;
}

namespace detail {

inline void require_checkable(const SpinorState& st) {
  if (st.vanishing) throw error(error_kind::precondition, "state is identically zero");
  if (st.nonrelativistic) throw error(error_kind::precondition, "residual checks need a relativistic state");
}

// Upper/lower components and pi_pm applied to each, at one point with the
// z and t carriers stripped.
struct LocalSpinor {
  std::array<cplx, 4> psi{};
  std::array<cplx, 4> pi_plus{};
  std::array<cplx, 4> pi_minus{};
};

inline LocalSpinor local_spinor(const SpinorState& st, const Point& at) {
  LocalSpinor out;
  const auto& c = st.coefficients.c;
  if (st.kind == StateKind::neutral) {
    const cplx wave = std::polar(1.0, st.p_perp[0] * at.x + st.p_perp[1] * at.y);
    const cplx pp{st.p_perp[0], st.p_perp[1]};
    const cplx pm{st.p_perp[0], -st.p_perp[1]};
    for (int k = 0; k < 4; ++k) {
      out.psi[k] = c[k] * wave;
      out.pi_plus[k] = pp * out.psi[k];
      out.pi_minus[k] = pm * out.psi[k];
    }
    return out;
  }
  const double rho = std::hypot(at.x, at.y);
  const double phi = std::atan2(at.y, at.x);
  const auto& basis = st.coefficients.basis;
  for (int k = 0; k < 4; ++k) {
    out.psi[k] = c[k] * eval_f(basis[k], rho, phi, st.cfg);
    out.pi_plus[k] = c[k] * pi_pointwise(Ladder::plus, basis[k], rho, phi, st.cfg);
    out.pi_minus[k] = c[k] * pi_pointwise(Ladder::minus, basis[k], rho, phi, st.cfg);
  }
  return out;
}

}  // namespace detail

// Largest residual of the four coupled first-order equations
//   pi_+ phi_up   = (E + M + 2 lambda B) chi_down + p_z phi_down
//   pi_- phi_down = (E + M - 2 lambda B) chi_up   - p_z phi_up
//   pi_+ chi_up   = (E - M - 2 lambda B) phi_down + p_z chi_down
//   pi_- chi_down = (E - M + 2 lambda B) phi_up   - p_z chi_up
// over the sample points, relative to the largest term magnitude seen (with
// (E + M) |psi| included, so that an all-zero equation is not judged by its roundoff).
inline double check_first_order_system(const SpinorState& st, const std::vector<Point>& points) {
  detail::require_checkable(st);
  const double E = st.energy();
  const double M = st.cfg.mass;
  const double lb2 = 2.0 * st.cfg.lambda_b();
  const double pz = st.qn.p_z;
  double worst = 0.0, scale = 0.0;
  for (const Point& at : points) {
    const detail::LocalSpinor v = detail::local_spinor(st, at);
    const std::array<std::array<cplx, 3>, 4> terms{{
        {v.pi_plus[0], -(E + M + lb2) * v.psi[3], -pz * v.psi[1]},
        {v.pi_minus[1], -(E + M - lb2) * v.psi[2], pz * v.psi[0]},
        {v.pi_plus[2], -(E - M - lb2) * v.psi[1], -pz * v.psi[3]},
        {v.pi_minus[3], -(E - M + lb2) * v.psi[0], pz * v.psi[2]},
    }};
    for (const auto& eq : terms) {
      worst = std::max(worst, std::abs(eq[0] + eq[1] + eq[2]));
      for (const auto& t : eq) scale = std::max(scale, std::abs(t));
    }
    for (const auto& p : v.psi) scale = std::max(scale, (E + M) * std::abs(p));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

// max |H psi - E psi| / max |E psi| over the points, with H assembled from the
// explicit Dirac matrices: alpha_x pi_x + alpha_y pi_y + alpha_z p_z
// - 2 lambda B beta Sigma_z + beta M, and pi_x, pi_y recovered from pi_pm.
inline double hamiltonian_residual_pointwise(const SpinorState& st, const std::vector<Point>& points) {
  detail::require_checkable(st);
  const DiracMatrices& d = dirac_matrices();
  const Eigen::Matrix4cd local =
      d.beta * st.cfg.mass - 2.0 * st.cfg.lambda_b() * d.beta * d.sigma_z + d.alpha_z * st.qn.p_z;
  const double E = st.energy();
  const cplx I{0.0, 1.0};
  double worst = 0.0, scale = 0.0;
  for (const Point& at : points) {
    const detail::LocalSpinor v = detail::local_spinor(st, at);
    Eigen::Vector4cd psi, pix, piy;
    for (int k = 0; k < 4; ++k) {
      psi(k) = v.psi[k];
      pix(k) = 0.5 * (v.pi_plus[k] + v.pi_minus[k]);
      piy(k) = -0.5 * I * (v.pi_plus[k] - v.pi_minus[k]);
    }
    const Eigen::Vector4cd r = d.alpha_x * pix + d.alpha_y * piy + local * psi - E * psi;
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
    scale = std::max(scale, E * psi.cwiseAbs().maxCoeff());
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

// psi^dagger psi at a point (t and z drop out of the density).
inline double density(const SpinorState& st, const Point& at) {
  const SpinorValue v = eval_spinor(st, 0.0, at);
  double s = 0.0;
  for (const auto& c : v.comp) s += std::norm(c);
  return s;
}

}  // namespace landau_dirac::oracle
