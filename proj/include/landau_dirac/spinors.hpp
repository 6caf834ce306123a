#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "landau_dirac/basis.hpp"
#include "landau_dirac/errors.hpp"
#include "landau_dirac/model.hpp"
#include "landau_dirac/parallel.hpp"
#include "landau_dirac/spectra.hpp"

namespace landau_dirac {

// Basis functions of the two spinor slots: rows 1 and 3 (phi_up, chi_up) use
// slot a, rows 2 and 4 (phi_down, chi_down) use slot b.
struct SlotMap {
  BasisIndex a;
  BasisIndex b;
};

inline SlotMap slot_map(int n_rho, int m, int charge) {
  auto idx = [](int n, int mm) { return BasisIndex{n < 0 ? -1 : n, mm}; };
  if (charge > 0) {
    if (m >= 0) return {idx(n_rho, m), idx(n_rho - 1, m + 1)};
    return {idx(n_rho, m), idx(n_rho, m + 1)};
  }
  if (m >= 0) return {idx(n_rho - 1, m), idx(n_rho - 1, m + 1)};
  return {idx(n_rho - 1, m), idx(n_rho, m + 1)};
}

struct SpinorCoefficients {
  std::array<cplx, 4> c{};
  std::array<BasisIndex, 4> basis{};
  double energy = 0.0;
  double e_perp = 0.0;
  bool vanishing = false;
};

enum class StateKind { charged_pos, charged_neg, neutral };

struct SpinorState {
  QuantumNumbers qn{};
  FieldConfig cfg{};
  SpinorCoefficients coefficients{};
  StateKind kind = StateKind::charged_pos;
  bool vanishing = false;
  bool nonrelativistic = false;
  std::array<double, 2> p_perp{};  // (p_x, p_y) of a neutral plane wave

  double energy() const { return coefficients.energy; }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct SpinorValue {
  std::array<cplx, 4> comp{};
  double t = 0.0;
  Point at{};
};

// Norm convention: the transverse integral of psi^dagger psi equals 2 E (2 pi)^2.
inline double norm_target(double energy) {
  return 2.0 * energy * 4.0 * std::numbers::pi * std::numbers::pi;
}

namespace detail {

inline double log_norm(const BasisIndex& idx, const FieldConfig& cfg) {
  return log_norm_coeff(idx.n_rho, std::abs(idx.m), cfg.zb());
}

// Rotates amplitudes so the largest one is +i on rows 1, 3 and +1 on rows 2, 4.
// Ties resolve to the lower row.
inline void fix_phase(std::array<cplx, 4>& amp) {
  double best = 0.0;
  for (const auto& a : amp) best = std::max(best, std::abs(a));
  if (best == 0.0) return;
  int k = 0;
  while (std::abs(amp[k]) < best * (1.0 - 1e-9)) ++k;
  const cplx target = (k == 0 || k == 2) ? cplx{0.0, 1.0} : cplx{1.0, 0.0};
  const cplx rot = target * std::conj(amp[k]) / std::abs(amp[k]);
  for (auto& a : amp) a *= rot;
}

inline StateKind kind_of(const FieldConfig& cfg) {
  if (cfg.neutral()) return StateKind::neutral;
  return cfg.charge > 0 ? StateKind::charged_pos : StateKind::charged_neg;
}

}  // namespace detail

// Hamiltonian and the Pauli-branch operator beta Sigma_z H_perp, in the
// orthonormal basis f/|f| of the four spinor rows. Rows whose slot vanishes are
// still present; callers drop them.
struct CoefficientSystem {
  Eigen::Matrix4cd h;
  Eigen::Matrix4cd t;
  SlotMap slots;
  std::array<bool, 4> active{};
};

inline CoefficientSystem coefficient_system(const QuantumNumbers& qn, const FieldConfig& cfg) {
  detail::require_charged(cfg, "coefficient_system");
  CoefficientSystem sys;
  sys.slots = slot_map(qn.n_rho, qn.m, cfg.charge);
  const BasisIndex a = sys.slots.a;
  const BasisIndex b = sys.slots.b;
  sys.active = {!a.vanishing(), !b.vanishing(), !a.vanishing(), !b.vanishing()};

  // pi_+ f_a = c_plus f_b and pi_- f_b = c_minus f_a. In the normalized basis the
  // two couplings become gamma_plus and gamma_minus = conj(gamma_plus).
  cplx gp{}, gm{};
  if (!a.vanishing() && !b.vanishing()) {
    const LadderResult up = apply_pi_plus(a, cfg);
    const LadderResult down = apply_pi_minus(b, cfg);
    if (!(up.target == b) || !(down.target == a))
      throw error(error_kind::degenerate_coefficients, "ladder targets do not close on the slot pair");
    const double ratio = std::exp(0.5 * (detail::log_norm(b, cfg) - detail::log_norm(a, cfg)));
    gp = up.coefficient * ratio;
    gm = down.coefficient / ratio;
  }

  const double M = cfg.mass;
  const double lb2 = 2.0 * cfg.lambda_b();
  const double pz = qn.p_z;
  Eigen::Matrix4cd hp = Eigen::Matrix4cd::Zero();  // H_perp without the Pauli term
  hp(0, 0) = M;
  hp(1, 1) = M;
  hp(2, 2) = -M;
  hp(3, 3) = -M;
  hp(0, 3) = gm;
  hp(1, 2) = gp;
  hp(2, 1) = gm;
  hp(3, 0) = gp;

  const Eigen::Vector4d bs(1.0, -1.0, -1.0, 1.0);  // beta Sigma_z
  sys.h = hp;
  for (int i = 0; i < 4; ++i) sys.h(i, i) -= lb2 * bs(i);
  sys.h(0, 2) += pz;
  sys.h(2, 0) += pz;
  sys.h(1, 3) -= pz;
  sys.h(3, 1) -= pz;
  sys.t = bs.asDiagonal() * hp;
  return sys;
}

// Solves the first-order system for one state: the coefficient vector is the
// joint null vector of (H - E) and (beta Sigma_z H_perp - sigma*eps), which
// fixes the branch even when kappa = 0 makes the energies coincide.
inline SpinorCoefficients solve_coefficients(const QuantumNumbers& qn, const FieldConfig& cfg) {
  detail::require_charged(cfg, "solve_coefficients");
  if (qn.n_rho < 0) throw error(error_kind::domain, "n_rho must be non-negative");
  const EnergyLevel lvl = energy_level(qn, cfg);
  detail::require_positive_branch(lvl);

  const CoefficientSystem sys = coefficient_system(qn, cfg);
  SpinorCoefficients out;
  out.energy = lvl.e_total;
  out.e_perp = lvl.e_perp;
  out.basis = {sys.slots.a, sys.slots.b, sys.slots.a, sys.slots.b};

  std::vector<int> rows;
  for (int i = 0; i < 4; ++i)
    if (sys.active[i]) rows.push_back(i);
  if (rows.empty()) {
    out.vanishing = true;
    return out;
  }

  const double eps = landau_epsilon(landau_number(qn.n_rho, qn.m, cfg.charge), cfg);
  const int k = static_cast<int>(rows.size());
  Eigen::MatrixXcd stack(2 * k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      const double diag = r == c ? 1.0 : 0.0;
      stack(r, c) = sys.h(rows[r], rows[c]) - lvl.e_total * diag;
      stack(k + r, c) = sys.t(rows[r], rows[c]) - sign(qn.sigma) * eps * diag;
    }
  const double scale = std::max({1.0, lvl.e_total, eps, sys.h.cwiseAbs().maxCoeff()});
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int null_dim = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) < 1e-9 * scale) ++null_dim;

  if (null_dim == 0) {
    if (k < 4) {
      out.vanishing = true;
      return out;
    }
    throw error(error_kind::degenerate_coefficients,
                "no solution of the first-order system for " + state_label(qn, cfg));
  }
  if (null_dim > 1)
    throw error(error_kind::degenerate_coefficients,
                "null space of dimension " + std::to_string(null_dim) + " for " + state_label(qn, cfg));

  const Eigen::VectorXcd v = svd.matrixV().col(k - 1);
  std::array<cplx, 4> amp{};
  const double norm = std::sqrt(norm_target(lvl.e_total));
  for (int r = 0; r < k; ++r) amp[rows[r]] = v(r) * norm;
  detail::fix_phase(amp);
  for (int i = 0; i < 4; ++i)
    out.c[i] = sys.active[i] ? amp[i] * std::exp(-0.5 * detail::log_norm(out.basis[i], cfg)) : cplx{};
  return out;
}

// Amplitudes in the normalized basis: c_i * |f_i|.
inline std::array<cplx, 4> normalized_amplitudes(const SpinorCoefficients& sc, const FieldConfig& cfg) {
  std::array<cplx, 4> amp{};
  for (int i = 0; i < 4; ++i)
    if (!sc.basis[i].vanishing() && sc.c[i] != cplx{})
      amp[i] = sc.c[i] * std::exp(0.5 * detail::log_norm(sc.basis[i], cfg));
  return amp;
}

inline SpinorState make_charged_state(const QuantumNumbers& qn, const FieldConfig& cfg) {
  SpinorState st;
  st.qn = qn;
  st.cfg = cfg;
  st.kind = detail::kind_of(cfg);
  st.coefficients = solve_coefficients(qn, cfg);
  st.vanishing = st.coefficients.vanishing;
  return st;
}

// Plane-wave solution for Z = 0. The closed form is rearranged so that the
// p_perp -> 0 and p_z -> 0 limits are finite:
//   sigma=+: (u(E+Ep), -pz|p|/(eps+M), pz u, (E+Ep)|p|/(eps+M)) / sqrt(2(E+Ep)eps/(eps+M))
//   sigma=-: (p_-|pz|/(E+Ep), s(eps+M), s p_-, -|pz|(eps+M)/(E+Ep)) / sqrt(2 eps(eps+M)/(E+Ep))
// with p_- = px - i py, |p| = |p_perp|, u = p_-/|p|, s = sign(pz).
inline SpinorState neutral_spinor(const std::array<double, 3>& p, Sigma sigma, const FieldConfig& cfg) {
  if (!cfg.neutral()) throw error(error_kind::unsupported_basis, "neutral_spinor needs Z = 0");
  const double M = cfg.mass;
  const double pp = std::hypot(p[0], p[1]);
  const double pz = p[2];
  const EnergyLevel lvl = neutral_energy_level(sigma, pp, pz, cfg);
  detail::require_positive_branch(lvl);
  const double E = lvl.e_total;
  const double Ep = lvl.e_perp;
  const double eps = std::sqrt(M * M + pp * pp);
  const cplx pm{p[0], -p[1]};

  std::array<cplx, 4> c{};
  if (sigma == Sigma::plus) {
    const cplx u = pp > 0.0 ? pm / pp : cplx{1.0, 0.0};
    const double w = (E + Ep);
    const double r = pp / (eps + M);
    c = {u * w, cplx{-pz * r}, pz * u, cplx{w * r}};
    const double den = std::sqrt(2.0 * w * eps / (eps + M));
    for (auto& x : c) x /= den;
  } else {
    const double s = pz < 0.0 ? -1.0 : 1.0;
    const double w = E + Ep;
    const double q = std::abs(pz) / w;
    c = {pm * q, cplx{s * (eps + M)}, s * pm, cplx{-q * (eps + M)}};
    const double den = std::sqrt(2.0 * eps * (eps + M) / w);
    for (auto& x : c) x /= den;
  }
  detail::fix_phase(c);

  SpinorState st;
  st.qn = {sigma, 0, 0, pz};
  st.cfg = cfg;
  st.kind = StateKind::neutral;
  st.p_perp = {p[0], p[1]};
  st.coefficients.c = c;
  st.coefficients.energy = E;
  st.coefficients.e_perp = Ep;
  return st;
}

inline SpinorValue eval_spinor(const SpinorState& st, double t, const Point& at) {
  SpinorValue out;
  out.t = t;
  out.at = at;
  if (st.vanishing) return out;
  const SpinorCoefficients& sc = st.coefficients;
  if (st.kind == StateKind::neutral) {
    const double phase = -sc.energy * t + st.p_perp[0] * at.x + st.p_perp[1] * at.y + st.qn.p_z * at.z;
    const cplx carrier = std::polar(1.0, phase);
    for (int i = 0; i < 4; ++i) out.comp[i] = sc.c[i] * carrier;
    return out;
  }
  const double rho = std::hypot(at.x, at.y);
  const double phi = std::atan2(at.y, at.x);
  const cplx carrier = std::polar(1.0, -sc.energy * t + st.qn.p_z * at.z);
  const cplx fa = eval_f(sc.basis[0], rho, phi, st.cfg);
  const cplx fb = eval_f(sc.basis[1], rho, phi, st.cfg);
  out.comp = {sc.c[0] * fa * carrier, sc.c[1] * fb * carrier, sc.c[2] * fa * carrier,
              sc.c[3] * fb * carrier};
  return out;
}

// Two-upper-component limit. Charged sigma=+ keeps f of slot a in row 1 and
// sigma=- keeps f of slot b in row 2, normalized to 2M (2 pi)^2; the quantum
// numbers are relabelled to that slot. The carrier energy is the
// non-relativistic E - M.
inline SpinorState nonrel_limit_spinor(const SpinorState& st) {
  SpinorState out = st;
  out.nonrelativistic = true;
  if (st.vanishing) return out;
  const FieldConfig& cfg = st.cfg;
  const double root = std::sqrt(2.0 * cfg.mass);
  SpinorCoefficients& sc = out.coefficients;
  std::array<cplx, 4> amp{};
  const int row = st.qn.sigma == Sigma::plus ? 0 : 1;

  if (st.kind == StateKind::neutral) {
    amp[row] = root;
    detail::fix_phase(amp);
    sc.c = amp;
    const double p2 = st.p_perp[0] * st.p_perp[0] + st.p_perp[1] * st.p_perp[1] + st.qn.p_z * st.qn.p_z;
    sc.energy = neutral_nonrel_energy(st.qn.sigma, p2, cfg);
    sc.e_perp = sc.energy - st.qn.p_z * st.qn.p_z / (2.0 * cfg.mass);
    return out;
  }

  const BasisIndex slot = sc.basis[row];
  out.qn = {st.qn.sigma, slot.n_rho, slot.m, st.qn.p_z};
  amp[row] = 2.0 * std::numbers::pi * root;
  detail::fix_phase(amp);
  for (int i = 0; i < 4; ++i) sc.c[i] = i == row ? amp[i] * std::exp(-0.5 * detail::log_norm(slot, cfg)) : cplx{};
  sc.energy = nonrel_energy(out.qn, cfg);
  sc.e_perp = sc.energy - st.qn.p_z * st.qn.p_z / (2.0 * cfg.mass);
  return out;
}

struct StateRanges {
  int n_min = 0;
  int n_max = 0;
  int m_min = 0;
  int m_max = 0;
  std::vector<double> p_z{0.0};
  std::vector<Sigma> sigmas{Sigma::plus, Sigma::minus};
};

struct StateEnumeration {
  std::vector<SpinorState> states;
  std::vector<QuantumNumbers> vanishing;
};

// Solves every (sigma, n, m, p_z) in range; ordering is sigma, n, m, p_z.
inline StateEnumeration enumerate_states(const FieldConfig& cfg, const StateRanges& r) {
  detail::require_charged(cfg, "enumerate_states");
  std::vector<QuantumNumbers> qns;
  for (Sigma s : r.sigmas)
    for (int n = r.n_min; n <= r.n_max; ++n)
      for (int m = r.m_min; m <= r.m_max; ++m)
        for (double pz : r.p_z) qns.push_back({s, n, m, pz});

  std::vector<SpinorState> solved(qns.size());
  parallel_for(qns.size(), [&](std::size_t i) { solved[i] = make_charged_state(qns[i], cfg); });

  StateEnumeration out;
  for (auto& st : solved) {
    if (st.vanishing) out.vanishing.push_back(st.qn);
    else out.states.push_back(std::move(st));
  }
  return out;
}

}  // namespace landau_dirac
