#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "landau_dirac/errors.hpp"
#include "landau_dirac/model.hpp"

namespace landau_dirac {

// Landau number n_L with epsilon^2 = M^2 + 2|Z|b n_L for the (sigma-independent)
// total-energy formula: n + (|m| - m)/2 for Z > 0, n + (|m| + m)/2 for Z < 0.
inline int landau_number(int n_rho, int m, int charge) {
  const int am = std::abs(m);
  return n_rho + (charge > 0 ? (am - m) / 2 : (am + m) / 2);
}

// Magnitude of the Dirac transverse energy before the Pauli shift.
inline double landau_epsilon(int n_landau, const FieldConfig& cfg) {
  return std::sqrt(cfg.mass * cfg.mass + 2.0 * cfg.zb() * n_landau);
}

// True for the (sigma, n_rho = 0, m) combinations whose spinor is identically
// zero: (-, Z>0, m>=0), (+, Z<0, m<0) and (either sigma, Z<0, m>=0).
inline bool is_vanishing_state(Sigma sigma, int n_rho, int m, int charge) {
  if (charge == 0 || n_rho != 0) return false;
  if (charge > 0) return m >= 0 && sigma == Sigma::minus;
  if (m >= 0) return true;
  return sigma == Sigma::plus;
}

// Per-spin transverse energies. Z > 0: up uses 2n+|m|-m, down 2(n+1)+|m|-m.
// Z < 0: up uses 2(n+1)+|m|+m, down 2n+|m|+m.
inline double transverse_energy(Spin spin, const QuantumNumbers& qn, const FieldConfig& cfg) {
  if (cfg.neutral())
    throw error(error_kind::unsupported_basis, "transverse_energy needs Z != 0; use neutral_transverse_energy");
  const int base = landau_number(qn.n_rho, qn.m, cfg.charge);
  const bool shifted = (cfg.charge > 0) == (spin == Spin::down);
  return landau_epsilon(base + (shifted ? 1 : 0), cfg) - sign(qn.sigma) * 2.0 * cfg.lambda_b();
}

inline double neutral_transverse_energy(Sigma sigma, double p_perp2, const FieldConfig& cfg) {
  if (!cfg.neutral()) throw error(error_kind::unsupported_basis, "neutral_transverse_energy needs Z = 0");
  if (!(p_perp2 >= 0.0)) throw error(error_kind::domain, "p_perp^2 must be non-negative");
  return std::sqrt(cfg.mass * cfg.mass + p_perp2) - sign(sigma) * 2.0 * cfg.lambda_b();
}

struct EnergyLevel {
  QuantumNumbers qn{};
  std::optional<Spin> spin;  // spin layer of the per-spin formula that equals this level at (n, m)
  double p_perp = 0.0;       // neutral only
  double e_perp = 0.0;
  double e_total = 0.0;
  bool positive_branch = true;
  bool vanishing = false;
  int degeneracy_class = -1;

  std::string flags() const {
    std::string f;
    if (!positive_branch) f = "negative_e_perp";
    if (vanishing) f += f.empty() ? "vanishing" : "|vanishing";
    return f.empty() ? "ok" : f;
  }
};

// Total-energy level for a charged state: E = sqrt((eps -+ 2 lambda B)^2 + p_z^2).
// For Z > 0 the level coincides with the spin-up formula at (n, m); for Z < 0
// with the spin-down formula at (n, m).
inline EnergyLevel energy_level(const QuantumNumbers& qn, const FieldConfig& cfg) {
  if (cfg.neutral())
    throw error(error_kind::unsupported_basis, "energy_level needs Z != 0; use neutral_energy_level");
  if (qn.n_rho < 0) throw error(error_kind::domain, "n_rho must be non-negative");
  EnergyLevel lvl;
  lvl.qn = qn;
  lvl.spin = cfg.charge > 0 ? Spin::up : Spin::down;
  lvl.e_perp = landau_epsilon(landau_number(qn.n_rho, qn.m, cfg.charge), cfg) -
               sign(qn.sigma) * 2.0 * cfg.lambda_b();
  lvl.e_total = std::sqrt(lvl.e_perp * lvl.e_perp + qn.p_z * qn.p_z);
  lvl.positive_branch = lvl.e_perp >= 0.0;
  lvl.vanishing = is_vanishing_state(qn.sigma, qn.n_rho, qn.m, cfg.charge);
  return lvl;
}

inline EnergyLevel neutral_energy_level(Sigma sigma, double p_perp, double p_z, const FieldConfig& cfg) {
  EnergyLevel lvl;
  lvl.qn = {sigma, 0, 0, p_z};
  lvl.p_perp = p_perp;
  lvl.e_perp = neutral_transverse_energy(sigma, p_perp * p_perp, cfg);
  lvl.e_total = std::sqrt(lvl.e_perp * lvl.e_perp + p_z * p_z);
  lvl.positive_branch = lvl.e_perp >= 0.0;
  return lvl;
}

namespace detail {
inline void require_positive_branch(const EnergyLevel& lvl) {
  if (!lvl.positive_branch)
    throw error(error_kind::outside_positive_branch,
                "E_perp = " + detail::shortest(lvl.e_perp) + " < 0: the Pauli shift exceeds the rest energy");
}
}  // namespace detail

inline double total_energy(const QuantumNumbers& qn, const FieldConfig& cfg) {
  const EnergyLevel lvl = energy_level(qn, cfg);
  detail::require_positive_branch(lvl);
  return lvl.e_total;
}

inline double neutral_total_energy(Sigma sigma, double p_perp2, double p_z, const FieldConfig& cfg) {
  const EnergyLevel lvl = neutral_energy_level(sigma, std::sqrt(p_perp2), p_z, cfg);
  detail::require_positive_branch(lvl);
  return lvl.e_total;
}

// Non-relativistic energy E - M in the relabelled quantum numbers where both
// spin projections use f_{n,m}:
//   Z > 0: (Zb/M)(n + (|m|-m+1)/2) -+ mu Zb/(2M) + p_z^2/2M
//   Z < 0: (|Z|b/M)(n + (|m|+m+1)/2) +- mu |Z|b/(2M) + p_z^2/2M
// Neutral: p^2/2M -+ kappa b/(2M) with p^2 = p_z^2 (use neutral_nonrel_energy for p_perp).
inline double nonrel_energy(const QuantumNumbers& qn, const FieldConfig& cfg) {
  const double M = cfg.mass;
  const double kin = qn.p_z * qn.p_z / (2.0 * M);
  const int s = sign(qn.sigma);
  if (cfg.neutral()) return kin - s * 0.5 * cfg.kappa * cfg.field_b / M;
  const double w = cfg.zb() / M;
  const int am = std::abs(qn.m);
  if (cfg.charge > 0) return w * (qn.n_rho + 0.5 * (am - qn.m + 1)) - s * 0.5 * cfg.mu() * w + kin;
  return w * (qn.n_rho + 0.5 * (am + qn.m + 1)) + s * 0.5 * cfg.mu() * w + kin;
}

inline double neutral_nonrel_energy(Sigma sigma, double p2, const FieldConfig& cfg) {
  if (!cfg.neutral()) throw error(error_kind::unsupported_basis, "neutral_nonrel_energy needs Z = 0");
  return p2 / (2.0 * cfg.mass) - sign(sigma) * 0.5 * cfg.kappa * cfg.field_b / cfg.mass;
}

// Non-relativistic energy indexed by the relativistic (sigma, n_rho, m) of
// each branch, i.e. before relabelling to the f_{n,m} used by nonrel_energy.
inline double nonrel_energy_preshift(const QuantumNumbers& qn, const FieldConfig& cfg) {
  if (cfg.neutral()) return nonrel_energy(qn, cfg);
  const double M = cfg.mass;
  const double w = cfg.zb() / M;
  const double kin = qn.p_z * qn.p_z / (2.0 * M);
  const double pauli = 0.5 * cfg.mu() * w;
  const int n = qn.n_rho;
  const int m = qn.m;
  const int am = std::abs(m);
  if (cfg.charge > 0) {
    if (qn.sigma == Sigma::plus) return w * (n + 0.5 * (am - m + 1)) - pauli + kin;
    if (m >= 0) return w * (n - 1 + 0.5 * ((am + 1) - (m + 1) + 1)) + pauli + kin;
    return w * (n + 0.5 * ((am - 1) - (m + 1) + 1)) + pauli + kin;
  }
  if (qn.sigma == Sigma::plus) return w * (n - 1 + 0.5 * (am + m + 1)) + pauli + kin;
  if (m >= 0) return w * (n - 1 + 0.5 * ((am + 1) + (m + 1) + 1)) - pauli + kin;
  return w * (n + 0.5 * ((am - 1) + (m + 1) + 1)) - pauli + kin;
}

struct SpectrumRanges {
  int n_min = 0;
  int n_max = 0;
  int m_min = 0;
  int m_max = 0;
  std::vector<double> p_z{0.0};
  std::vector<double> p_perp{0.0};  // neutral configs only

  bool empty(bool neutral) const {
    if (p_z.empty()) return true;
    if (neutral) return p_perp.empty();
    return n_max < n_min || m_max < m_min;
  }
};

// Levels for both sigma over the ranges, sorted by E_total then quantum
// numbers; equal E_total values share a degeneracy class id.
inline std::vector<EnergyLevel> spectrum_table(const FieldConfig& cfg, const SpectrumRanges& r) {
  std::vector<EnergyLevel> rows;
  if (r.empty(cfg.neutral())) return rows;
  if (!cfg.neutral() && r.n_min < 0) throw error(error_kind::domain, "n_rho range must start at >= 0");
  for (Sigma s : {Sigma::plus, Sigma::minus}) {
    for (double pz : r.p_z) {
      if (cfg.neutral()) {
        for (double pp : r.p_perp) rows.push_back(neutral_energy_level(s, pp, pz, cfg));
        continue;
      }
      for (int n = r.n_min; n <= r.n_max; ++n)
        for (int m = r.m_min; m <= r.m_max; ++m) rows.push_back(energy_level({s, n, m, pz}, cfg));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const EnergyLevel& a, const EnergyLevel& b) {
    if (a.e_total != b.e_total) return a.e_total < b.e_total;
    if (!(a.qn == b.qn)) return qn_less(a.qn, b.qn);
    return a.p_perp < b.p_perp;
  });
  int cls = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0 || rows[i].e_total != rows[i - 1].e_total) ++cls;
    rows[i].degeneracy_class = cls;
  }
  return rows;
}

}  // namespace landau_dirac
