#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "landau_dirac/basis.hpp"
#include "landau_dirac/spectra.hpp"
#include "landau_dirac/spinors.hpp"

namespace landau_dirac {

// Transcription of the published closed-form charged spinors, used only as a
// regression cross-check against the solver. The general forms cover n_rho >= 1
// (and m < 0 with Z > 0 at n_rho = 0); the lowest-level forms cover the
// remaining n_rho = 0 entries, including the identically zero ones.
struct PrintedForm {
  enum class Source { general, lowest_level, zero } source = Source::general;
  std::array<cplx, 4> c{};  // coefficients of the slot functions, same layout as SpinorCoefficients
  bool defined = true;      // false when the printed prefactor is 0/0 or infinite
};

inline const char* to_string(PrintedForm::Source s) {
  switch (s) {
    case PrintedForm::Source::general: return "general";
    case PrintedForm::Source::lowest_level: return "lowest-level";
    case PrintedForm::Source::zero: return "zero";
  }
  return "?";
}

inline PrintedForm printed_form(const QuantumNumbers& qn, const FieldConfig& cfg) {
  detail::require_charged(cfg, "printed_form");
  const EnergyLevel lvl = energy_level(qn, cfg);
  const double E = lvl.e_total;
  const double Ep = lvl.e_perp;
  const double pz = qn.p_z;
  const double zb = cfg.zb();
  const double M = cfg.mass;
  const double lb2 = 2.0 * cfg.lambda_b();
  const double s = sign(qn.sigma);
  const int n = qn.n_rho;
  const int m = qn.m;
  const int am = std::abs(m);
  const cplx i{0.0, 1.0};
  const double pi = std::numbers::pi;
  const double ln2 = std::numbers::ln2;

  PrintedForm out;
  auto finish = [&](double log_pre, std::array<cplx, 4> col) {
    const double P = E + s * Ep;
    const double Q = Ep + s * lb2;
    const double R = Q - s * M;
    const double den = P * Q * R;
    if (!(den > 0.0) || !std::isfinite(log_pre)) {
      out.defined = false;
      return out;
    }
    const double pre = std::exp(log_pre) / std::sqrt(den);
    for (auto& x : col) x *= pre;
    out.c = col;
    return out;
  };
  const double P = E + s * Ep;
  const double R = Ep + s * lb2 - s * M;

  if (n == 0) {
    if (cfg.charge > 0 && m >= 0) {
      if (qn.sigma == Sigma::minus) {
        out.source = PrintedForm::Source::zero;
        return out;
      }
      out.source = PrintedForm::Source::lowest_level;
      const double w = E + Ep;
      const double log_pre =
          0.5 * (std::log(pi) + (m + 1) * std::log(zb) - (m - 1) * ln2 - std::lgamma(m + 1.0));
      const cplx pre = i * std::exp(log_pre) * std::sqrt(w);
      out.c = {pre, 0.0, pre * pz / w, 0.0};
      return out;
    }
    if (cfg.charge < 0) {
      if (m >= 0 || qn.sigma == Sigma::plus) {
        out.source = PrintedForm::Source::zero;
        return out;
      }
      out.source = PrintedForm::Source::lowest_level;
      const double w = E + Ep;
      const double log_pre =
          0.5 * (std::log(pi) + am * std::log(zb) - (am - 2) * ln2 - std::lgamma(double(am)));
      const double pre = std::exp(log_pre) * std::sqrt(w);
      out.c = {0.0, pre, 0.0, -pre * pz / w};
      return out;
    }
    out.source = PrintedForm::Source::lowest_level;  // Z > 0, m < 0: general form at n = 0
  }

  if (cfg.charge > 0 && m >= 0) {
    const double log_pre = 0.5 * (std::log(pi) + std::lgamma(double(n)) + (m + 2) * std::log(zb) -
                                  (m + 1) * ln2 - std::lgamma(n + m + 1.0));
    return finish(log_pre, {2.0 * i * double(n) * P, s * pz * R, 2.0 * i * double(n) * pz, -s * R * P});
  }
  if (cfg.charge > 0) {
    const double log_pre = 0.5 * (std::log(pi) + std::lgamma(n + 1.0) + am * std::log(zb) -
                                  (am - 1) * ln2 - std::lgamma(double(n + am)));
    return finish(log_pre, {i * zb * P, -s * pz * R, i * zb * pz, s * R * P});
  }
  if (m >= 0) {
    const double log_pre = 0.5 * (std::log(pi) + std::lgamma(double(n)) + (m + 2) * std::log(zb) -
                                  (m + 1) * ln2 - std::lgamma(n + m + 1.0));
    const double k = 2.0 * (n + m);
    return finish(log_pre, {i * k * P, s * pz * R, i * k * pz, -s * R * P});
  }
  const double log_pre = 0.5 * (std::log(pi) + std::lgamma(n + 1.0) + am * std::log(zb) -
                                (am - 1) * ln2 - std::lgamma(double(n + am)));
  return finish(log_pre, {i * zb * P, -s * pz * R, i * zb * pz, s * R * P});
}

struct ErratumEntry {
  QuantumNumbers qn{};
  std::string branch;   // e.g. "(+,Z>0,m>=0,n>=1)"
  std::string source;   // which printed family was used
  std::string status;   // match | direction-mismatch | normalization-mismatch | undefined | zero-match | zero-mismatch
  double misalignment = 0.0;  // 1 - |<printed, solved>| / (|printed| |solved|)
  double norm_ratio = 1.0;    // |printed| / |solved| in the normalized basis
};

inline std::string erratum_branch(const QuantumNumbers& qn, int charge) {
  std::string b = "(";
  b += symbol(qn.sigma);
  b += charge > 0 ? ",Z>0" : ",Z<0";
  b += qn.m >= 0 ? ",m>=0" : ",m<0";
  b += qn.n_rho == 0 ? ",n=0)" : ",n>=1)";
  return b;
}

// Compares one solver state with the printed form up to a global phase.
inline ErratumEntry compare_printed(const QuantumNumbers& qn, const FieldConfig& cfg, double tol = 1e-9) {
  ErratumEntry e;
  e.qn = qn;
  e.branch = erratum_branch(qn, cfg.charge);
  const PrintedForm pf = printed_form(qn, cfg);
  e.source = to_string(pf.source);
  const SpinorCoefficients sc = solve_coefficients(qn, cfg);

  if (pf.source == PrintedForm::Source::zero) {
    e.status = sc.vanishing ? "zero-match" : "zero-mismatch";
    return e;
  }
  if (!pf.defined) {
    e.status = "undefined";
    return e;
  }
  if (sc.vanishing) {
    e.status = "zero-mismatch";
    return e;
  }
  SpinorCoefficients printed = sc;
  printed.c = pf.c;
  const auto a = normalized_amplitudes(printed, cfg);
  const auto b = normalized_amplitudes(sc, cfg);
  cplx dot{};
  double na = 0.0, nb = 0.0;
  for (int k = 0; k < 4; ++k) {
    dot += std::conj(a[k]) * b[k];
    na += std::norm(a[k]);
    nb += std::norm(b[k]);
  }
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  e.misalignment = na > 0.0 ? 1.0 - std::abs(dot) / (na * nb) : 1.0;
  e.norm_ratio = na / nb;
  if (e.misalignment > tol) e.status = "direction-mismatch";
  else if (std::abs(e.norm_ratio - 1.0) > tol) e.status = "normalization-mismatch";
  else e.status = "match";
  return e;
}

}  // namespace landau_dirac
