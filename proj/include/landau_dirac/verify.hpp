#pragma once

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "landau_dirac/basis.hpp"
#include "landau_dirac/errors.hpp"
#include "landau_dirac/model.hpp"
#include "landau_dirac/oracle/checks.hpp"
#include "landau_dirac/oracle/eigen_oracle.hpp"
#include "landau_dirac/oracle/grid_hamiltonian.hpp"
#include "landau_dirac/oracle/quadrature.hpp"
#include "landau_dirac/parallel.hpp"
#include "landau_dirac/printed_forms.hpp"
#include "landau_dirac/spectra.hpp"
#include "landau_dirac/spinors.hpp"

namespace landau_dirac::verify {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string level;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

// Deliberate defects for exercising the suite itself.
enum class Fault { none, coefficient, vanishing };

inline Fault parse_fault(const std::string& s) {
  if (s.empty() || s == "none") return Fault::none;
  if (s == "coefficient") return Fault::coefficient;
  if (s == "vanishing") return Fault::vanishing;
  throw error(error_kind::parse, "unknown fault '" + s + "'");
}

// A product family of charged states.
struct StateFamily {
  std::vector<int> charges{1, -1};
  std::vector<double> kappas{0.0, 1.79};
  double field_b = 0.2;
  int n_max = 4;
  int m_max = 4;
  std::vector<double> p_z{0.0, 0.3};
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

inline CheckResult result(std::string name, double measured, double tol, std::string detail) {
  return {std::move(name), measured, tol, measured <= tol, std::move(detail)};
}

inline std::string describe(const SpinorState& st) {
  return state_label(st.qn, st.cfg) + " kappa=" + detail::fmt(st.cfg.kappa) + " b=" + detail::fmt(st.cfg.field_b);
}

// Scales the largest coefficient by 1 + 1e-3.
inline void inject(SpinorState& st, Fault f) {
  if (f != Fault::coefficient || st.vanishing) return;
  auto& c = st.coefficients.c;
  auto it = std::max_element(c.begin(), c.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  *it *= 1.0 + 1e-3;
}

inline std::vector<SpinorState> family_states(const StateFamily& fam, int charge, double kappa,
                                              const std::vector<double>& p_z) {
  const FieldConfig cfg = make_config(1.0, fam.field_b, charge, kappa);
  StateRanges r;
  r.n_max = fam.n_max;
  r.m_min = -fam.m_max;
  r.m_max = fam.m_max;
  r.p_z = p_z;
  return enumerate_states(cfg, r).states;
}

inline std::vector<SpinorState> family_states(const StateFamily& fam) {
  std::vector<SpinorState> all;
  for (int z : fam.charges)
    for (double k : fam.kappas) {
      auto part = family_states(fam, z, k, fam.p_z);
      all.insert(all.end(), part.begin(), part.end());
    }
  return all;
}

// Worst value of fn over the states, evaluated in parallel.
inline CheckResult worst_over(const std::string& name, const std::vector<SpinorState>& states, double tol,
                              const std::function<double(const SpinorState&, std::size_t)>& fn) {
  std::vector<double> v(states.size(), 0.0);
  parallel_for(states.size(), [&](std::size_t i) { v[i] = fn(states[i], i); });
  std::size_t worst = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] <= v[worst])) worst = i;
  const double w = v.empty() ? 0.0 : v[worst];
  std::string d = std::to_string(states.size()) + " states";
  if (!states.empty()) d += "; worst " + describe(states[worst]);
  return result(name, w, tol, d);
}

// Least-squares slope of log y against log x.
inline double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

// ---- analytic checks -------------------------------------------------------

inline CheckResult check_first_order(const StateFamily& fam, int points, std::uint64_t seed,
                                     Fault fault = Fault::none) {
  const auto states = detail::family_states(fam);
  return detail::worst_over("first_order_system", states, 1e-10, [&](const SpinorState& s, std::size_t i) {
    SpinorState st = s;
    detail::inject(st, fault);
    return oracle::check_first_order_system(st, oracle::sample_points(st, points, detail::mix_seed(seed, i)));
  });
}

inline CheckResult check_hamiltonian_pointwise(const StateFamily& fam, int points, std::uint64_t seed,
                                               Fault fault = Fault::none) {
  const auto states = detail::family_states(fam);
  return detail::worst_over("hamiltonian_pointwise", states, 1e-9, [&](const SpinorState& s, std::size_t i) {
    SpinorState st = s;
    detail::inject(st, fault);
    return oracle::hamiltonian_residual_pointwise(st, oracle::sample_points(st, points, detail::mix_seed(seed, i)));
  });
}

// Quadrature Gram matrices per (Z, kappa, p_z) block: diagonal against
// 2E(2 pi)^2, off-diagonal against the diagonal scale, and the basis norms
// against the closed-form overlap.
inline std::vector<CheckResult> check_normalization(const StateFamily& fam, const oracle::QuadratureSpec& spec = {},
                                                    Fault fault = Fault::none) {
  double diag = 0.0, off = 0.0, refine = 0.0;
  std::string diag_at, off_at;
  std::size_t count = 0;
  for (int z : fam.charges)
    for (double k : fam.kappas)
      for (double pz : fam.p_z) {
        auto states = detail::family_states(fam, z, k, {pz});
        for (auto& st : states) detail::inject(st, fault);
        const oracle::QuadratureResult q = oracle::quad_gram(states, spec);
        refine = std::max(refine, q.refinement_change);
        count += states.size();
        for (std::size_t i = 0; i < states.size(); ++i) {
          const double target = norm_target(states[i].energy());
          const double d = std::abs(q.gram[i][i] - target) / target;
          if (d > diag || diag_at.empty()) {
            diag = std::max(diag, d);
            diag_at = detail::describe(states[i]);
          }
          for (std::size_t j = 0; j < i; ++j) {
            const double o = std::abs(q.gram[i][j]) / std::sqrt(std::abs(q.gram[i][i] * q.gram[j][j]));
            if (o > off || off_at.empty()) {
              off = std::max(off, o);
              off_at = detail::describe(states[i]) + " vs " + state_label(states[j].qn, states[j].cfg);
            }
          }
        }
      }

  double basis = 0.0;
  std::string basis_at;
  for (int z : fam.charges) {
    const FieldConfig cfg = make_config(1.0, fam.field_b, z, 0.0);
    for (int n = 0; n <= fam.n_max; ++n)
      for (int m = -fam.m_max - 1; m <= fam.m_max + 1; ++m) {
        const BasisIndex idx{n, m};
        const double exact = transverse_overlap(idx, idx, cfg);
        const double d = std::abs(oracle::quad_basis_norm(idx, cfg, spec) - exact) / exact;
        if (d > basis || basis_at.empty()) {
          basis = std::max(basis, d);
          basis_at = "f(" + std::to_string(n) + "," + std::to_string(m) + ") Z=" + std::to_string(z);
        }
      }
  }
  const std::string n = std::to_string(count) + " states, refinement change " + detail::fmt(refine);
  return {detail::result("normalization", diag, 1e-8, n + "; worst " + diag_at),
          detail::result("orthogonality", off, 1e-9, n + "; worst " + off_at),
          detail::result("basis_norm", basis, 1e-10, "worst " + basis_at)};
}

// Ladder coefficients against the direct differential action, and the
// commutator [pi_+, pi_-] = 2 Z b, at seeded points per index. Each index is
// judged relative to max(|pi f|, sqrt(|Z| b) |f|) over its sample set.
inline std::vector<CheckResult> check_ladder(int n_max, int m_max, double field_b, const std::vector<int>& charges,
                                             int points, std::uint64_t seed) {
  struct Job {
    int charge, n, m;
  };
  std::vector<Job> jobs;
  for (int z : charges)
    for (int n = 0; n <= n_max; ++n)
      for (int m = -m_max; m <= m_max; ++m) jobs.push_back({z, n, m});
  std::vector<double> lad(jobs.size()), com(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t j) {
    const FieldConfig cfg = make_config(1.0, field_b, jobs[j].charge, 0.0);
    const BasisIndex idx{jobs[j].n, jobs[j].m};
    const double radius = std::sqrt(2.0 * (4.0 * idx.n_rho + 2.0 * std::abs(idx.m) + 8.0) / cfg.zb());
    std::mt19937_64 rng(detail::mix_seed(seed, j));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const LadderResult up = apply_pi_plus(idx, cfg), dn = apply_pi_minus(idx, cfg);
    const double zs = cfg.charge * cfg.field_b;
    double lw = 0, ls = 0, cw = 0, cs = 0;
    for (int p = 0; p < points; ++p) {
      const double rho = radius * std::sqrt(u(rng));
      const double phi = 2.0 * std::numbers::pi * u(rng);
      const cplx f = eval_f(idx, rho, phi, cfg);
      const double base = std::sqrt(cfg.zb()) * std::abs(f);
      for (const auto& [dir, lr] : {std::pair{Ladder::plus, up}, std::pair{Ladder::minus, dn}}) {
        const cplx direct = pi_pointwise(dir, idx, rho, phi, cfg);
        const cplx ladder = lr.coefficient * eval_f(lr.target, rho, phi, cfg);
        lw = std::max(lw, std::abs(direct - ladder));
        ls = std::max({ls, std::abs(direct), base});
      }
      const cplx pm = dn.coefficient * pi_pointwise(Ladder::plus, dn.target, rho, phi, cfg);
      const cplx mp = up.coefficient * pi_pointwise(Ladder::minus, up.target, rho, phi, cfg);
      const cplx rhs = 2.0 * zs * f;
      cw = std::max(cw, std::abs(pm - mp - rhs));
      cs = std::max({cs, std::abs(pm), std::abs(mp), std::abs(rhs)});
    }
    lad[j] = ls > 0 ? lw / ls : 0.0;
    com[j] = cs > 0 ? cw / cs : 0.0;
  });
  auto worst = [&](const std::vector<double>& v, const char* name, double tol) {
    const std::size_t k = std::max_element(v.begin(), v.end()) - v.begin();
    return detail::result(name, v[k], tol,
                          std::to_string(jobs.size()) + " indices x " + std::to_string(points) + " points; worst f(" +
                              std::to_string(jobs[k].n) + "," + std::to_string(jobs[k].m) +
                              ") Z=" + std::to_string(jobs[k].charge));
  };
  return {worst(lad, "ladder_equivalence", 1e-10), worst(com, "commutator", 1e-9)};
}

// E_perp(-) - E_perp(+) = 4 lambda B for charged levels (both the merged
// total-energy layer and the per-spin layer) and for the neutral spectrum.
inline CheckResult check_pauli_closed_form(const std::vector<int>& charges, const std::vector<double>& kappas,
                                           const std::vector<double>& fields, int n_max, int m_max) {
  double worst = 0.0;
  std::size_t count = 0;
  for (double b : fields)
    for (double k : kappas) {
      for (int z : charges) {
        const FieldConfig cfg = make_config(1.0, b, z, k);
        const double split = 4.0 * cfg.lambda_b();
        for (int n = 0; n <= n_max; ++n)
          for (int m = -m_max; m <= m_max; ++m) {
            const QuantumNumbers qp{Sigma::plus, n, m, 0.0}, qm{Sigma::minus, n, m, 0.0};
            const double scale = std::max(1.0, energy_level(qp, cfg).e_perp);
            worst = std::max(worst, std::abs(energy_level(qm, cfg).e_perp - energy_level(qp, cfg).e_perp - split) / scale);
            for (Spin s : {Spin::up, Spin::down})
              worst = std::max(worst, std::abs(transverse_energy(s, qm, cfg) - transverse_energy(s, qp, cfg) - split) / scale);
            ++count;
          }
      }
      const FieldConfig cfg = make_config(1.0, b, 0, k);
      for (double pp2 : {0.0, 0.01, 0.5, 3.0}) {
        const double scale = std::max(1.0, neutral_transverse_energy(Sigma::plus, pp2, cfg));
        worst = std::max(worst, std::abs(neutral_transverse_energy(Sigma::minus, pp2, cfg) -
                                         neutral_transverse_energy(Sigma::plus, pp2, cfg) - 4.0 * cfg.lambda_b()) / scale);
        ++count;
      }
    }
  return detail::result("pauli_splitting_closed_form", worst, 4.0 * DBL_EPSILON,
                        std::to_string(count) + " level pairs; relative to max(1, E_perp)");
}

// E_total bit-identical across m >= 0 (Z > 0) or m <= 0 (Z < 0), and the
// spectrum table puts each such family in one degeneracy class.
inline CheckResult check_degeneracy(const std::vector<int>& charges, const std::vector<double>& kappas,
                                    const std::vector<double>& fields, int n_max, int m_span,
                                    const std::vector<double>& p_z) {
  double worst = 0.0;
  std::size_t families = 0;
  bool classes_ok = true;
  for (int z : charges)
    for (double k : kappas)
      for (double b : fields) {
        const FieldConfig cfg = make_config(1.0, b, z, k);
        const int dir = z > 0 ? 1 : -1;
        for (Sigma s : {Sigma::plus, Sigma::minus})
          for (int n = 0; n <= n_max; ++n)
            for (double pz : p_z) {
              const double ref = energy_level({s, n, 0, pz}, cfg).e_total;
              for (int a = 1; a <= m_span; ++a)
                worst = std::max(worst, std::abs(energy_level({s, n, dir * a, pz}, cfg).e_total - ref));
              ++families;
            }
        SpectrumRanges r;
        r.n_max = n_max;
        r.m_min = z > 0 ? 0 : -m_span;
        r.m_max = z > 0 ? m_span : 0;
        r.p_z = p_z;
        const auto table = spectrum_table(cfg, r);
        std::map<std::tuple<int, int, double>, int> cls;
        for (const auto& row : table) {
          const auto key = std::tuple{sign(row.qn.sigma), row.qn.n_rho, row.qn.p_z};
          auto [it, fresh] = cls.emplace(key, row.degeneracy_class);
          if (!fresh && it->second != row.degeneracy_class) classes_ok = false;
        }
      }
  CheckResult r = detail::result("degeneracy_law", worst, 0.0,
                                 std::to_string(families) + " families over " + std::to_string(m_span + 1) +
                                     " values of m; table classes " + (classes_ok ? "consistent" : "split"));
  r.passed = r.passed && classes_ok;
  return r;
}

// Number of disagreements between an enumeration's zero states and the
// census rule; also counts zero states with nonzero coefficients.
inline std::size_t census_mismatches(const StateEnumeration& e, const FieldConfig& cfg, const StateRanges& r) {
  std::size_t bad = 0;
  auto flagged = [&](const QuantumNumbers& q) {
    return std::find(e.vanishing.begin(), e.vanishing.end(), q) != e.vanishing.end();
  };
  for (Sigma s : r.sigmas)
    for (int n = r.n_min; n <= r.n_max; ++n)
      for (int m = r.m_min; m <= r.m_max; ++m)
        for (double pz : r.p_z) {
          const QuantumNumbers q{s, n, m, pz};
          if (flagged(q) != is_vanishing_state(s, n, m, cfg.charge)) ++bad;
        }
  for (const auto& st : e.states) {
    double norm = 0.0;
    for (const auto& c : st.coefficients.c) norm += std::norm(c);
    if (st.vanishing || !(norm > 0.0)) ++bad;
  }
  return bad;
}

inline StateRanges census_ranges(int m_span) {
  StateRanges r;
  r.n_min = 0;
  r.n_max = 1;
  r.m_min = -m_span;
  r.m_max = m_span;
  r.p_z = {0.0, 0.3};
  return r;
}

// With Fault::vanishing the first non-census state at n_rho = 0 is
// reported as vanishing, which must make this check fail.
inline CheckResult check_census(const std::vector<int>& charges, const std::vector<double>& kappas, double field_b,
                                int m_span, Fault fault = Fault::none) {
  std::size_t bad = 0, zeros = 0;
  for (int z : charges)
    for (double k : kappas) {
      const FieldConfig cfg = make_config(1.0, field_b, z, k);
      const StateRanges r = census_ranges(m_span);
      StateEnumeration e = enumerate_states(cfg, r);
      if (fault == Fault::vanishing) {
        auto it = std::find_if(e.states.begin(), e.states.end(), [](const SpinorState& s) { return s.qn.n_rho == 0; });
        if (it != e.states.end()) {
          e.vanishing.push_back(it->qn);
          e.states.erase(it);
        }
      }
      zeros += e.vanishing.size();
      bad += census_mismatches(e, cfg, r);
    }
  return detail::result("vanishing_census", double(bad), 0.0,
                        std::to_string(zeros) + " zero states flagged; " + std::to_string(bad) + " disagreements");
}

// (E - M) - E_nonrel ~ b^2 and the spinor approaching its two-component
// limit, over b in `fields` at p_z = 0. Lowest-level states whose energy
// agrees exactly are counted but carry no exponent.
inline std::vector<CheckResult> check_nonrel(const std::vector<int>& charges, const std::vector<double>& kappas,
                                             const std::vector<double>& fields, int n_max, int m_max,
                                             std::uint64_t seed) {
  double e_dev = 0.0, low_dev = 0.0, up_worst = 0.0, up_final = 0.0;
  std::size_t fitted = 0, exact = 0, zero_lower = 0;
  std::string e_at, low_at;

  struct Sample {
    double energy_err, upper, lower;
  };
  auto measure = [&](const SpinorState& rel) {
    const SpinorState nr = nonrel_limit_spinor(rel);
    Sample s{};
    s.energy_err = std::abs((rel.energy() - rel.cfg.mass) - nr.energy());
    double ref = 0.0;
    const auto pts = oracle::sample_points(rel, 40, seed);
    for (const Point& p : pts) {
      const SpinorValue a = eval_spinor(rel, 0.0, p), b = eval_spinor(nr, 0.0, p);
      for (int k = 0; k < 4; ++k) ref = std::max(ref, std::abs(b.comp[k]));
      for (int k = 0; k < 2; ++k) s.upper = std::max(s.upper, std::abs(a.comp[k] - b.comp[k]));
      for (int k = 2; k < 4; ++k) s.lower = std::max(s.lower, std::abs(a.comp[k]));
    }
    s.upper /= ref;
    s.lower /= ref;
    return s;
  };
  auto judge = [&](const std::vector<Sample>& s, const std::string& label) {
    std::vector<double> err, low;
    for (const auto& x : s) {
      err.push_back(x.energy_err);
      low.push_back(x.lower);
    }
    const double tiny = 1e-13 * fields.front();
    if (*std::max_element(err.begin(), err.end()) <= tiny) {
      ++exact;
    } else {
      const double d = std::abs(detail::log_slope(fields, err) - 2.0);
      if (d > e_dev || e_at.empty()) {
        e_dev = std::max(e_dev, d);
        e_at = label;
      }
      ++fitted;
    }
    if (*std::max_element(low.begin(), low.end()) == 0.0) {
      ++zero_lower;
    } else {
      const double d = std::abs(detail::log_slope(fields, low) - 0.5);
      if (d > low_dev || low_at.empty()) {
        low_dev = std::max(low_dev, d);
        low_at = label;
      }
    }
    // a deviation already at roundoff counts as converged (exact states at kappa = 0)
    for (std::size_t i = 1; i < s.size(); ++i)
      if (!(s[i].upper < s[i - 1].upper) && s[i].upper > 1e-14) up_worst = std::max(up_worst, 1.0);
    up_final = std::max(up_final, s.back().upper);
  };

  for (int z : charges)
    for (double k : kappas)
      for (Sigma sg : {Sigma::plus, Sigma::minus})
        for (int n = 0; n <= n_max; ++n)
          for (int m = -m_max; m <= m_max; ++m) {
            if (is_vanishing_state(sg, n, m, z)) continue;
            std::vector<Sample> s;
            for (double b : fields) s.push_back(measure(make_charged_state({sg, n, m, 0.0}, make_config(1.0, b, z, k))));
            judge(s, state_label({sg, n, m, 0.0}, make_config(1.0, fields.front(), z, k)) + " kappa=" + detail::fmt(k));
          }
  for (double k : kappas)
    for (Sigma sg : {Sigma::plus, Sigma::minus}) {
      std::vector<Sample> s;
      for (double b : fields) {
        const double r = std::sqrt(b);
        s.push_back(measure(neutral_spinor({0.3 * r, -0.2 * r, 0.0}, sg, make_config(1.0, b, 0, k))));
      }
      judge(s, std::string("neutral ") + symbol(sg) + " kappa=" + detail::fmt(k));
    }

  CheckResult energy = detail::result("nonrel_energy_order", e_dev, 0.1,
                                      std::to_string(fitted) + " fitted, " + std::to_string(exact) +
                                          " exact; |slope - 2| worst at " + e_at);
  CheckResult lower = detail::result("nonrel_lower_components", low_dev, 0.1,
                                     "|slope - 1/2| of lower/upper magnitude, worst at " + low_at + "; " +
                                         std::to_string(zero_lower) + " with identically zero lower components");
  CheckResult upper = detail::result("nonrel_upper_convergence", up_final, 1e-3,
                                     "upper-component deviation at the smallest field" +
                                         std::string(up_worst > 0 ? "; NOT monotone in b" : ", monotone in b"));
  upper.passed = upper.passed && up_worst == 0.0;
  return {energy, lower, upper};
}

// Plane-wave states at Z = 0: first-order system and Dirac-Pauli equation by
// substitution, density 2E, and the energy against the closed form.
inline std::vector<CheckResult> check_neutral(const std::vector<double>& kappas, const std::vector<double>& fields,
                                              std::uint64_t seed) {
  const std::vector<std::array<double, 3>> momenta{
      {0, 0, 0}, {0, 0, 0.3}, {0, 0, -0.7}, {0.4, 0, 0}, {0.3, -0.2, 0.4}, {-1.1, 0.6, -0.5}, {2.0, 1.5, 0.0}};
  std::vector<SpinorState> states;
  double spec = 0.0;
  for (double k : kappas)
    for (double b : fields) {
      const FieldConfig cfg = make_config(1.0, b, 0, k);
      for (const auto& p : momenta)
        for (Sigma s : {Sigma::plus, Sigma::minus}) {
          states.push_back(neutral_spinor(p, s, cfg));
          const double pp2 = p[0] * p[0] + p[1] * p[1];
          const double ep = std::sqrt(1.0 + pp2) - sign(s) * 2.0 * (k / 4.0) * b;
          const double e = std::sqrt(ep * ep + p[2] * p[2]);
          spec = std::max(spec, std::abs(states.back().energy() - e) / e);
        }
    }
  auto eq = detail::worst_over("neutral_first_order", states, 1e-12, [&](const SpinorState& st, std::size_t i) {
    return oracle::check_first_order_system(st, oracle::sample_points(st, 20, detail::mix_seed(seed, i)));
  });
  auto ham = detail::worst_over("neutral_dirac_pauli", states, 1e-12, [&](const SpinorState& st, std::size_t i) {
    return oracle::hamiltonian_residual_pointwise(st, oracle::sample_points(st, 20, detail::mix_seed(seed, i)));
  });
  auto dens = detail::worst_over("neutral_density", states, 1e-12, [&](const SpinorState& st, std::size_t i) {
    double w = 0.0;
    for (const Point& p : oracle::sample_points(st, 10, detail::mix_seed(seed, i)))
      w = std::max(w, std::abs(oracle::density(st, p) - 2.0 * st.energy()) / (2.0 * st.energy()));
    return w;
  });
  auto en = detail::result("neutral_spectrum", spec, 2.0 * DBL_EPSILON,
                           std::to_string(states.size()) + " states against sqrt((sqrt(M^2+p_perp^2) -+ 2 lambda B)^2 + p_z^2)");
  return {eq, ham, dens, en};
}

struct ErratumSummary {
  std::vector<ErratumEntry> entries;
  std::map<std::string, std::map<std::string, int>> by_branch;  // branch -> status -> count
};

inline ErratumSummary erratum_table(const std::vector<int>& charges, const std::vector<double>& kappas, double field_b,
                                    int n_max, int m_max, const std::vector<double>& p_z) {
  ErratumSummary out;
  for (int z : charges)
    for (double k : kappas) {
      const FieldConfig cfg = make_config(1.0, field_b, z, k);
      for (Sigma s : {Sigma::plus, Sigma::minus})
        for (int n = 0; n <= n_max; ++n)
          for (int m = -m_max; m <= m_max; ++m)
            for (double pz : p_z) {
              ErratumEntry e = compare_printed({s, n, m, pz}, cfg);
              out.by_branch[e.branch][e.status]++;
              out.entries.push_back(std::move(e));
            }
    }
  return out;
}

inline std::string summarize(const ErratumSummary& s) {
  std::string d;
  for (const auto& [branch, counts] : s.by_branch) {
    if (!d.empty()) d += "; ";
    d += branch + ":";
    for (const auto& [status, n] : counts) d += " " + status + "=" + std::to_string(n);
  }
  return d;
}

// Informational: passes when every state received a verdict.
inline CheckResult check_erratum(const ErratumSummary& s) {
  std::size_t missing = 0;
  for (const auto& e : s.entries)
    if (e.status.empty()) ++missing;
  CheckResult r = detail::result("erratum_diagnostic", double(missing), 0.0, summarize(s));
  r.passed = r.passed && !s.entries.empty();
  return r;
}

// ---- grid checks -----------------------------------------------------------

// An explicit extent wins; otherwise the envelope extent times `margin`.
inline oracle::GridSpec grid_for(const FieldConfig& cfg, int points, double extent = 0.0, double margin = 1.0) {
  return oracle::make_grid(extent > 0.0 ? extent : margin * oracle::envelope_extent(cfg), points);
}

// Low-lying non-vanishing states used by the grid checks.
inline std::vector<QuantumNumbers> grid_states(const FieldConfig& cfg) {
  std::vector<QuantumNumbers> out;
  for (const QuantumNumbers& q : std::vector<QuantumNumbers>{{Sigma::plus, 0, 0, 0.0},
                                                              {Sigma::plus, 0, -1, 0.0},
                                                              {Sigma::minus, 0, -1, 0.0},
                                                              {Sigma::plus, 1, 0, 0.0},
                                                              {Sigma::minus, 1, 0, 0.0},
                                                              {Sigma::plus, 1, 1, 0.0}})
    if (!is_vanishing_state(q.sigma, q.n_rho, q.m, cfg.charge)) out.push_back(q);
  return out;
}

// residual_grid(N) / residual_grid(2N - 1), i.e. h -> h/2, for each state;
// expected 4 +- 20%. The default box is 1.2 envelope extents so that the
// excited states also clear the boundary test.
inline CheckResult check_residual_order(const FieldConfig& cfg, int points, double extent = 0.0) {
  const oracle::GridSpec coarse = grid_for(cfg, points, extent, 1.2);
  const oracle::GridSpec fine = grid_for(cfg, 2 * points - 1, extent, 1.2);
  double worst = 0.0, lo = INFINITY, hi = 0.0;
  for (const auto& q : grid_states(cfg)) {
    const SpinorState st = make_charged_state(q, cfg);
    const double ratio = oracle::residual_grid(st, coarse) / oracle::residual_grid(st, fine);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    worst = std::max(worst, std::abs(ratio / 4.0 - 1.0));
  }
  return detail::result("grid_residual_order", worst, 0.2,
                        "residual ratio for h -> h/2 in [" + detail::fmt(lo) + ", " + detail::fmt(hi) + "], N=" +
                            std::to_string(points) + " -> " + std::to_string(2 * points - 1));
}

// The k lowest positive eigenvalues of the grid Hamiltonian against the
// closed-form level set, within the tau calibrated at kappa = 0.
inline CheckResult check_eigen_levels(const FieldConfig& cfg, const oracle::GridSpec& grid, int k,
                                      oracle::TauCalibration* tau_out = nullptr) {
  const oracle::TauCalibration tau = oracle::calibrate_tau(cfg, grid);
  if (tau_out) *tau_out = tau;
  const oracle::EigenSolution sol = oracle::eigen_oracle(cfg, 0.0, grid, k);
  const auto levels = oracle::closed_form_levels(cfg, 0.0, sol.values.back() + tau.tau + 1.0);
  double worst = 0.0;
  for (double e : sol.values) worst = std::max(worst, oracle::distance_to_levels(e, levels));
  return detail::result("eigen_levels", worst, tau.tau,
                        std::to_string(k) + " eigenvalues in [" + detail::fmt(sol.values.front()) + ", " +
                            detail::fmt(sol.values.back()) + "], kappa=" + detail::fmt(cfg.kappa) + " b=" +
                            detail::fmt(cfg.field_b) + " N=" + std::to_string(grid.points) + ", tau=" +
                            detail::fmt(tau.tau));
}

// Excited levels: for each low non-vanishing state the grid eigenvalue
// nearest its Rayleigh quotient must lie within tau of the closed form.
inline CheckResult check_targeted_levels(const FieldConfig& cfg, const oracle::GridSpec& grid, double tau) {
  const oracle::DiscreteHamiltonian H = oracle::build_hamiltonian(cfg, 0.0, grid);
  double worst = 0.0;
  std::string at;
  const auto states = grid_states(cfg);
  for (const auto& q : states) {
    const SpinorState st = make_charged_state(q, cfg);
    const double e = oracle::eigen_near(H, oracle::rayleigh_quotient(H, st), 1).values.front();
    const double d = std::abs(e - st.energy());
    if (d > worst || at.empty()) {
      worst = std::max(worst, d);
      at = state_label(q, cfg);
    }
  }
  return detail::result("targeted_levels", worst, tau,
                        std::to_string(states.size()) + " states; worst " + at + ", tau=" + detail::fmt(tau));
}

// tau(N) / tau(2N) at fixed extent; expected 4 +- 20%.
inline CheckResult check_tau_shrink(const FieldConfig& cfg, int points, double extent = 0.0) {
  const double a = oracle::calibrate_tau(cfg, grid_for(cfg, points, extent)).tau;
  const double b = oracle::calibrate_tau(cfg, grid_for(cfg, 2 * points, extent)).tau;
  return detail::result("tau_shrink", std::abs(a / b / 4.0 - 1.0), 0.2,
                        "tau(" + std::to_string(points) + ")/tau(" + std::to_string(2 * points) +
                            ") = " + detail::fmt(a / b));
}

// Splitting of the (sigma = -, sigma = +) pairs at n_rho = 1, 2, m = 0 in the
// grid spectrum: each member is the eigenvalue nearest its analytic state's
// Rayleigh quotient.
inline CheckResult check_pauli_oracle(const FieldConfig& cfg, const oracle::GridSpec& grid, double tau) {
  const oracle::DiscreteHamiltonian H = oracle::build_hamiltonian(cfg, 0.0, grid);
  double worst = 0.0;
  std::string d;
  for (int n : {1, 2}) {
    double e[2];
    for (int s = 0; s < 2; ++s) {
      const SpinorState st = make_charged_state({s == 0 ? Sigma::plus : Sigma::minus, n, 0, 0.0}, cfg);
      e[s] = oracle::eigen_near(H, oracle::rayleigh_quotient(H, st), 1).values.front();
    }
    const double split = e[1] - e[0];
    worst = std::max(worst, std::abs(split - 4.0 * cfg.lambda_b()));
    d += (d.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " + detail::fmt(split);
  }
  return detail::result("pauli_splitting_oracle", worst, tau,
                        "grid splittings " + d + " vs 4 lambda B = " + detail::fmt(4.0 * cfg.lambda_b()));
}

// Lowest-level multiplicity in two boxes of equal spacing, half extents L
// and 1.5 L (N = 25 and 37 nodes per side): the count must grow.
inline CheckResult check_degeneracy_growth(const FieldConfig& cfg, double spacing, double tau) {
  const double lll = cfg.mass - 2.0 * std::abs(cfg.lambda_b());
  auto count = [&](int points) {
    const oracle::GridSpec g{0.5 * spacing * (points - 1), points};
    const oracle::TransverseSpectrum ts = oracle::dense_transverse_spectrum(cfg, g);
    int c = 0;
    for (const auto* v : {&ts.lower, &ts.upper})
      for (double e : *v)
        if (std::abs(e - lll) <= tau) ++c;
    return c;
  };
  const int small = count(25), large = count(37);
  CheckResult r{"degeneracy_growth", double(large - small), 1.0, large > small,
                "levels within tau of " + detail::fmt(lll) + ": " + std::to_string(small) + " (L) -> " +
                    std::to_string(large) + " (1.5 L)"};
  return r;
}

// ---- suite -----------------------------------------------------------------

struct VerifyOptions {
  std::string level = "quick";  // quick | full
  std::uint64_t seed = 20240611;
  int grid_points = 96;
  double grid_extent = 0.0;  // 0: envelope-sized
  Fault fault = Fault::none;
};

namespace detail {
inline void run(Report& rep, const std::string& name, const std::function<std::vector<CheckResult>()>& fn) {
  try {
    for (auto& c : fn()) rep.checks.push_back(std::move(c));
  } catch (const std::exception& e) {
    rep.checks.push_back({name, 0.0, 0.0, false, std::string("error: ") + e.what()});
  }
}
}  // namespace detail

// quick: analytic checks; full: adds the finite-difference oracle.
inline Report run_verify(const FieldConfig& cfg, const VerifyOptions& opt) {
  if (opt.level != "quick" && opt.level != "full")
    throw error(error_kind::invalid_config, "verify level must be quick or full");
  if (!cfg.neutral() && !(cfg.field_b > 0.0))
    throw error(error_kind::invalid_config, "verify needs field_b > 0 for a charged configuration");
  Report rep;
  rep.level = opt.level;
  const double b = cfg.field_b;
  const double k = cfg.kappa;
  const std::uint64_t seed = opt.seed;

  if (!cfg.neutral()) {
    StateFamily fam;
    fam.charges = {cfg.charge};
    fam.kappas = {k};
    fam.field_b = b;
    detail::run(rep, "first_order_system", [&] { return std::vector{check_first_order(fam, 50, seed, opt.fault)}; });
    detail::run(rep, "hamiltonian_pointwise",
                [&] { return std::vector{check_hamiltonian_pointwise(fam, 20, seed, opt.fault)}; });
    StateFamily small = fam;
    small.n_max = small.m_max = 3;
    detail::run(rep, "normalization", [&] { return check_normalization(small, {}, opt.fault); });
    detail::run(rep, "ladder_equivalence", [&] { return check_ladder(6, 6, b, {cfg.charge, -cfg.charge}, 100, seed); });
    detail::run(rep, "degeneracy_law",
                [&] { return std::vector{check_degeneracy({cfg.charge}, {k}, {b}, 3, 50, {0.0, 0.3})}; });
    detail::run(rep, "vanishing_census", [&] { return std::vector{check_census({cfg.charge}, {k}, b, 5, opt.fault)}; });
    detail::run(rep, "erratum_diagnostic",
                [&] { return std::vector{check_erratum(erratum_table({cfg.charge}, {k}, b, 3, 3, {0.0, 0.3}))}; });
  }
  detail::run(rep, "pauli_splitting_closed_form", [&] {
    return std::vector{check_pauli_closed_form({cfg.neutral() ? 1 : cfg.charge}, {k}, {b}, 6, 6)};
  });
  detail::run(rep, "nonrel", [&] {
    return check_nonrel({cfg.neutral() ? 1 : cfg.charge}, {k}, {1e-2, 1e-3, 1e-4}, 2, 2, seed);
  });
  detail::run(rep, "neutral", [&] { return check_neutral({k}, {b}, seed); });

  if (opt.level == "full" && !cfg.neutral()) {
    oracle::TauCalibration tau;
    const oracle::GridSpec grid = grid_for(cfg, opt.grid_points, opt.grid_extent);
    detail::run(rep, "eigen_levels",
                [&] { return std::vector{check_eigen_levels(cfg, grid, 8, &tau)}; });
    detail::run(rep, "tau_shrink",
                [&] { return std::vector{check_tau_shrink(cfg, opt.grid_points, opt.grid_extent)}; });
    detail::run(rep, "grid_residual_order",
                [&] { return std::vector{check_residual_order(cfg, opt.grid_points, opt.grid_extent)}; });
    if (tau.tau > 0.0) {
      detail::run(rep, "targeted_levels", [&] { return std::vector{check_targeted_levels(cfg, grid, tau.tau)}; });
      detail::run(rep, "pauli_splitting_oracle", [&] { return std::vector{check_pauli_oracle(cfg, grid, tau.tau)}; });
      detail::run(rep, "degeneracy_growth",
                  [&] { return std::vector{check_degeneracy_growth(cfg, grid.spacing(), tau.tau)}; });
    }
  }
  return rep;
}

}  // namespace landau_dirac::verify
