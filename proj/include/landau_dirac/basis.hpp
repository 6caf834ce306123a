#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>

#include "landau_dirac/errors.hpp"
#include "landau_dirac/laguerre.hpp"
#include "landau_dirac/model.hpp"

namespace landau_dirac {

using cplx = std::complex<double>;

// Transverse basis label. n_rho = -1 marks the identically zero function.
struct BasisIndex {
  int n_rho = 0;
  int m = 0;

  bool vanishing() const noexcept { return n_rho < 0; }
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

struct LadderResult {
  cplx coefficient{};
  BasisIndex target{};
};

enum class Ladder { plus, minus };

namespace detail {

inline void require_charged(const FieldConfig& cfg, const char* op) {
  if (cfg.neutral())
    throw error(error_kind::unsupported_basis,
                std::string(op) + ": Landau basis needs Z != 0; neutral states are plane waves");
}

inline LadderResult make_ladder(cplx coefficient, int n, int m) {
  if (n < 0) return {cplx{}, {-1, m}};
  return {coefficient, {n, m}};
}

}  // namespace detail

// rho^{|m|} L^{|m|}_n(xi) exp(-xi/2) exp(i m phi), xi = |Z| b rho^2 / 2.
inline cplx eval_f(const BasisIndex& idx, double rho, double phi, const FieldConfig& cfg) {
  detail::require_charged(cfg, "eval_f");
  if (!(rho >= 0.0)) throw error(error_kind::domain, "eval_f: rho must be non-negative");
  if (idx.vanishing()) return {};
  const int ma = std::abs(idx.m);
  const double xi = 0.5 * cfg.zb() * rho * rho;
  const double radial = std::pow(rho, ma) * laguerre(idx.n_rho, ma, xi) * std::exp(-0.5 * xi);
  return radial * std::polar(1.0, idx.m * phi);
}

// pi_+ f_{n,m} = coefficient * f_target. The branch depends on sign(Z) and
// whether m >= 0.
inline LadderResult apply_pi_plus(const BasisIndex& idx, const FieldConfig& cfg) {
  detail::require_charged(cfg, "apply_pi_plus");
  const int n = idx.n_rho;
  const int m = idx.m;
  const cplx i{0.0, 1.0};
  if (n < 0) return {cplx{}, {-1, m + 1}};
  if (cfg.charge > 0) {
    if (m >= 0) return detail::make_ladder(i * cfg.zb(), n - 1, m + 1);
    return detail::make_ladder(-2.0 * i * double(n + std::abs(m)), n, m + 1);
  }
  if (m >= 0) return detail::make_ladder(i * cfg.zb(), n, m + 1);
  return detail::make_ladder(-2.0 * i * double(n + 1), n + 1, m + 1);
}

// pi_- f_{n,m} = coefficient * f_target; the branch is chosen by the target m - 1.
inline LadderResult apply_pi_minus(const BasisIndex& idx, const FieldConfig& cfg) {
  detail::require_charged(cfg, "apply_pi_minus");
  const int n = idx.n_rho;
  const int mt = idx.m - 1;
  const cplx i{0.0, 1.0};
  if (n < 0) return {cplx{}, {-1, mt}};
  if (cfg.charge > 0) {
    if (mt >= 0) return detail::make_ladder(-2.0 * i * double(n + 1), n + 1, mt);
    return detail::make_ladder(i * cfg.zb(), n, mt);
  }
  if (mt >= 0) return detail::make_ladder(-2.0 * i * double(n + idx.m), n, mt);
  return detail::make_ladder(i * cfg.zb(), n - 1, mt);
}

inline LadderResult apply_pi(Ladder dir, const BasisIndex& idx, const FieldConfig& cfg) {
  return dir == Ladder::plus ? apply_pi_plus(idx, cfg) : apply_pi_minus(idx, cfg);
}

// Direct differential action of pi_pm = -i e^{pm i phi}[d_rho pm (i/rho) d_phi pm (Z b/2) rho]
// on f_{n,m}, with dL/drho = |Z| b rho dL/dxi. The bracket is split as
//   (|m| -+ m) rho^{|m|-1} L + rho^{|m|+1} (|Z| b L' - c L),  c = (|Z| -+ Z) b / 2,
// so nothing singular is evaluated at rho = 0.
inline cplx pi_pointwise(Ladder dir, const BasisIndex& idx, double rho, double phi,
                         const FieldConfig& cfg) {
  detail::require_charged(cfg, "pi_pointwise");
  if (!(rho >= 0.0)) throw error(error_kind::domain, "pi_pointwise: rho must be non-negative");
  if (idx.vanishing()) return {};
  const int s = dir == Ladder::plus ? 1 : -1;
  const int ma = std::abs(idx.m);
  const double zb = cfg.zb();
  const double xi = 0.5 * zb * rho * rho;
  const double lag = laguerre(idx.n_rho, ma, xi);
  const double dlag = laguerre_dxi(idx.n_rho, ma, xi);
  const double c = 0.5 * (zb - s * cfg.charge * cfg.field_b);

  double bracket = std::pow(rho, ma + 1) * (zb * dlag - c * lag);
  const int lead = ma - s * idx.m;
  if (lead != 0) bracket += lead * std::pow(rho, ma - 1) * lag;

  const cplx phase = std::polar(std::exp(-0.5 * xi), (idx.m + s) * phi);
  return cplx{0.0, -1.0} * phase * bracket;
}

// Squared norm of f_{n,m} over the plane; zero between distinct indices.
inline double transverse_overlap(const BasisIndex& a, const BasisIndex& b, const FieldConfig& cfg) {
  detail::require_charged(cfg, "transverse_overlap");
  if (!(a == b) || a.vanishing()) return 0.0;
  return std::exp(log_norm_coeff(a.n_rho, std::abs(a.m), cfg.zb()));
}

}  // namespace landau_dirac
