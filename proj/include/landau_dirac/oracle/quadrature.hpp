#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "landau_dirac/errors.hpp"
#include "landau_dirac/parallel.hpp"
#include "landau_dirac/spinors.hpp"

namespace landau_dirac::oracle {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1] by Newton iteration on the Legendre recurrence.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw error(error_kind::domain, "Gauss-Legendre order must be positive");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

// Gauss-Laguerre for the weight x^alpha e^{-x} on [0, inf), Golub-Welsch.
inline QuadratureRule gauss_laguerre(int n, double alpha = 0.0) {
  if (n < 1) throw error(error_kind::domain, "Gauss-Laguerre order must be positive");
  if (!(alpha > -1.0)) throw error(error_kind::domain, "Gauss-Laguerre alpha must exceed -1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    J(k, k) = 2.0 * k + alpha + 1.0;
    if (k + 1 < n) J(k, k + 1) = J(k + 1, k) = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule r;
  const double mu0 = std::tgamma(alpha + 1.0);
  for (int k = 0; k < n; ++k) {
    r.nodes.push_back(es.eigenvalues()(k));
    const double v = es.eigenvectors()(0, k);
    r.weights.push_back(mu0 * v * v);
  }
  return r;
}

// Transverse-plane quadrature: composite Gauss-Legendre in s = sqrt(xi) on
// [0, s_max] (the integrand is smooth in s), uniform trapezoid in phi.
struct QuadratureSpec {
  int panels = 12;
  int points_per_panel = 16;
  int angular_points = 0;      // 0: chosen from the largest |m|
  double xi_max = 0.0;         // 0: chosen from the largest n_rho and |m|
  double refine_tol = 1e-11;   // allowed relative change between P and 2P panels
};

namespace detail {

struct PlaneGrid {
  std::vector<double> x, y, w;
};

inline PlaneGrid plane_grid(double zb, double s_max, int panels, int q, int n_phi) {
  const QuadratureRule gl = gauss_legendre(q);
  PlaneGrid g;
  const double ds = s_max / panels;
  const double to_rho = std::sqrt(2.0 / zb);
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  for (int p = 0; p < panels; ++p)
    for (int k = 0; k < q; ++k) {
      const double s = ds * (p + 0.5 * (gl.nodes[k] + 1.0));
      const double rho = s * to_rho;
      // rho d rho = (2/zb) s ds
      const double wr = 0.5 * ds * gl.weights[k] * (2.0 / zb) * s;
      for (int j = 0; j < n_phi; ++j) {
        const double phi = j * dphi;
        g.x.push_back(rho * std::cos(phi));
        g.y.push_back(rho * std::sin(phi));
        g.w.push_back(wr * dphi);
      }
    }
  return g;
}

struct StateSamples {
  std::vector<std::array<cplx, 4>> v;
};

inline StateSamples sample(const SpinorState& st, const PlaneGrid& g) {
  StateSamples s;
  s.v.resize(g.w.size());
  for (std::size_t i = 0; i < g.w.size(); ++i) s.v[i] = eval_spinor(st, 0.0, {g.x[i], g.y[i], 0.0}).comp;
  return s;
}

inline cplx inner(const StateSamples& a, const StateSamples& b, const PlaneGrid& g) {
  cplx acc{};
  for (std::size_t i = 0; i < g.w.size(); ++i) {
    cplx dot{};
    for (int c = 0; c < 4; ++c) dot += std::conj(a.v[i][c]) * b.v[i][c];
    acc += g.w[i] * dot;
  }
  return acc;
}

inline void require_quadrature_pair(const SpinorState& a, const SpinorState& b) {
  if (a.kind == StateKind::neutral || b.kind == StateKind::neutral)
    throw error(error_kind::precondition, "plane-wave states are not normalizable on the plane");
  if (a.cfg.charge != b.cfg.charge || a.cfg.field_b != b.cfg.field_b || a.cfg.kappa != b.cfg.kappa ||
      a.qn.p_z != b.qn.p_z)
    throw error(error_kind::precondition, "quad_inner needs states with the same configuration and p_z");
}

}  // namespace detail

struct QuadratureResult {
  std::vector<std::vector<cplx>> gram;  // gram[i][j] = <state_i | state_j>
  double refinement_change = 0.0;       // max relative change between P and 2P panels
};

// Gram matrix of a family of states sharing cfg and p_z. Each entry is
// computed with P and 2P radial panels; a relative change above refine_tol
// (relative to the diagonal scale) raises quadrature_failure.
inline QuadratureResult quad_gram(const std::vector<SpinorState>& states, const QuadratureSpec& spec = {}) {
  QuadratureResult out;
  const std::size_t n = states.size();
  out.gram.assign(n, std::vector<cplx>(n));
  if (n == 0) return out;
  int n_max = 0, m_max = 0;
  for (const auto& st : states) {
    detail::require_quadrature_pair(states.front(), st);
    for (const auto& b : st.coefficients.basis) {
      n_max = std::max(n_max, b.n_rho);
      m_max = std::max(m_max, std::abs(b.m));
    }
  }
  const FieldConfig& cfg = states.front().cfg;
  const double xi_max = spec.xi_max > 0.0 ? spec.xi_max : 100.0 + 4.0 * (n_max + m_max);
  const int n_phi = spec.angular_points > 0 ? spec.angular_points : std::max(32, 4 * (m_max + 2));

  auto gram_at = [&](int panels) {
    const detail::PlaneGrid g = detail::plane_grid(cfg.zb(), std::sqrt(xi_max), panels, spec.points_per_panel, n_phi);
    std::vector<detail::StateSamples> samples(n);
    parallel_for(n, [&](std::size_t i) { samples[i] = detail::sample(states[i], g); });
    std::vector<std::vector<cplx>> G(n, std::vector<cplx>(n));
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = i; j < n; ++j) G[i][j] = detail::inner(samples[i], samples[j], g);
    });
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) G[i][j] = std::conj(G[j][i]);
    return G;
  };

  const auto coarse = gram_at(spec.panels);
  out.gram = gram_at(2 * spec.panels);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double scale = std::sqrt(std::abs(out.gram[i][i]) * std::abs(out.gram[j][j]));
      const double change = scale > 0.0 ? std::abs(out.gram[i][j] - coarse[i][j]) / scale : 0.0;
      out.refinement_change = std::max(out.refinement_change, change);
    }
  if (!(out.refinement_change <= spec.refine_tol))
    throw error(error_kind::quadrature_failure,
                "panel refinement changed the result by " + landau_dirac::detail::shortest(out.refinement_change));
  return out;
}

inline cplx quad_inner(const SpinorState& a, const SpinorState& b, const QuadratureSpec& spec = {}) {
  detail::require_quadrature_pair(a, b);
  const QuadratureResult r = quad_gram({a, b}, spec);
  return r.gram[0][1];
}

// Squared norm of a single basis function by the same plane quadrature.
inline double quad_basis_norm(const BasisIndex& idx, const FieldConfig& cfg, const QuadratureSpec& spec = {}) {
  if (idx.vanishing()) return 0.0;
  const double xi_max = spec.xi_max > 0.0 ? spec.xi_max : 100.0 + 4.0 * (idx.n_rho + std::abs(idx.m));
  const int n_phi = spec.angular_points > 0 ? spec.angular_points : 32;
  auto at = [&](int panels) {
    const detail::PlaneGrid g = detail::plane_grid(cfg.zb(), std::sqrt(xi_max), panels, spec.points_per_panel, n_phi);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.w.size(); ++i) {
      const double rho = std::hypot(g.x[i], g.y[i]);
      acc += g.w[i] * std::norm(eval_f(idx, rho, std::atan2(g.y[i], g.x[i]), cfg));
    }
    return acc;
  };
  const double coarse = at(spec.panels);
  const double fine = at(2 * spec.panels);
  if (std::abs(fine - coarse) > spec.refine_tol * std::abs(fine))
    throw error(error_kind::quadrature_failure, "basis-norm quadrature did not settle");
  return fine;
}

}  // namespace landau_dirac::oracle
