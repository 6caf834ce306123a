#pragma once

#include <cmath>
#include <concepts>
#include <numbers>

#include "landau_dirac/errors.hpp"

namespace landau_dirac {

namespace detail {

template <std::floating_point T>
void check_laguerre_domain(int alpha, T xi) {
  if (alpha < 0) throw error(error_kind::domain, "Laguerre order alpha must be non-negative");
  if (!(xi >= T(0))) throw error(error_kind::domain, "Laguerre argument xi must be non-negative");
}

}  // namespace detail

// Generalized Laguerre polynomial L^alpha_n(xi) by upward three-term recurrence.
// Negative n gives the zero polynomial.
template <std::floating_point T>
T laguerre(int n, int alpha, T xi) {
  detail::check_laguerre_domain(alpha, xi);
  if (n < 0) return T(0);
  T prev = T(1);
  if (n == 0) return prev;
  T cur = T(1 + alpha) - xi;
  for (int k = 1; k < n; ++k) {
    const T next = (T(2 * k + 1 + alpha) - xi) * cur - T(k + alpha) * prev;
    prev = cur;
    cur = next / T(k + 1);
  }
  return cur;
}

// d/dxi L^alpha_n = -L^{alpha+1}_{n-1}
template <std::floating_point T>
T laguerre_dxi(int n, int alpha, T xi) {
  detail::check_laguerre_domain(alpha, xi);
  if (n <= 0) return T(0);
  return -laguerre(n - 1, alpha + 1, xi);
}

// log of pi (n+|m|)! 2^{|m|+1} / (n! zb^{|m|+1}), the squared norm of f_{n,m}.
inline double log_norm_coeff(int n_rho, int m_abs, double zb) {
  if (n_rho < 0 || m_abs < 0) throw error(error_kind::domain, "n_rho and |m| must be non-negative");
  if (!(zb > 0.0)) throw error(error_kind::domain, "|Z| eB must be positive for a normalizable basis");
  const double k = m_abs + 1.0;
  return std::log(std::numbers::pi) + std::lgamma(n_rho + m_abs + 1.0) - std::lgamma(n_rho + 1.0) +
         k * std::numbers::ln2 - k * std::log(zb);
}

}  // namespace landau_dirac
