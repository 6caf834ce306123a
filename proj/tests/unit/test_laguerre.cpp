#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "landau_dirac/laguerre.hpp"
#include "landau_dirac/oracle/quadrature.hpp"

using namespace landau_dirac;
using Catch::Approx;

namespace {

// Explicit series sum_k (-1)^k C(n+a, n-k) x^k / k! in long double, with the
// magnitude of the largest term for a cancellation-aware tolerance.
struct Series {
  long double value = 0, scale = 0;
};

Series laguerre_series(int n, int a, long double x) {
  Series s;
  for (int k = 0; k <= n; ++k) {
    const long double binom =
        std::exp(std::lgamma((long double)(n + a + 1)) - std::lgamma((long double)(n - k + 1)) -
                 std::lgamma((long double)(a + k + 1)));
    const long double term = (k % 2 ? -1.0L : 1.0L) * binom * std::pow(x, (long double)k) /
                             std::exp(std::lgamma((long double)(k + 1)));
    s.value += term;
    s.scale = std::max(s.scale, std::abs(term));
  }
  return s;
}

}  // namespace

TEST_CASE("hand values of low-order polynomials") {
  for (double x : {0.0, 0.5, 1.0, 3.7}) {
    CHECK(laguerre(0, 2, x) == 1.0);
    CHECK(laguerre(1, 3, x) == Approx(4.0 - x).epsilon(1e-15));
    CHECK(laguerre(2, 0, x) == Approx((x * x - 4 * x + 2) / 2).margin(1e-15));
    CHECK(laguerre(3, 0, x) == Approx((-x * x * x + 9 * x * x - 18 * x + 6) / 6).margin(1e-14));
    CHECK(laguerre(2, 1, x) == Approx((x * x - 6 * x + 6) / 2).margin(1e-15));
  }
  CHECK(laguerre(2, 0, 1.0) == Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("values at zero are binomial coefficients") {
  for (int n = 0; n <= 12; ++n)
    for (int a = 0; a <= 8; ++a) {
      const double binom = std::round(std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0) - std::lgamma(a + 1.0)));
      CHECK(laguerre(n, a, 0.0) == Approx(binom).epsilon(1e-13));
    }
}

TEST_CASE("recurrence agrees with the explicit series") {
  for (int n = 0; n <= 14; ++n)
    for (int a = 0; a <= 7; ++a)
      for (double x : {0.01, 0.4, 1.5, 4.0, 9.0, 17.0}) {
        const Series s = laguerre_series(n, a, x);
        const double got = laguerre(n, a, x);
        INFO("n=" << n << " a=" << a << " x=" << x);
        CHECK(std::abs(got - (double)s.value) <= 1e-13 * (double)std::max(s.scale, 1.0L));
      }
}

TEST_CASE("long double instantiation tracks the series closely") {
  const Series s = laguerre_series(9, 3, 2.5L);
  CHECK(std::abs(laguerre(9, 3, 2.5L) - s.value) <= 1e-16L * s.scale);
}

TEST_CASE("derivative matches a centred difference") {
  const double h = 1e-5;
  for (int n = 0; n <= 8; ++n)
    for (int a : {0, 1, 4})
      for (double x : {0.3, 1.0, 5.5}) {
        const double fd = (laguerre(n, a, x + h) - laguerre(n, a, x - h)) / (2 * h);
        CHECK(laguerre_dxi(n, a, x) == Approx(fd).epsilon(1e-7).margin(1e-7));
      }
}

TEST_CASE("orthogonality under Gauss-Laguerre weights") {
  for (int a = 0; a <= 4; ++a) {
    const auto rule = oracle::gauss_laguerre(30, a);
    for (int n = 0; n <= 8; ++n)
      for (int m = 0; m <= 8; ++m) {
        double s = 0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
          s += rule.weights[k] * laguerre(n, a, rule.nodes[k]) * laguerre(m, a, rule.nodes[k]);
        const double hn = std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0));
        const double hm = std::exp(std::lgamma(m + a + 1.0) - std::lgamma(m + 1.0));
        INFO("a=" << a << " n=" << n << " m=" << m);
        CHECK(s == Approx(n == m ? hn : 0.0).margin(1e-10 * std::sqrt(hn * hm)));
      }
  }
}

TEST_CASE("Gauss-Laguerre moments are Gamma values") {
  const auto rule = oracle::gauss_laguerre(20, 1.5);
  for (int k = 0; k < 20; ++k) {
    double s = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
    CHECK(s == Approx(std::tgamma(k + 2.5)).epsilon(1e-11));
  }
}

TEST_CASE("negative degree is the zero polynomial; invalid domain throws") {
  CHECK(laguerre(-1, 0, 1.0) == 0.0);
  CHECK(laguerre_dxi(0, 2, 1.0) == 0.0);
  CHECK_THROWS_AS(laguerre(2, -1, 1.0), landau_dirac::error);
  CHECK_THROWS_AS(laguerre(2, 0, -0.5), landau_dirac::error);
  CHECK_THROWS_AS(laguerre(2, 0, std::nan("")), landau_dirac::error);
}

TEST_CASE("log norm coefficient") {
  CHECK(std::exp(log_norm_coeff(0, 0, 1.0)) == Approx(2 * std::numbers::pi).epsilon(1e-14));
  // pi (n+|m|)! 2^{|m|+1} / (n! zb^{|m|+1}) at n=2, |m|=3, zb=0.5
  CHECK(std::exp(log_norm_coeff(2, 3, 0.5)) == Approx(std::numbers::pi * 120.0 / 2.0 * 16.0 / 0.0625).epsilon(1e-13));
  CHECK_THROWS_AS(log_norm_coeff(0, 0, 0.0), landau_dirac::error);
  CHECK_THROWS_AS(log_norm_coeff(-1, 0, 1.0), landau_dirac::error);
}
