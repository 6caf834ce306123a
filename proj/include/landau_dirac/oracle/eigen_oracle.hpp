#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "landau_dirac/errors.hpp"
#include "landau_dirac/oracle/grid_hamiltonian.hpp"
#include "landau_dirac/spectra.hpp"
#include "landau_dirac/spinors.hpp"

namespace landau_dirac::oracle {

struct EigenSolveOptions {
  int extra_vectors = 8;        // block size is count + extra_vectors
  int max_iterations = 300;
  double tolerance = 1e-9;      // residual ||H x - theta x|| relative to max(1, |theta|)
  std::uint64_t seed = 0x5eed5eedULL;
};

struct EigenSolution {
  std::vector<double> values;     // ascending
  std::vector<double> residuals;  // matching values
  double shift = 0.0;
  int iterations = 0;
};

// The `count` eigenvalues nearest `shift`, by block shift-invert subspace
// iteration with Rayleigh-Ritz. Throws oracle_failure when the budget runs out.
inline EigenSolution eigen_near(const DiscreteHamiltonian& H, double shift, int count,
                                const EigenSolveOptions& opt = {}) {
  using Mat = Eigen::MatrixXcd;
  const Eigen::Index n = H.matrix.rows();
  const int p = std::min<Eigen::Index>(count + opt.extra_vectors, n);
  if (count < 1 || count > p) throw error(error_kind::precondition, "eigen_near: invalid eigenvalue count");

  Eigen::SparseMatrix<std::complex<double>> A = H.matrix;
  for (Eigen::Index i = 0; i < n; ++i) A.coeffRef(i, i) -= shift;
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<std::complex<double>>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw error(error_kind::oracle_failure, "shift-invert factorization failed at shift " + landau_dirac::detail::shortest(shift));

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  Mat X(n, p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < n; ++i) X(i, j) = {gauss(rng), gauss(rng)};

  auto orthonormalize = [&](const Mat& Y) {
    Eigen::HouseholderQR<Mat> qr(Y);
    return Mat(qr.householderQ() * Mat::Identity(n, p));
  };

  EigenSolution out;
  out.shift = shift;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const Mat Q = orthonormalize(lu.solve(X));
    const Mat HQ = H.matrix * Q;
    Mat G = Q.adjoint() * HQ;
    G = 0.5 * (G + G.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(G);
    const Eigen::VectorXd theta = es.eigenvalues();
    X = Q * es.eigenvectors();
    const Mat R = HQ * es.eigenvectors() - X * theta.asDiagonal();

    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(theta(a) - shift) < std::abs(theta(b) - shift);
    });
    bool converged = true;
    out.values.clear();
    out.residuals.clear();
    for (int j = 0; j < count; ++j) {
      const int k = order[j];
      const double res = R.col(k).norm();
      out.values.push_back(theta(k));
      out.residuals.push_back(res);
      if (!(res <= opt.tolerance * std::max(1.0, std::abs(theta(k))))) converged = false;
    }
    out.iterations = it;
    if (converged) {
      std::vector<int> idx(count);
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return out.values[a] < out.values[b]; });
      EigenSolution sorted = out;
      for (int j = 0; j < count; ++j) {
        sorted.values[j] = out.values[idx[j]];
        sorted.residuals[j] = out.residuals[idx[j]];
      }
      return sorted;
    }
  }
  throw error(error_kind::oracle_failure, "shift-invert iteration did not converge in " +
                                              std::to_string(opt.max_iterations) + " iterations");
}

// Lower bound of the positive spectrum, sqrt((M - 2|lambda B|)^2 + p_z^2). The
// lattice operator respects it exactly: at p_z = 0 each decoupled 2x2 block
// has the form [[a, P^dagger], [P, -c]] whose eigenvalues avoid (-c, a).
inline double positive_gap(const FieldConfig& cfg, double p_z) {
  const double g = cfg.mass - 2.0 * std::abs(cfg.lambda_b());
  if (!(g > 0.0))
    throw error(error_kind::precondition, "Pauli shift closes the gap (2|lambda B| >= M); oracle not applicable");
  return std::sqrt(g * g + p_z * p_z);
}

// The k lowest positive eigenvalues of the discrete Hamiltonian.
inline EigenSolution eigen_oracle(const FieldConfig& cfg, double p_z, const GridSpec& grid, int k,
                                  const EigenSolveOptions& opt = {}) {
  if (k < 1 || k > 20) throw error(error_kind::precondition, "eigen_oracle: k must be in [1, 20]");
  const DiscreteHamiltonian H = build_hamiltonian(cfg, p_z, grid);
  const double gap = positive_gap(cfg, p_z);
  return eigen_near(H, gap * (1.0 - 1e-8), k, opt);
}

// Every value the closed-form total-energy formula takes up to e_max:
// sqrt((sqrt(M^2 + 2|Z| b n) -+ 2 lambda B)^2 + p_z^2) for n = 0, 1, ...
inline std::vector<double> closed_form_levels(const FieldConfig& cfg, double p_z, double e_max) {
  std::vector<double> out;
  for (int n = 0;; ++n) {
    const double eps = landau_epsilon(n, cfg);
    bool any = false;
    for (int s : {1, -1}) {
      const double ep = eps - s * 2.0 * cfg.lambda_b();
      const double e = std::sqrt(ep * ep + p_z * p_z);
      if (ep >= 0.0 && e <= e_max) {
        out.push_back(e);
        any = true;
      }
    }
    if (!any && eps - 2.0 * std::abs(cfg.lambda_b()) > e_max) break;
    if (cfg.zb() == 0.0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline double distance_to_levels(double e, const std::vector<double>& levels) {
  double best = INFINITY;
  for (double l : levels) best = std::min(best, std::abs(e - l));
  return best;
}

// Discretization tolerance tau(h) = safety * max |<psi|H_h|psi>/<psi|psi> - E|
// over the analytic sigma=+ states with n_rho <= 2, |m| <= 1 at kappa = 0.
// To first order the Rayleigh-quotient shift of an exact eigenstate equals the
// discrete eigenvalue shift, so this measures the O(h^2) level error.
struct TauCalibration {
  double spacing = 0.0;
  double deviation = 0.0;
  double tau = 0.0;
  double coefficient = 0.0;  // C in tau = C h^2 |Z| b
};

inline TauCalibration calibrate_tau(const FieldConfig& cfg, const GridSpec& grid, double safety = 2.0) {
  const FieldConfig base = with_kappa(cfg, 0.0);
  const DiscreteHamiltonian H = build_hamiltonian(base, 0.0, grid);
  TauCalibration out;
  out.spacing = grid.spacing();
  for (int n = 0; n <= 2; ++n)
    for (int m = -1; m <= 1; ++m) {
      const SpinorState st = make_charged_state({Sigma::plus, n, m, 0.0}, base);
      if (st.vanishing) continue;
      out.deviation = std::max(out.deviation, std::abs(rayleigh_quotient(H, st) - st.energy()));
    }
  out.tau = safety * out.deviation;
  out.coefficient = out.tau / (out.spacing * out.spacing * base.zb());
  return out;
}

// Positive eigenvalues of the p_z = 0 lattice Hamiltonian from the scalar
// lattice operator P = pi_x + i pi_y: the blocks (phi_up, chi_down) and
// (phi_down, chi_up) give sqrt(M^2 + nu) - 2 lambda B for nu in spec(P^dagger P)
// and sqrt(M^2 + nu) + 2 lambda B for nu in spec(P P^dagger). Dense; small grids only.
struct TransverseSpectrum {
  std::vector<double> lower;  // from P^dagger P, ascending
  std::vector<double> upper;  // from P P^dagger, ascending
};

inline Eigen::MatrixXcd lattice_pi_plus(const FieldConfig& cfg, const GridSpec& grid) {
  const int N = grid.points;
  const double h = grid.spacing();
  const double zs = cfg.charge * cfg.field_b;
  const std::complex<double> I{0.0, 1.0};
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(grid.nodes(), grid.nodes());
  auto node = [N](int i, int j) { return Eigen::Index(i) * N + j; };
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double x = grid.coord(i), y = grid.coord(j);
      if (i + 1 < N) {
        const std::complex<double> fwd = -I * std::exp(-I * (-zs * y * h / 2.0)) / (2.0 * h);
        P(node(i, j), node(i + 1, j)) += fwd;
        P(node(i + 1, j), node(i, j)) += std::conj(fwd);
      }
      if (j + 1 < N) {
        const std::complex<double> fwd = -I * std::exp(-I * (zs * x * h / 2.0)) / (2.0 * h);
        P(node(i, j), node(i, j + 1)) += I * fwd;
        P(node(i, j + 1), node(i, j)) += I * std::conj(fwd);
      }
    }
  return P;
}

inline TransverseSpectrum dense_transverse_spectrum(const FieldConfig& cfg, const GridSpec& grid) {
  if (grid.points > 64) throw error(error_kind::precondition, "dense spectrum limited to N <= 64");
  const Eigen::MatrixXcd P = lattice_pi_plus(cfg, grid);
  const double M = cfg.mass;
  const double lb2 = 2.0 * cfg.lambda_b();
  TransverseSpectrum out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> lo(P.adjoint() * P, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hi(P * P.adjoint(), Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < lo.eigenvalues().size(); ++i) {
    out.lower.push_back(std::sqrt(M * M + std::max(0.0, lo.eigenvalues()(i))) - lb2);
    out.upper.push_back(std::sqrt(M * M + std::max(0.0, hi.eigenvalues()(i))) + lb2);
  }
  return out;
}

}  // namespace landau_dirac::oracle
