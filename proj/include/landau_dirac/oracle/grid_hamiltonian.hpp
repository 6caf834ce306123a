#pragma once

#include <cmath>
#include <cstdio>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "landau_dirac/errors.hpp"
#include "landau_dirac/model.hpp"
#include "landau_dirac/oracle/dirac_matrices.hpp"
#include "landau_dirac/spinors.hpp"

namespace landau_dirac::oracle {

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

// Square transverse grid x, y in [-L, L] with N nodes per side and Dirichlet
// boundaries (wave function zero just outside the box).
struct GridSpec {
  double half_extent = 0.0;
  int points = 0;

  double spacing() const { return 2.0 * half_extent / (points - 1); }
  double coord(int i) const { return -half_extent + i * spacing(); }
  Eigen::Index nodes() const { return Eigen::Index(points) * points; }
  Eigen::Index dimension() const { return 4 * nodes(); }
  Eigen::Index index(int i, int j, int comp) const { return (Eigen::Index(i) * points + j) * 4 + comp; }
};

inline GridSpec make_grid(double half_extent, int points) {
  if (points < 16) throw error(error_kind::precondition, "grid needs at least 16 points per side");
  if (!(half_extent > 0.0) || !std::isfinite(half_extent))
    throw error(error_kind::precondition, "grid half extent must be positive");
  return {half_extent, points};
}

// Half extent at which the lowest-level Gaussian exp(-|Z| b rho^2 / 4) has
// dropped to 1e-10 of its peak.
inline double envelope_extent(const FieldConfig& cfg) {
  return std::sqrt(4.0 * std::log(1e10) / cfg.zb());
}

struct DiscreteHamiltonian {
  GridSpec grid{};
  FieldConfig cfg{};
  double p_z = 0.0;
  SparseMatrix matrix;
  double hermiticity_defect = 0.0;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return matrix * v; }
};

inline double hermiticity_defect(const SparseMatrix& h) {
  SparseMatrix diff = SparseMatrix(h.adjoint()) - h;
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

// H = alpha.pi + alpha_z p_z - 2 lambda B beta Sigma_z + beta M on the grid,
// symmetric gauge A = B(-y, x)/2. Derivatives are second-order centred
// differences with the gauge field carried as link phases, so that
//   (pi_x psi)_i = -i [e^{-i t} psi_{i+1} - e^{i t} psi_{i-1}] / 2h,  t = -Z b y h / 2
// and likewise along y with t = +Z b x h / 2.
inline DiscreteHamiltonian build_hamiltonian(const FieldConfig& cfg, double p_z, const GridSpec& grid) {
  make_grid(grid.half_extent, grid.points);
  if (cfg.zb() > 0.0 && grid.half_extent < envelope_extent(cfg) * (1.0 - 1e-12)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "half extent %.6g too small for the Gaussian envelope; use L >= %.6g",
                  grid.half_extent, envelope_extent(cfg));
    throw error(error_kind::envelope_violation, buf);
  }
  const DiracMatrices& d = dirac_matrices();
  const std::complex<double> I{0.0, 1.0};
  const int N = grid.points;
  const double h = grid.spacing();
  const double zb_signed = cfg.charge * cfg.field_b;

  const Eigen::Matrix4cd onsite =
      d.beta * cfg.mass - 2.0 * cfg.lambda_b() * d.beta * d.sigma_z + d.alpha_z * p_z;

  std::vector<Eigen::Triplet<std::complex<double>>> trip;
  trip.reserve(std::size_t(grid.nodes()) * 4 * 10);
  auto add_block = [&](Eigen::Index row, Eigen::Index col, const Eigen::Matrix4cd& blk) {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (blk(a, b) != 0.0) trip.emplace_back(row + a, col + b, blk(a, b));
  };

  for (int i = 0; i < N; ++i) {
    const double x = grid.coord(i);
    for (int j = 0; j < N; ++j) {
      const double y = grid.coord(j);
      const Eigen::Index here = grid.index(i, j, 0);
      add_block(here, here, onsite);
      if (i + 1 < N) {
        const double t = -zb_signed * y * h / 2.0;
        const Eigen::Index there = grid.index(i + 1, j, 0);
        add_block(here, there, (-I * std::exp(-I * t) / (2.0 * h)) * d.alpha_x);
        add_block(there, here, (I * std::exp(I * t) / (2.0 * h)) * d.alpha_x);
      }
      if (j + 1 < N) {
        const double t = zb_signed * x * h / 2.0;
        const Eigen::Index there = grid.index(i, j + 1, 0);
        add_block(here, there, (-I * std::exp(-I * t) / (2.0 * h)) * d.alpha_y);
        add_block(there, here, (I * std::exp(I * t) / (2.0 * h)) * d.alpha_y);
      }
    }
  }

  DiscreteHamiltonian out;
  out.grid = grid;
  out.cfg = cfg;
  out.p_z = p_z;
  out.matrix.resize(grid.dimension(), grid.dimension());
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.matrix.makeCompressed();
  out.hermiticity_defect = hermiticity_defect(out.matrix);
  if (!(out.hermiticity_defect < 1e-12))
    throw error(error_kind::oracle_failure,
                "discrete Hamiltonian not Hermitian: defect " + landau_dirac::detail::shortest(out.hermiticity_defect));
  return out;
}

// Samples a state on the grid nodes at t = 0, z = 0.
inline Eigen::VectorXcd sample_state(const SpinorState& st, const GridSpec& grid) {
  Eigen::VectorXcd v(grid.dimension());
  for (int i = 0; i < grid.points; ++i)
    for (int j = 0; j < grid.points; ++j) {
      const SpinorValue val = eval_spinor(st, 0.0, {grid.coord(i), grid.coord(j), 0.0});
      for (int c = 0; c < 4; ++c) v(grid.index(i, j, c)) = val.comp[c];
    }
  return v;
}

inline void require_grid_state(const SpinorState& st) {
  if (st.vanishing) throw error(error_kind::precondition, "state is identically zero");
  if (st.kind == StateKind::neutral)
    throw error(error_kind::precondition,
                "plane waves are not compatible with Dirichlet boundaries; grid checks cover charged states only");
  if (st.nonrelativistic)
    throw error(error_kind::precondition, "grid checks need a relativistic state");
}

// Checks that the state has decayed to 1e-10 of its peak on the boundary ring.
inline void check_state_envelope(const Eigen::VectorXcd& v, const GridSpec& grid) {
  double peak = 0.0, edge = 0.0;
  const int N = grid.points;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double mag = 0.0;
      for (int c = 0; c < 4; ++c) mag = std::max(mag, std::abs(v(grid.index(i, j, c))));
      peak = std::max(peak, mag);
      if (i == 0 || j == 0 || i == N - 1 || j == N - 1) edge = std::max(edge, mag);
    }
  if (edge > 1e-10 * peak) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "state amplitude on the grid boundary is %.3g of its peak; enlarge the grid extent",
                  edge / peak);
    throw error(error_kind::envelope_violation, buf);
  }
}

// ||H psi - E psi||_2 / ||psi||_2 over interior nodes.
inline double residual_grid(const SpinorState& st, const GridSpec& grid) {
  require_grid_state(st);
  const DiscreteHamiltonian H = build_hamiltonian(st.cfg, st.qn.p_z, grid);
  const Eigen::VectorXcd psi = sample_state(st, grid);
  check_state_envelope(psi, grid);
  const Eigen::VectorXcd r = H.apply(psi) - st.energy() * psi;
  double num = 0.0, den = 0.0;
  const int N = grid.points;
  for (int i = 1; i < N - 1; ++i)
    for (int j = 1; j < N - 1; ++j)
      for (int c = 0; c < 4; ++c) {
        num += std::norm(r(grid.index(i, j, c)));
        den += std::norm(psi(grid.index(i, j, c)));
      }
  return std::sqrt(num / den);
}

// <psi|H|psi> / <psi|psi> for a sampled state.
inline double rayleigh_quotient(const DiscreteHamiltonian& H, const SpinorState& st) {
  require_grid_state(st);
  const Eigen::VectorXcd psi = sample_state(st, H.grid);
  return (psi.dot(H.apply(psi))).real() / psi.squaredNorm();
}

}  // namespace landau_dirac::oracle
