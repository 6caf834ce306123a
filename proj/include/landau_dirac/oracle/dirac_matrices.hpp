#pragma once

#include <complex>

#include <Eigen/Dense>

namespace landau_dirac::oracle {

// Dirac representation; spinor rows ordered (phi_up, phi_down, chi_up, chi_down).
struct DiracMatrices {
  Eigen::Matrix4cd beta;
  Eigen::Matrix4cd alpha_x;
  Eigen::Matrix4cd alpha_y;
  Eigen::Matrix4cd alpha_z;
  Eigen::Matrix4cd sigma_z;  // diag(sigma_z, sigma_z)
};

inline const DiracMatrices& dirac_matrices() {
  static const DiracMatrices d = [] {
    using c = std::complex<double>;
    const c I{0.0, 1.0};
    Eigen::Matrix2cd sx, sy, sz;
    sx << 0.0, 1.0, 1.0, 0.0;
    sy << 0.0, -I, I, 0.0;
    sz << 1.0, 0.0, 0.0, -1.0;
    auto offdiag = [](const Eigen::Matrix2cd& s) {
      Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
      a.topRightCorner<2, 2>() = s;
      a.bottomLeftCorner<2, 2>() = s;
      return a;
    };
    DiracMatrices out;
    out.beta = Eigen::Vector4cd(1.0, 1.0, -1.0, -1.0).asDiagonal();
    out.alpha_x = offdiag(sx);
    out.alpha_y = offdiag(sy);
    out.alpha_z = offdiag(sz);
    out.sigma_z = Eigen::Matrix4cd::Zero();
    out.sigma_z.topLeftCorner<2, 2>() = sz;
    out.sigma_z.bottomRightCorner<2, 2>() = sz;
    return out;
  }();
  return d;
}

}  // namespace landau_dirac::oracle
