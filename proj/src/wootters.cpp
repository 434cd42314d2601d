#include <algorithm>
#include <array>
#include <functional>
#include <cmath>

#include "mpent/convexroof.hpp"
#include "mpent/qcore.hpp"

namespace mpent {

WoottersResult wootters_ef(const DensityOperator& rho) {
  if (rho.dims() != Dims{2, 2}) throw UsageError("wootters_ef needs a two-qubit state");
  auto [vals, vecs] = hermitian_eigen(rho.matrix());
  RealVector root(vals.size());
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol::kNegativeEigen) throw InvariantError("negative eigenvalue below -1e-9");
    root(i) = std::sqrt(std::max(vals(i), 0.0));
  }
  const Matrix sqrt_rho = vecs * root.cast<cplx>().asDiagonal() * vecs.adjoint();

  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix tilde = yy * rho.matrix().conjugate() * yy;
  Matrix m = sqrt_rho * tilde * sqrt_rho;
  m = 0.5 * (m + m.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  const double c = std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  return {c, spectral::binary_entropy(x)};
}

}  // namespace mpent
