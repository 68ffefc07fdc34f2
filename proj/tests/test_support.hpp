#pragma once

#include <random>

#include "qmirror/fock.hpp"

namespace qmirror::test {

inline cxd random_cxd(std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return {dist(rng), dist(rng)};
}

inline Vector random_pure(std::mt19937_64& rng, int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = random_cxd(rng);
  v /= v.norm();
  return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_cxd(rng);
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, int dim) {
  const Matrix g = random_matrix(rng, dim, dim);
  return 0.5 * (g + g.adjoint());
}

// Full-rank random density matrix (Ginibre construction).
inline Matrix random_density(std::mt19937_64& rng, int dim) {
  const Matrix g = random_matrix(rng, dim, dim);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

// Haar-ish random unitary via QR with phase fixing.
inline Matrix random_unitary(std::mt19937_64& rng, int dim) {
  const Matrix g = random_matrix(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const cxd d = r(i, i);
    q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : cxd(1.0);
  }
  return q;
}

}  // namespace qmirror::test
