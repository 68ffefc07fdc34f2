#include "qmirror/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qmirror/errors.hpp"

namespace qmirror {

TwoQubitDensity TwoQubitDensity::to_ascending() const {
  if (order == BasisOrder::ascending) return *this;
  TwoQubitDensity out;
  out.order = BasisOrder::ascending;
  out.normalized = normalized;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.rho(i, j) = rho(3 - i, 3 - j);
  return out;
}

Eigen::Matrix4cd sigma_yy() {
  // sigma_y|0> = i|1>, sigma_y|1> = -i|0>, so sigma_y ⊗ sigma_y maps
  // |00> -> -|11>, |01> -> |10>, |10> -> |01>, |11> -> -|00>; reversing the
  // basis order leaves the matrix unchanged.
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(0, 3) = -1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 0) = -1.0;
  return s;
}

Eigen::Matrix4cd zeta_matrix(const TwoQubitDensity& rho) {
  if (hermiticity_defect(rho.rho) >= 1e-10)
    throw numerical_error("zeta_matrix: input density matrix is not Hermitian");
  const Eigen::Matrix4cd s = sigma_yy();
  return rho.rho * s * rho.rho.conjugate() * s;
}

Eigen::Vector4d zeta_sqrt_eigenvalues(const TwoQubitDensity& rho) {
  const Eigen::Matrix4cd zeta = zeta_matrix(rho);
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(zeta, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw numerical_error("zeta_sqrt_eigenvalues: eigensolver failed");

  // Resolution floor for the zero eigenvalues of a singular zeta. The entries
  // of zeta = (rho S)(rho* S) are computed with absolute error
  // O(eps * |rho S| |rho* S|), and that is the scale the eigenvalue noise
  // inherits; square-rooting it unfiltered would inject O(sqrt(eps)) into the
  // concurrence. Genuine eigenvalues sit above this scale because they carry
  // the same product structure.
  const Eigen::Matrix4d abs_factor = (rho.rho * sigma_yy()).cwiseAbs();
  const double floor = 128.0 * std::numeric_limits<double>::epsilon() *
                       (abs_factor * abs_factor).sum();

  Eigen::Vector4d lambda;
  for (int i = 0; i < 4; ++i) {
    const cxd ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) >= 1e-9)
      throw numerical_error("zeta eigenvalue has imaginary part " + std::to_string(ev.imag()));
    double re = ev.real();
    if (std::abs(re) < floor) re = 0.0;
    if (re < -1e-9)
      throw numerical_error("zeta eigenvalue " + std::to_string(re) + " below -1e-9");
    lambda(i) = std::sqrt(std::max(0.0, re));
  }
  std::sort(lambda.data(), lambda.data() + 4, std::greater<double>());
  return lambda;
}

double wootters_concurrence(const TwoQubitDensity& rho) {
  const Eigen::Vector4d s = zeta_sqrt_eigenvalues(rho);
  return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double pure_concurrence(const Eigen::Vector4cd& amplitudes_ascending, bool allow_unnormalized) {
  if (!allow_unnormalized) {
    const double n = amplitudes_ascending.norm();
    if (std::abs(n - 1.0) > 1e-10)
      throw std::invalid_argument("pure_concurrence: amplitudes not normalized (norm " +
                                  std::to_string(n) + ")");
  }
  const Eigen::Vector4cd& a = amplitudes_ascending;
  return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2));
}

QubitProjection project_to_qubits(const Matrix& rho_mirrors, int n_mirror) {
  if (n_mirror < 2) throw std::invalid_argument("project_to_qubits: n_mirror must be >= 2");
  const Eigen::Index dim = static_cast<Eigen::Index>(n_mirror) * n_mirror;
  if (rho_mirrors.rows() != dim || rho_mirrors.cols() != dim)
    throw std::invalid_argument("project_to_qubits: matrix does not match n_mirror^2");
  const double tr = rho_mirrors.trace().real();
  if (std::abs(tr - 1.0) > 1e-6)
    throw std::invalid_argument("project_to_qubits: input trace must be ~1, got " +
                                std::to_string(tr));

  const Eigen::Index idx[4] = {0, 1, n_mirror, n_mirror + 1};  // |00>,|01>,|10>,|11>
  Eigen::Matrix4cd block;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) block(i, j) = rho_mirrors(idx[i], idx[j]);

  const double block_trace = block.trace().real();
  QubitProjection out;
  out.leakage = 1.0 - block_trace;
  if (out.leakage > 0.5)
    throw truncation_error("project_to_qubits: leakage " + std::to_string(out.leakage) +
                           " exceeds 0.5; the state is not a qubit pair");
  out.rho.rho = block / block_trace;
  out.rho.order = BasisOrder::ascending;
  out.rho.normalized = true;
  return out;
}

double log_negativity(const TwoQubitDensity& rho) {
  const TwoQubitDensity asc = rho.to_ascending();
  if (std::abs(asc.trace().real() - 1.0) > 1e-8 || std::abs(asc.trace().imag()) > 1e-8)
    throw std::invalid_argument("log_negativity: input must be normalized");

  // Partial transpose over the second qubit: index = 2a + b.
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          pt(2 * a + b, 2 * ap + bp) = asc.rho(2 * a + bp, 2 * ap + b);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt, Eigen::EigenvaluesOnly);
  const double trace_norm = es.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, std::log2(trace_norm));
}

}  // namespace qmirror
