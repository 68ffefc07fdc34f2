#pragma once

#include "qmirror/fock.hpp"

namespace qmirror {

/// Basis convention of a two-qubit matrix. The descending order
/// |11>, |10>, |01>, |00> is the product-basis convention the closed-form
/// reduced density matrix is written in; ascending is |00>, |01>, |10>, |11>.
enum class BasisOrder { ascending, descending };

/// 4x4 density matrix with explicit basis convention. `normalized` records
/// whether the trace is one; unnormalized input is legal and the concurrence
/// then scales linearly with the trace.
struct TwoQubitDensity {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  BasisOrder order = BasisOrder::ascending;
  bool normalized = true;

  cxd trace() const { return rho.trace(); }
  /// Same state re-expressed in ascending order (index reversal).
  TwoQubitDensity to_ascending() const;
};

/// sigma_y ⊗ sigma_y: the antidiagonal (-1, 1, 1, -1), identical in the
/// ascending and descending basis orders.
Eigen::Matrix4cd sigma_yy();

/// zeta = rho (sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y), with the complex
/// conjugate taken entrywise in rho's declared basis.
Eigen::Matrix4cd zeta_matrix(const TwoQubitDensity& rho);

/// sqrt of the zeta eigenvalues, sorted descending. Eigenvalues come from a
/// general complex eigensolver; imaginary parts below 1e-9 are discarded and
/// real parts in [-1e-9, 0) are clamped to zero. Values below the solver's
/// resolution for this matrix are zeroed first: when zeta is rank deficient
/// the raw eigenvalues carry O(eps) noise which the square root would amplify
/// to O(sqrt(eps)). Throws numerical_error if an eigenvalue has |imag| >= 1e-9
/// or real part < -1e-9.
Eigen::Vector4d zeta_sqrt_eigenvalues(const TwoQubitDensity& rho);

/// Wootters concurrence max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)).
/// For unnormalized input the result scales linearly with the trace.
double wootters_concurrence(const TwoQubitDensity& rho);

/// Pure-state concurrence 2|a d - b c| for amplitudes (a, b, c, d) of
/// |00>, |01>, |10>, |11>. Unless `allow_unnormalized`, the amplitudes must
/// have unit norm within 1e-10.
double pure_concurrence(const Eigen::Vector4cd& amplitudes_ascending,
                        bool allow_unnormalized = false);

/// Restriction of an oscillator-pair density matrix to the span of levels
/// {0, 1} per mode.
struct QubitProjection {
  TwoQubitDensity rho;  // ascending order, renormalized
  double leakage = 0.0; // 1 - trace of the retained block
};

/// Keeps the 4-dimensional block with both mirrors in {|0>, |1>} and
/// renormalizes it. The discarded weight is returned as `leakage` and must be
/// reported next to any concurrence derived from the projection. Throws
/// truncation_error if leakage exceeds 0.5.
QubitProjection project_to_qubits(const Matrix& rho_mirrors, int n_mirror);

/// log2 of the trace norm of the partial transpose over the second qubit.
/// Zero exactly on PPT (= separable, for two qubits) states. Input must be
/// normalized.
double log_negativity(const TwoQubitDensity& rho);

}  // namespace qmirror
