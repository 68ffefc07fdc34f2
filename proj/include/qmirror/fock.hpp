#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qmirror {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tensor product of truncated single-mode Fock spaces.
///
/// Mode order is fixed as listed at construction (for the optomechanical
/// model: mode 0 = cavity, mode 1 = mirror 1, mode 2 = mirror 2). Flat basis
/// indices run row-major over the modes in that order, so mode 0 varies
/// slowest; this matches the ordering produced by chained Kronecker products.
class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<int> mode_dims);

  int num_modes() const { return static_cast<int>(dims_.size()); }
  int dim(int mode) const { return dims_.at(static_cast<std::size_t>(mode)); }
  const std::vector<int>& mode_dims() const { return dims_; }
  int total_dim() const { return total_; }

  /// Flat index of a multi-mode occupation tuple.
  int flat_index(const std::vector<int>& occupations) const;
  /// Inverse of flat_index.
  std::vector<int> multi_index(int flat) const;

  bool operator==(const HilbertSpace& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  int total_;
};

/// A pure state together with the space it lives on.
struct StateVector {
  HilbertSpace space;
  Vector amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// |n> on a dim-level mode. Throws std::invalid_argument if n >= dim.
Vector fock_state(int dim, int n);

/// Truncated coherent state, renormalized to unit norm on the retained levels.
Vector coherent_state(int dim, cxd alpha);

/// True when |alpha|^2 > dim/2, i.e. the truncation is too tight for the
/// requested coherent state to be represented faithfully.
bool coherent_truncation_suspect(int dim, cxd alpha);

/// P[N >= levels] for N ~ Poisson(mean); the occupation mass a coherent state
/// with |alpha|^2 = mean carries above the retained levels.
double poisson_tail_mass(double mean, int levels);

/// Lowering operator: entry (j-1, j) = sqrt(j).
Matrix annihilation(int dim);
/// Raising operator, adjoint of annihilation.
Matrix creation(int dim);
/// diag(0, 1, ..., dim-1).
Matrix number_operator(int dim);

Matrix kron(const Matrix& a, const Matrix& b);

/// op acting on one mode, identity on the others.
Matrix embed(const Matrix& op, int mode, const HilbertSpace& space);

/// Reduced density matrix over the kept modes (ascending mode order).
/// `keep` must be a nonempty, strictly increasing list of mode indices.
Matrix partial_trace(const Matrix& rho, const HilbertSpace& space,
                     const std::vector<int>& keep);

/// exp(-i * scale * h) via full eigendecomposition of the Hermitian h.
/// Throws numerical_error if h deviates from Hermitian by more than 1e-10.
Matrix expm_hermitian(const Matrix& h, double scale);

/// max_ij |m - m^dagger|
double hermiticity_defect(const Matrix& m);
/// max_ij |u^dagger u - I|
double unitarity_defect(const Matrix& u);
double max_abs(const Matrix& m);
/// Largest singular value.
double operator_norm(const Matrix& m);

/// Eigenvalues of a density matrix with the roundoff clamp applied:
/// values in [-1e-9, 0) are set to 0, anything below -1e-9 throws
/// numerical_error (that is a bug, not roundoff).
Eigen::VectorXd density_eigenvalues(const Matrix& rho);

/// Hermiticity and positivity check for density matrices.
void check_density(const Matrix& rho, double herm_tol = 1e-10);

}  // namespace qmirror
