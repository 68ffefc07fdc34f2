#include "qmirror/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmirror/errors.hpp"

namespace qmirror {

HilbertSpace::HilbertSpace(std::vector<int> mode_dims) : dims_(std::move(mode_dims)) {
  if (dims_.empty()) throw std::invalid_argument("HilbertSpace: no modes");
  total_ = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("HilbertSpace: every mode dimension must be >= 1");
    total_ *= d;
  }
}

int HilbertSpace::flat_index(const std::vector<int>& occupations) const {
  if (occupations.size() != dims_.size())
    throw std::invalid_argument("flat_index: wrong number of modes");
  int idx = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (occupations[m] < 0 || occupations[m] >= dims_[m])
      throw std::invalid_argument("flat_index: occupation out of range");
    idx = idx * dims_[m] + occupations[m];
  }
  return idx;
}

std::vector<int> HilbertSpace::multi_index(int flat) const {
  if (flat < 0 || flat >= total_) throw std::invalid_argument("multi_index: index out of range");
  std::vector<int> occ(dims_.size());
  for (std::size_t m = dims_.size(); m-- > 0;) {
    occ[m] = flat % dims_[m];
    flat /= dims_[m];
  }
  return occ;
}

Vector fock_state(int dim, int n) {
  if (dim < 1) throw std::invalid_argument("fock_state: dim must be >= 1");
  if (n < 0 || n >= dim) throw std::invalid_argument("fock_state: occupation out of range");
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return v;
}

Vector coherent_state(int dim, cxd alpha) {
  if (dim < 1) throw std::invalid_argument("coherent_state: dim must be >= 1");
  Vector v(dim);
  v(0) = 1.0;
  for (int j = 1; j < dim; ++j) v(j) = v(j - 1) * alpha / std::sqrt(static_cast<double>(j));
  v /= v.norm();
  return v;
}

bool coherent_truncation_suspect(int dim, cxd alpha) {
  return std::norm(alpha) > 0.5 * static_cast<double>(dim);
}

double poisson_tail_mass(double mean, int levels) {
  if (mean < 0.0) throw std::invalid_argument("poisson_tail_mass: mean must be >= 0");
  if (levels <= 0) return 1.0;
  if (mean == 0.0) return 0.0;
  // Sum the tail upward from `levels`; terms decay fast once j > mean.
  double term = std::exp(-mean);
  for (int j = 1; j <= levels - 1; ++j) term *= mean / j;  // term = P[N = levels-1]
  term *= mean / levels;                                   // term = P[N = levels]
  double tail = 0.0;
  for (int j = levels; j < levels + 500; ++j) {
    tail += term;
    term *= mean / (j + 1);
    if (term < tail * 1e-18 + 1e-300) break;
  }
  return tail;
}

Matrix annihilation(int dim) {
  if (dim < 1) throw std::invalid_argument("annihilation: dim must be >= 1");
  Matrix a = Matrix::Zero(dim, dim);
  for (int j = 1; j < dim; ++j) a(j - 1, j) = std::sqrt(static_cast<double>(j));
  return a;
}

Matrix creation(int dim) { return annihilation(dim).adjoint(); }

Matrix number_operator(int dim) {
  if (dim < 1) throw std::invalid_argument("number_operator: dim must be >= 1");
  Matrix n = Matrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) n(j, j) = static_cast<double>(j);
  return n;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix embed(const Matrix& op, int mode, const HilbertSpace& space) {
  if (mode < 0 || mode >= space.num_modes()) throw std::invalid_argument("embed: bad mode index");
  if (op.rows() != op.cols() || op.rows() != space.dim(mode))
    throw std::invalid_argument("embed: operator dimension does not match the mode");
  Matrix out = Matrix::Identity(1, 1);
  for (int m = 0; m < space.num_modes(); ++m) {
    if (m == mode)
      out = kron(out, op);
    else
      out = kron(out, Matrix::Identity(space.dim(m), space.dim(m)));
  }
  return out;
}

Matrix partial_trace(const Matrix& rho, const HilbertSpace& space, const std::vector<int>& keep) {
  if (rho.rows() != rho.cols() || rho.rows() != space.total_dim())
    throw std::invalid_argument("partial_trace: matrix does not match the space");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= space.num_modes())
      throw std::invalid_argument("partial_trace: mode index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep must be strictly increasing");
  }

  std::vector<int> traced;
  for (int m = 0; m < space.num_modes(); ++m)
    if (std::find(keep.begin(), keep.end(), m) == keep.end()) traced.push_back(m);

  // Strides of each mode in the flat index.
  std::vector<int> stride(space.num_modes());
  int s = 1;
  for (int m = space.num_modes(); m-- > 0;) {
    stride[m] = s;
    s *= space.dim(m);
  }

  // Flat-index offsets contributed by every occupation tuple of a mode subset.
  auto offsets = [&](const std::vector<int>& modes) {
    std::vector<int> offs{0};
    for (int m : modes) {
      std::vector<int> next;
      next.reserve(offs.size() * static_cast<std::size_t>(space.dim(m)));
      for (int base : offs)
        for (int occ = 0; occ < space.dim(m); ++occ) next.push_back(base + occ * stride[m]);
      offs = std::move(next);
    }
    return offs;
  };

  const std::vector<int> keep_off = offsets(keep);
  const std::vector<int> traced_off = offsets(traced);

  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i)
    for (Eigen::Index j = 0; j < dk; ++j) {
      cxd acc = 0.0;
      for (int toff : traced_off) acc += rho(keep_off[i] + toff, keep_off[j] + toff);
      out(i, j) = acc;
    }
  return out;
}

Matrix expm_hermitian(const Matrix& h, double scale) {
  const double defect = hermiticity_defect(h);
  if (defect >= 1e-10)
    throw numerical_error("expm_hermitian: input deviates from Hermitian by " +
                          std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw numerical_error("expm_hermitian: eigensolver failed");
  Vector phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    phases(i) = std::polar(1.0, -scale * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Eigen::VectorXd density_eigenvalues(const Matrix& rho) {
  check_density(rho);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-9)
      throw numerical_error("density matrix has eigenvalue " + std::to_string(ev(i)) +
                            " below -1e-9");
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return ev;
}

void check_density(const Matrix& rho, double herm_tol) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  const double defect = hermiticity_defect(rho);
  if (defect >= herm_tol)
    throw numerical_error("density matrix deviates from Hermitian by " + std::to_string(defect));
}

}  // namespace qmirror
