#include "qmirror/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qmirror/errors.hpp"

namespace qmirror {

ModelParams ModelParams::dimensionless(double k, int n, double r) {
  if (k < 0.0) throw std::invalid_argument("ModelParams: k must be >= 0");
  if (n < 0) throw std::invalid_argument("ModelParams: n must be >= 0");
  if (r < 0.0) throw std::invalid_argument("ModelParams: r must be >= 0");
  ModelParams p;
  p.k = k;
  p.n = n;
  p.r = r;
  return p;
}

ModelParams ModelParams::from_kn(double kn, double r) { return dimensionless(kn, 1, r); }

ModelParams ModelParams::from_physical(double omega0, double omega, double length, double mass,
                                       int n) {
  ModelParams p = dimensionless(coupling_from_physical(omega0, omega, length, mass), n,
                                omega0 / omega);
  p.omega0 = omega0;
  p.omega = omega;
  p.cavity_length = length;
  p.mirror_mass = mass;
  p.g = p.k * omega;
  return p;
}

double coupling_from_physical(double omega0, double omega, double length, double mass) {
  if (omega0 <= 0.0 || omega <= 0.0 || length <= 0.0 || mass <= 0.0)
    throw std::invalid_argument("coupling_from_physical: all inputs must be > 0");
  const double g = (omega0 / length) * std::sqrt(kHbar / (2.0 * mass * omega));
  return g / omega;
}

Truncation::Truncation(int n_cav_, int n_mirror_) : n_cav(n_cav_), n_mirror(n_mirror_) {
  if (n_cav < 1) throw std::invalid_argument("Truncation: n_cav must be >= 1");
  if (n_mirror < 2) throw std::invalid_argument("Truncation: n_mirror must be >= 2");
}

void Truncation::require_photon_sector(int n) const {
  if (n < 0 || n >= n_cav)
    throw std::invalid_argument("Truncation: photon sector " + std::to_string(n) +
                                " outside the retained cavity levels");
}

HilbertSpace full_space(const Truncation& trunc) {
  return HilbertSpace({trunc.n_cav, trunc.n_mirror, trunc.n_mirror});
}

HilbertSpace mirror_pair_space(const Truncation& trunc) {
  return HilbertSpace({trunc.n_mirror, trunc.n_mirror});
}

Matrix build_hamiltonian(const ModelParams& params, const Truncation& trunc) {
  const HilbertSpace space = full_space(trunc);
  const Matrix b = annihilation(trunc.n_mirror);
  const Matrix x = b + b.adjoint();

  const Matrix n_cav = embed(number_operator(trunc.n_cav), 0, space);
  const Matrix n1 = embed(number_operator(trunc.n_mirror), 1, space);
  const Matrix n2 = embed(number_operator(trunc.n_mirror), 2, space);
  const Matrix x1 = embed(x, 1, space);
  const Matrix x2 = embed(x, 2, space);

  return params.r * n_cav + n1 + n2 - params.k * (n_cav * x1) - params.k * (n_cav * x2);
}

namespace {

// Mirror-pair part of the sector Hamiltonian, without the r*n identity shift.
Matrix sector_mirror_hamiltonian(const ModelParams& params, int sector, const Truncation& trunc) {
  trunc.require_photon_sector(sector);
  const HilbertSpace pair = mirror_pair_space(trunc);
  const Matrix b = annihilation(trunc.n_mirror);
  const Matrix x = b + b.adjoint();
  const Matrix num = number_operator(trunc.n_mirror);
  const double kn = params.k * static_cast<double>(sector);
  return embed(num, 0, pair) + embed(num, 1, pair) -
         kn * (embed(x, 0, pair) + embed(x, 1, pair));
}

// e^{k n (eta b1† - eta* b1 + eta b2† - eta* b2)} on the mirror-pair space.
Matrix sector_displacement(double kn, cxd eta_t, const Truncation& trunc) {
  const HilbertSpace pair = mirror_pair_space(trunc);
  if (kn == 0.0) return Matrix::Identity(pair.total_dim(), pair.total_dim());
  const Matrix b = annihilation(trunc.n_mirror);
  const Matrix gen_mode = eta_t * b.adjoint() - std::conj(eta_t) * b;  // anti-Hermitian
  const Matrix gen = kn * (embed(gen_mode, 0, pair) + embed(gen_mode, 1, pair));
  // e^{G} with G anti-Hermitian: i G is Hermitian and e^{G} = e^{-i (iG)}.
  return expm_hermitian(cxd(0.0, 1.0) * gen, 1.0);
}

Matrix assemble_propagator(const ModelParams& params, double t, const Truncation& trunc,
                           FactorSigns signs, bool include_cavity_phase) {
  const int pair_dim = trunc.mirror_pair_dim();
  const cxd eta_t = 1.0 - std::exp(cxd(0.0, -t));

  // Free mirror rotation e^{-i t (b1†b1 + b2†b2)}: diagonal phases.
  Vector mirror_phase(pair_dim);
  for (int m1 = 0; m1 < trunc.n_mirror; ++m1)
    for (int m2 = 0; m2 < trunc.n_mirror; ++m2)
      mirror_phase(m1 * trunc.n_mirror + m2) = std::polar(1.0, -t * (m1 + m2));

  Matrix u = Matrix::Zero(trunc.total_dim(), trunc.total_dim());
  for (int n = 0; n < trunc.n_cav; ++n) {
    const double kn = params.k * static_cast<double>(n);
    cxd phase = std::polar(1.0, signs.kerr * 2.0 * kn * kn * (t - std::sin(t)));
    if (include_cavity_phase) phase *= std::polar(1.0, -t * params.r * n);
    const Matrix block =
        phase * (sector_displacement(kn, eta_t, trunc) * mirror_phase.asDiagonal());
    u.block(n * pair_dim, n * pair_dim, pair_dim, pair_dim) = block;
  }
  return u;
}

}  // namespace

Matrix block_hamiltonian(const ModelParams& params, int sector, const Truncation& trunc) {
  const Matrix m = sector_mirror_hamiltonian(params, sector, trunc);
  return m + (params.r * static_cast<double>(sector)) *
                 Matrix::Identity(m.rows(), m.cols());
}

Matrix factorized_propagator(const ModelParams& params, double t, const Truncation& trunc,
                             FactorSigns signs) {
  return assemble_propagator(params, t, trunc, signs, true);
}

Matrix interaction_propagator(const ModelParams& params, double t, const Truncation& trunc,
                              FactorSigns signs) {
  return assemble_propagator(params, t, trunc, signs, false);
}

EvolveMethod evolve_method_from_string(std::string_view name) {
  if (name == "factorized") return EvolveMethod::factorized;
  if (name == "brute_force") return EvolveMethod::brute_force;
  if (name == "block") return EvolveMethod::block;
  throw std::invalid_argument("unknown evolution method: " + std::string(name));
}

std::string_view to_string(EvolveMethod method) {
  switch (method) {
    case EvolveMethod::factorized: return "factorized";
    case EvolveMethod::brute_force: return "brute_force";
    case EvolveMethod::block: return "block";
  }
  throw std::invalid_argument("unknown evolution method tag");
}

StateVector evolve(const StateVector& initial, const ModelParams& params, double t,
                   EvolveMethod method) {
  if (initial.space.num_modes() != 3)
    throw std::invalid_argument("evolve: expected a three-mode state (cavity, mirror, mirror)");
  if (initial.space.dim(1) != initial.space.dim(2))
    throw std::invalid_argument("evolve: mirror truncations must match");
  if (std::abs(initial.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("evolve: initial state must be normalized");
  const Truncation trunc(initial.space.dim(0), initial.space.dim(1));

  StateVector out{initial.space, Vector(initial.amplitudes.size())};
  switch (method) {
    case EvolveMethod::factorized:
      out.amplitudes = factorized_propagator(params, t, trunc) * initial.amplitudes;
      break;
    case EvolveMethod::brute_force:
      out.amplitudes = expm_hermitian(build_hamiltonian(params, trunc), t) * initial.amplitudes;
      break;
    case EvolveMethod::block: {
      const int pair_dim = trunc.mirror_pair_dim();
      for (int n = 0; n < trunc.n_cav; ++n) {
        const SectorEvolver sector(params, n, trunc);
        out.amplitudes.segment(n * pair_dim, pair_dim) =
            sector.apply(initial.amplitudes.segment(n * pair_dim, pair_dim), t);
      }
      break;
    }
  }
  return out;
}

SectorEvolver::SectorEvolver(const ModelParams& params, int sector, const Truncation& trunc)
    : sector_(sector), shift_(params.r * static_cast<double>(sector)) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sector_mirror_hamiltonian(params, sector, trunc));
  if (es.info() != Eigen::Success) throw numerical_error("SectorEvolver: eigensolver failed");
  eigval_ = es.eigenvalues();
  eigvec_ = es.eigenvectors();
}

Vector SectorEvolver::apply(const Vector& mirror_state, double t) const {
  if (mirror_state.size() != eigval_.size())
    throw std::invalid_argument("SectorEvolver: state has wrong dimension");
  Vector coeff = eigvec_.adjoint() * mirror_state;
  for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) *= std::polar(1.0, -t * eigval_(i));
  // r n shift applied as an exact global phase for this sector.
  return std::polar(1.0, -t * shift_) * (eigvec_ * coeff);
}

Vector SectorEvolver::evolve_vacuum(double t) const {
  Vector vac = Vector::Zero(eigval_.size());
  vac(0) = 1.0;
  return apply(vac, t);
}

Matrix SectorEvolver::propagator(double t) const {
  Vector phases(eigval_.size());
  for (Eigen::Index i = 0; i < eigval_.size(); ++i)
    phases(i) = std::polar(1.0, -t * (eigval_(i) + shift_));
  return eigvec_ * phases.asDiagonal() * eigvec_.adjoint();
}

PropagatorDistance propagator_distance(const ModelParams& params, double t,
                                       const Truncation& trunc, int guard_levels,
                                       FactorSigns signs) {
  if (guard_levels < 0 || guard_levels > trunc.n_mirror - 1)
    throw std::invalid_argument("propagator_distance: guard_levels must leave at least one level");
  const Matrix u_fact = factorized_propagator(params, t, trunc, signs);
  const Matrix u_expm = expm_hermitian(build_hamiltonian(params, trunc), t);
  const Matrix diff = u_fact - u_expm;

  const int keep = trunc.n_mirror - guard_levels;
  std::vector<Eigen::Index> cols;
  for (int n = 0; n < trunc.n_cav; ++n)
    for (int m1 = 0; m1 < keep; ++m1)
      for (int m2 = 0; m2 < keep; ++m2)
        cols.push_back((static_cast<Eigen::Index>(n) * trunc.n_mirror + m1) * trunc.n_mirror + m2);

  Matrix restricted(diff.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) restricted.col(static_cast<Eigen::Index>(j)) = diff.col(cols[j]);

  PropagatorDistance out;
  out.restricted = operator_norm(restricted);
  out.full = operator_norm(diff);
  out.domain_levels = keep;
  return out;
}

}  // namespace qmirror
