#pragma once

#include <string_view>

#include "qmirror/fock.hpp"

namespace qmirror {

inline constexpr double kHbar = 1.054571817e-34;  // J s

/// Physical and dimensionless parameters of the two-mirror radiation-pressure
/// model. All dynamics use the scaled Hamiltonian h = H/(hbar*omega) and the
/// scaled time t = omega * t_actual, so only r = omega0/omega, k = g/omega and
/// the photon number n enter the propagators; hbar appears exclusively in
/// coupling_from_physical.
struct ModelParams {
  double r = 13.0;  // omega0 / omega
  double k = 0.0;   // g / omega
  int n = 0;        // initial cavity photon number

  // Set when constructed from physical quantities; zero otherwise.
  double omega0 = 0.0;         // rad/s
  double omega = 0.0;          // rad/s
  double cavity_length = 0.0;  // m
  double mirror_mass = 0.0;    // kg
  double g = 0.0;              // rad/s

  double kn() const { return k * static_cast<double>(n); }
  /// The closed-form state is a first-order expansion in kn; past ~0.1 it is
  /// no longer meaningful.
  bool perturbative() const { return kn() <= 0.1; }

  static ModelParams dimensionless(double k, int n, double r = 13.0);
  /// Single-photon parameterization: k = kn, n = 1.
  static ModelParams from_kn(double kn, double r = 13.0);
  static ModelParams from_physical(double omega0, double omega, double length, double mass,
                                   int n);
};

/// k = g/omega with g = (omega0/L) * sqrt(hbar / (2 m omega)).
/// Throws std::invalid_argument on nonpositive input.
double coupling_from_physical(double omega0, double omega, double length, double mass);

/// Retained Fock levels per mode.
struct Truncation {
  int n_cav = 3;
  int n_mirror = 8;

  Truncation() = default;
  Truncation(int n_cav, int n_mirror);

  int mirror_pair_dim() const { return n_mirror * n_mirror; }
  int total_dim() const { return n_cav * n_mirror * n_mirror; }
  /// The initial Fock level must be retained: n_cav > n.
  void require_photon_sector(int n) const;
};

HilbertSpace full_space(const Truncation& trunc);
HilbertSpace mirror_pair_space(const Truncation& trunc);

/// Scaled Hamiltonian h = r a†a + b1†b1 + b2†b2 - k a†a (b1†+b1) - k a†a (b2†+b2)
/// on the truncated three-mode space.
Matrix build_hamiltonian(const ModelParams& params, const Truncation& trunc);

/// The n-photon diagonal block of the Hamiltonian, acting on the mirror-pair
/// space: h_n = r n + b1†b1 + b2†b2 - k n (b1† + b1 + b2† + b2).
Matrix block_hamiltonian(const ModelParams& params, int sector, const Truncation& trunc);

/// Sign probe for validation runs: flipping `kerr` negates the
/// e^{2i(k a†a)^2 (t - sin t)} phase so the oracle comparison can demonstrate
/// its sensitivity to that factor.
struct FactorSigns {
  double kerr = +1.0;
};

/// Closed-form propagator
///   U(t) = e^{-i t r a†a} e^{2i(k a†a)^2 (t - sin t)}
///          e^{k a†a (eta b1† - eta* b1 + eta b2† - eta* b2)} e^{-i t (b1†b1 + b2†b2)}
/// with eta = 1 - e^{-it}, assembled factor by factor: the number-operator
/// factors are diagonal and the displacement factor is the exponential of an
/// anti-Hermitian generator within each photon sector.
Matrix factorized_propagator(const ModelParams& params, double t, const Truncation& trunc,
                             FactorSigns signs = {});

/// Interaction picture relative to the free cavity field: the factorized
/// propagator without the e^{-i t r a†a} factor.
Matrix interaction_propagator(const ModelParams& params, double t, const Truncation& trunc,
                              FactorSigns signs = {});

enum class EvolveMethod { factorized, brute_force, block };

EvolveMethod evolve_method_from_string(std::string_view name);
std::string_view to_string(EvolveMethod method);

/// Apply e^{-i h t} to a normalized state by the chosen method. `factorized`
/// uses the closed form, `brute_force` the dense exponential of the full
/// Hamiltonian, `block` per-photon-sector dense exponentials.
StateVector evolve(const StateVector& initial, const ModelParams& params, double t,
                   EvolveMethod method);

/// Eigendecomposition of one photon sector, reusable across evolution times.
/// The r n identity shift is applied as an exact scalar phase so that huge
/// physical r values cannot degrade the mirror dynamics.
class SectorEvolver {
 public:
  SectorEvolver(const ModelParams& params, int sector, const Truncation& trunc);

  int sector() const { return sector_; }
  int dim() const { return static_cast<int>(eigval_.size()); }

  Vector apply(const Vector& mirror_state, double t) const;
  /// e^{-i h_n t} |0,0>.
  Vector evolve_vacuum(double t) const;
  /// Dense e^{-i h_n t}.
  Matrix propagator(double t) const;

 private:
  int sector_;
  double shift_;  // r * sector
  Eigen::VectorXd eigval_;
  Matrix eigvec_;
};

/// Distance between the factorized propagator and the dense expm oracle.
/// `restricted` is the operator norm of the difference on the domain of
/// states with both mirrors below n_mirror - guard_levels; the top
/// `guard_levels` mirror levels are excluded because the truncated ladder
/// algebra is wrong there and both constructions disagree at
/// O(k^2 n^2 * n_mirror * t) on those states regardless of parameters.
/// `full` is the unrestricted operator norm, reported for transparency.
struct PropagatorDistance {
  double restricted = 0.0;
  double full = 0.0;
  int domain_levels = 0;  // mirror levels spanned by the restricted domain
};

PropagatorDistance propagator_distance(const ModelParams& params, double t,
                                       const Truncation& trunc, int guard_levels = 5,
                                       FactorSigns signs = {});

}  // namespace qmirror
