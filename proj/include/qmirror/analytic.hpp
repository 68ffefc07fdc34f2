#pragma once

#include "qmirror/fock.hpp"

namespace qmirror {

/// eta(t) = 1 - e^{-it}; the per-photon, per-unit-k displacement each mirror
/// acquires. |eta|^2 = 2(1 - cos t).
cxd eta(double t);

/// First-order joint mirror state reached from |n> ⊗ |0,0>:
///   e^{2i(kn)^2(t - sin t) - |kn eta|^2} (|00> + kn eta |01> + kn eta |10>).
/// The extended variant restores the (kn eta)^2 |11> amplitude the first-order
/// expansion drops; with it the state is an exact product to this order and
/// its pure-state concurrence cancels to zero.
struct ApproxState {
  double kn = 0.0;
  double t = 0.0;
  bool include_11 = false;

  cxd global_phase;    // e^{2i (kn)^2 (t - sin t)}
  double prefactor;    // e^{-|kn eta|^2}
  cxd amp00, amp01, amp10, amp11;  // relative amplitudes, amp00 = 1

  /// Full amplitudes (phase * prefactor * relative) in ascending basis order
  /// |00>, |01>, |10>, |11>.
  Eigen::Vector4cd amplitudes_ascending() const;
  double norm() const;
  /// The state embedded on an n_mirror ⊗ n_mirror truncated pair space.
  Vector pair_vector(int n_mirror, bool normalize) const;
};

ApproxState approx_state(double kn, double t, bool include_11 = false);

/// The unnormalized two-mirror reduced density matrix in the descending
/// product basis |11>, |10>, |01>, |00>:
///   e^{-2|kn eta|^2} * [[0,0,0,0],
///                       [0, x, x, kn eta],
///                       [0, x, x, kn eta],
///                       [0, kn eta*, kn eta*, 1]],  x = |kn eta|^2.
/// Its trace is e^{-2x}(1 + 2x), i.e. short of 1 at fourth order in kn eta;
/// it is kept unnormalized because the closed-form concurrence follows from
/// it exactly as written.
Eigen::Matrix4cd reduced_density_closed_form(double kn, double t);

/// Closed-form concurrence 2|kn eta|^2 e^{-2|kn eta|^2}
///   = 4 (kn)^2 (1 - cos t) e^{-4 (kn)^2 (1 - cos t)}.
double concurrence_closed_form(double kn, double t);

}  // namespace qmirror
