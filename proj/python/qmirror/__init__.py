"""Two movable mirrors in a single-mode cavity field.

Dense truncated-Fock simulation of the radiation-pressure model
h = r a†a + b1†b1 + b2†b2 - k a†a (b1†+b1) - k a†a (b2†+b2),
its factorized closed-form propagator, the closed-form mirror-mirror
concurrence curve, and the two-qubit entanglement measures used to
cross-check it against exact evolution.
"""

from qmirror._core import (
    HBAR,
    ApproxState,
    ModelParams,
    NumericalError,
    SectorEvolver,
    Truncation,
    TruncationError,
    __version__,
    annihilation,
    approx_state,
    block_hamiltonian,
    build_hamiltonian,
    coherent_state,
    coherent_truncation_suspect,
    concurrence_closed_form,
    coupling_from_physical,
    creation,
    embed,
    eta,
    evolve,
    expm_hermitian,
    factorized_propagator,
    fock_state,
    hermiticity_defect,
    interaction_propagator,
    log_negativity,
    number_operator,
    operator_norm,
    partial_trace,
    poisson_tail_mass,
    project_to_qubits,
    propagator_distance,
    pure_concurrence,
    reduced_density_closed_form,
    sigma_yy,
    unitarity_defect,
    wootters_concurrence,
    zeta_matrix,
)

__all__ = [
    "HBAR",
    "ApproxState",
    "ModelParams",
    "NumericalError",
    "SectorEvolver",
    "Truncation",
    "TruncationError",
    "__version__",
    "annihilation",
    "approx_state",
    "block_hamiltonian",
    "build_hamiltonian",
    "coherent_state",
    "coherent_truncation_suspect",
    "concurrence_closed_form",
    "coupling_from_physical",
    "creation",
    "embed",
    "eta",
    "evolve",
    "expm_hermitian",
    "factorized_propagator",
    "fock_state",
    "hermiticity_defect",
    "interaction_propagator",
    "log_negativity",
    "number_operator",
    "operator_norm",
    "partial_trace",
    "poisson_tail_mass",
    "project_to_qubits",
    "propagator_distance",
    "pure_concurrence",
    "reduced_density_closed_form",
    "sigma_yy",
    "unitarity_defect",
    "wootters_concurrence",
    "zeta_matrix",
]
