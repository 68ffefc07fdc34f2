"""Smoke tests for the qmirror python module (built extension + package)."""

import math
import os
import subprocess

import numpy as np
import pytest

qm = pytest.importorskip("qmirror")


def test_closed_form_peak():
    peak = qm.concurrence_closed_form(0.01, math.pi)
    assert abs(peak - 8e-4 * math.exp(-8e-4)) < 1e-15
    assert qm.concurrence_closed_form(0.01, 0.0) == 0.0


def test_pipeline_matches_closed_form():
    for t in np.linspace(0.0, 4.0 * math.pi, 50):
        rho = qm.reduced_density_closed_form(0.01, t)
        c = qm.wootters_concurrence(rho, order="descending", normalized=False)
        assert abs(c - qm.concurrence_closed_form(0.01, t)) < 1e-10


def test_bell_concurrence_and_negativity():
    bell = np.zeros(4, dtype=complex)
    bell[1] = bell[2] = 1.0 / math.sqrt(2.0)
    rho = np.outer(bell, bell.conj())
    assert abs(qm.wootters_concurrence(rho) - 1.0) < 1e-12
    assert abs(qm.log_negativity(rho) - 1.0) < 1e-12
    assert abs(qm.pure_concurrence(bell) - 1.0) < 1e-12


def test_partial_trace_against_einsum():
    rng = np.random.default_rng(5)
    dims = [2, 3, 4]
    psi = rng.normal(size=24) + 1j * rng.normal(size=24)
    psi /= np.linalg.norm(psi)
    rho = np.outer(psi, psi.conj())

    reduced = qm.partial_trace(rho, dims, [0])
    tensor = rho.reshape(2, 3, 4, 2, 3, 4)
    oracle = np.einsum("iabjab->ij", tensor)
    assert np.abs(reduced - oracle).max() < 1e-13


def test_evolution_methods_agree():
    params = qm.ModelParams.from_kn(0.01)
    trunc = qm.Truncation(3, 8)
    psi0 = np.zeros(trunc.total_dim(), dtype=complex)
    psi0[trunc.mirror_pair_dim()] = 1.0  # |1, 0, 0>
    a = qm.evolve(psi0, params, math.pi, trunc, method="factorized")
    b = qm.evolve(psi0, params, math.pi, trunc, method="block")
    assert abs(np.vdot(a, b)) > 1.0 - 1e-10
    assert abs(np.linalg.norm(a) - 1.0) < 1e-9


def test_exact_evolution_has_no_qubit_entanglement():
    params = qm.ModelParams.from_kn(0.01)
    trunc = qm.Truncation(2, 8)
    sector = qm.SectorEvolver(params, 1, trunc)
    for t in np.linspace(0.0, 4.0 * math.pi, 9):
        phi = sector.evolve_vacuum(t)
        rho_q, leakage = qm.project_to_qubits(np.outer(phi, phi.conj()), 8)
        assert leakage < 1e-5
        assert qm.wootters_concurrence(rho_q) < 1e-8


def test_propagator_distance_gate():
    params = qm.ModelParams.dimensionless(0.01, 1, 13.0)
    restricted, full, levels = qm.propagator_distance(params, math.pi, qm.Truncation(3, 8))
    assert levels == 3
    assert restricted < 1e-8
    assert full < 1.0


def test_coupling_from_physical():
    k = qm.coupling_from_physical(1e16, 1e3, 1.0, 1e-5)
    assert abs(k - 7.261445506922e-4) / k < 1e-10


def test_errors_are_typed():
    with pytest.raises(qm.TruncationError):
        qm.project_to_qubits(np.eye(64) / 64.0, 8)
    with pytest.raises(qm.NumericalError):
        bad = np.zeros((3, 3), dtype=complex)
        bad[0, 1] = 1.0
        qm.expm_hermitian(bad, 1.0)


@pytest.mark.skipif("QMIRROR_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_fig1(tmp_path):
    cli = os.environ["QMIRROR_CLI"]
    out = tmp_path / "fig1.csv"
    manifest = tmp_path / "fig1.json"
    proc = subprocess.run(
        [cli, "fig1", "--points", "11", "--out", str(out), "--manifest", str(manifest)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "t,c_closed_form,c_pipeline"
    assert len(lines) == 12


@pytest.mark.skipif("QMIRROR_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_usage_error_exit_code():
    cli = os.environ["QMIRROR_CLI"]
    proc = subprocess.run(
        [cli, "fig1", "--kn", "0.01", "--k", "0.01"], capture_output=True, text=True
    )
    assert proc.returncode == 1


@pytest.mark.skipif("QMIRROR_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_numerical_exit_code(tmp_path):
    cli = os.environ["QMIRROR_CLI"]
    proc = subprocess.run(
        [cli, "validate", "--flip-kerr-sign", "--out", str(tmp_path / "v.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2


@pytest.mark.skipif("QMIRROR_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_truncation_exit_code(tmp_path):
    cli = os.environ["QMIRROR_CLI"]
    proc = subprocess.run(
        [
            cli, "coherent", "--alpha", "2", "--k", "0.01", "--n-cav", "6",
            "--points", "3", "--out", str(tmp_path / "c.csv"),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 3
