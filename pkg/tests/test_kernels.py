"""The compiled eigensolver and its pure-Python twin must be interchangeable."""

import os
import subprocess
import sys

import numpy as np
import pytest

from qborn import kernels
from qborn.kernels import _jacobi_py
from oracles import random_hermitian

CONV = 1e-12
SWEEPS = 100


def _sorted_eigs(backend, h):
    d, v, _sweeps, converged = backend(np.array(h, dtype=np.complex128), CONV, SWEEPS)
    assert converged
    order = np.argsort(np.asarray(d))
    return np.asarray(d)[order], np.asarray(v)[:, order]


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
def test_backends_agree_with_numpy_eigenvalues(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(5):
        h = random_hermitian(n, rng)
        want = np.linalg.eigvalsh(h)
        for backend in (kernels.jacobi_eigh, _jacobi_py.jacobi_eigh):
            d, _v = _sorted_eigs(backend, h)
            np.testing.assert_allclose(d, want, atol=1e-10 * (1 + np.linalg.norm(h)))


@pytest.mark.parametrize("n", [2, 4, 7])
def test_eigenvectors_diagonalize(n):
    rng = np.random.default_rng(200 + n)
    h = random_hermitian(n, rng)
    for backend in (kernels.jacobi_eigh, _jacobi_py.jacobi_eigh):
        d, v = _sorted_eigs(backend, h)
        # v must be unitary and v† h v diagonal with the returned values
        np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-12)
        np.testing.assert_allclose(v.conj().T @ h @ v, np.diag(d), atol=1e-11)


def test_compiled_and_python_twins_match_closely():
    rng = np.random.default_rng(7)
    for n in (2, 3, 6):
        h = random_hermitian(n, rng)
        dc, _vc = _sorted_eigs(kernels.jacobi_eigh, h)
        dp, _vp = _sorted_eigs(_jacobi_py.jacobi_eigh, h)
        np.testing.assert_allclose(dc, dp, atol=1e-13)


def test_already_diagonal_converges_immediately():
    h = np.diag([3.0, 1.0, 2.0]).astype(np.complex128)
    d, v, sweeps, converged = kernels.jacobi_eigh(h, CONV, SWEEPS)
    assert converged and sweeps == 0
    np.testing.assert_allclose(sorted(d), [1.0, 2.0, 3.0], atol=0)
    np.testing.assert_allclose(np.asarray(v), np.eye(3), atol=0)


def test_force_python_env_selects_pure_backend():
    code = "import qborn.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, QBORN_FORCE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "python"


def test_default_backend_is_reported():
    assert kernels.BACKEND in ("compiled", "python")
