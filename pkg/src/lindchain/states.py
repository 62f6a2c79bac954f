"""Density-matrix construction, validation, and physicality diagnostics."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .linalg import jacobi_eigenvalues

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-12


class Diagnostics(NamedTuple):
    trace_error: float
    hermiticity_error: float
    min_eigenvalue: float


def initial_bell_density(i: int, j: int, n_qubits: int = 3) -> np.ndarray:
    """Density matrix of (|i> + |j>)/sqrt(2) for basis states i < j.

    All four nonzero entries are exactly 0.5.
    """
    dim = 2 ** n_qubits
    if not (1 <= i <= dim and 1 <= j <= dim):
        raise ValueError(f"state indices ({i}, {j}) outside 1..{dim}")
    if i >= j:
        raise ValueError(f"need i < j, got ({i}, {j})")
    rho = np.zeros((dim, dim), dtype=complex)
    a, b = i - 1, j - 1
    rho[a, a] = rho[b, b] = rho[a, b] = rho[b, a] = 0.5
    return rho


def validate_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Check hermiticity, unit trace, and positivity; return a complex copy.

    Raises ValueError when any check fails.  Positivity allows eigenvalues
    down to -1e-12 to absorb rounding.
    """
    arr = np.asarray(rho)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("density matrix has non-finite entries")
    arr = arr.astype(complex)
    herm = float(np.max(np.abs(arr - arr.conj().T)))
    if herm > HERMITICITY_TOL:
        raise ValueError(f"density matrix not Hermitian (max asymmetry {herm:.3e})")
    tr = complex(np.trace(arr))
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"density matrix trace {tr} differs from 1")
    low = float(jacobi_eigenvalues(0.5 * (arr + arr.conj().T)).min())
    if low < EIGENVALUE_FLOOR:
        raise ValueError(f"density matrix has negative eigenvalue {low:.3e}")
    return arr.copy()


def diagnostics(rho: np.ndarray) -> Diagnostics:
    """(trace error, hermiticity error, minimum eigenvalue) of rho.

    The minimum eigenvalue comes from the cyclic Jacobi decomposition of
    the Hermitian part (rho + rho^dagger)/2.
    """
    arr = np.asarray(rho, dtype=complex)
    trace_error = float(abs(np.trace(arr) - 1.0))
    hermiticity_error = float(np.max(np.abs(arr - arr.conj().T)))
    low = float(jacobi_eigenvalues(0.5 * (arr + arr.conj().T)).min())
    return Diagnostics(trace_error, hermiticity_error, low)
