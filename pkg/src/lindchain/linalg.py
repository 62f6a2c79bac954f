"""Cyclic Jacobi eigen-decomposition for small Hermitian matrices."""

from __future__ import annotations

import numpy as np


def offdiagonal_norm(a: np.ndarray) -> float:
    """Frobenius norm of the strict upper triangle."""
    n = a.shape[0]
    total = 0.0
    for p in range(n - 1):
        row = a[p, p + 1:]
        total += float(np.sum(np.abs(row) ** 2))
    return np.sqrt(total)


def jacobi_eigenvalues(matrix: np.ndarray, tol: float = 1e-12,
                       max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi sweeps.

    Each sweep visits every (p, q) pair once and applies a complex plane
    rotation that zeroes a[p, q]; sweeps repeat until the off-diagonal
    Frobenius norm drops below tol.

    Parameters
    ----------
    matrix : Hermitian ndarray.  The caller is responsible for hermiticity;
        only the upper triangle's phase is trusted.
    tol : off-diagonal norm at which iteration stops.
    max_sweeps : safety bound on the number of sweeps.

    Returns
    -------
    1-D float ndarray of eigenvalues in ascending order.
    """
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = a.shape[0]
    if n == 1:
        return np.array([float(a[0, 0].real)])

    a = a.astype(complex).copy()
    for _ in range(max_sweeps):
        if offdiagonal_norm(a) < tol:
            break
        _jacobi_sweep(a, n)
    else:
        if offdiagonal_norm(a) >= tol:
            raise RuntimeError(
                f"Jacobi iteration did not reach off-diagonal norm {tol} "
                f"in {max_sweeps} sweeps"
            )
    return np.sort(np.real(np.diag(a)))


def _jacobi_sweep(a: np.ndarray, n: int) -> None:
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            mag = abs(apq)
            if mag == 0.0:
                continue
            app = a[p, p].real
            aqq = a[q, q].real
            # rotation angle for the 2x2 block [[app, |apq|], [|apq|, aqq]]
            tau = (aqq - app) / (2.0 * mag)
            if tau >= 0.0:
                t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
            else:
                t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            u = apq / mag  # phase of the pivot entry
            su = s * u
            # column update: a <- a @ J with J[p,p]=J[q,q]=c,
            # J[p,q]=s*u, J[q,p]=-s*conj(u)
            col_p = a[:, p].copy()
            col_q = a[:, q].copy()
            a[:, p] = c * col_p - np.conj(su) * col_q
            a[:, q] = su * col_p + c * col_q
            # row update: a <- J^dagger @ a
            row_p = a[p, :].copy()
            row_q = a[q, :].copy()
            a[p, :] = c * row_p - su * row_q
            a[q, :] = np.conj(su) * row_p + c * row_q
            a[p, q] = 0.0
            a[q, p] = 0.0
