"""Shared test utilities."""

from __future__ import annotations

import numpy as np


def random_density(rng: np.random.Generator, dim: int = 8,
                   noise: float = 0.2) -> np.ndarray:
    """Haar-like random pure state mixed with a random full-rank state."""
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    psi /= np.linalg.norm(psi)
    rho = np.outer(psi, psi.conj())
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    mixer = raw @ raw.conj().T
    mixer /= np.trace(mixer).real
    return (1.0 - noise) * rho + noise * mixer


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (raw + raw.conj().T)


# Full-matrix bipartite GME bounds, written directly against the 8x8 rho
# (no partial trace), as an oracle independent of the library's reduction
# route.  Per pair: the two coherence entries to sum, then the two
# population groups whose sums multiply under the square root.
# All indices 0-based.
TABLE_GME_FORMS = {
    (1, 7): (((0, 6), (1, 7)), (2, 3), (4, 5)),
    (2, 8): (((0, 6), (1, 7)), (2, 3), (4, 5)),
    (4, 6): (((2, 4), (3, 5)), (0, 1), (6, 7)),
    (3, 5): (((2, 4), (3, 5)), (0, 1), (6, 7)),
    (1, 4): (((0, 3), (4, 7)), (1, 5), (2, 6)),
    (5, 8): (((0, 3), (4, 7)), (1, 5), (2, 6)),
    (2, 3): (((1, 2), (5, 6)), (0, 4), (3, 7)),
    (6, 7): (((1, 2), (5, 6)), (0, 4), (3, 7)),
    (1, 6): (((0, 5), (2, 7)), (1, 3), (4, 6)),
    (3, 8): (((0, 5), (2, 7)), (1, 3), (4, 6)),
    (2, 5): (((1, 4), (3, 6)), (0, 2), (5, 7)),
    (4, 7): (((1, 4), (3, 6)), (0, 2), (5, 7)),
}


def table_gme(rho: np.ndarray, pair: tuple[int, int]) -> float:
    """Bipartite GME bound evaluated from the full 8x8 matrix entries."""
    (c1, c2), group_a, group_b = TABLE_GME_FORMS[pair]
    coherence = abs(rho[c1] + rho[c2])
    pop_a = sum(rho[m, m].real for m in group_a)
    pop_b = sum(rho[m, m].real for m in group_b)
    return float(2.0 * coherence - 2.0 * np.sqrt(max(pop_a * pop_b, 0.0)))
