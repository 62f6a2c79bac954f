"""Basis bookkeeping and eigen-energies of the Ising spin-chain register.

States of the N-qubit chain are labelled 1..2**N.  Qubit 1 holds the most
significant bit, so state m carries the bit string of m-1 read left to
right: state 1 is |00..0> and state 2**N is |11..1>.  Bit 0 is the
single-qubit ground state (spin up, S^z eigenvalue +1/2); dissipation
drives every bit toward 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SpinChainParams:
    """Larmor frequencies and Ising couplings, all in units of 2*pi*MHz.

    omegas : per-qubit Larmor frequencies, one entry per qubit.
    coupling_j : nearest-neighbour Ising coupling J.
    coupling_jp : next-nearest-neighbour coupling J'.
    """

    omegas: tuple[float, ...] = (400.0, 200.0, 100.0)
    coupling_j: float = 10.0
    coupling_jp: float = 0.4

    def __post_init__(self):
        omegas = tuple(float(w) for w in self.omegas)
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "coupling_j", float(self.coupling_j))
        object.__setattr__(self, "coupling_jp", float(self.coupling_jp))
        if len(omegas) < 1:
            raise ValueError("need at least one qubit frequency")
        values = omegas + (self.coupling_j, self.coupling_jp)
        if not all(np.isfinite(v) for v in values):
            raise ValueError(f"non-finite chain parameter in {values}")

    @property
    def n_qubits(self) -> int:
        return len(self.omegas)

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits


def _check_qubit(k: int, n_qubits: int) -> None:
    if not 1 <= k <= n_qubits:
        raise ValueError(f"qubit index {k} outside 1..{n_qubits}")


def _check_state(m: int, n_qubits: int) -> None:
    if not 1 <= m <= 2 ** n_qubits:
        raise ValueError(f"state index {m} outside 1..{2 ** n_qubits}")


def bit_of(m: int, k: int, n_qubits: int = 3) -> int:
    """Bit of qubit k (1 = most significant) in state index m."""
    _check_state(m, n_qubits)
    _check_qubit(k, n_qubits)
    return ((m - 1) >> (n_qubits - k)) & 1


def flip_bit(m: int, k: int, n_qubits: int = 3) -> int:
    """State index with qubit k's bit toggled."""
    _check_state(m, n_qubits)
    _check_qubit(k, n_qubits)
    return ((m - 1) ^ (1 << (n_qubits - k))) + 1


def _signs(m: int, n_qubits: int) -> list[float]:
    # (-1)**bit for each qubit, index 0 = qubit 1
    return [1.0 - 2.0 * bit_of(m, k, n_qubits) for k in range(1, n_qubits + 1)]


def eigen_energy(m: int, params: SpinChainParams) -> float:
    """Diagonal energy of basis state m (hbar = 1).

    Zeeman term -(1/2) sum_k (-1)^bit_k omega_k plus Ising terms
    -(J/2) sum over nearest-neighbour bit products and -(J'/2) over
    next-nearest neighbours.
    """
    n = params.n_qubits
    s = _signs(m, n)
    e = -0.5 * sum(w * s[k] for k, w in enumerate(params.omegas))
    e -= 0.5 * params.coupling_j * sum(s[k] * s[k + 1] for k in range(n - 1))
    e -= 0.5 * params.coupling_jp * sum(s[k] * s[k + 2] for k in range(n - 2))
    return e


def energy_gap(i: int, j: int, params: SpinChainParams) -> float:
    """E_j - E_i between basis states i and j."""
    return eigen_energy(j, params) - eigen_energy(i, params)


def omega_eigenvalue(k: int, m: int, params: SpinChainParams) -> float:
    """Transition frequency of qubit k conditioned on the neighbour bits of m.

    omega_k plus (J/2) times the spin signs of qubits k-1, k+1 plus (J'/2)
    times those of k-2, k+2; neighbours outside the open chain are dropped.
    Independent of bit k itself.
    """
    n = params.n_qubits
    _check_qubit(k, n)
    _check_state(m, n)
    s = _signs(m, n)
    value = params.omegas[k - 1]
    for step, coupling in ((1, params.coupling_j), (2, params.coupling_jp)):
        for j in (k - step, k + step):
            if 1 <= j <= n:
                value += 0.5 * coupling * s[j - 1]
    return value


def all_energies(params: SpinChainParams) -> np.ndarray:
    """eigen_energy for every basis state, index 0 holding state 1."""
    return np.array([eigen_energy(m, params) for m in range(1, params.dim + 1)])


def omega_table(params: SpinChainParams) -> np.ndarray:
    """omega_eigenvalue on a (n_qubits, dim) grid; [k-1, m-1] = Omega_{k,m}."""
    return np.array(
        [[omega_eigenvalue(k, m, params) for m in range(1, params.dim + 1)]
         for k in range(1, params.n_qubits + 1)]
    )
