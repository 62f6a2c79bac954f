"""Purity, partial trace, and GME-concurrence lower bounds.

The implemented entanglement quantity is a computable lower bound on the
GME-concurrence.  For the three-qubit catalog states it specializes to

    C >= 2 |rho_ij| - 2 * sum of sqrt(rho_pp rho_qq)

over complementary index pairs.  The bound may go negative; negative
values mean the bound is uninformative, not that entanglement is gone,
so nothing here clamps them.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .engine import dephasing_rate_matrix
from .environments import EnvironmentSpec

# ABC-family partners: complementary basis pairs of the 3-qubit register.
GME_ABC_PAIRS = ((1, 8), (2, 7), (3, 6), (4, 5))


class EntanglementFamily(Enum):
    """Which qubits the catalog state entangles; bipartite families carry
    the qubit that gets traced out."""

    ABC = "ABC"
    AB = "AB"
    BC = "BC"
    AC = "AC"

    @property
    def traced_qubit(self) -> int:
        if self is EntanglementFamily.AB:
            return 3
        if self is EntanglementFamily.BC:
            return 1
        if self is EntanglementFamily.AC:
            return 2
        raise ValueError("ABC is tripartite; nothing is traced out")


def family_of_pair(i: int, j: int) -> EntanglementFamily:
    """Entanglement family of the Bell pair (i, j) from which qubits differ."""
    if not (1 <= i < j <= 8):
        raise ValueError(f"pair ({i}, {j}) must satisfy 1 <= i < j <= 8")
    differing = (i - 1) ^ (j - 1)
    families = {
        0b111: EntanglementFamily.ABC,
        0b110: EntanglementFamily.AB,
        0b011: EntanglementFamily.BC,
        0b101: EntanglementFamily.AC,
    }
    if differing not in families:
        raise ValueError(
            f"pair ({i}, {j}) differs on a single qubit and is not entangled"
        )
    return families[differing]


def purity(rho: np.ndarray) -> float:
    """Tr(rho^2) = sum of |rho_mn|^2."""
    rho = np.asarray(rho)
    return float(np.vdot(rho, rho).real)


def partial_trace(rho: np.ndarray, traced_qubit: int) -> np.ndarray:
    """Reduced 4x4 density matrix after tracing out one qubit of three.

    Kept-qubit order is preserved (qubit 1 before 2 before 3).
    """
    rho = np.asarray(rho)
    if rho.shape != (8, 8):
        raise ValueError(f"partial_trace supports 3 qubits only, got shape {rho.shape}")
    if traced_qubit not in (1, 2, 3):
        raise ValueError(f"traced_qubit must be 1, 2, or 3, got {traced_qubit}")
    tensor = rho.reshape(2, 2, 2, 2, 2, 2)
    reduced = np.trace(tensor, axis1=traced_qubit - 1, axis2=traced_qubit + 2)
    return reduced.reshape(4, 4)


def gme_abc(rho: np.ndarray, pair: tuple[int, int]) -> float:
    """GME-concurrence lower bound for a tripartite catalog pair.

    2|rho_ij| minus 2 sum over the three complementary pairs (p, q) of
    sqrt(rho_pp rho_qq).  No clamping.
    """
    pair = (int(pair[0]), int(pair[1]))
    if pair not in GME_ABC_PAIRS:
        raise ValueError(f"pair {pair} is not one of the tripartite pairs {GME_ABC_PAIRS}")
    rho = np.asarray(rho)
    i, j = pair
    coherence = abs(rho[i - 1, j - 1])
    cross = 0.0
    for p, q in GME_ABC_PAIRS:
        if (p, q) == pair:
            continue
        cross += np.sqrt(_pop(rho, p) * _pop(rho, q))
    return float(2.0 * coherence - 2.0 * cross)


def gme_pair(rho: np.ndarray, family: EntanglementFamily,
             pair: tuple[int, int]) -> float:
    """GME-concurrence lower bound for a bipartite catalog pair.

    Traces out the non-participating qubit and evaluates the two-qubit
    bound |<il|rho|kj>| - sqrt(<ij|rho|ij><kl|rho|kl>) (times 2) on the
    reduced state.  The kept bits of state i select which reduced
    coherence carries the entanglement: equal bits pair |00> with |11>,
    unequal bits pair |01> with |10>.
    """
    if family is EntanglementFamily.ABC:
        raise ValueError("gme_pair handles bipartite families; use gme_abc for ABC")
    i, j = int(pair[0]), int(pair[1])
    if family_of_pair(i, j) is not family:
        raise ValueError(f"pair ({i}, {j}) does not belong to family {family.value}")
    reduced = partial_trace(rho, family.traced_qubit)
    kept = _kept_bits(i - 1, family.traced_qubit)
    if kept == (0, 0):
        coherence = abs(reduced[0, 3])
        pops = reduced[1, 1].real * reduced[2, 2].real
    else:  # kept == (0, 1)
        coherence = abs(reduced[1, 2])
        pops = reduced[0, 0].real * reduced[3, 3].real
    return float(2.0 * (coherence - np.sqrt(max(pops, 0.0))))


def gme(rho: np.ndarray, pair: tuple[int, int],
        family: EntanglementFamily | None = None) -> float:
    """Dispatch to the tripartite or bipartite bound for any catalog pair."""
    i, j = int(pair[0]), int(pair[1])
    if family is None:
        family = family_of_pair(i, j)
    if family is EntanglementFamily.ABC:
        return gme_abc(rho, (i, j))
    return gme_pair(rho, family, (i, j))


def analytic_decay_oracle(family: EntanglementFamily, pair: tuple[int, int],
                          env: EnvironmentSpec, t):
    """Closed-form (gme, purity) decay of a catalog Bell state under dephasing.

    gme(t) = 2 |rho_ij(0)| exp(-R_ij t) and purity(t) = rho_ii(0)^2
    + rho_jj(0)^2 + 2 |rho_ij(0)|^2 exp(-2 R_ij t), with R_ij the
    element-wise dephasing rate; both diagonal and correlated Gamma are
    covered.  Bell initial values make these 1 at t = 0.
    """
    if env.model.dissipative:
        raise ValueError(f"analytic decay requires a dephasing model, got {env.model.value}")
    i, j = int(pair[0]), int(pair[1])
    if family_of_pair(i, j) is not family:
        raise ValueError(f"pair ({i}, {j}) does not belong to family {family.value}")
    rate = dephasing_rate_matrix(env)[i - 1, j - 1]
    t = np.asarray(t, dtype=float)
    gme_value = 2.0 * 0.5 * np.exp(-rate * t)
    purity_value = 0.25 + 0.25 + 2.0 * 0.25 * np.exp(-2.0 * rate * t)
    if t.ndim == 0:
        return float(gme_value), float(purity_value)
    return gme_value, purity_value


def _pop(rho: np.ndarray, m: int) -> float:
    return max(float(rho[m - 1, m - 1].real), 0.0)


def _kept_bits(index0: int, traced_qubit: int) -> tuple[int, int]:
    bits = [(index0 >> shift) & 1 for shift in (2, 1, 0)]
    del bits[traced_qubit - 1]
    return tuple(bits)
