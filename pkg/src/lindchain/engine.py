"""Open-system generators for the spin chain and a fixed-step RK4 integrator.

Two independently derived engines produce the same right-hand side:

* element-wise: per-entry rate equations for d(rho_mn)/dt, written with
  bit tests, index shifts, and oscillating phase factors;
* operator-built: matrix products of jump operators dressed with the
  per-qubit transition phases.

Everything evolves in the rotating frame that removes the fast Larmor
phases, so trajectories carry coherence magnitudes directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .environments import EnvironmentModel, EnvironmentSpec
from .register import SpinChainParams, all_energies, omega_table
from .states import validate_density_matrix


class EngineKind(Enum):
    ELEMENT_WISE = "element_wise"
    OPERATOR_BUILT = "operator_built"


@dataclass(frozen=True)
class EvolutionConfig:
    """Fixed-step integration settings.

    record_stride is the number of steps between recorded samples; the
    initial and final states are always recorded.
    """

    t_max: float
    dt: float = 1e-3
    record_stride: int = 100
    engine: EngineKind = EngineKind.ELEMENT_WISE

    def __post_init__(self):
        if not (np.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not (np.isfinite(self.t_max) and self.t_max >= 0.0):
            raise ValueError(f"t_max must be nonnegative, got {self.t_max}")
        if int(self.record_stride) != self.record_stride or self.record_stride < 1:
            raise ValueError(f"record_stride must be a positive integer, got {self.record_stride}")
        if not isinstance(self.engine, EngineKind):
            raise ValueError(f"unknown engine {self.engine!r}")


@dataclass
class Trajectory:
    """Recorded samples of an integration run."""

    taus: np.ndarray
    rhos: np.ndarray  # (n_records, dim, dim)
    observed: dict[str, np.ndarray]

    @property
    def n_records(self) -> int:
        return len(self.taus)


class IntegrationDivergedError(RuntimeError):
    def __init__(self, step: int, tau: float):
        self.step = step
        self.tau = tau
        super().__init__(f"state became non-finite at step {step} (tau = {tau:g})")


# ---------------------------------------------------------------- operators

def lowering_operators(n_qubits: int) -> np.ndarray:
    """Stack of S_k^- matrices; entry (m, p) = 1 when m = p with bit k lowered."""
    dim = 2 ** n_qubits
    ops = np.zeros((n_qubits, dim, dim))
    for k in range(n_qubits):
        shift = 1 << (n_qubits - 1 - k)
        for p in range(dim):
            if (p >> (n_qubits - 1 - k)) & 1:
                ops[k, p - shift, p] = 1.0
    return ops


def sz_operators(n_qubits: int) -> np.ndarray:
    """Stack of S_k^z matrices, diagonal with entries +-1/2."""
    dim = 2 ** n_qubits
    ops = np.zeros((n_qubits, dim, dim))
    for k in range(n_qubits):
        for m in range(dim):
            bit = (m >> (n_qubits - 1 - k)) & 1
            ops[k, m, m] = 0.5 * (1.0 - 2.0 * bit)
    return ops


@dataclass(frozen=True, eq=False)
class JumpOperatorSet:
    """Jump operators at a fixed time plus their pairwise rate weights."""

    model: EnvironmentModel
    time: float
    operators: np.ndarray = field(repr=False)  # (n_qubits, dim, dim)
    rates: np.ndarray = field(repr=False)      # (n_qubits, n_qubits)

    @property
    def dim(self) -> int:
        return self.operators.shape[1]


def tilde_jump_operators(t: float, params: SpinChainParams,
                         env: EnvironmentSpec) -> JumpOperatorSet:
    """Rotating-frame jump operators at time t.

    Dissipative models: S_k^- with column phases exp(-i Omega_{k,p} t),
    Omega being the neighbour-conditioned transition frequency.  Dephasing
    models: the diagonal S_k^z, which the frame change leaves untouched.
    """
    _check_sizes(params, env)
    if env.model.dissipative:
        phases = np.exp(omega_table(params) * (-1j * t))  # (n, dim) per source column
        ops = lowering_operators(params.n_qubits) * phases[:, None, :]
        return JumpOperatorSet(env.model, t, ops, env.gamma)
    ops = sz_operators(params.n_qubits).astype(complex)
    return JumpOperatorSet(env.model, t, ops, env.gamma_dephase)


def lindblad_rhs_operator(rho: np.ndarray, t: float,
                          ops: JumpOperatorSet) -> np.ndarray:
    """d(rho)/dt from operator products of the supplied jump operators.

    sum_{k,l} c_kl (2 O_k rho O_l^dagger - O_l^dagger O_k rho
    - rho O_l^dagger O_k), with c = gamma/2 for dissipation and c = Gamma
    for dephasing.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ops.dim, ops.dim):
        raise ValueError(f"rho shape {rho.shape} does not match operators of dim {ops.dim}")
    fac = 0.5 if ops.model.dissipative else 1.0
    stack = ops.operators
    w = ops.rates
    prod = stack @ rho  # (n, dim, dim)
    feed = np.einsum("kl,kab,lcb->ac", w, prod, stack.conj())
    anti = np.einsum("kl,lba,kbc->ac", w, stack.conj(), stack)
    return fac * (2.0 * feed - anti @ rho - rho @ anti)


# ---------------------------------------------------------- dephasing rates

def dephasing_rate_matrix(env: EnvironmentSpec) -> np.ndarray:
    """Per-element dephasing rates R so that d(rho_mn)/dt = -R_mn rho_mn.

    R_mn = (1/4) (v_m - v_n)^T Gamma (v_m - v_n) with v_m the vector of
    spin signs (-1)^bit of state m.  Diagonal entries are exactly zero;
    with a diagonal Gamma this reduces to the sum of Gamma_k over the
    qubits whose bits differ between m and n.
    """
    gamma = env.gamma_dephase
    n = env.n_qubits
    dim = 2 ** n
    signs = np.empty((dim, n))
    for m in range(dim):
        for k in range(n):
            signs[m, k] = 1.0 - 2.0 * ((m >> (n - 1 - k)) & 1)
    quad = signs @ gamma @ signs.T
    quad = 0.5 * (quad + quad.T)  # matmul rounding must not break R = R^T
    diag = np.diag(quad)
    return 0.25 * (diag[:, None] + diag[None, :] - 2.0 * quad)


def rhs_dephasing(rho: np.ndarray, env: EnvironmentSpec) -> np.ndarray:
    """Element-wise dephasing right-hand side, valid for both Gamma models."""
    if env.model.dissipative:
        raise ValueError(f"rhs_dephasing called with dissipative model {env.model.value}")
    rho = np.asarray(rho, dtype=complex)
    _check_rho_dim(rho, env.n_qubits)
    return -dephasing_rate_matrix(env) * rho


def closed_form_dephasing(rho0: np.ndarray, t, env: EnvironmentSpec) -> np.ndarray:
    """Exact dephasing solution rho_mn(t) = rho_mn(0) exp(-R_mn t)."""
    if env.model.dissipative:
        raise ValueError(f"closed_form_dephasing called with dissipative model {env.model.value}")
    rho0 = np.asarray(rho0, dtype=complex)
    _check_rho_dim(rho0, env.n_qubits)
    rates = dephasing_rate_matrix(env)
    t = np.asarray(t, dtype=float)
    if t.ndim == 0:
        return rho0 * np.exp(-rates * float(t))
    return rho0[None, :, :] * np.exp(-rates[None, :, :] * t[:, None, None])


# ------------------------------------------------- element-wise dissipation

class _ElementWiseDissipation:
    """Per-entry rate equations compiled to a frequency-tagged sparse form.

    For each ordered qubit pair (k, l) with rate gamma_kl, entry (m, n)
    receives:

      feed   + gamma_kl  e^{i(Om_{l,n} - Om_{k,m}) t} rho_{m + 2^(N-k), n + 2^(N-l)}
               when bit_k(m) = 0 and bit_l(n) = 0
      left   - gamma_kl/2  e^{i(Om_{l,r} - Om_{k,r}) t} rho_{r + 2^(N-k), n},
               r = m - 2^(N-l), when bit_l(m) = 1 and bit_k(r) = 0
      right  - gamma_kl/2  e^{i(Om_{l,r} - Om_{k,r}) t} rho_{m, r + 2^(N-l)},
               r = n - 2^(N-k), when bit_k(n) = 1 and bit_l(r) = 0

    The k = l left/right terms carry no phase and fold into a static decay
    -(1/2) sum_k gamma_kk (bit_k(m) + bit_k(n)) rho_mn.
    """

    def __init__(self, params: SpinChainParams, env: EnvironmentSpec):
        if not env.model.dissipative:
            raise ValueError(f"dissipation engine built with model {env.model.value}")
        _check_sizes(params, env)
        n = params.n_qubits
        dim = params.dim
        gamma = env.gamma
        om = omega_table(params)
        bit = lambda m, k: (m >> (n - 1 - k)) & 1

        slots: list[int] = []
        coeffs: list[complex] = []
        freqs: list[float] = []
        size = dim * dim

        def add(row_m, row_n, col_m, col_n, coeff, freq):
            row = row_m * dim + row_n
            col = col_m * dim + col_n
            slots.append(row * size + col)
            coeffs.append(coeff)
            freqs.append(freq)

        # static decay on the superoperator diagonal
        half_rate = 0.5 * np.array(
            [sum(gamma[k, k] * bit(m, k) for k in range(n)) for m in range(dim)]
        )
        for m in range(dim):
            for nn in range(dim):
                add(m, nn, m, nn, -(half_rate[m] + half_rate[nn]), 0.0)

        for k in range(n):
            sk = 1 << (n - 1 - k)
            for l in range(n):
                g = float(gamma[k, l])
                if g == 0.0:
                    continue
                sl = 1 << (n - 1 - l)
                for m in range(dim):
                    for nn in range(dim):
                        if not bit(m, k) and not bit(nn, l):
                            add(m, nn, m + sk, nn + sl, g, om[l, nn] - om[k, m])
                if k == l:
                    continue  # phase-free decay already in the static part
                for m in range(dim):
                    if bit(m, l) and not bit(m, k):
                        r = m - sl
                        freq = om[l, r] - om[k, r]
                        for nn in range(dim):
                            add(m, nn, r + sk, nn, -0.5 * g, freq)
                for nn in range(dim):
                    if bit(nn, k) and not bit(nn, l):
                        r = nn - sk
                        freq = om[l, r] - om[k, r]
                        for m in range(dim):
                            add(m, nn, m, r + sl, -0.5 * g, freq)

        slot_arr = np.asarray(slots, dtype=np.intp)
        if len(np.unique(slot_arr)) != len(slot_arr):
            raise AssertionError("element-wise term slots collide")
        self._dim = dim
        self._slots = slot_arr
        self._coeffs = np.asarray(coeffs, dtype=complex)
        self._freqs = np.asarray(freqs, dtype=float)
        self._matrix = np.zeros((size, size), dtype=complex)

    def __call__(self, rho: np.ndarray, t: float) -> np.ndarray:
        values = self._coeffs * np.exp(self._freqs * (1j * t))
        mat = self._matrix
        mat.flat[self._slots] = values
        return (mat @ rho.reshape(-1)).reshape(self._dim, self._dim)


def rhs_dissipation(rho: np.ndarray, t: float, params: SpinChainParams,
                    env: EnvironmentSpec) -> np.ndarray:
    """Element-wise dissipation right-hand side at time t."""
    if not env.model.dissipative:
        raise ValueError(f"rhs_dissipation called with model {env.model.value}")
    rho = np.asarray(rho, dtype=complex)
    _check_rho_dim(rho, env.n_qubits)
    return _ElementWiseDissipation(params, env)(rho, t)


# ------------------------------------------------------ operator-built path

class _OperatorBuilt:
    """Constant superoperator from jump-operator products, conjugated by the
    diagonal frame unitary.

    The frame phases of the dissipative jump operators are transition
    energies of the chain with half couplings, so the time dependence is
    exactly a conjugation by diag(exp(i eps_m t)).
    """

    def __init__(self, params: SpinChainParams, env: EnvironmentSpec):
        _check_sizes(params, env)
        ops = tilde_jump_operators(0.0, params, env)
        dim = ops.dim
        fac = 0.5 if env.model.dissipative else 1.0
        eye = np.eye(dim)
        liouville = np.zeros((dim * dim, dim * dim), dtype=complex)
        stack = ops.operators
        for k in range(params.n_qubits):
            for l in range(params.n_qubits):
                w = float(ops.rates[k, l])
                if w == 0.0:
                    continue
                anti = stack[l].conj().T @ stack[k]
                liouville += (w * fac) * (
                    2.0 * np.kron(stack[k], stack[l].conj())
                    - np.kron(anti, eye)
                    - np.kron(eye, anti.T)
                )
        self._dim = dim
        self._matrix = liouville
        if env.model.dissipative:
            half = SpinChainParams(params.omegas, 0.5 * params.coupling_j,
                                   0.5 * params.coupling_jp)
            eps = all_energies(half)
            self._delta = eps[:, None] - eps[None, :]
        else:
            self._delta = None

    def __call__(self, rho: np.ndarray, t: float) -> np.ndarray:
        dim = self._dim
        if self._delta is None:
            return (self._matrix @ rho.reshape(-1)).reshape(dim, dim)
        frame = np.exp(self._delta * (1j * t))
        rotated = (frame.conj() * rho).reshape(-1)
        return frame * (self._matrix @ rotated).reshape(dim, dim)


# ----------------------------------------------------------------- stepping

def make_rhs(params: SpinChainParams, env: EnvironmentSpec,
             kind: EngineKind) -> Callable[[np.ndarray, float], np.ndarray]:
    """Compile the right-hand side f(rho, t) for the chosen engine."""
    if kind is EngineKind.OPERATOR_BUILT:
        return _OperatorBuilt(params, env)
    if kind is not EngineKind.ELEMENT_WISE:
        raise ValueError(f"unknown engine {kind!r}")
    if env.model.dissipative:
        return _ElementWiseDissipation(params, env)
    _check_sizes(params, env)
    rates = dephasing_rate_matrix(env)

    def rhs(rho, t):
        return -rates * rho

    return rhs


def rk4_evolve(rho0: np.ndarray, cfg: EvolutionConfig, params: SpinChainParams,
               env: EnvironmentSpec,
               observers: dict[str, Callable[[np.ndarray, float], float]] | None = None,
               ) -> Trajectory:
    """Integrate d(rho)/dt with classical fixed-step fourth-order Runge-Kutta.

    The state is never renormalized; trace and positivity drift are left
    visible for the diagnostics.  Raises IntegrationDivergedError as soon
    as the state picks up a NaN or Inf.
    """
    rho = validate_density_matrix(rho0)
    if rho.shape[0] != params.dim:
        raise ValueError(f"rho dim {rho.shape[0]} does not match params dim {params.dim}")
    rhs = make_rhs(params, env, cfg.engine)
    dt = cfg.dt
    n_steps = int(round(cfg.t_max / dt))
    observers = observers or {}

    taus: list[float] = []
    rhos: list[np.ndarray] = []
    observed: dict[str, list[float]] = {name: [] for name in observers}

    def record(step_index, state):
        taus.append(step_index * dt)
        rhos.append(state.copy())
        for name, fn in observers.items():
            observed[name].append(fn(state, step_index * dt))

    for step in range(n_steps):
        if step % cfg.record_stride == 0:
            record(step, rho)
        t = step * dt
        k1 = rhs(rho, t)
        k2 = rhs(rho + (0.5 * dt) * k1, t + 0.5 * dt)
        k3 = rhs(rho + (0.5 * dt) * k2, t + 0.5 * dt)
        k4 = rhs(rho + dt * k3, t + dt)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        total = complex(rho.sum())
        if not (np.isfinite(total.real) and np.isfinite(total.imag)):
            raise IntegrationDivergedError(step + 1, (step + 1) * dt)
    record(n_steps, rho)

    return Trajectory(
        taus=np.asarray(taus),
        rhos=np.asarray(rhos),
        observed={name: np.asarray(vals) for name, vals in observed.items()},
    )


def _check_rho_dim(rho: np.ndarray, n_qubits: int) -> None:
    dim = 2 ** n_qubits
    if rho.shape != (dim, dim):
        raise ValueError(f"rho shape {rho.shape} does not match {n_qubits} qubits")


def _check_sizes(params: SpinChainParams, env: EnvironmentSpec) -> None:
    if params.n_qubits != env.n_qubits:
        raise ValueError(
            f"chain has {params.n_qubits} qubits but environment rates are "
            f"{env.n_qubits}x{env.n_qubits}"
        )
