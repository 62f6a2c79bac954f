import functools
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import lindchain as lc
from helpers import random_density
from lindchain import EngineKind, EnvironmentModel, EvolutionConfig
from lindchain.engine import lowering_operators, sz_operators

M = EnvironmentModel
MODELS = tuple(M)


@functools.lru_cache(maxsize=1)
def _setup():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return lc.default_parameters()


# ------------------------------------------------------------- jump operators

def test_lowering_operators_move_one_excitation():
    ops = lowering_operators(3)
    assert ops.shape == (3, 8, 8)
    # qubit 1 lowers state 5 (|100>) to state 1 with unit matrix element
    assert ops[0, 0, 4] == 1.0
    assert ops[0].sum() == 4.0  # four states have bit 1 set
    for k in range(3):
        for m in range(1, 9):
            if lc.bit_of(m, k + 1) == 1:
                assert ops[k, lc.flip_bit(m, k + 1) - 1, m - 1] == 1.0


def test_sz_operators_are_half_signs():
    ops = sz_operators(3)
    for k in range(3):
        diag = np.diag(ops[k])
        expected = [0.5 * (1 - 2 * lc.bit_of(m, k + 1)) for m in range(1, 9)]
        assert np.array_equal(diag, expected)
        assert np.array_equal(ops[k], np.diag(diag))


def test_tilde_operators_at_zero_time(default_setup):
    params, envs = default_setup
    ops = lc.tilde_jump_operators(0.0, params, envs[M.INDEPENDENT_DISSIPATION])
    assert ops.dim == 8
    assert np.array_equal(ops.operators, lowering_operators(3).astype(complex))
    assert np.array_equal(ops.rates, envs[M.INDEPENDENT_DISSIPATION].gamma)


def test_tilde_operators_carry_transition_phases(default_setup):
    params, envs = default_setup
    t = 0.83
    ops = lc.tilde_jump_operators(t, params, envs[M.CORRELATED_DISSIPATION])
    table = lc.omega_table(params)
    # entry (m, p) of qubit k oscillates at the source column's frequency
    assert ops.operators[0, 0, 4] == pytest.approx(np.exp(-1j * table[0, 4] * t))
    assert ops.operators[2, 6, 7] == pytest.approx(np.exp(-1j * table[2, 7] * t))
    assert abs(ops.operators[0, 0, 0]) == 0.0


def test_tilde_operators_dephasing_is_static(default_setup):
    params, envs = default_setup
    env = envs[M.CORRELATED_DEPHASING]
    ops = lc.tilde_jump_operators(7.7, params, env)
    assert np.array_equal(ops.operators, sz_operators(3).astype(complex))
    assert np.array_equal(ops.rates, env.gamma_dephase)


# ------------------------------------------------------------ dephasing rates

def test_dephasing_rate_values(default_setup):
    _, envs = default_setup
    diag = lc.dephasing_rate_matrix(envs[M.DEPHASING])
    corr = lc.dephasing_rate_matrix(envs[M.CORRELATED_DEPHASING])
    assert diag[0, 7] == pytest.approx(0.15, abs=1e-15)
    assert diag[0, 6] == pytest.approx(0.10, abs=1e-15)  # qubits 1, 2 differ
    assert diag[0, 3] == pytest.approx(0.10, abs=1e-15)  # qubits 2, 3 differ
    assert diag[0, 5] == pytest.approx(0.10, abs=1e-15)  # qubits 1, 3 differ
    assert corr[0, 7] == pytest.approx(0.325, abs=1e-15)
    assert corr[3, 4] == pytest.approx(0.075, abs=1e-15)
    assert corr[2, 4] == pytest.approx(0.0, abs=1e-15)  # protected coherence
    for mat in (diag, corr):
        assert np.array_equal(np.diag(mat), np.zeros(8))
        assert np.array_equal(mat, mat.T)


def test_rhs_dephasing_and_closed_form(default_setup):
    params, envs = default_setup
    env = envs[M.DEPHASING]
    rho = lc.initial_bell_density(1, 8)
    rhs = lc.rhs_dephasing(rho, env)
    assert rhs[0, 7] == pytest.approx(-0.075, abs=1e-15)
    assert rhs[0, 0] == 0.0
    assert rhs[7, 7] == 0.0
    at_ten = lc.closed_form_dephasing(rho, 10.0, env)
    assert at_ten[0, 7] == pytest.approx(0.5 * np.exp(-1.5), abs=1e-15)
    assert at_ten[0, 0] == 0.5
    series = lc.closed_form_dephasing(rho, [0.0, 1.0, 2.0], env)
    assert series.shape == (3, 8, 8)
    assert np.array_equal(series[0], rho)


def test_dephasing_model_guards(default_setup):
    params, envs = default_setup
    rho = lc.initial_bell_density(1, 8)
    with pytest.raises(ValueError, match="dissipative"):
        lc.rhs_dephasing(rho, envs[M.INDEPENDENT_DISSIPATION])
    with pytest.raises(ValueError, match="dissipative"):
        lc.closed_form_dephasing(rho, 1.0, envs[M.CORRELATED_DISSIPATION])
    with pytest.raises(ValueError, match="model"):
        lc.rhs_dissipation(rho, 0.0, params, envs[M.DEPHASING])


# -------------------------------------------------------- right-hand sides

def test_bell_rhs_values_independent_dissipation(default_setup):
    params, envs = default_setup
    env = envs[M.INDEPENDENT_DISSIPATION]
    rho = lc.initial_bell_density(1, 8)
    rhs = lc.rhs_dissipation(rho, 0.0, params, env)
    # the all-excited population decays at (gamma/2) * 6, feeding state 4
    assert rhs[7, 7].real == pytest.approx(-0.075, abs=1e-15)
    assert rhs[3, 3].real == pytest.approx(0.025, abs=1e-15)
    assert rhs[0, 7] == pytest.approx(-0.0375, abs=1e-15)
    assert abs(np.trace(rhs)) < 1e-15


@given(st.integers(min_value=0, max_value=2**32 - 1),
       st.floats(min_value=0.0, max_value=5.0, allow_nan=False),
       st.integers(min_value=0, max_value=3))
@settings(max_examples=80, deadline=None)
def test_element_wise_matches_operator_form(seed, t, model_index):
    """The per-entry rate equations and the jump-operator products are the
    same generator."""
    params, envs = _setup()
    env = envs[MODELS[model_index]]
    rho = random_density(np.random.default_rng(seed))
    if env.model.dissipative:
        element = lc.rhs_dissipation(rho, t, params, env)
    else:
        element = lc.rhs_dephasing(rho, env)
    operator = lc.lindblad_rhs_operator(rho, t, lc.tilde_jump_operators(t, params, env))
    assert np.max(np.abs(element - operator)) < 1e-12


@given(st.integers(min_value=0, max_value=2**32 - 1),
       st.floats(min_value=0.0, max_value=5.0, allow_nan=False),
       st.integers(min_value=0, max_value=3))
@settings(max_examples=60, deadline=None)
def test_compiled_engines_match_literal_operator_form(seed, t, model_index):
    params, envs = _setup()
    env = envs[MODELS[model_index]]
    rho = random_density(np.random.default_rng(seed))
    literal = lc.lindblad_rhs_operator(rho, t, lc.tilde_jump_operators(t, params, env))
    for kind in (EngineKind.ELEMENT_WISE, EngineKind.OPERATOR_BUILT):
        compiled = lc.make_rhs(params, env, kind)
        assert np.max(np.abs(compiled(rho, t) - literal)) < 1e-12


@given(st.integers(min_value=0, max_value=2**32 - 1),
       st.floats(min_value=0.0, max_value=5.0, allow_nan=False),
       st.integers(min_value=0, max_value=3))
@settings(max_examples=40, deadline=None)
def test_generator_preserves_trace_and_hermiticity(seed, t, model_index):
    params, envs = _setup()
    env = envs[MODELS[model_index]]
    rho = random_density(np.random.default_rng(seed))
    ops = lc.tilde_jump_operators(t, params, env)
    rhs = lc.lindblad_rhs_operator(rho, t, ops)
    assert abs(np.trace(rhs)) < 1e-13
    assert np.max(np.abs(rhs - rhs.conj().T)) < 1e-13


def test_two_qubit_chain_equivalence():
    params = lc.SpinChainParams(omegas=(300.0, 150.0), coupling_j=8.0, coupling_jp=0.0)
    env = lc.make_environment(M.CORRELATED_DISSIPATION,
                              [[0.05, 0.02], [0.02, 0.04]], 0.05, n_qubits=2)
    rho = random_density(np.random.default_rng(11), dim=4)
    for t in (0.0, 0.7, 3.1):
        element = lc.rhs_dissipation(rho, t, params, env)
        operator = lc.lindblad_rhs_operator(rho, t, lc.tilde_jump_operators(t, params, env))
        fast = lc.make_rhs(params, env, EngineKind.OPERATOR_BUILT)(rho, t)
        assert np.max(np.abs(element - operator)) < 1e-12
        assert np.max(np.abs(fast - operator)) < 1e-12


def test_zeroed_correlations_reduce_bitwise(default_setup):
    params, _ = default_setup
    diag = [0.05, 0.03, 0.02]
    independent = lc.make_environment(M.INDEPENDENT_DISSIPATION, diag, diag)
    zeroed = lc.make_environment(M.CORRELATED_DISSIPATION, np.diag(diag), np.diag(diag))
    rho = random_density(np.random.default_rng(21))
    for t in (0.0, 0.45, 2.3):
        for kind in EngineKind:
            a = lc.make_rhs(params, independent, kind)(rho, t)
            b = lc.make_rhs(params, zeroed, kind)(rho, t)
            assert np.array_equal(a, b)
    dep = lc.make_environment(M.DEPHASING, diag, diag)
    dep_zeroed = lc.make_environment(M.CORRELATED_DEPHASING, np.diag(diag), np.diag(diag))
    assert np.array_equal(lc.rhs_dephasing(rho, dep), lc.rhs_dephasing(rho, dep_zeroed))


# ------------------------------------------------------------------ stepping

def test_rk4_recording_grid(default_setup):
    params, envs = default_setup
    cfg = EvolutionConfig(t_max=1.0, dt=0.1, record_stride=3)
    traj = lc.rk4_evolve(lc.initial_bell_density(1, 8), cfg, params, envs[M.DEPHASING])
    assert traj.taus == pytest.approx([0.0, 0.3, 0.6, 0.9, 1.0])
    assert traj.rhos.shape == (5, 8, 8)
    assert traj.n_records == 5
    single = lc.rk4_evolve(lc.initial_bell_density(1, 8),
                           EvolutionConfig(t_max=0.0), params, envs[M.DEPHASING])
    assert single.taus == pytest.approx([0.0])


def test_rk4_observers(default_setup):
    params, envs = default_setup
    cfg = EvolutionConfig(t_max=0.5, dt=0.1, record_stride=2)
    traj = lc.rk4_evolve(lc.initial_bell_density(1, 8), cfg, params,
                         envs[M.DEPHASING],
                         observers={"purity": lambda rho, t: lc.purity(rho)})
    assert traj.observed["purity"].shape == traj.taus.shape
    assert traj.observed["purity"][0] == pytest.approx(1.0)


def test_rk4_matches_closed_form_dephasing(default_setup):
    params, envs = default_setup
    env = envs[M.CORRELATED_DEPHASING]
    rho0 = lc.initial_bell_density(1, 8)
    cfg = EvolutionConfig(t_max=2.0, dt=1e-3, record_stride=200)
    traj = lc.rk4_evolve(rho0, cfg, params, env)
    exact = lc.closed_form_dephasing(rho0, traj.taus, env)
    assert np.max(np.abs(traj.rhos - exact)) < 1e-12


def test_rk4_divergence_raises(default_setup):
    params, _ = default_setup
    hot = lc.make_environment(M.INDEPENDENT_DISSIPATION, 5000.0, 0.05)
    cfg = EvolutionConfig(t_max=1.0, dt=1e-3, record_stride=100)
    with np.errstate(over="ignore", invalid="ignore"):
        with pytest.raises(lc.IntegrationDivergedError, match="step") as err:
            lc.rk4_evolve(lc.initial_bell_density(1, 8), cfg, params, hot)
    assert 0 < err.value.step <= 1000
    assert err.value.tau == pytest.approx(err.value.step * 1e-3)


def test_rk4_input_validation(default_setup):
    params, envs = default_setup
    cfg = EvolutionConfig(t_max=1.0)
    with pytest.raises(ValueError):
        lc.rk4_evolve(np.eye(4) / 4, cfg, params, envs[M.DEPHASING])
    with pytest.raises(ValueError):
        lc.rk4_evolve(np.zeros((8, 8)), cfg, params, envs[M.DEPHASING])
    two_qubit = lc.SpinChainParams(omegas=(300.0, 150.0))
    with pytest.raises(ValueError, match="qubits"):
        lc.rhs_dissipation(lc.initial_bell_density(1, 4, n_qubits=2), 0.0,
                           two_qubit, envs[M.INDEPENDENT_DISSIPATION])


def test_evolution_config_validation():
    with pytest.raises(ValueError):
        EvolutionConfig(t_max=1.0, dt=0.0)
    with pytest.raises(ValueError):
        EvolutionConfig(t_max=-1.0)
    with pytest.raises(ValueError):
        EvolutionConfig(t_max=1.0, record_stride=0)
    with pytest.raises(ValueError):
        EvolutionConfig(t_max=1.0, engine="element_wise")
    with pytest.raises(ValueError):
        lc.make_rhs(lc.SpinChainParams(), _setup()[1][M.DEPHASING], "element_wise")
