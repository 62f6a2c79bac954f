"""Scenario configuration, execution, and CSV emission.

Configs are line-based `key = value` text with `#` comments.  Recognized
keys:

    model    one of independent_dissipation, correlated_dissipation,
             dephasing, correlated_dephasing          (required)
    engine   element_wise (default) or operator_built
    state    catalog name such as psi_18; or give pair_i / pair_j
    pair_i, pair_j   explicit basis-state pair in 1..8
    omega_1..omega_3, J, Jp                           chain parameters
    gamma_1..gamma_3, gamma_12, gamma_13, gamma_23    dissipation rates
    Gamma_1..Gamma_3, Gamma_12, Gamma_13, Gamma_23    dephasing rates
    dt, t_max, stride                                 integration grid
    out      CSV output path
    plot     SVG output path (purity and gme curves)

Omitted numeric keys fall back to the canonical defaults.  Rate matrices
are symmetric, so one off-diagonal entry per pair suffices; giving both
orders with different values is an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .catalog import (DEFAULT_CROSS_RATES, DEFAULT_DIAGONAL_RATE, catalog_entry,
                      catalog_states, default_parameters)
from .engine import (EngineKind, EvolutionConfig, Trajectory, closed_form_dephasing,
                     rk4_evolve)
from .environments import EnvironmentModel, EnvironmentSpec, make_environment
from .metrics import EntanglementFamily, family_of_pair, gme, purity
from .register import SpinChainParams
from .states import diagnostics, initial_bell_density

ENGINE_DELTA_THRESHOLD = 1e-6

CSV_HEADER = ("tau", "purity", "gme", "p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8",
              "coh_abs", "trace_err", "herm_err", "min_eig")

MODEL_ORDER = (
    EnvironmentModel.INDEPENDENT_DISSIPATION,
    EnvironmentModel.CORRELATED_DISSIPATION,
    EnvironmentModel.DEPHASING,
    EnvironmentModel.CORRELATED_DEPHASING,
)


class ConfigError(ValueError):
    """Configuration problem, carrying the offending line when known."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class RunConfig:
    model: EnvironmentModel
    engine: EngineKind
    state_name: str | None
    pair: tuple[int, int]
    family: EntanglementFamily
    params: SpinChainParams
    env: EnvironmentSpec
    evolution: EvolutionConfig
    out: str | None = None
    plot: str | None = None

    @property
    def label(self) -> str:
        if self.state_name:
            return self.state_name
        return f"pair_{self.pair[0]}{self.pair[1]}"


# ------------------------------------------------------------- config text

_RATE_KEY = re.compile(r"^(gamma|Gamma)_([1-3])([1-3])?$")


def parse_config(text: str) -> RunConfig:
    """Parse config text into a validated RunConfig.

    Raises ConfigError with a line number for any malformed, unknown,
    duplicated, or out-of-range entry.
    """
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if key in entries:
            raise ConfigError(f"duplicate key {key!r} (first set on line {entries[key][1]})",
                              lineno)
        entries[key] = (value, lineno)

    def take(key):
        return entries.pop(key, None)

    model = _parse_model(take("model"))
    engine = _parse_engine(take("engine"))

    state_name, pair, family = _parse_state(take("state"), take("pair_i"), take("pair_j"))

    omegas = [400.0, 200.0, 100.0]
    for k in (1, 2, 3):
        item = take(f"omega_{k}")
        if item is not None:
            omegas[k - 1] = _parse_float(f"omega_{k}", item)
    coupling_j = 10.0
    item = take("J")
    if item is not None:
        coupling_j = _parse_float("J", item)
    coupling_jp = 0.4
    item = take("Jp")
    if item is not None:
        coupling_jp = _parse_float("Jp", item)
    try:
        params = SpinChainParams(tuple(omegas), coupling_j, coupling_jp)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    gamma = _default_rate_matrix()
    big_gamma = _default_rate_matrix()
    rate_lines = {}
    for key in [k for k in entries if _RATE_KEY.match(k)]:
        value, lineno = entries.pop(key)
        name, a, b = _RATE_KEY.match(key).groups()
        target = gamma if name == "gamma" else big_gamma
        rate = _parse_float(key, (value, lineno))
        if b is None:
            if rate < 0.0:
                raise ConfigError(f"{key} must be nonnegative, got {rate}", lineno)
            target[int(a) - 1][int(a) - 1] = rate
        else:
            i, j = sorted((int(a), int(b)))
            if i == j:
                raise ConfigError(f"{key} repeats a qubit index", lineno)
            slot = (name, i, j)
            if slot in rate_lines and rate_lines[slot][0] != rate:
                raise ConfigError(
                    f"{key} conflicts with value set on line {rate_lines[slot][1]}", lineno)
            rate_lines[slot] = (rate, lineno)
            target[i - 1][j - 1] = rate
            target[j - 1][i - 1] = rate

    dt = 1e-3
    item = take("dt")
    if item is not None:
        dt = _parse_float("dt", item)
    t_max = 50.0
    item = take("t_max")
    if item is not None:
        t_max = _parse_float("t_max", item)
    stride = 100
    item = take("stride")
    if item is not None:
        stride = _parse_int("stride", item)

    out = take("out")
    plot = take("plot")

    if entries:
        key = min(entries, key=lambda k: entries[k][1])
        raise ConfigError(f"unknown key {key!r}", entries[key][1])

    try:
        evolution = EvolutionConfig(t_max=t_max, dt=dt, record_stride=stride, engine=engine)
        env = make_environment(model, gamma, big_gamma, params.n_qubits)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    return RunConfig(model=model, engine=engine, state_name=state_name, pair=pair,
                     family=family, params=params, env=env, evolution=evolution,
                     out=out[0] if out else None, plot=plot[0] if plot else None)


def _default_rate_matrix() -> list[list[float]]:
    mat = [[0.0] * 3 for _ in range(3)]
    for k in range(3):
        mat[k][k] = DEFAULT_DIAGONAL_RATE
    for (a, b), rate in DEFAULT_CROSS_RATES.items():
        mat[a - 1][b - 1] = rate
        mat[b - 1][a - 1] = rate
    return mat


def _parse_model(item) -> EnvironmentModel:
    if item is None:
        raise ConfigError("missing required key 'model'")
    value, lineno = item
    try:
        return EnvironmentModel(value)
    except ValueError:
        valid = ", ".join(m.value for m in EnvironmentModel)
        raise ConfigError(f"unknown model {value!r}; valid models: {valid}", lineno) from None


def _parse_engine(item) -> EngineKind:
    if item is None:
        return EngineKind.ELEMENT_WISE
    value, lineno = item
    try:
        return EngineKind(value)
    except ValueError:
        valid = ", ".join(e.value for e in EngineKind)
        raise ConfigError(f"unknown engine {value!r}; valid engines: {valid}", lineno) from None


def _parse_state(state_item, pair_i_item, pair_j_item):
    if state_item is not None and (pair_i_item is not None or pair_j_item is not None):
        raise ConfigError("give either 'state' or 'pair_i'/'pair_j', not both",
                          state_item[1])
    if state_item is not None:
        value, lineno = state_item
        try:
            entry = catalog_entry(value)
        except KeyError as exc:
            raise ConfigError(str(exc.args[0]), lineno) from None
        return entry.name, entry.pair, entry.family
    if pair_i_item is None or pair_j_item is None:
        raise ConfigError("config must set 'state' or both 'pair_i' and 'pair_j'")
    i = _parse_int("pair_i", pair_i_item)
    j = _parse_int("pair_j", pair_j_item)
    try:
        family = family_of_pair(min(i, j), max(i, j))
    except ValueError as exc:
        raise ConfigError(str(exc), pair_i_item[1]) from exc
    return None, (min(i, j), max(i, j)), family


def _parse_float(key, item) -> float:
    value, lineno = item
    try:
        result = float(value)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {value!r}", lineno) from None
    if not np.isfinite(result):
        raise ConfigError(f"{key} must be finite, got {value!r}", lineno)
    return result


def _parse_int(key, item) -> int:
    value, lineno = item
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}", lineno) from None


# -------------------------------------------------------------- execution

def simulate_trajectory(cfg: RunConfig) -> Trajectory:
    rho0 = initial_bell_density(*cfg.pair, n_qubits=cfg.params.n_qubits)
    return rk4_evolve(rho0, cfg.evolution, cfg.params, cfg.env)


def trajectory_table(traj: Trajectory, pair: tuple[int, int],
                     family: EntanglementFamily) -> list[tuple[float, ...]]:
    """Per-record CSV rows: tau, purity, gme, populations, tracked
    coherence magnitude, and physicality diagnostics."""
    i, j = pair
    rows = []
    for tau, rho in zip(traj.taus, traj.rhos):
        diag = diagnostics(rho)
        rows.append((
            float(tau),
            purity(rho),
            gme(rho, pair, family),
            *(float(rho[m, m].real) for m in range(rho.shape[0])),
            float(abs(rho[i - 1, j - 1])),
            diag.trace_error,
            diag.hermiticity_error,
            diag.min_eigenvalue,
        ))
    return rows


def render_csv(header: tuple[str, ...], rows) -> str:
    """Deterministic CSV text: 12 significant digits, LF endings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_cell(cell) for cell in row))
    return "\n".join(lines) + "\n"


def _format_cell(cell) -> str:
    if isinstance(cell, str):
        return cell
    if isinstance(cell, (int, np.integer)) and not isinstance(cell, bool):
        return str(int(cell))
    return f"{float(cell):.11e}"


def run_scenario(cfg: RunConfig, out_path: str | Path | None = None) -> Path:
    """Integrate the configured scenario and write its CSV time series.

    Returns the CSV path.  If the config names a plot path, an SVG of the
    purity and gme columns is rendered next to it.
    """
    path = Path(out_path or cfg.out or f"{cfg.label}_{cfg.model.value}.csv")
    traj = simulate_trajectory(cfg)
    rows = trajectory_table(traj, cfg.pair, cfg.family)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_csv(CSV_HEADER, rows), encoding="utf-8", newline="\n")
    if cfg.plot:
        from .svgplot import emit_svg_plot
        emit_svg_plot([path], ["purity", "gme"], cfg.plot)
    return path


@dataclass(frozen=True)
class EngineComparison:
    max_delta: float
    threshold: float
    passed: bool
    n_records: int
    closed_form_delta: float | None = None

    def summary(self) -> str:
        lines = [
            f"max entrywise |delta rho| over {self.n_records} records: {self.max_delta:.3e}",
            f"threshold: {self.threshold:.1e}",
        ]
        if self.closed_form_delta is not None:
            lines.append(f"closed-form dephasing |delta rho|: {self.closed_form_delta:.3e}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def compare_engines(cfg: RunConfig) -> EngineComparison:
    """Run both engines on the same scenario and compare trajectories.

    For dephasing models the element-wise trajectory is additionally
    compared against the exact closed form.
    """
    rho0 = initial_bell_density(*cfg.pair, n_qubits=cfg.params.n_qubits)
    element = rk4_evolve(rho0, replace(cfg.evolution, engine=EngineKind.ELEMENT_WISE),
                         cfg.params, cfg.env)
    operator = rk4_evolve(rho0, replace(cfg.evolution, engine=EngineKind.OPERATOR_BUILT),
                          cfg.params, cfg.env)
    max_delta = float(np.max(np.abs(element.rhos - operator.rhos)))
    closed_delta = None
    if not cfg.model.dissipative:
        exact = closed_form_dephasing(rho0, element.taus, cfg.env)
        closed_delta = float(np.max(np.abs(element.rhos - exact)))
    return EngineComparison(
        max_delta=max_delta,
        threshold=ENGINE_DELTA_THRESHOLD,
        passed=max_delta < ENGINE_DELTA_THRESHOLD,
        n_records=element.n_records,
        closed_form_delta=closed_delta,
    )


# ------------------------------------------------------------------ sweep

def tau_first_below(taus: np.ndarray, values: np.ndarray, threshold: float = 0.5) -> float:
    """First crossing time below threshold, linearly interpolated between
    recorded samples; NaN when the series never crosses."""
    taus = np.asarray(taus, dtype=float)
    values = np.asarray(values, dtype=float)
    below = np.nonzero(values < threshold)[0]
    if len(below) == 0:
        return float("nan")
    k = int(below[0])
    if k == 0:
        return float(taus[0])
    v0, v1 = values[k - 1], values[k]
    if v1 == v0:
        return float(taus[k])
    frac = (threshold - v0) / (v1 - v0)
    return float(taus[k - 1] + frac * (taus[k] - taus[k - 1]))


SWEEP_HEADER = ("state", "family", "pair_i", "pair_j", "model",
                "paper_delta_e", "computed_delta_e", "tau_star")


def sweep(out_dir: str | Path, t_max: float = 40.0, dt: float = 1e-2,
          record_stride: int = 10,
          engine: EngineKind = EngineKind.ELEMENT_WISE) -> Path:
    """Run all 16 catalog states under all four models.

    Writes one CSV per run plus summary.csv with the interpolated time
    tau_star at which the gme bound first drops below 0.5 (NaN when it
    never does, e.g. coherences the correlated dephasing model leaves
    decoherence-free).  Returns the summary path.

    The grid arguments are an extension over the canonical defaults so
    short sweeps stay cheap; the defaults cover every finite tau_star.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params, environments = default_parameters()
    evolution = EvolutionConfig(t_max=t_max, dt=dt, record_stride=record_stride,
                                engine=engine)
    summary_rows = []
    for entry in catalog_states(params):
        rho0 = initial_bell_density(*entry.pair, n_qubits=params.n_qubits)
        for model in MODEL_ORDER:
            traj = rk4_evolve(rho0, evolution, params, environments[model])
            rows = trajectory_table(traj, entry.pair, entry.family)
            run_path = out / f"{entry.name}_{model.value}.csv"
            run_path.write_text(render_csv(CSV_HEADER, rows), encoding="utf-8",
                                newline="\n")
            gme_values = np.array([row[2] for row in rows])
            tau_star = tau_first_below(traj.taus, gme_values)
            summary_rows.append((
                entry.name, entry.family.value, entry.pair[0], entry.pair[1],
                model.value, entry.paper_delta_e, entry.computed_delta_e, tau_star,
            ))
    summary_path = out / "summary.csv"
    summary_path.write_text(render_csv(SWEEP_HEADER, summary_rows), encoding="utf-8",
                            newline="\n")
    return summary_path
