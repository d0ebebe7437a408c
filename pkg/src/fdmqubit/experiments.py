"""Parameter sweeps behind the figure reproductions.

Every sweep point is an independent ``(comb, pulse, k0, engine)`` task. Points
may be evaluated in worker processes, but results are always returned in
grid order so output tables do not depend on the worker count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .comb import TWO_PI, FrequencyComb, PulseConfig
from .errors import PreconditionError
from .magnus import (
    ideal_unitary,
    lambda_closed_form,
    lambda_general,
    lambda_orthogonal,
)
from .metrics import analytic_fidelity, average_gate_fidelity, fit_infidelity_slope, spectrum_magnitude
from .propagator import HamiltonianModel, IntegrationSettings, evolve

# default physical parameters (Hz)
QUBIT_FREQ_HZ = 5e9
SPACING_HZ = 10e6
DEFAULT_L, DEFAULT_R = -7, 7
DEFAULT_PHI = math.pi / 2

ANALYTIC_ENGINES = ("magnus-general", "magnus-reduction")
NUMERIC_ENGINES = ("numeric-full", "numeric-rwa", "numeric-lab")
ENGINES = ANALYTIC_ENGINES + NUMERIC_ENGINES
SCENARIOS = ("sweep-k0", "sweep-tau", "sweep-n", "sweep-phi", "slope", "spectrum")

_FRAME = {"numeric-full": "rotating-full", "numeric-rwa": "rotating-rwa", "numeric-lab": "lab"}

FIG3_VARIANTS = {"a": 1.0, "b": 0.5, "c": 2.0}
FIG6_TAU_RATIOS = np.linspace(0.25, 3.0, 45)
FIG6_PHIS = np.linspace(0.0, math.pi, 33)[1:]
FIG6_N_TARGETS = (0, 3, 7)
FIG6_PHI_TARGETS = (0, 7)
FIG5_M = tuple(range(1, 11))
FIG2_N = 5
FIG2_WINDOW = 6.0
FIG2_POINTS = 1201


def reference_comb(l=DEFAULT_L, r=DEFAULT_R, fq_hz=QUBIT_FREQ_HZ, df_hz=SPACING_HZ):
    return FrequencyComb.from_hz(l, r, df_hz, fq_hz)


def gate_fidelity(comb, pulse, k0, engine="numeric-full", settings=None) -> float:
    """Average gate fidelity of one simultaneous-drive gate under ``engine``."""
    return _fidelity_with_diagnostics(comb, pulse, k0, engine, settings)[0]


def _fidelity_with_diagnostics(comb, pulse, k0, engine, settings):
    # second item: pre-projection unitarity error for numeric engines
    if engine == "magnus-general":
        return analytic_fidelity(lambda_general(comb, pulse, k0), pulse.phi).value, None
    if engine == "magnus-reduction":
        return analytic_fidelity(lambda_closed_form(comb, pulse, k0), pulse.phi).value, None
    if engine in _FRAME:
        model = HamiltonianModel(_FRAME[engine], comb, pulse, k0)
        ev = evolve(model, settings)
        return average_gate_fidelity(ideal_unitary(pulse.phi), ev.unitary).value, ev.unitarity_error
    raise PreconditionError(f"unknown engine {engine!r}; choose from {ENGINES}")


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.count < 2:
            raise PreconditionError("grid needs at least 2 points")
        if self.scale not in ("linear", "log"):
            raise PreconditionError(f"unknown grid scale {self.scale!r}")
        if self.scale == "log" and (self.start <= 0 or self.stop <= 0):
            raise PreconditionError("log grid bounds must be positive")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: a scenario, base parameters, a grid and the engines to run.

    The grid variable depends on the scenario: ``k0`` (sweep-k0), ``tau/tau0``
    (sweep-tau), ``N`` (sweep-n), ``phi`` (sweep-phi), ``m = tau/tau0``
    (slope) or the frequency offset from ``omega_q0`` in units of the
    spacing (spectrum). Integer-valued variables are rounded.
    """

    scenario: str
    grid: Grid
    engines: tuple = ("magnus-reduction", "numeric-full")
    l: int = DEFAULT_L
    r: int = DEFAULT_R
    fq_hz: float = QUBIT_FREQ_HZ
    df_hz: float = SPACING_HZ
    k0: int = 0
    tau_ratio: float = 1.0
    phi: float = DEFAULT_PHI
    steps_per_period: int = 100

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise PreconditionError(f"unknown scenario {self.scenario!r}")
        if not self.engines:
            raise PreconditionError("at least one engine is required")
        for e in self.engines:
            if e not in ENGINES:
                raise PreconditionError(f"unknown engine {e!r}; choose from {ENGINES}")
        object.__setattr__(self, "engines", tuple(self.engines))

    @property
    def comb(self) -> FrequencyComb:
        return reference_comb(self.l, self.r, self.fq_hz, self.df_hz)

    @property
    def settings(self) -> IntegrationSettings:
        return IntegrationSettings(self.steps_per_period)


@dataclass
class SweepRecord:
    """One output row: the swept parameters and a value per engine.

    ``values`` maps engine name (or a column name) to a fidelity, spectrum
    magnitude or ``None`` when the point does not exist (e.g. absent tone).
    ``extras`` holds diagnostics: ``unitarity_error`` per numeric engine and,
    for slope sweeps, the fitted :class:`SlopeFit` per engine.
    """

    params: dict
    values: dict
    wall_time: float = 0.0
    note: str = ""
    extras: dict = field(default_factory=dict)


def _evaluate(task):
    comb, pulse, k0, engine, settings = task
    t = time.perf_counter()
    value, unitarity = _fidelity_with_diagnostics(comb, pulse, k0, engine, settings)
    return value, time.perf_counter() - t, unitarity


def evaluate_tasks(tasks, workers=1):
    """Evaluate fidelity tasks, preserving input order."""
    tasks = list(tasks)
    if workers and workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_evaluate, tasks))
    return [_evaluate(task) for task in tasks]


def _run_fidelity_points(points, engines, settings, workers):
    """``points`` is a list of ``(params, comb, pulse, k0)``; None comb marks absent."""
    tasks, slots = [], []
    for i, (params, comb, pulse, k0) in enumerate(points):
        if comb is None:
            continue
        for engine in engines:
            slots.append((i, engine))
            tasks.append((comb, pulse, k0, engine, settings))
    results = evaluate_tasks(tasks, workers)

    records = [
        SweepRecord(params, {e: None for e in engines}, note="" if comb is not None else "absent tone")
        for params, comb, _, _ in points
    ]
    for (i, engine), (value, wall, unitarity) in zip(slots, results):
        records[i].values[engine] = value
        records[i].wall_time += wall
        if unitarity is not None:
            records[i].extras.setdefault("unitarity_error", {})[engine] = unitarity
    return records


def run_sweep(spec: SweepSpec, workers=1) -> list[SweepRecord]:
    """Evaluate ``spec`` over its grid and return one record per grid point."""
    grid = spec.grid.values()
    settings = spec.settings
    base = spec.comb

    if spec.scenario == "spectrum":
        pulse = PulseConfig.from_tau_ratio(base, spec.tau_ratio, spec.phi)
        omega = base.omega_q0 + grid * base.delta
        mags = spectrum_magnitude(pulse, base.omega_d(spec.k0), omega)
        return [
            SweepRecord({"offset": float(x), "omega": float(w)}, {"magnitude": float(m)})
            for x, w, m in zip(grid, omega, mags)
        ]

    points = []
    for x in grid:
        comb, k0, ratio, phi = base, spec.k0, spec.tau_ratio, spec.phi
        if spec.scenario == "sweep-k0":
            k0 = int(round(x))
            params = {"k0": k0}
        elif spec.scenario in ("sweep-tau", "slope"):
            ratio = int(round(x)) if spec.scenario == "slope" else float(x)
            params = {"m" if spec.scenario == "slope" else "tau_ratio": ratio}
        elif spec.scenario == "sweep-n":
            n = int(round(x))
            comb = FrequencyComb.centered(n, base.delta, base.omega_q0)
            params = {"n": n}
            if k0 not in comb:
                points.append((params, None, None, k0))
                continue
        else:
            phi = float(x)
            params = {"phi": phi}
        pulse = PulseConfig.from_tau_ratio(comb, ratio, phi)
        points.append((params, comb, pulse, k0))

    records = _run_fidelity_points(points, spec.engines, settings, workers)
    if spec.scenario == "slope":
        for engine in spec.engines:
            pts = [(rec.params["m"], 1.0 - rec.values[engine]) for rec in records]
            pts = [p for p in pts if p[1] > 0]
            if len(pts) >= 3:
                fit = fit_infidelity_slope(pts)
                for rec in records:
                    rec.extras[engine] = fit
    return records


# ----------------------------------------------------------------------------
# figure reproductions


def run_fig3(variant="a", engines=("magnus-reduction", "numeric-full"), settings=None,
             workers=1, comb=None, phi=DEFAULT_PHI) -> list[SweepRecord]:
    """Fidelity vs target index for ``tau`` in {tau0, tau0/2, 2 tau0}.

    Records carry ``values`` keyed by engine name, one record per k0.
    """
    if variant not in FIG3_VARIANTS:
        raise PreconditionError(f"unknown Fig. 3 variant {variant!r}")
    comb = comb or reference_comb()
    pulse = PulseConfig.from_tau_ratio(comb, FIG3_VARIANTS[variant], phi)
    points = [({"k0": int(k0)}, comb, pulse, int(k0)) for k0 in comb.indices]
    return _run_fidelity_points(points, engines, settings, workers)


def run_fig4_lambdas(comb=None, phi=DEFAULT_PHI):
    """Rows ``(tau_ratio, k0, lambda_x, lambda_y, lambda_z)`` for tau0 and tau0/2."""
    comb = comb or reference_comb()
    rows = []
    for ratio in (1.0, 0.5):
        pulse = PulseConfig.from_tau_ratio(comb, ratio, phi)
        for k0 in comb.indices:
            lam = lambda_closed_form(comb, pulse, int(k0))
            rows.append((ratio, int(k0)) + lam.as_tuple())
    return rows


@dataclass
class Fig5Result:
    fits: dict
    points: dict
    omitted: dict


def run_fig5_slope(comb=None, phi=DEFAULT_PHI, ms=FIG5_M) -> Fig5Result:
    """Log-log infidelity slope vs ``m = tau/tau0`` for each positive k0."""
    comb = comb or reference_comb()
    fits, points, omitted = {}, {}, {}
    for k0 in comb.indices:
        k0 = int(k0)
        if k0 == 0:
            omitted[k0] = "infidelity is zero for the central qubit"
            continue
        if k0 < 0:
            omitted[k0] = f"mirror of k0={-k0}"
            continue
        pts = []
        for m in ms:
            pulse = PulseConfig.from_tau_ratio(comb, m, phi)
            infid = analytic_fidelity(lambda_orthogonal(comb, pulse, k0), phi).infidelity
            pts.append((m, infid))
        points[k0] = pts
        fits[k0] = fit_infidelity_slope(pts)
    return Fig5Result(fits, points, omitted)


def run_fig6(panel="a", settings=None, workers=1, comb=None, engine="numeric-full",
             tau_ratios=FIG6_TAU_RATIOS, phis=FIG6_PHIS) -> list[SweepRecord]:
    """Numeric fidelity maps: (a) k0 x tau, (b) N sweep, (c) phi sweep."""
    comb = comb or reference_comb()
    points = []
    if panel == "a":
        for k0 in comb.indices:
            for ratio in tau_ratios:
                pulse = PulseConfig.from_tau_ratio(comb, float(ratio), DEFAULT_PHI)
                points.append(({"k0": int(k0), "tau_ratio": float(ratio)}, comb, pulse, int(k0)))
    elif panel == "b":
        for k0 in FIG6_N_TARGETS:
            for n in range(1, comb.n + 1):
                sub = FrequencyComb.centered(n, comb.delta, comb.omega_q0)
                params = {"n": n, "k0": k0}
                if k0 in sub:
                    points.append((params, sub, PulseConfig.from_tau_ratio(sub, 1.0, DEFAULT_PHI), k0))
                else:
                    points.append((params, None, None, k0))
    elif panel == "c":
        for k0 in FIG6_PHI_TARGETS:
            for phi in phis:
                pulse = PulseConfig.from_tau_ratio(comb, 1.0, float(phi))
                points.append(({"phi": float(phi), "k0": k0}, comb, pulse, k0))
    else:
        raise PreconditionError(f"unknown Fig. 6 panel {panel!r}")
    return _run_fidelity_points(points, (engine,), settings, workers)


def run_fig2_spectrum(tau_ratio=1.0, fq_hz=QUBIT_FREQ_HZ, df_hz=SPACING_HZ,
                      n_tones=FIG2_N, window=FIG2_WINDOW, count=FIG2_POINTS):
    """Rows ``(omega, k, magnitude)`` of each tone's rectangular-pulse spectrum.

    The frequency axis spans ``omega_q0 +- window * delta``.
    """
    comb = FrequencyComb.centered(n_tones, TWO_PI * df_hz, TWO_PI * fq_hz)
    pulse = PulseConfig.from_tau_ratio(comb, tau_ratio, DEFAULT_PHI)
    omega = comb.omega_q0 + np.linspace(-window, window, count) * comb.delta
    rows = []
    for k in comb.indices:
        mags = spectrum_magnitude(pulse, comb.omega_d(k), omega)
        rows.extend((float(w), int(k), float(m)) for w, m in zip(omega, mags))
    return rows
