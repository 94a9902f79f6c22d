"""Space/time tradeoff sweeps, cubic fits, and derived quantities
(one-day footprint, cycle-time rescaling, processors-to-deadline).

Sweep axes follow the plotting conventions: everything is log2. Factory
sweeps double the factory count until the wall time stops moving; processor
sweeps walk every power of two in range.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .catalog import CircuitKind, LogicalCircuitSpec
from .grover import DEFAULT_WRAPPING, OracleWrappingCosts, iterations_parallel
from .surface import (
    AttackEstimate,
    FTVariant,
    PhysicalAssumptions,
    grover_attack_estimate,
    shor_attack_estimate,
)

#: x coordinate of the one-day point: log2(24 * 3600 s) = 16.3987...
ONE_DAY_LOG2_SECONDS = math.log2(24 * 3600)

#: Reference cycle time the sweeps are computed at.
BASE_CYCLE_TIME_NS = 200.0


class FitError(ValueError):
    """Not enough information to fit a cubic."""


class DeadlineUnreachableError(RuntimeError):
    """No admissible processor count meets the requested deadline."""


class KnobKind(str, Enum):
    PROCESSORS = "processors"
    FACTORIES = "factories"


@dataclass(frozen=True)
class CurvePoint:
    knob_log2: float
    x_log2_seconds: float
    y_value: float


@dataclass(frozen=True)
class TradeoffCurve:
    """One plotted series: (knob, log2 seconds, y) triples."""

    scheme: str
    variant: FTVariant
    p_g: float
    knob: KnobKind
    series_label: str
    points: tuple[CurvePoint, ...]

    def __post_init__(self) -> None:
        knobs = [p.knob_log2 for p in self.points]
        if any(b <= a for a, b in zip(knobs, knobs[1:])):
            raise ValueError(f"{self.series_label}: knob values must strictly increase")
        for p in self.points:
            if not (math.isfinite(p.knob_log2) and math.isfinite(p.x_log2_seconds)
                    and math.isfinite(p.y_value)):
                raise ValueError(f"{self.series_label}: non-finite point {p}")

    def xy(self) -> tuple[tuple[float, ...], tuple[float, ...]]:
        return (
            tuple(p.x_log2_seconds for p in self.points),
            tuple(p.y_value for p in self.points),
        )


@dataclass(frozen=True)
class CubicFit:
    """y(x) = alpha x^3 + beta x^2 + gamma x + delta with its R^2."""

    alpha: float
    beta: float
    gamma: float
    delta: float
    r_squared: float
    x_min: float
    x_max: float

    #: Extrapolation guard: warn beyond this distance outside [x_min, x_max].
    EXTRAPOLATION_GUARD = 4.0


def fit_cubic(points) -> CubicFit:
    """Least-squares cubic through (x, y) pairs.

    Solved in a shifted/scaled domain (numpy polynomial class) rather than on
    raw normal equations, which keeps the system well conditioned for the
    narrow log2 ranges the sweeps produce. R^2 = 1 - SS_res/SS_tot, with the
    zero-variance convention R^2 = 1 (constant data is fit exactly).
    """
    if isinstance(points, TradeoffCurve):
        xs, ys = points.xy()
    else:
        pts = list(points)
        xs = tuple(p[0] for p in pts)
        ys = tuple(p[1] for p in pts)
    if len(xs) < 4 or len(set(xs)) < 4:
        raise FitError(f"insufficient points for fit: need >= 4 distinct x, got {len(set(xs))}")
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    series = np.polynomial.Polynomial.fit(x, y, deg=3)
    delta, gamma, beta, alpha = series.convert().coef.tolist() + [0.0] * (4 - len(series.convert().coef))
    predicted = series(x)
    ss_res = float(np.sum((y - predicted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return CubicFit(
        alpha=alpha, beta=beta, gamma=gamma, delta=delta,
        r_squared=r_squared, x_min=float(x.min()), x_max=float(x.max()),
    )


def eval_fit(fit: CubicFit, x: float) -> float:
    """Evaluate the cubic at x (Horner form).

    Cubics diverge fast outside their data; evaluating more than the guard
    distance beyond the fitted range emits a warning rather than an error,
    since the summary tables legitimately extrapolate a little.
    """
    guard = CubicFit.EXTRAPOLATION_GUARD
    if x < fit.x_min - guard or x > fit.x_max + guard:
        import warnings

        warnings.warn(
            f"evaluating fit more than {guard:g} log2 units outside its data "
            f"range [{fit.x_min:.2f}, {fit.x_max:.2f}] at x={x:.2f}",
            stacklevel=2,
        )
    return ((fit.alpha * x + fit.beta) * x + fit.gamma) * x + fit.delta


def one_day_qubits_log2(fit: CubicFit) -> float:
    """log2 physical qubits needed to finish in 24 hours."""
    return eval_fit(fit, ONE_DAY_LOG2_SECONDS)


def rescale_cycle_time(fit: CubicFit, t_seconds: float, cycle_time_ns: float) -> float:
    """Footprint (log2 qubits) to finish in t seconds at an alternative cycle
    time: eval at log2((200 ns / t_c) * t). The 200 ns case reduces to the
    identical arithmetic path as eval_fit(fit, log2 t)."""
    if t_seconds <= 0 or cycle_time_ns <= 0:
        raise ValueError("time and cycle time must be positive")
    return eval_fit(fit, math.log2((BASE_CYCLE_TIME_NS / cycle_time_ns) * t_seconds))


# -- Shor sweeps ---------------------------------------------------------

@dataclass(frozen=True)
class ShorSweepPolicy:
    """Default factory grid: 1, 2, 4, ... until the wall time stalls.

    Two stop rules: the sweep ends once the run time drops below
    2^stop_x_log2_seconds (well under the one-day mark, so the fit has data
    on both sides of it whenever the Clifford floor allows), or earlier once
    doubling the factories moves log2(time) by less than min_x_step; past
    that point the floor dominates and the curve turns vertical, which
    neither the plots nor a cubic follow.
    """

    factor: int = 2
    min_x_step: float = 0.35
    stop_x_log2_seconds: float = 15.0
    max_points: int = 64


DEFAULT_SHOR_SWEEP = ShorSweepPolicy()


def sweep_shor(
    spec: LogicalCircuitSpec,
    assumptions: PhysicalAssumptions,
    variant: FTVariant = FTVariant.SURGERY,
    factories_grid: Sequence[int] | None = None,
    policy: ShorSweepPolicy = DEFAULT_SHOR_SWEEP,
) -> TradeoffCurve:
    """Sweep factory parallelism; one (log2 seconds, log2 qubits) point each.

    Time is non-increasing and footprint non-decreasing along the sweep.
    """
    points: list[CurvePoint] = []

    def add_point(n_f: int) -> AttackEstimate:
        est = shor_attack_estimate(spec, assumptions, variant, n_f)
        points.append(CurvePoint(
            knob_log2=math.log2(n_f),
            x_log2_seconds=math.log2(est.seconds_per_cpu),
            y_value=math.log2(est.physical_qubits_per_cpu),
        ))
        return est

    if factories_grid is not None:
        grid = list(factories_grid)
        if not grid or any(b <= a for a, b in zip(grid, grid[1:])) or grid[0] < 1:
            raise ValueError("factories_grid must be ascending and start at >= 1")
        for n_f in grid:
            add_point(n_f)
    else:
        n_f = 1
        add_point(n_f)
        while (len(points) < policy.max_points
               and points[-1].x_log2_seconds > policy.stop_x_log2_seconds):
            n_f *= policy.factor
            add_point(n_f)
            step = points[-2].x_log2_seconds - points[-1].x_log2_seconds
            if step < policy.min_x_step:
                points.pop()
                break
    return TradeoffCurve(
        scheme=spec.name,
        variant=variant,
        p_g=assumptions.p_g,
        knob=KnobKind.FACTORIES,
        series_label="log2-physical-qubits",
        points=tuple(points),
    )


# -- Grover sweeps -------------------------------------------------------

GROVER_SERIES_LABELS = (
    "cycles-per-cpu",
    "time-per-cpu",
    "qubits-per-cpu",
    "total-qubits",
)
GROVER_REFERENCE_LABELS = ("black-box-queries", "ideal-gates")


@dataclass(frozen=True)
class GroverSweep:
    """The four estimate series plus the two logical-layer reference lines."""

    scheme: str
    p_g: float
    series: tuple[TradeoffCurve, ...]
    reference: tuple[TradeoffCurve, ...]

    def all_curves(self) -> tuple[TradeoffCurve, ...]:
        return self.series + self.reference


def sweep_grover(
    spec: LogicalCircuitSpec,
    assumptions: PhysicalAssumptions,
    kappa_range: tuple[int, int] | None = None,
    variant: FTVariant = FTVariant.BRAIDING,
    wrapping: OracleWrappingCosts = DEFAULT_WRAPPING,
) -> GroverSweep:
    """Evaluate every K = 2^kappa in range and render the plot families.

    Reference lines are logical-layer idealizations (black-box query count
    and unit-cost gate count); K values whose query count is zero fall off
    the log-scale lines and are omitted there.
    """
    if spec.kind not in (CircuitKind.GROVER_ORACLE, CircuitKind.TRIVIAL_ORACLE):
        raise ValueError(f"{spec.name}: not a search-family entry ({spec.kind.value})")
    k = spec.search_space_bits or 0
    lo, hi = kappa_range if kappa_range is not None else (0, k)
    if not (0 <= lo <= hi <= k):
        raise ValueError(f"kappa range [{lo}, {hi}] outside [0, {k}]")

    main: dict[str, list[CurvePoint]] = {label: [] for label in GROVER_SERIES_LABELS}
    refs: dict[str, list[CurvePoint]] = {label: [] for label in GROVER_REFERENCE_LABELS}
    from .grover import iteration_logical_cost

    per_iter_gates = iteration_logical_cost(spec, wrapping).gate_count_per_iteration
    for kappa in range(lo, hi + 1):
        est = grover_attack_estimate(spec, k, 2**kappa, assumptions, variant, wrapping)
        x_time = math.log2(est.seconds_per_cpu)
        main["cycles-per-cpu"].append(
            CurvePoint(kappa, x_time, math.log2(est.cost_per_cpu)))
        main["time-per-cpu"].append(CurvePoint(kappa, x_time, x_time))
        main["qubits-per-cpu"].append(
            CurvePoint(kappa, x_time, math.log2(est.physical_qubits_per_cpu)))
        main["total-qubits"].append(
            CurvePoint(kappa, x_time, math.log2(est.total_physical_qubits)))
        queries = iterations_parallel(k, 2**kappa)
        if queries >= 1:
            refs["black-box-queries"].append(
                CurvePoint(kappa, x_time, math.log2(queries)))
            refs["ideal-gates"].append(
                CurvePoint(kappa, x_time, math.log2(queries * per_iter_gates)))

    def curve(label: str, pts: list[CurvePoint]) -> TradeoffCurve:
        return TradeoffCurve(
            scheme=spec.name, variant=variant, p_g=assumptions.p_g,
            knob=KnobKind.PROCESSORS, series_label=label, points=tuple(pts),
        )

    return GroverSweep(
        scheme=spec.name,
        p_g=assumptions.p_g,
        series=tuple(curve(lbl, main[lbl]) for lbl in GROVER_SERIES_LABELS),
        reference=tuple(curve(lbl, refs[lbl]) for lbl in GROVER_REFERENCE_LABELS),
    )


# -- Derived quantities --------------------------------------------------

def security_parameter(
    spec: LogicalCircuitSpec,
    assumptions: PhysicalAssumptions,
    variant: FTVariant = FTVariant.BRAIDING,
    wrapping: OracleWrappingCosts = DEFAULT_WRAPPING,
) -> float:
    """Bits of work to break the scheme on a single machine: log2 of the
    sequential fault-tolerant cost at K = 1."""
    k = spec.search_space_bits or 0
    est = grover_attack_estimate(spec, k, 1, assumptions, variant, wrapping)
    assert est.security_parameter is not None
    return est.security_parameter


def processors_to_deadline(
    spec: LogicalCircuitSpec,
    assumptions: PhysicalAssumptions,
    deadline_seconds: float,
    variant: FTVariant = FTVariant.BRAIDING,
    wrapping: OracleWrappingCosts = DEFAULT_WRAPPING,
) -> int:
    """Smallest kappa with per-machine wall time <= deadline at K = 2^kappa.

    Wall time is non-increasing in K, so plain bisection over kappa applies.
    """
    if deadline_seconds <= 0:
        raise ValueError("deadline must be positive")
    k = spec.search_space_bits or 0

    def seconds(kappa: int) -> float:
        est = grover_attack_estimate(spec, k, 2**kappa, assumptions, variant, wrapping)
        return est.seconds_per_cpu

    if seconds(k) > deadline_seconds:
        raise DeadlineUnreachableError(
            f"{spec.name}: even 2^{k} machines miss the {deadline_seconds:.3g} s deadline"
        )
    lo, hi = 0, k
    while lo < hi:
        mid = (lo + hi) // 2
        if seconds(mid) <= deadline_seconds:
            hi = mid
        else:
            lo = mid + 1
    return lo
