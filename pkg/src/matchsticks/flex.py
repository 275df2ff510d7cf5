"""Finite-flex continuation along the unit-length constraint manifold.

A step is predictor (move along a tangent flex direction) plus corrector
(minimum-displacement Newton projection back onto the manifold). Event
steering picks, at every step, the direction of steepest change of a scalar
monitor within the current flex space, and solves for the configuration
where the monitor hits its target (secant search on the step length once
the target is bracketed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Embedding, Graph
from .refine import CorrectorError, project_to_manifold
from .rigidity import analyze

EVENT_TOL = 1e-9


class NoFlexError(ValueError):
    """The framework is rigid; there is no direction to move in."""


class StallError(RuntimeError):
    """Monitor gradient is orthogonal to the flex space; steering cannot act."""


class StepTooLargeError(RuntimeError):
    """Corrector diverged for this step length."""


class BudgetError(RuntimeError):
    """Step budget exhausted before the event."""


@dataclass(frozen=True)
class Monitor:
    """Scalar event function: distance between a vertex pair vs a target."""

    a: int
    b: int
    target: float
    kind: str = "pair_distance"

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("monitor endpoints must differ")

    def value(self, emb: Embedding) -> float:
        return emb.pair_distance(self.a, self.b)

    def gradient(self, emb: Embedding) -> np.ndarray:
        g = np.zeros(2 * emb.n_vertices)
        d = emb.coords[self.a] - emb.coords[self.b]
        dist = float(np.hypot(*d))
        if dist == 0.0:
            return g
        g[2 * self.a:2 * self.a + 2] = d / dist
        g[2 * self.b:2 * self.b + 2] = -d / dist
        return g


def monitor_value(emb: Embedding, monitor: Monitor) -> float:
    """Raw pair distance (the event function is value minus target)."""
    return monitor.value(emb)


@dataclass(frozen=True)
class FlexOptions:
    step_init: float = 1e-2
    step_min: float = 1e-6
    step_max: float = 0.1
    corrector_tol: float = 1e-12
    max_steps: int = 10 ** 5
    crossing_check_every: int = 0  # 0 = only at events
    rank_tau: float = 1e-7

    def __post_init__(self):
        if not (0 < self.step_min <= self.step_init <= self.step_max):
            raise ValueError("need 0 < step_min <= step_init <= step_max")


@dataclass(frozen=True)
class FlexState:
    embedding: Embedding
    arclength: float = 0.0
    last_direction: np.ndarray | None = None

    @staticmethod
    def at(emb: Embedding) -> "FlexState":
        return FlexState(embedding=emb)


@dataclass
class TracePoint:
    step: int
    arclength: float
    monitor: float
    max_residual: float
    # None = not checked at this step; recorded, never enforced
    crossing_ok: bool | None = None


def flex_basis(graph: Graph, emb: Embedding, rank_tau: float = 1e-7) -> np.ndarray:
    """Orthonormal flex directions at this embedding (may be empty)."""
    return analyze(graph, emb, rank_tau).flex_basis


def flex_step(graph: Graph, state: FlexState, direction: np.ndarray, h: float,
              opts: FlexOptions | None = None) -> FlexState:
    """One predictor-corrector step of length h along a flex direction.

    The direction must lie in the current flex space (first-order residual
    below 1e-6) and be unit norm. Raises NoFlexError on rigid input and
    StepTooLargeError when the corrector cannot recover.
    """
    opts = opts or FlexOptions()
    d = np.asarray(direction, dtype=float)
    if h == 0.0:
        return state
    norm = float(np.linalg.norm(d))
    if not math.isclose(norm, 1.0, rel_tol=1e-6):
        raise ValueError("flex direction must be unit norm")
    report = analyze(graph, state.embedding, opts.rank_tau)
    if report.internal_dof == 0:
        raise NoFlexError("framework is rigid")
    from .rigidity import rigidity_matrix

    R = rigidity_matrix(graph, state.embedding)
    if float(np.linalg.norm(R @ d)) > 1e-6 * max(1.0, float(np.linalg.norm(R, 2))):
        raise ValueError("direction is not in the current flex space")

    x = state.embedding.flat()
    predictor = x + h * d
    try:
        corrected, _res = project_to_manifold(graph, predictor, tol=opts.corrector_tol)
    except CorrectorError as exc:
        raise StepTooLargeError(str(exc)) from exc

    moved = corrected - x
    tangent = moved / np.linalg.norm(moved) if np.linalg.norm(moved) > 0 else d
    if state.last_direction is not None and float(tangent @ state.last_direction) < 0:
        tangent = -tangent
    return FlexState(
        embedding=Embedding.from_flat(corrected),
        arclength=state.arclength + float(np.linalg.norm(moved)),
        last_direction=tangent,
    )


def _steer_direction(graph: Graph, state: FlexState, monitor: Monitor,
                     opts: FlexOptions) -> np.ndarray:
    """Projection of the monitor gradient onto the flex space, unit norm,
    oriented toward the target."""
    report = analyze(graph, state.embedding, opts.rank_tau)
    if report.internal_dof == 0:
        raise NoFlexError("framework is rigid")
    B = report.flex_basis
    g = monitor.gradient(state.embedding)
    proj = B.T @ (B @ g)
    norm = float(np.linalg.norm(proj))
    if norm < 1e-10:
        raise StallError("monitor gradient is orthogonal to the flex space")
    d = proj / norm
    if monitor.target < monitor.value(state.embedding):
        d = -d
    return d


def steer_to_event(graph: Graph, state0: FlexState, monitor: Monitor,
                   opts: FlexOptions | None = None) -> tuple[FlexState, list[TracePoint]]:
    """Steer along the manifold until the monitor reaches its target.

    At each step the direction is the steepest monitor change within the
    flex space; once a step brackets the target, the step length is solved
    by secant/bisection to |monitor - target| <= 1e-9.
    """
    from .refine import residuals
    from .verify import check_noncrossing

    opts = opts or FlexOptions()
    state = state0
    trace: list[TracePoint] = []

    def record(step_no: int, st: FlexState, at_event: bool = False) -> None:
        res = float(np.max(np.abs(residuals(graph, st.embedding))))
        every = opts.crossing_check_every
        crossing: bool | None = None
        if at_event or (every > 0 and step_no % every == 0):
            crossing = check_noncrossing(graph, st.embedding, 1e-7)[0]
        trace.append(TracePoint(step_no, st.arclength, monitor.value(st.embedding), res,
                                crossing))

    record(0, state)
    val = monitor.value(state.embedding)
    if abs(val - monitor.target) <= EVENT_TOL:
        return state, trace

    h = opts.step_init
    for step_no in range(1, opts.max_steps + 1):
        d = _steer_direction(graph, state, monitor, opts)
        # never step wildly past the target: the monitor changes at unit
        # rate at most along the normalized projected gradient
        err = abs(monitor.target - monitor.value(state.embedding))
        h_try = min(h, opts.step_max, max(4.0 * err, opts.step_min))
        try:
            candidate = flex_step(graph, state, d, h_try, opts)
        except StepTooLargeError:
            h = h_try / 2.0
            if h < opts.step_min:
                raise
            continue
        v0 = monitor.value(state.embedding)
        v1 = monitor.value(candidate.embedding)
        if (v0 - monitor.target) * (v1 - monitor.target) <= 0.0:
            event = _solve_event(graph, state, d, h_try, v0, v1, monitor, opts)
            record(step_no, event, at_event=True)
            return event, trace
        state = candidate
        record(step_no, state)
        h = min(h * 1.5, opts.step_max)
    raise BudgetError(f"no event within {opts.max_steps} steps")


def _solve_event(graph: Graph, state: FlexState, d: np.ndarray, h_hi: float,
                 v_lo: float, v_hi: float, monitor: Monitor,
                 opts: FlexOptions) -> FlexState:
    """Solve for the step length where the monitor hits the target.

    Secant iteration on h with bisection bracketing, re-stepping from the
    same base state each time.
    """
    lo, hi = 0.0, h_hi
    f_lo = v_lo - monitor.target
    f_hi = v_hi - monitor.target
    best = None
    for _ in range(80):
        if math.isnan(f_hi) or f_hi == f_lo:
            mid = 0.5 * (lo + hi)
        else:
            mid = lo - f_lo * (hi - lo) / (f_hi - f_lo)
            if not (lo < mid < hi):
                mid = 0.5 * (lo + hi)
        try:
            candidate = flex_step(graph, state, d, mid, opts)
        except StepTooLargeError:
            hi = mid
            f_hi = math.nan
            continue
        f_mid = monitor.value(candidate.embedding) - monitor.target
        best = candidate
        if abs(f_mid) <= EVENT_TOL:
            return candidate
        if math.isnan(f_hi) or f_lo * f_mid <= 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    if best is not None and abs(monitor.value(best.embedding) - monitor.target) <= 10 * EVENT_TOL:
        return best
    raise BudgetError("event refinement did not converge")


def trace_to_csv(trace: list[TracePoint]) -> str:
    """CSV rows (step, arclength, monitor value, max residual) for plotting."""
    lines = ["step,arclength,monitor,max_residual"]
    for t in trace:
        lines.append(f"{t.step},{t.arclength!r},{t.monitor!r},{t.max_residual!r}")
    return "\n".join(lines) + "\n"
