"""Nonlinear least-squares refinement onto the unit-length constraint manifold.

Residuals are squared edge lengths minus 1: polynomial in the coordinates,
smooth at coincident points, with an exact and cheap Jacobian. A pinned
vertex plus a pinned edge direction (3 scalar constraint rows) remove the
trivial planar motions during the solve. Optional pair-distance targets can
be appended for augmented refinement (e.g. forcing a marked pair to
distance 2).

Levenberg-Marquardt damping schedule: multiply by 10 on a rejected step,
divide by 10 on an accepted one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse

from .geometry import Embedding, Graph

PairTarget = tuple[int, int, float]


class GaugeError(ValueError):
    """Gauge cannot fix the frame (bad pin, degenerate gauge edge)."""


class CorrectorError(RuntimeError):
    """Manifold projection diverged; the caller should shrink its step."""


@dataclass
class RefineOptions:
    max_iterations: int = 100
    residual_target: float = 1e-13
    damping_init: float = 1e-4
    # (pinned vertex p, oriented edge (p, q)); default: vertex 0 and its
    # lowest-indexed neighbor
    gauge: tuple[int, tuple[int, int]] | None = None
    pair_targets: tuple[PairTarget, ...] = ()

    def __post_init__(self):
        if self.gauge is not None:
            p, (ep, _eq) = self.gauge
            if p != ep:
                raise GaugeError("pinned vertex must be the first endpoint of the gauge edge")


@dataclass
class RefineReport:
    converged: bool
    iterations: int
    final_max_abs_residual: float
    displacement_max: float


def residuals(graph: Graph, emb: Embedding,
              pair_targets: tuple[PairTarget, ...] = ()) -> np.ndarray:
    """Per edge (i, j): squared distance minus 1, in edge-list order.

    Pair targets append squared distance minus target squared.
    """
    if graph.n_edges < 1:
        raise ValueError("residuals need at least one edge")
    pos = emb.coords
    d = pos[[i for i, _ in graph.edges]] - pos[[j for _, j in graph.edges]]
    r = d[:, 0] ** 2 + d[:, 1] ** 2 - 1.0
    if pair_targets:
        extra = [np.sum((pos[a] - pos[b]) ** 2) - t * t for a, b, t in pair_targets]
        r = np.concatenate([r, extra])
    return r


def jacobian(graph: Graph, emb: Embedding,
             pair_targets: tuple[PairTarget, ...] = ()) -> scipy.sparse.csr_matrix:
    """Exact gradient of residuals: row (i, j) holds 2(v_i - v_j) in i's
    columns and the negation in j's; at most 4 nonzeros per row."""
    pos = emb.coords
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    pairs = list(graph.edges) + [(a, b) for a, b, _ in pair_targets]
    for k, (i, j) in enumerate(pairs):
        diff = 2.0 * (pos[i] - pos[j])
        rows += [k, k, k, k]
        cols += [2 * i, 2 * i + 1, 2 * j, 2 * j + 1]
        vals += [diff[0], diff[1], -diff[0], -diff[1]]
    m = len(pairs)
    return scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(m, 2 * graph.n_vertices))


def _default_gauge(graph: Graph) -> tuple[int, tuple[int, int]]:
    neighbors = [w for (i, j) in graph.edges for w in ((j,) if i == 0 else (i,) if j == 0 else ())]
    if not neighbors:
        raise GaugeError("vertex 0 has no neighbor to pin a direction against")
    return 0, (0, min(neighbors))


def _gauge_rows(graph: Graph, x0: np.ndarray,
                gauge: tuple[int, tuple[int, int]]) -> tuple[np.ndarray, np.ndarray]:
    """Constant constraint rows pinning 2 coordinates and 1 direction.

    Returns (A, b) with the gauge residual A @ x - b (zero at x0).
    """
    p, (ep, eq) = gauge
    if p != ep:
        raise GaugeError("pinned vertex must be the first endpoint of the gauge edge")
    u = x0[2 * eq:2 * eq + 2] - x0[2 * ep:2 * ep + 2]
    norm = float(np.hypot(*u))
    if norm < 1e-12:
        raise GaugeError("gauge edge has near-zero length")
    n_hat = np.array([-u[1], u[0]]) / norm
    A = np.zeros((3, len(x0)))
    A[0, 2 * p] = 1.0
    A[1, 2 * p + 1] = 1.0
    A[2, 2 * ep] = -n_hat[0]
    A[2, 2 * ep + 1] = -n_hat[1]
    A[2, 2 * eq] = n_hat[0]
    A[2, 2 * eq + 1] = n_hat[1]
    return A, A @ x0


def refine(graph: Graph, emb: Embedding,
           opts: RefineOptions | None = None) -> tuple[Embedding, RefineReport]:
    """Levenberg-Marquardt drive of the embedding onto the constraint manifold.

    Converged means max |squared-length residual| <= residual_target, which
    puts every edge length within ~residual_target/2 of 1. On
    non-convergence the best embedding found is still returned.
    """
    opts = opts or RefineOptions()
    if graph.n_edges < 1:
        raise GaugeError("refinement needs at least one edge")
    gauge = opts.gauge or _default_gauge(graph)
    x0 = emb.flat()
    A, b = _gauge_rows(graph, x0, gauge)

    def full_residual(x: np.ndarray) -> np.ndarray:
        e = Embedding.from_flat(x)
        return np.concatenate([residuals(graph, e, opts.pair_targets), A @ x - b])

    def metric(r_full: np.ndarray) -> float:
        return float(np.max(np.abs(r_full[: graph.n_edges + len(opts.pair_targets)])))

    x = x0.copy()
    r = full_residual(x)
    lam = opts.damping_init
    iterations = 0
    best = metric(r)
    while best > opts.residual_target and iterations < opts.max_iterations:
        e = Embedding.from_flat(x)
        J = jacobian(graph, e, opts.pair_targets).toarray()
        J = np.vstack([J, A])
        g = J.T @ r
        JtJ = J.T @ J
        accepted = False
        for _ in range(25):
            try:
                delta = np.linalg.solve(JtJ + lam * np.eye(len(x)), -g)
            except np.linalg.LinAlgError as exc:
                raise GaugeError("singular normal equations") from exc
            x_new = x + delta
            r_new = full_residual(x_new)
            if float(r_new @ r_new) < float(r @ r):
                x, r = x_new, r_new
                lam = max(lam / 10.0, 1e-15)
                accepted = True
                break
            lam *= 10.0
        iterations += 1
        best = metric(r)
        if not accepted:
            break

    final = Embedding.from_flat(x)
    disp = float(np.max(np.hypot(*(final.coords - emb.coords).T)))
    report = RefineReport(
        converged=best <= opts.residual_target,
        iterations=iterations,
        final_max_abs_residual=best,
        displacement_max=disp,
    )
    return final, report


def project_to_manifold(graph: Graph, x_start: np.ndarray,
                        pair_targets: tuple[PairTarget, ...] = (),
                        tol: float = 1e-12, max_iter: int = 60) -> tuple[np.ndarray, float]:
    """Minimum-displacement Newton correction onto the constraint manifold.

    Each step is the minimum-norm least-squares solution, so the correction
    stays orthogonal to flexes and trivial motions. Raises CorrectorError
    if the iteration fails to reach tol (caller halves its step size).
    """
    x = np.asarray(x_start, dtype=float).copy()
    prev = math.inf
    for _ in range(max_iter):
        e = Embedding.from_flat(x)
        r = residuals(graph, e, pair_targets)
        m = float(np.max(np.abs(r)))
        if m <= tol:
            return x, m
        if m > 10.0 * prev or not math.isfinite(m):
            raise CorrectorError(f"projection diverging (residual {m:.3e})")
        prev = min(prev, m)
        J = jacobian(graph, e, pair_targets).toarray()
        delta, *_ = np.linalg.lstsq(J, -r, rcond=None)
        x = x + delta
    raise CorrectorError(f"projection did not reach {tol:.1e} in {max_iter} iterations")
