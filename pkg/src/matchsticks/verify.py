"""Matchstick predicates: unit lengths, non-crossing, degree profile,
connectivity and vertex separation, bundled into a certificate.

A drawing passes iff every edge has length 1 within tolerance, non-adjacent
edges keep positive clearance, edges sharing a vertex meet only there, no
vertex sits in the interior of a non-incident edge, all degrees lie in
{m, n}, the graph is connected and vertices stay separated.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .geometry import DegreeProfile, Embedding, Graph, ToleranceProfile

Violation = tuple[str, int, int]


class DegenerateGraphError(ValueError):
    """Graph too small for the requested check."""


@dataclass
class VerificationCertificate:
    unit_ok: bool
    max_abs_length_deviation: float
    crossing_ok: bool
    violating_edge_pairs: list[Violation]
    degrees_ok: bool
    degree_profile: DegreeProfile
    connected: bool
    separation_ok: bool
    offending_pairs: list[tuple[int, int]]

    @property
    def overall(self) -> bool:
        return (self.unit_ok and self.crossing_ok and self.degrees_ok
                and self.connected and self.separation_ok)

    def to_dict(self) -> dict:
        return {
            "unit_ok": self.unit_ok,
            "max_abs_length_deviation": self.max_abs_length_deviation,
            "crossing_ok": self.crossing_ok,
            "violating_edge_pairs": [list(v) for v in self.violating_edge_pairs],
            "degrees_ok": self.degrees_ok,
            "degree_counts": {str(k): v for k, v in sorted(self.degree_profile.counts.items())},
            "profile": [self.degree_profile.m, self.degree_profile.n],
            "connected": self.connected,
            "separation_ok": self.separation_ok,
            "offending_pairs": [list(p) for p in self.offending_pairs],
            "overall": self.overall,
        }


@dataclass
class PatchReport:
    """Verification of a finite piece of an infinite graph: vertices of
    degree below m count as boundary and are exempt from the profile."""

    unit_ok: bool
    max_abs_length_deviation: float
    crossing_ok: bool
    violating_edge_pairs: list[Violation]
    interior_degree_counts: dict[int, int]
    boundary_count: int
    interior_ok: bool
    connected: bool
    separation_ok: bool

    @property
    def overall(self) -> bool:
        return (self.unit_ok and self.crossing_ok and self.interior_ok
                and self.connected and self.separation_ok)

    def to_dict(self) -> dict:
        return {
            "unit_ok": self.unit_ok,
            "max_abs_length_deviation": self.max_abs_length_deviation,
            "crossing_ok": self.crossing_ok,
            "violating_edge_pairs": [list(v) for v in self.violating_edge_pairs],
            "interior_degree_counts": {str(k): v for k, v in sorted(self.interior_degree_counts.items())},
            "boundary_count": self.boundary_count,
            "interior_ok": self.interior_ok,
            "connected": self.connected,
            "separation_ok": self.separation_ok,
            "overall": self.overall,
        }


def check_unit_lengths(graph: Graph, emb: Embedding, eps: float
                       ) -> tuple[bool, float, np.ndarray]:
    """True iff every edge length is within eps of 1."""
    if graph.n_edges < 1:
        raise DegenerateGraphError("unit-length check needs at least one edge")
    deviations = emb.edge_lengths(graph) - 1.0
    max_dev = float(np.max(np.abs(deviations)))
    return max_dev <= eps, max_dev, deviations


def _segment_distance(p1: np.ndarray, q1: np.ndarray, p2: np.ndarray, q2: np.ndarray) -> float:
    """Minimum distance between two closed segments."""
    if _segments_properly_cross(p1, q1, p2, q2):
        return 0.0
    return min(
        _point_segment_distance(p1, p2, q2),
        _point_segment_distance(q1, p2, q2),
        _point_segment_distance(p2, p1, q1),
        _point_segment_distance(q2, p1, q1),
    )


def _point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    d = b - a
    L2 = float(d @ d)
    if L2 == 0.0:
        return float(np.hypot(*(p - a)))
    t = float((p - a) @ d) / L2
    t = min(1.0, max(0.0, t))
    proj = a + t * d
    return float(np.hypot(*(p - proj)))


def _segments_properly_cross(p1, q1, p2, q2) -> bool:
    def orient(a, b, c) -> float:
        return float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    o1 = orient(p1, q1, p2)
    o2 = orient(p1, q1, q2)
    o3 = orient(p2, q2, p1)
    o4 = orient(p2, q2, q1)
    return o1 * o2 < 0 and o3 * o4 < 0


def _edge_cells(a: np.ndarray, b: np.ndarray, cell: float):
    x0, y0 = np.minimum(a, b)
    x1, y1 = np.maximum(a, b)
    for cx in range(int(math.floor(x0 / cell)), int(math.floor(x1 / cell)) + 1):
        for cy in range(int(math.floor(y0 / cell)), int(math.floor(y1 / cell)) + 1):
            yield cx, cy


def check_noncrossing(graph: Graph, emb: Embedding, delta_cross: float
                      ) -> tuple[bool, list[Violation]]:
    """Pairwise edge clearance via a uniform spatial grid (cell = 1 unit).

    Violations: 'cross' (non-adjacent edges closer than delta_cross),
    'overlap' (edges sharing a vertex overlap collinearly beyond it) and
    'vertex_on_edge' (vertex within delta_cross of a non-incident edge's
    interior). The result is independent of edge order.
    """
    pos = emb.coords
    cell = 1.0
    grid: dict[tuple[int, int], list[int]] = defaultdict(list)
    for k, (i, j) in enumerate(graph.edges):
        for key in _edge_cells(pos[i], pos[j], cell):
            grid[key].append(k)

    violations: list[Violation] = []
    seen_pairs: set[tuple[int, int]] = set()
    for bucket in grid.values():
        for ai in range(len(bucket)):
            for bi in range(ai + 1, len(bucket)):
                k1, k2 = bucket[ai], bucket[bi]
                if k1 > k2:
                    k1, k2 = k2, k1
                if (k1, k2) in seen_pairs:
                    continue
                seen_pairs.add((k1, k2))
                i1, j1 = graph.edges[k1]
                i2, j2 = graph.edges[k2]
                shared = {i1, j1} & {i2, j2}
                if not shared:
                    if _segment_distance(pos[i1], pos[j1], pos[i2], pos[j2]) <= delta_cross:
                        violations.append(("cross", k1, k2))
                elif len(shared) == 1:
                    v = shared.pop()
                    a = i1 + j1 - v
                    b = i2 + j2 - v
                    da = pos[a] - pos[v]
                    db = pos[b] - pos[v]
                    if float(da @ db) > 0.0:
                        # same general direction: collinear overlap iff the
                        # shorter far endpoint touches the other segment
                        if (_point_segment_distance(pos[a], pos[v], pos[b]) <= delta_cross
                                or _point_segment_distance(pos[b], pos[v], pos[a]) <= delta_cross):
                            violations.append(("overlap", k1, k2))
                # two shared vertices cannot happen (duplicate edges rejected)

    # vertices against non-incident edge interiors
    vgrid: dict[tuple[int, int], list[int]] = defaultdict(list)
    for v, (x, y) in enumerate(pos):
        vgrid[(int(math.floor(x / cell)), int(math.floor(y / cell)))].append(v)
    for k, (i, j) in enumerate(graph.edges):
        cells = set(_edge_cells(pos[i], pos[j], cell))
        cells |= {(cx + dx, cy + dy) for cx, cy in cells for dx in (-1, 0, 1) for dy in (-1, 0, 1)}
        checked: set[int] = set()
        for key in cells:
            for v in vgrid.get(key, ()):
                if v in (i, j) or v in checked:
                    continue
                checked.add(v)
                if _point_segment_distance(pos[v], pos[i], pos[j]) <= delta_cross:
                    violations.append(("vertex_on_edge", v, k))

    violations.sort()
    return not violations, violations


def degree_profile(graph: Graph, m: int, n: int) -> tuple[bool, DegreeProfile]:
    """Subset semantics: every degree must lie in {m, n}."""
    if m > n:
        raise DegenerateGraphError("degree profile requires m <= n")
    counts: dict[int, int] = {}
    for d in graph.degrees():
        counts[int(d)] = counts.get(int(d), 0) + 1
    profile = DegreeProfile(m, n, counts)
    return profile.ok, profile


def expected_high_degree_count(n_vertices: int, n_edges: int, m: int, n: int) -> int:
    """Handshake count of degree-n vertices in an (m, n)-regular graph."""
    if n <= m:
        raise DegenerateGraphError("needs n > m")
    num = 2 * n_edges - m * n_vertices
    if num < 0 or num % (n - m) != 0:
        raise DegenerateGraphError(
            f"counts (|V|={n_vertices}, |E|={n_edges}) are inconsistent with ({m},{n})-regularity")
    return num // (n - m)


def _separation(graph: Graph, emb: Embedding, vertex_sep: float) -> tuple[bool, list[tuple[int, int]]]:
    pos = emb.coords
    cell = max(vertex_sep, 1e-6)
    grid: dict[tuple[int, int], list[int]] = defaultdict(list)
    offenders: list[tuple[int, int]] = []
    for v, (x, y) in enumerate(pos):
        grid[(int(math.floor(x / cell)), int(math.floor(y / cell)))].append(v)
    for v, (x, y) in enumerate(pos):
        cx, cy = int(math.floor(x / cell)), int(math.floor(y / cell))
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for w in grid.get((cx + dx, cy + dy), ()):
                    if w > v and math.dist(pos[v], pos[w]) <= vertex_sep:
                        offenders.append((v, w))
    return not offenders, sorted(offenders)


def verify_matchstick(graph: Graph, emb: Embedding, m: int, n: int,
                      tol: ToleranceProfile | None = None,
                      eps: float | None = None) -> VerificationCertificate:
    """Run all matchstick predicates and return the conjunction certificate.

    eps overrides the unit-length slack (defaults to tol.eps_raw).
    """
    tol = tol or ToleranceProfile()
    if graph.n_vertices < 2:
        raise DegenerateGraphError("verification needs at least 2 vertices")
    eps = tol.eps_raw if eps is None else eps
    unit_ok, max_dev, _ = check_unit_lengths(graph, emb, eps)
    crossing_ok, cross_violations = check_noncrossing(graph, emb, tol.delta_cross)
    degrees_ok, profile = degree_profile(graph, m, n)
    connected = graph.is_connected()
    separation_ok, offenders = _separation(graph, emb, tol.vertex_sep)
    return VerificationCertificate(
        unit_ok=unit_ok,
        max_abs_length_deviation=max_dev,
        crossing_ok=crossing_ok,
        violating_edge_pairs=cross_violations,
        degrees_ok=degrees_ok,
        degree_profile=profile,
        connected=connected,
        separation_ok=separation_ok,
        offending_pairs=offenders,
    )


def verify_patch(graph: Graph, emb: Embedding, m: int, n: int,
                 tol: ToleranceProfile | None = None,
                 eps: float | None = None) -> PatchReport:
    """verify_matchstick with the degree check relaxed for boundary vertices."""
    tol = tol or ToleranceProfile()
    if graph.n_vertices < 2:
        raise DegenerateGraphError("verification needs at least 2 vertices")
    eps = tol.eps_raw if eps is None else eps
    unit_ok, max_dev, _ = check_unit_lengths(graph, emb, eps)
    crossing_ok, cross_violations = check_noncrossing(graph, emb, tol.delta_cross)
    degrees = graph.degrees()
    interior_counts: dict[int, int] = {}
    boundary = 0
    for d in degrees:
        if d < m:
            boundary += 1
        else:
            interior_counts[int(d)] = interior_counts.get(int(d), 0) + 1
    interior_ok = set(interior_counts) <= {m, n}
    connected = graph.is_connected()
    separation_ok, _ = _separation(graph, emb, tol.vertex_sep)
    return PatchReport(
        unit_ok=unit_ok,
        max_abs_length_deviation=max_dev,
        crossing_ok=crossing_ok,
        violating_edge_pairs=cross_violations,
        interior_degree_counts=interior_counts,
        boundary_count=boundary,
        interior_ok=interior_ok,
        connected=connected,
        separation_ok=separation_ok,
    )
