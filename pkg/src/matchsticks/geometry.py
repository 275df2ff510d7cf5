"""Core value types: points, graphs, embeddings, isometries, tolerances.

Everything here is an immutable value after construction; all operations
are pure functions, so concurrent use on shared inputs is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


class GeometryError(ValueError):
    """Invalid geometric input (bad graph, bad embedding, bad isometry)."""


@dataclass(frozen=True)
class Point2:
    """Point in the plane, unit-edge scale (1.0 = one matchstick)."""

    x: float
    y: float

    def __iter__(self):
        yield self.x
        yield self.y

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


def distance(p: Point2 | Sequence[float], q: Point2 | Sequence[float]) -> float:
    """Euclidean distance between two points."""
    px, py = p
    qx, qy = q
    return math.hypot(px - qx, py - qy)


def canonical_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Combinatorial structure: vertex count plus unordered edge pairs.

    Rejects self-loops, duplicate edges and out-of-range indices at
    construction time.
    """

    n_vertices: int
    edges: tuple[Edge, ...]

    def __init__(self, n_vertices: int, edges: Iterable[Sequence[int]]):
        canon: list[Edge] = []
        seen: set[Edge] = set()
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise GeometryError(f"self-loop at vertex {i}")
            if not (0 <= i < n_vertices and 0 <= j < n_vertices):
                raise GeometryError(f"edge ({i}, {j}) out of range for {n_vertices} vertices")
            ce = canonical_edge(i, j)
            if ce in seen:
                raise GeometryError(f"duplicate edge {ce}")
            seen.add(ce)
            canon.append(ce)
        object.__setattr__(self, "n_vertices", int(n_vertices))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_vertices, dtype=int)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return canonical_edge(i, j) in self.edge_set()

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        adj = self.adjacency()
        seen = [False] * self.n_vertices
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == self.n_vertices

    def without_edge(self, index: int) -> "Graph":
        edges = list(self.edges)
        del edges[index]
        return Graph(self.n_vertices, edges)

    def with_edge(self, i: int, j: int) -> "Graph":
        return Graph(self.n_vertices, list(self.edges) + [(i, j)])


@dataclass(frozen=True)
class Embedding:
    """Per-vertex 2-D coordinates. Coordinates must be finite."""

    coords: np.ndarray

    def __init__(self, coords: np.ndarray | Sequence[Sequence[float]]):
        arr = np.asarray(coords, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise GeometryError(f"embedding must be (n, 2), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise GeometryError("embedding contains non-finite coordinates")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coords", arr)

    @property
    def n_vertices(self) -> int:
        return self.coords.shape[0]

    def point(self, v: int) -> Point2:
        return Point2(float(self.coords[v, 0]), float(self.coords[v, 1]))

    def flat(self) -> np.ndarray:
        """Coordinates as a writable 2n vector (x0, y0, x1, y1, ...)."""
        return self.coords.reshape(-1).copy()

    @staticmethod
    def from_flat(x: np.ndarray) -> "Embedding":
        return Embedding(np.asarray(x, dtype=float).reshape(-1, 2))

    def edge_lengths(self, graph: Graph) -> np.ndarray:
        d = self.coords[[i for i, _ in graph.edges]] - self.coords[[j for _, j in graph.edges]]
        return np.hypot(d[:, 0], d[:, 1])

    def pair_distance(self, a: int, b: int) -> float:
        return float(np.hypot(*(self.coords[a] - self.coords[b])))

    def centroid(self) -> np.ndarray:
        return self.coords.mean(axis=0)


@dataclass(frozen=True)
class Isometry:
    """Plane isometry stored as an orthogonal matrix plus offset.

    kind is 'identity', 'rotation' (includes pure translations) or
    'reflection' (det < 0).
    """

    matrix: np.ndarray
    offset: np.ndarray

    def __init__(self, matrix: np.ndarray, offset: np.ndarray):
        m = np.asarray(matrix, dtype=float).reshape(2, 2)
        o = np.asarray(offset, dtype=float).reshape(2)
        gram = m.T @ m
        if not np.allclose(gram, np.eye(2), atol=1e-12):
            raise GeometryError("isometry matrix is not orthogonal")
        m = m.copy()
        o = o.copy()
        m.flags.writeable = False
        o.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "offset", o)

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(np.eye(2), np.zeros(2))

    @staticmethod
    def translation(dx: float, dy: float) -> "Isometry":
        return Isometry(np.eye(2), np.array([dx, dy]))

    @staticmethod
    def rotation(angle: float, center: Point2 | Sequence[float] = (0.0, 0.0)) -> "Isometry":
        c, s = math.cos(angle), math.sin(angle)
        m = np.array([[c, -s], [s, c]])
        ctr = np.asarray(tuple(center), dtype=float)
        return Isometry(m, ctr - m @ ctr)

    @staticmethod
    def reflection(point: Point2 | Sequence[float], axis_angle: float) -> "Isometry":
        """Reflection across the line through `point` at direction `axis_angle`."""
        c, s = math.cos(2 * axis_angle), math.sin(2 * axis_angle)
        m = np.array([[c, s], [s, -c]])
        p = np.asarray(tuple(point), dtype=float)
        return Isometry(m, p - m @ p)

    @property
    def kind(self) -> str:
        if np.linalg.det(self.matrix) < 0:
            return "reflection"
        if np.allclose(self.matrix, np.eye(2), atol=1e-15) and np.allclose(self.offset, 0, atol=1e-15):
            return "identity"
        return "rotation"

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.matrix.T + self.offset

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        return Isometry(self.matrix @ other.matrix, self.matrix @ other.offset + self.offset)

    def inverse(self) -> "Isometry":
        inv = self.matrix.T
        return Isometry(inv, -inv @ self.offset)


def apply_isometry(iso: Isometry, emb: Embedding) -> Embedding:
    """Map every point of the embedding; pairwise distances are preserved."""
    return Embedding(iso.apply(emb.coords))


@dataclass(frozen=True)
class ToleranceProfile:
    """All numerical tolerances used by verification, refinement and analysis.

    eps_raw: unit-length slack before refinement
    eps_refined: unit-length slack after refinement
    delta_cross: minimum clearance between non-adjacent segments
    vertex_sep: minimum inter-vertex distance
    snap_tol: ingest vertex-merge radius (figure units)
    rank_tau: relative singular-value cutoff for numerical rank
    sym_tol: symmetry matching radius
    """

    eps_raw: float = 1e-3
    eps_refined: float = 1e-9
    delta_cross: float = 1e-7
    vertex_sep: float = 1e-4
    snap_tol: float = 0.05
    rank_tau: float = 1e-7
    sym_tol: float = 1e-6

    def __post_init__(self):
        for name in ("eps_raw", "eps_refined", "delta_cross", "vertex_sep", "snap_tol", "rank_tau", "sym_tol"):
            if not getattr(self, name) > 0:
                raise GeometryError(f"tolerance {name} must be strictly positive")
        if not self.eps_refined < self.eps_raw:
            raise GeometryError("eps_refined must be smaller than eps_raw")


@dataclass(frozen=True)
class DegreeProfile:
    """Observed degree histogram against an (m, n) target."""

    m: int
    n: int
    counts: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.m > self.n:
            raise GeometryError("degree profile requires m <= n")

    @property
    def ok(self) -> bool:
        return set(self.counts) <= {self.m, self.n}
