"""Figure-data ingestion: TikZ subset parsing and graph building.

The accepted TikZ subset is draw-path polylines, fill-circle point markers
and coordinate-label declarations. Raw figure-unit coordinates are snapped
into a graph + embedding and rescaled so the median edge length is 1.
"""

from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .geometry import Embedding, Graph, ToleranceProfile, canonical_edge

XY = tuple[float, float]

_COORD = re.compile(r"^\s*(-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)\s*,\s*(-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)\s*$")
_GROUP = re.compile(r"\(([^()]*)\)")
_OPTIONS = re.compile(r"\[[^\]]*\]")
_LABEL_NAME = re.compile(r"label\s*=\s*[^:\]]*:\s*\$?([A-Za-z_][A-Za-z_0-9]*)\$?")


class ParseError(ValueError):
    """Malformed figure text. Carries the 1-based source line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class IngestError(ValueError):
    """Segment data that cannot be snapped into a consistent graph."""


@dataclass
class SegmentList:
    """Raw parse result in figure units."""

    segments: list[tuple[XY, XY]] = field(default_factory=list)
    markers: list[XY] = field(default_factory=list)
    labels: dict[str, XY] = field(default_factory=dict)


@dataclass
class IngestReport:
    n_segments: int
    n_vertices: int
    n_edges: int
    scale: float
    max_snap_displacement: float
    duplicate_segments_dropped: int
    segments_split: int


def _line_of(text: str, offset: int) -> int:
    return text.count("\n", 0, offset) + 1


def _parse_coord(group: str, text: str, offset: int) -> XY:
    m = _COORD.match(group)
    if not m:
        raise ParseError(f"malformed coordinate tuple ({group})", _line_of(text, offset))
    return float(m.group(1)), float(m.group(2))


def parse_tikz(text: str) -> SegmentList:
    """Extract segments, point markers and named labels from TikZ source.

    One segment is emitted per '--'-joined coordinate pair inside a draw
    path; a coordinate gap without '--' starts a new subpath. Scale
    directives are ignored (coordinates are returned raw); any other
    construct is skipped without error.
    """
    out = SegmentList()
    # statements end at ';'; the option block of the tikzpicture itself has
    # no ';' and is skipped because it contains no \draw/\fill/\coordinate
    for stmt_match in re.finditer(r"\\(draw|fill|coordinate)\b[^;]*;", text):
        stmt = stmt_match.group(0)
        base = stmt_match.start()
        kind = stmt_match.group(1)
        if kind == "fill":
            body = _OPTIONS.sub(lambda m: " " * len(m.group(0)), stmt)
            g = _GROUP.search(body)
            if g is not None:
                out.markers.append(_parse_coord(g.group(1), text, base + g.start()))
            continue
        if kind == "coordinate":
            name_m = _LABEL_NAME.search(stmt)
            body = _OPTIONS.sub(lambda m: " " * len(m.group(0)), stmt)
            groups = list(_GROUP.finditer(body))
            if not groups:
                continue
            at = groups[-1]
            pos = _parse_coord(at.group(1), text, base + at.start())
            name = name_m.group(1) if name_m else groups[0].group(1).strip()
            out.labels[name] = pos
            continue
        # draw path: blank out the style options, then walk coordinate groups
        body = _OPTIONS.sub(lambda m: " " * len(m.group(0)), stmt)
        prev_end: int | None = None
        prev_pt: XY | None = None
        for g in _GROUP.finditer(body):
            pt = _parse_coord(g.group(1), text, base + g.start())
            if prev_pt is not None and "--" in body[prev_end:g.start()]:
                out.segments.append((prev_pt, pt))
            prev_end, prev_pt = g.end(), pt
    return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _snap_points(points: np.ndarray, snap_tol: float) -> tuple[np.ndarray, np.ndarray, float]:
    """Cluster points within snap_tol using a uniform grid + union-find.

    Returns (cluster index per point, cluster centroids, max displacement).
    """
    n = len(points)
    uf = _UnionFind(n)
    cell = snap_tol
    grid: dict[tuple[int, int], list[int]] = defaultdict(list)
    keys = [(int(math.floor(x / cell)), int(math.floor(y / cell))) for x, y in points]
    for i, key in enumerate(keys):
        grid[key].append(i)
    tol2 = snap_tol * snap_tol
    for i, (cx, cy) in enumerate(keys):
        xi, yi = points[i]
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for j in grid.get((cx + dx, cy + dy), ()):
                    if j <= i:
                        continue
                    xj, yj = points[j]
                    if (xi - xj) ** 2 + (yi - yj) ** 2 <= tol2:
                        uf.union(i, j)
    roots: dict[int, int] = {}
    labels = np.empty(n, dtype=int)
    for i in range(n):
        r = uf.find(i)
        if r not in roots:
            roots[r] = len(roots)
        labels[i] = roots[r]
    k = len(roots)
    centroids = np.zeros((k, 2))
    counts = np.zeros(k, dtype=int)
    for i, lab in enumerate(labels):
        centroids[lab] += points[i]
        counts[lab] += 1
    centroids /= counts[:, None]
    disp = float(np.max(np.hypot(*(points - centroids[labels]).T))) if n else 0.0
    return labels, centroids, disp


def _split_at_interior_vertices(u: int, w: int, pos: np.ndarray, snap_tol: float) -> list[int]:
    """Vertex chain from u to w, inserting vertices lying on the segment.

    Hand-drawn figures render chains of collinear unit edges as one long
    segment; any vertex within snap_tol of the interior splits it.
    """
    pu, pw = pos[u], pos[w]
    d = pw - pu
    L2 = float(d @ d)
    t = (pos - pu) @ d / L2
    proj = pu + t[:, None] * d
    d2 = ((pos - proj) ** 2).sum(axis=1)
    mask = (t > 0.0) & (t < 1.0) & (d2 <= snap_tol * snap_tol)
    mask[u] = mask[w] = False
    hits = sorted((float(t[v]), int(v)) for v in np.flatnonzero(mask))
    return [u] + [v for _, v in hits] + [w]


def build_graph(segs: SegmentList, tol: ToleranceProfile | None = None
                ) -> tuple[Graph, Embedding, list[int], IngestReport, dict[str, int]]:
    """Snap segment endpoints into a graph and raw-unit embedding.

    Endpoints within snap_tol merge to one vertex placed at the cluster
    centroid; duplicate edges collapse; segments passing through a vertex
    split there. Markers resolve to the vertex within snap_tol; labels name
    the nearest marker (labels are drawn offset from the vertex they tag).
    """
    tol = tol or ToleranceProfile()
    if not segs.segments:
        raise IngestError("no segments to build a graph from")
    for k, (a, b) in enumerate(segs.segments):
        if math.dist(a, b) <= tol.snap_tol:
            raise IngestError(f"segment {k} is shorter than snap_tol")

    pts = np.array([p for seg in segs.segments for p in seg], dtype=float)
    labels, pos, max_disp = _snap_points(pts, tol.snap_tol)

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    duplicates = 0
    splits = 0
    for k in range(len(segs.segments)):
        u, w = int(labels[2 * k]), int(labels[2 * k + 1])
        if u == w:
            raise IngestError(f"segment {k} collapsed to a single vertex while snapping")
        chain = _split_at_interior_vertices(u, w, pos, tol.snap_tol)
        if len(chain) > 2:
            splits += 1
        for a, b in zip(chain, chain[1:]):
            e = canonical_edge(a, b)
            if e in seen:
                duplicates += 1
            else:
                seen.add(e)
                edges.append(e)

    graph = Graph(len(pos), edges)
    emb = Embedding(pos)

    # provisional unit scale for the separation check below
    lengths = emb.edge_lengths(graph)
    scale = float(np.median(lengths))
    min_sep = tol.vertex_sep * scale
    d2 = ((pos[:, None, :] - pos[None, :, :]) ** 2).sum(axis=2)
    np.fill_diagonal(d2, np.inf)
    if float(d2.min()) < min_sep * min_sep:
        v, w = np.unravel_index(int(d2.argmin()), d2.shape)
        raise IngestError(
            f"vertices {v} and {w} are closer than vertex_sep but were not merged")

    marker_ids: list[int] = []
    for mx, my in segs.markers:
        dists = np.hypot(pos[:, 0] - mx, pos[:, 1] - my)
        v = int(np.argmin(dists))
        if dists[v] > tol.snap_tol:
            raise IngestError(f"marker at ({mx}, {my}) is farther than snap_tol from every vertex")
        marker_ids.append(v)

    names: dict[str, int] = {}
    for name, (lx, ly) in segs.labels.items():
        candidates = marker_ids if marker_ids else range(len(pos))
        v = min(candidates, key=lambda c: math.dist(pos[c], (lx, ly)))
        names[name] = int(v)

    report = IngestReport(
        n_segments=len(segs.segments),
        n_vertices=graph.n_vertices,
        n_edges=graph.n_edges,
        scale=scale,
        max_snap_displacement=max_disp,
        duplicate_segments_dropped=duplicates,
        segments_split=splits,
    )
    return graph, emb, marker_ids, report, names


def normalize_scale(graph: Graph, emb_raw: Embedding) -> tuple[Embedding, float]:
    """Divide all coordinates by the median edge length.

    The median is robust to an accidental long segment in hand-drawn data;
    after normalization the median edge length is exactly 1.
    """
    if graph.n_edges < 1:
        raise IngestError("cannot normalize a graph with no edges")
    scale = float(np.median(emb_raw.edge_lengths(graph)))
    if not math.isfinite(scale) or scale <= 0:
        raise IngestError(f"degenerate scale {scale}")
    return Embedding(emb_raw.coords / scale), scale


@dataclass
class IngestedFigure:
    """Full ingest result: unit-scale embedding plus bookkeeping."""

    graph: Graph
    embedding: Embedding
    marker_ids: list[int]
    names: dict[str, int]
    report: IngestReport


def ingest_tikz(text: str, tol: ToleranceProfile | None = None) -> IngestedFigure:
    """parse_tikz + build_graph + normalize_scale in one call."""
    segs = parse_tikz(text)
    graph, emb_raw, marker_ids, report, names = build_graph(segs, tol)
    emb, scale = normalize_scale(graph, emb_raw)
    report.scale = scale
    return IngestedFigure(graph, emb, marker_ids, names, report)
