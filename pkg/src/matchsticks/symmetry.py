"""Isometry-group detection for embedded graphs.

Any symmetry of a finite point set fixes its centroid, so candidate
rotations and mirror axes all pass through the centroid: rotations must map
a vertex of extremal radius to another vertex at equal radius, mirrors must
swap (or fix) such a pair. Each candidate is accepted only if it maps the
vertex set onto itself within sym_tol and induces a graph automorphism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .geometry import Embedding, Graph, Isometry, canonical_edge


@dataclass
class SymmetryGroup:
    rotation_order: int
    mirror_count: int
    classification: str  # 'C_k' or 'D_k'
    generators: list[Isometry]
    center: tuple[float, float]
    mirror_angles: list[float]

    def to_dict(self) -> dict:
        return {
            "rotation_order": self.rotation_order,
            "mirror_count": self.mirror_count,
            "classification": self.classification,
            "center": list(self.center),
            "mirror_angles": self.mirror_angles,
        }


def is_automorphism(graph: Graph, emb: Embedding, iso: Isometry, sym_tol: float) -> bool:
    """True iff iso maps every vertex within sym_tol of a distinct vertex and
    the induced bijection maps the edge set onto itself."""
    pos = emb.coords
    mapped = iso.apply(pos)
    tree = cKDTree(pos)
    dist, idx = tree.query(mapped, k=1)
    if np.max(dist) > sym_tol:
        return False
    if len(set(int(i) for i in idx)) != len(pos):
        return False
    perm = idx.astype(int)
    edges = graph.edge_set()
    for i, j in graph.edges:
        if canonical_edge(int(perm[i]), int(perm[j])) not in edges:
            return False
    return True


def _extremal_shell(pos: np.ndarray, center: np.ndarray, sym_tol: float) -> list[int]:
    radii = np.hypot(pos[:, 0] - center[0], pos[:, 1] - center[1])
    r_max = float(np.max(radii))
    return [int(i) for i in np.flatnonzero(radii >= r_max - max(sym_tol, 1e-12))]


def detect_symmetries(graph: Graph, emb: Embedding, sym_tol: float = 1e-6) -> SymmetryGroup:
    """Maximal cyclic or dihedral symmetry group of the drawing.

    The trivial group C_1 is a valid answer. Meant for refined embeddings;
    figure-precision jitter can exceed a tight sym_tol.
    """
    pos = emb.coords
    center = emb.centroid()
    shell = _extremal_shell(pos, center, sym_tol)
    v0 = shell[0]
    theta0 = math.atan2(pos[v0, 1] - center[1], pos[v0, 0] - center[0])

    rotation_angles: list[float] = []
    for w in shell:
        theta = math.atan2(pos[w, 1] - center[1], pos[w, 0] - center[0])
        alpha = (theta - theta0) % (2 * math.pi)
        if any(_angle_close(alpha, a) for a in rotation_angles):
            continue
        if is_automorphism(graph, emb, Isometry.rotation(alpha, center), sym_tol):
            rotation_angles.append(alpha)
    k = len(rotation_angles)

    mirror_angles: list[float] = []
    for i in shell:
        ti = math.atan2(pos[i, 1] - center[1], pos[i, 0] - center[0])
        for j in shell:
            if j < i:
                continue
            tj = math.atan2(pos[j, 1] - center[1], pos[j, 0] - center[0])
            axis = ((ti + tj) / 2.0) % math.pi
            if any(_angle_close(axis, a, period=math.pi) for a in mirror_angles):
                continue
            if is_automorphism(graph, emb, Isometry.reflection(center, axis), sym_tol):
                mirror_angles.append(axis)
    mirror_angles.sort()

    generators: list[Isometry] = []
    if k > 1:
        generators.append(Isometry.rotation(2 * math.pi / k, center))
    if mirror_angles:
        generators.append(Isometry.reflection(center, mirror_angles[0]))
    return SymmetryGroup(
        rotation_order=k,
        mirror_count=len(mirror_angles),
        classification=(f"D_{k}" if mirror_angles else f"C_{k}"),
        generators=generators,
        center=(float(center[0]), float(center[1])),
        mirror_angles=mirror_angles,
    )


def _angle_close(a: float, b: float, period: float = 2 * math.pi, tol: float = 1e-3) -> bool:
    # dedup tolerance: far above matching jitter (sym_tol / radius), far
    # below any genuine angular separation between distinct candidates
    d = (a - b) % period
    return min(d, period - d) < tol
