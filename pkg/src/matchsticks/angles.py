"""Angular fans around vertices, plus the reference eleven-angle fan around
the degree-11 hub of the largest (4,11) graph."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Embedding, Graph

# Angles (degrees, clockwise) between consecutive edges around the degree-11
# hub vertex, starting between the two marked edges. The corresponding graph
# has no published coordinates, so only the list itself is checkable.
DEGREE11_HUB_ANGLES = (
    32.362519660072210,
    40.49207000332465,
    25.382433534610843,
    34.890820876760450,
    32.21894760945070,
    34.514335947363630,
    29.108515978283318,
    36.31491131809427,
    29.550687898877964,
    35.065359484316880,
    30.09939768884507,
)


class AngleError(ValueError):
    pass


@dataclass
class AngleFan:
    center: int
    neighbor_order: list[int]  # clockwise, starting at greatest polar angle
    angles: list[float]  # degrees, one per consecutive neighbor pair

    @property
    def total(self) -> float:
        return sum(self.angles)


def angle_fan(graph: Graph, emb: Embedding, v: int) -> AngleFan:
    """Clockwise fan of angular gaps (degrees) between edges at v.

    The starting neighbor is the one at greatest polar angle; the gaps
    always sum to 360 for any vertex of degree >= 2.
    """
    neighbors = sorted(graph.adjacency()[v])
    if len(neighbors) < 2:
        raise AngleError(f"vertex {v} has degree {len(neighbors)} < 2")
    pos = emb.coords
    polar = [(math.atan2(pos[w, 1] - pos[v, 1], pos[w, 0] - pos[v, 0]), w) for w in neighbors]
    polar.sort(reverse=True)  # descending polar angle = clockwise sweep
    order = [w for _, w in polar]
    angles: list[float] = []
    for k in range(len(polar)):
        t0 = polar[k][0]
        t1 = polar[(k + 1) % len(polar)][0]
        angles.append(math.degrees((t0 - t1) % (2 * math.pi)))
    return AngleFan(center=v, neighbor_order=order, angles=angles)


@dataclass
class AngleListReport:
    count: int
    total: float
    deviation_from_360: float
    min_value: float
    max_value: float
    all_in_range: bool


def check_degree11_hub_angles() -> AngleListReport:
    """Consistency report over the built-in eleven-angle list."""
    total = math.fsum(DEGREE11_HUB_ANGLES)
    return AngleListReport(
        count=len(DEGREE11_HUB_ANGLES),
        total=total,
        deviation_from_360=abs(total - 360.0),
        min_value=min(DEGREE11_HUB_ANGLES),
        max_value=max(DEGREE11_HUB_ANGLES),
        all_in_range=all(25.0 < a < 41.0 for a in DEGREE11_HUB_ANGLES),
    )


def cyclic_equal(a: list[float], b: list[float], tol: float = 1e-9) -> bool:
    """Equality of angle lists up to cyclic shift of the starting neighbor."""
    if len(a) != len(b):
        return False
    n = len(a)
    for shift in range(n):
        if all(abs(a[(k + shift) % n] - b[k]) <= tol for k in range(n)):
            return True
    return False
