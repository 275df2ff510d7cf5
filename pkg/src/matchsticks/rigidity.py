"""Infinitesimal rigidity analysis plus the combinatorial (2,3) pebble game.

The rigidity matrix has one row per edge (i, j) holding v_i - v_j in i's
coordinate columns and the negation in j's (half the residual Jacobian).
Numerical rank comes from the SVD with a relative cutoff; internal degrees
of freedom for a connected framework on >= 3 vertices are
2|V| - 3 - rank. Flex vectors are the nullspace directions left after
projecting out the two translations and the instantaneous rotation about
the centroid, so they have a canonical form for tests and the UI.

The pebble game computes the generic (combinatorial) count for the same
graph: a maximal (2,3)-sparse edge subset, via 2 pebbles per vertex and 3
units of global slack. Special geometry can only add dependencies, so the
numerical rank never exceeds the generic rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Embedding, Graph


class RigidityError(ValueError):
    """Input unsuitable for rigidity analysis (disconnected, too small)."""


@dataclass
class RigidityReport:
    rank: int
    internal_dof: int
    singular_values: np.ndarray
    gap_ratio: float
    flex_basis: np.ndarray  # (internal_dof, 2|V|), orthonormal rows
    classification: str  # 'rigid' | 'flexible'
    ill_conditioned: bool = False
    unrefined_input: bool = False

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "internal_dof": self.internal_dof,
            "classification": self.classification,
            "gap_ratio": None if math.isinf(self.gap_ratio) else self.gap_ratio,
            "ill_conditioned": self.ill_conditioned,
            "unrefined_input": self.unrefined_input,
        }


@dataclass
class CriticalityScan:
    per_edge: list[tuple[tuple[int, int], int]]  # (edge, dof after removal)
    redundancy: int
    internal_dof: int

    @property
    def critical_edges(self) -> list[tuple[int, int]]:
        return [e for e, dof_after in self.per_edge if dof_after > self.internal_dof]


def rigidity_matrix(graph: Graph, emb: Embedding) -> np.ndarray:
    """|E| x 2|V| matrix of edge-direction rows."""
    pos = emb.coords
    R = np.zeros((graph.n_edges, 2 * graph.n_vertices))
    for k, (i, j) in enumerate(graph.edges):
        d = pos[i] - pos[j]
        R[k, 2 * i:2 * i + 2] = d
        R[k, 2 * j:2 * j + 2] = -d
    return R


def trivial_motions(emb: Embedding) -> np.ndarray:
    """Orthonormal basis of the trivial planar motions at this embedding:
    two translations and the instantaneous rotation about the centroid."""
    n = emb.n_vertices
    c = emb.centroid()
    T = np.zeros((3, 2 * n))
    T[0, 0::2] = 1.0
    T[1, 1::2] = 1.0
    T[2, 0::2] = -(emb.coords[:, 1] - c[1])
    T[2, 1::2] = emb.coords[:, 0] - c[0]
    # translations are orthogonal to the centered rotation already; normalize
    q, _ = np.linalg.qr(T.T)
    return q.T


def _numeric_rank(singular_values: np.ndarray, rank_tau: float) -> int:
    if len(singular_values) == 0 or singular_values[0] == 0.0:
        return 0
    return int(np.sum(singular_values > rank_tau * singular_values[0]))


def analyze(graph: Graph, emb: Embedding, rank_tau: float = 1e-7) -> RigidityReport:
    """SVD rank, internal dof and canonical flex basis."""
    if graph.n_vertices < 3:
        raise RigidityError("rigidity analysis needs at least 3 vertices")
    if not graph.is_connected():
        raise RigidityError("graph is disconnected; analyze components separately")
    R = rigidity_matrix(graph, emb)
    lengths = emb.edge_lengths(graph)
    unrefined = bool(np.max(np.abs(lengths - 1.0)) > 1e-6)

    _, s, Vt = np.linalg.svd(R, full_matrices=True)
    rank = _numeric_rank(s, rank_tau)
    gap = math.inf if rank >= len(s) else float(s[rank - 1] / s[rank]) if s[rank] > 0 else math.inf
    dof = 2 * graph.n_vertices - 3 - rank

    T = trivial_motions(emb)
    null_vecs = Vt[rank:]  # (2n - rank) x 2n, orthonormal
    flex = np.zeros((0, 2 * graph.n_vertices))
    if dof > 0 and len(null_vecs) > 0:
        proj = null_vecs - (null_vecs @ T.T) @ T
        # orthonormalize and keep the dof significant directions
        u, sv, vt = np.linalg.svd(proj, full_matrices=False)
        flex = vt[:dof][sv[:dof] > 0.5] if len(sv) >= dof else vt[sv > 0.5]

    return RigidityReport(
        rank=rank,
        internal_dof=dof,
        singular_values=s,
        gap_ratio=gap,
        flex_basis=flex,
        classification="rigid" if dof == 0 else "flexible",
        ill_conditioned=bool(gap < 1e2),
        unrefined_input=unrefined,
    )


def criticality_scan(graph: Graph, emb: Embedding, rank_tau: float = 1e-7) -> CriticalityScan:
    """Per-edge dof after removal, by full re-SVD (simple over clever).

    Removing one edge can only drop the rank by at most 1, so every entry
    is internal_dof or internal_dof + 1; that monotonicity is asserted.
    """
    base = analyze(graph, emb, rank_tau)
    results: list[tuple[tuple[int, int], int]] = []
    for k, edge in enumerate(graph.edges):
        sub = graph.without_edge(k)
        R = rigidity_matrix(sub, emb)
        s = np.linalg.svd(R, compute_uv=False)
        rank = _numeric_rank(s, rank_tau)
        if rank < base.rank - 1:
            raise RigidityError(f"rank dropped by more than 1 removing edge {edge}")
        dof_after = 2 * graph.n_vertices - 3 - rank
        results.append((edge, dof_after))
    return CriticalityScan(
        per_edge=results,
        redundancy=graph.n_edges - base.rank,
        internal_dof=base.internal_dof,
    )


@dataclass
class PebbleGameResult:
    generic_dof: int
    sparse_edges: list[tuple[int, int]] = field(repr=False)


def pebble_game_2_3(graph: Graph) -> PebbleGameResult:
    """Maximal (2,3)-sparse subset via the pebble game.

    Every vertex starts with 2 pebbles; an edge is accepted when 4 pebbles
    can be gathered on its endpoints (3 units of global slack). The
    accepted count is the generic rank; generic internal dof is
    2|V| - 3 - |accepted|.
    """
    if not graph.is_connected():
        raise RigidityError("pebble game expects a connected graph")
    n = graph.n_vertices
    pebbles = [2] * n
    out: list[set[int]] = [set() for _ in range(n)]

    def free_pebble(root: int, keep: set[int]) -> bool:
        # DFS along directed edges for a vertex with a spare pebble; on
        # success reverse the path and move the pebble to root
        seen = {root}
        path: dict[int, int] = {}
        stack = [root]
        while stack:
            v = stack.pop()
            for w in out[v]:
                if w in seen:
                    continue
                seen.add(w)
                path[w] = v
                if pebbles[w] > 0 and w not in keep:
                    pebbles[w] -= 1
                    pebbles[root] += 1
                    node = w
                    while node != root:
                        prev = path[node]
                        out[prev].discard(node)
                        out[node].add(prev)
                        node = prev
                    return True
                stack.append(w)
        return False

    accepted: list[tuple[int, int]] = []
    for (u, v) in graph.edges:
        while pebbles[u] + pebbles[v] < 4:
            if not (free_pebble(u, {u, v}) or free_pebble(v, {u, v})):
                break
        if pebbles[u] + pebbles[v] >= 4:
            accepted.append((u, v))
            pebbles[u] -= 1
            out[u].add(v)
    return PebbleGameResult(generic_dof=2 * n - 3 - len(accepted), sparse_edges=accepted)
