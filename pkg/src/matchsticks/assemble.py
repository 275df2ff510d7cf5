"""Composition of graphs from rigid building blocks.

Blocks are placed by isometry and merged by snapping coincident vertices
(clasp constructions of the kite family). A post-merge refine is always
recommended: placements from drawings are only figure-accurate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Embedding, Graph, Isometry, ToleranceProfile, canonical_edge
from .ingest import _snap_points


class AssemblyError(ValueError):
    pass


@dataclass(frozen=True)
class Placement:
    graph: Graph
    embedding: Embedding
    iso: Isometry = Isometry.identity()


def merge(placements: list[Placement], snap_tol: float = 1e-3,
          vertex_sep: float | None = None) -> tuple[Graph, Embedding, list[list[int]]]:
    """Union of transformed blocks with coincident vertices identified.

    Vertices within snap_tol merge to their centroid; duplicate edges
    collapse. Merging two adjacent vertices of one block would create a
    self-loop and is an error, as is any post-merge separation below
    vertex_sep. Returns the merged graph, embedding and one local->merged
    index map per placement.
    """
    if not placements:
        raise AssemblyError("need at least one placement")
    vertex_sep = ToleranceProfile().vertex_sep if vertex_sep is None else vertex_sep

    all_pts = []
    offsets = [0]
    for pi, p in enumerate(placements):
        # blocks are matchstick drawings: all edges unit length (coarsely)
        lengths = p.embedding.edge_lengths(p.graph)
        worst = float(np.max(np.abs(lengths - 1.0))) if p.graph.n_edges else 0.0
        if worst > 1e-2:
            raise AssemblyError(
                f"placement {pi}: block is not a unit-length drawing (|len-1| up to {worst:.3f})")
        all_pts.append(p.iso.apply(p.embedding.coords))
        offsets.append(offsets[-1] + p.graph.n_vertices)
    pts = np.vstack(all_pts)
    labels, centroids, _ = _snap_points(pts, snap_tol)

    merge_map: list[list[int]] = []
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for pi, p in enumerate(placements):
        base = offsets[pi]
        local = [int(labels[base + v]) for v in range(p.graph.n_vertices)]
        merge_map.append(local)
        for i, j in p.graph.edges:
            a, b = local[i], local[j]
            if a == b:
                raise AssemblyError(
                    f"placement {pi}: adjacent vertices {i}, {j} merged (self-loop)")
            e = canonical_edge(a, b)
            if e not in seen:
                seen.add(e)
                edges.append(e)

    graph = Graph(len(centroids), edges)
    emb = Embedding(centroids)
    for v in range(len(centroids)):
        for w in range(v + 1, len(centroids)):
            if math.dist(centroids[v], centroids[w]) <= vertex_sep:
                raise AssemblyError(f"merged vertices {v}, {w} violate vertex separation")
    return graph, emb, merge_map


def add_unit_edge(graph: Graph, emb: Embedding, a: int, b: int,
                  eps: float = 1e-3) -> tuple[Graph, Embedding]:
    """Append an edge between two vertices already at unit distance.

    The caller refines with an augmented pair constraint first if the pair
    is not yet within eps of 1; re-running the verifier afterwards is the
    caller's duty.
    """
    if graph.has_edge(a, b):
        raise AssemblyError(f"edge ({a}, {b}) already exists")
    d = emb.pair_distance(a, b)
    if abs(d - 1.0) > eps:
        raise AssemblyError(f"vertices {a}, {b} are at distance {d:.6f}, not 1 within {eps}")
    return graph.with_edge(a, b), emb


def find_block_placement(block_graph: Graph, block_emb: Embedding,
                         host_graph: Graph, host_emb: Embedding,
                         tol: float = 1e-3) -> Isometry:
    """Isometry placing a block onto a congruent sub-drawing of a host.

    Tries every alignment of the block's first edge onto each host edge
    (both orientations, both chiralities) and accepts the first that lands
    every block vertex on some host vertex. Used to recover placements for
    merge experiments; a refine should follow as with any placement.
    """
    bi, bj = block_graph.edges[0]
    p = block_emb.coords[bi]
    q = block_emb.coords[bj]
    bvec = q - p
    blen = float(np.hypot(*bvec))
    hpos = host_emb.coords
    for (hi, hj) in host_graph.edges:
        for (a, b) in ((hi, hj), (hj, hi)):
            hvec = hpos[b] - hpos[a]
            hlen = float(np.hypot(*hvec))
            if abs(hlen - blen) > tol:
                continue
            angle = math.atan2(hvec[1], hvec[0]) - math.atan2(bvec[1], bvec[0])
            for mirrored in (False, True):
                if mirrored:
                    # reflect across the block edge direction first
                    axis = math.atan2(bvec[1], bvec[0])
                    pre = Isometry.reflection(p, axis)
                else:
                    pre = Isometry.identity()
                rot = Isometry.rotation(angle, p)
                iso = Isometry.translation(*(hpos[a] - p)).compose(rot).compose(pre)
                mapped = iso.apply(block_emb.coords)
                ok = True
                for v in range(len(mapped)):
                    if np.min(np.hypot(*(hpos - mapped[v]).T)) > tol:
                        ok = False
                        break
                if ok:
                    return iso
    raise AssemblyError("no placement of the block matches the host drawing")
