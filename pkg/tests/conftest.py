from __future__ import annotations

import math

import numpy as np
import pytest

from matchsticks.figures import load_figure
from matchsticks.geometry import Embedding, Graph
from matchsticks.refine import refine

_FIG_CACHE: dict = {}
_REFINED_CACHE: dict = {}


@pytest.fixture(scope="session")
def figures():
    """Lazy shared cache of ingested figures (expensive to re-parse per test)."""

    def get(name: str):
        if name not in _FIG_CACHE:
            _FIG_CACHE[name] = load_figure(name)
        return _FIG_CACHE[name]

    return get


@pytest.fixture(scope="session")
def refined(figures):
    """Lazy shared cache of refined embeddings keyed by figure name."""

    def get(name: str):
        if name not in _REFINED_CACHE:
            fig = figures(name)
            emb, report = refine(fig.graph, fig.embedding)
            assert report.converged, f"{name} failed to refine"
            _REFINED_CACHE[name] = emb
        return _REFINED_CACHE[name]

    return get


@pytest.fixture
def unit_triangle():
    g = Graph(3, [(0, 1), (1, 2), (2, 0)])
    emb = Embedding([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])
    return g, emb


@pytest.fixture
def unit_square():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    emb = Embedding([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    return g, emb


def match_point_sets(ref: np.ndarray, got: np.ndarray, tol: float) -> np.ndarray:
    """Bijective nearest-neighbor matching between two point sets.

    Returns got_index per ref row; fails the test if any match exceeds tol
    or the matching is not one-to-one. Robust against lexicographic sort
    flips when distinct points share a coordinate to within rounding.
    """
    from scipy.spatial import cKDTree

    assert len(ref) == len(got)
    dist, idx = cKDTree(got).query(ref, k=1)
    assert float(np.max(dist)) < tol
    assert len(set(int(i) for i in idx)) == len(ref)
    return idx.astype(int)


def random_connected_graph(rng: np.random.Generator, n_max: int = 30):
    """Random connected framework for property tests: spanning tree plus a
    few chords, vertices well separated."""
    n = int(rng.integers(4, n_max + 1))
    edges = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges.add((u, v))
    extra = int(rng.integers(0, n))
    for _ in range(extra):
        u, v = int(rng.integers(0, n)), int(rng.integers(0, n))
        if u != v:
            edges.add((min(u, v), max(u, v)))
    # rejection-sample coordinates to keep vertices apart
    while True:
        pos = rng.uniform(-3.0, 3.0, size=(n, 2))
        d2 = ((pos[:, None] - pos[None, :]) ** 2).sum(-1)
        np.fill_diagonal(d2, np.inf)
        if d2.min() > 1e-2:
            break
    return Graph(n, sorted(edges)), Embedding(pos)
