"""Registry of the bundled figure drawings and their expected properties.

Each entry records the facts published with the drawing: vertex/edge
counts, the allowed degree set, rigidity where asserted, and symmetry
where asserted. Entries load from the vendored TikZ bodies under
assets/figures/.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .geometry import ToleranceProfile
from .ingest import IngestedFigure, ingest_tikz


def asset_root() -> Path:
    env = os.environ.get("MATCHSTICKS_ASSETS")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "assets"


@dataclass(frozen=True)
class FigureSpec:
    name: str
    n_vertices: int
    n_edges: int
    allowed_degrees: tuple[int, ...]
    # (m, n) matchstick profile when the degree set is exactly two values
    profile: tuple[int, int] | None = None
    rigid: bool | None = None  # None = no published assertion
    rotation_order: int | None = None
    mirror_count: int | None = None  # None = no assertion
    patch: bool = False
    block: bool = False  # building block, not a full (m,n) graph
    markers: int = 0
    notes: str = ""

    @property
    def filename(self) -> str:
        return f"{self.name}.tex"


FIGURES: dict[str, FigureSpec] = {
    f.name: f
    for f in [
        FigureSpec("fig01a_kite", 12, 21, (2, 4), profile=(2, 4), rigid=True, block=True,
                   mirror_count=1, notes="kite: isostatic, 21 = 2*12 - 3"),
        FigureSpec("fig01b_double_kite", 22, 42, (2, 4), profile=(2, 4), rigid=True, block=True,
                   notes="double kite: one redundant edge"),
        FigureSpec("fig01c_reverse_double_kite", 22, 42, (2, 4), profile=(2, 4), rigid=True,
                   block=True, notes="reverse double kite: inner pair at unit distance"),
        FigureSpec("fig01d_triplet_kite", 22, 41, (2, 3, 4), rigid=True, block=True,
                   mirror_count=1, notes="triplet kite: isostatic, 41 = 2*22 - 3"),
        FigureSpec("fig02_harborth", 52, 104, (4,), profile=(4, 4), rigid=True,
                   notes="smallest known 4-regular"),
        FigureSpec("fig03_54v", 54, 108, (4,), profile=(4, 4), rigid=True, mirror_count=2,
                   notes="vertical and horizontal symmetry"),
        FigureSpec("fig04_57v", 57, 114, (4,), profile=(4, 4), rigid=True, rotation_order=3,
                   notes="three overlapping triplet kites"),
        FigureSpec("fig05_v1", 60, 120, (4,), profile=(4, 4), rigid=False, rotation_order=12),
        FigureSpec("fig05_v2", 60, 120, (4,), profile=(4, 4), rigid=False, rotation_order=6,
                   markers=2, notes="marked pair a, b at distance 2"),
        FigureSpec("fig06_triplet_kite_geometry", 22, 41, (2, 3, 4), rigid=True, block=True,
                   markers=2, notes="triplet kite again, with the defining pair marked"),
        FigureSpec("fig07_4_5", 57, 115, (4, 5), profile=(4, 5), rigid=True, mirror_count=1),
        FigureSpec("fig08_4_6", 57, 117, (4, 6), profile=(4, 6), rigid=True, rotation_order=3),
        FigureSpec("fig09_v1", 78, 159, (4, 7), profile=(4, 7), rigid=False, rotation_order=2),
        FigureSpec("fig09_v2", 78, 159, (4, 7), profile=(4, 7), rigid=False),
        FigureSpec("fig09_v3", 78, 159, (4, 7), profile=(4, 7), rigid=False),
        FigureSpec("fig09_v4", 78, 159, (4, 7), profile=(4, 7), rigid=False, rotation_order=1,
                   mirror_count=0, notes="asymmetric"),
        FigureSpec("fig10_4_8", 62, 126, (4, 8), profile=(4, 8), rigid=True, mirror_count=1),
        FigureSpec("fig16_v1", 60, 121, (4, 5), profile=(4, 5), rigid=True, rotation_order=2,
                   mirror_count=0, notes="point symmetry"),
        FigureSpec("fig16_v2", 60, 121, (4, 5), profile=(4, 5), rigid=True, rotation_order=2,
                   mirror_count=0, notes="point symmetry"),
        FigureSpec("fig16_v3", 60, 121, (4, 5), profile=(4, 5), rigid=True, rotation_order=2,
                   mirror_count=0, notes="point symmetry"),
        FigureSpec("fig16_v4", 60, 121, (4, 5), profile=(4, 5), rigid=True, rotation_order=1,
                   mirror_count=0, notes="asymmetric"),
        FigureSpec("fig17_v5", 60, 121, (4, 5), profile=(4, 5), rigid=True, rotation_order=1,
                   mirror_count=0, notes="asymmetric"),
        FigureSpec("fig17_v6", 60, 121, (4, 5), profile=(4, 5), rigid=True, rotation_order=1,
                   mirror_count=0, notes="asymmetric"),
        FigureSpec("fig17_v7", 60, 121, (4, 5), profile=(4, 5), rigid=True, mirror_count=1),
        FigureSpec("fig18_v1", 60, 121, (4, 6), profile=(4, 6), rigid=True, rotation_order=1,
                   mirror_count=0, notes="asymmetric"),
        FigureSpec("fig18_v2", 60, 121, (4, 6), profile=(4, 6), rigid=True, rotation_order=1,
                   mirror_count=0, notes="asymmetric"),
        FigureSpec("fig18_v3", 60, 121, (4, 6), profile=(4, 6), rigid=True, mirror_count=1),
        FigureSpec("fig18_v4", 60, 121, (4, 6), profile=(4, 6), rigid=True, mirror_count=1),
        FigureSpec("fig19_4_5", 62, 126, (4, 5), profile=(4, 5), rigid=True, rotation_order=2,
                   mirror_count=0, notes="point symmetry"),
        FigureSpec("fig20_4_6", 62, 126, (4, 6), profile=(4, 6), rigid=True, mirror_count=2,
                   notes="vertical and horizontal mirrors"),
        FigureSpec("fig21_4_6", 62, 126, (4, 6), profile=(4, 6), rigid=True, rotation_order=2,
                   mirror_count=0, notes="point symmetry"),
        FigureSpec("fig22a_4_12_patch", 121, 192, (4, 12), profile=(4, 12), patch=True,
                   notes="finite patch of an infinite (4,12) graph"),
    ]
}

# figures that are full (m, n)-regular drawings with caption counts
GRAPH_FIGURES = [f for f in FIGURES.values() if not f.block and not f.patch]
BLOCK_FIGURES = [f for f in FIGURES.values() if f.block]


def figure_path(name: str) -> Path:
    return asset_root() / "figures" / FIGURES[name].filename


def load_figure(name: str, tol: ToleranceProfile | None = None) -> IngestedFigure:
    """Ingest a bundled figure by registry name."""
    if name not in FIGURES:
        raise KeyError(f"unknown figure {name!r}; known: {sorted(FIGURES)}")
    text = figure_path(name).read_text()
    return ingest_tikz(text, tol)
