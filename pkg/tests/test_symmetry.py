from __future__ import annotations

import math

import numpy as np

from matchsticks.geometry import Embedding, Graph, Isometry, apply_isometry
from matchsticks.symmetry import detect_symmetries, is_automorphism


def test_triangle_is_d3(unit_triangle):
    g, emb = unit_triangle
    group = detect_symmetries(g, emb)
    assert group.rotation_order == 3
    assert group.mirror_count == 3
    assert group.classification == "D_3"


def test_square_is_d4(unit_square):
    g, emb = unit_square
    group = detect_symmetries(g, emb)
    assert (group.rotation_order, group.mirror_count) == (4, 4)


def test_asymmetric_path_is_c1():
    g = Graph(3, [(0, 1), (1, 2)])
    emb = Embedding([[0, 0], [1, 0], [1.3, 0.9]])
    group = detect_symmetries(g, emb)
    assert group.classification == "C_1"
    assert group.rotation_order == 1 and group.mirror_count == 0


def test_identity_is_automorphism(unit_triangle):
    g, emb = unit_triangle
    assert is_automorphism(g, emb, Isometry.identity(), 1e-9)


def test_rotation_12_on_fig5v1(figures, refined):
    fig = figures("fig05_v1")
    emb = refined("fig05_v1")
    center = emb.centroid()
    assert is_automorphism(fig.graph, emb, Isometry.rotation(2 * math.pi / 12, center), 1e-6)
    assert not is_automorphism(fig.graph, emb, Isometry.rotation(2 * math.pi / 5, center), 1e-6)


def test_detect_fig5(figures, refined):
    g1 = detect_symmetries(figures("fig05_v1").graph, refined("fig05_v1"))
    assert g1.rotation_order == 12
    g2 = detect_symmetries(figures("fig05_v2").graph, refined("fig05_v2"))
    assert g2.rotation_order == 6


def test_detect_fig4_order3(figures, refined):
    group = detect_symmetries(figures("fig04_57v").graph, refined("fig04_57v"))
    assert group.rotation_order == 3


def test_detect_fig20_two_perpendicular_mirrors(figures, refined):
    group = detect_symmetries(figures("fig20_4_6").graph, refined("fig20_4_6"))
    assert group.mirror_count >= 2
    angles = group.mirror_angles
    perpendicular = any(
        abs(((angles[i] - angles[j]) % math.pi) - math.pi / 2) < 1e-6
        for i in range(len(angles)) for j in range(i + 1, len(angles)))
    assert perpendicular


def test_detect_fig19_point_symmetry(figures, refined):
    group = detect_symmetries(figures("fig19_4_5").graph, refined("fig19_4_5"))
    assert group.rotation_order == 2
    assert group.mirror_count == 0
    assert group.classification == "C_2"


def test_detect_fig16v4_asymmetric(figures, refined):
    group = detect_symmetries(figures("fig16_v4").graph, refined("fig16_v4"))
    assert group.classification == "C_1"


def test_generators_compose_to_identity(figures, refined):
    group = detect_symmetries(figures("fig04_57v").graph, refined("fig04_57v"))
    rot = next(g for g in group.generators if g.kind == "rotation")
    emb = refined("fig04_57v")
    out = emb
    for _ in range(group.rotation_order):
        out = apply_isometry(rot, out)
    assert np.max(np.abs(out.coords - emb.coords)) < 1e-9


def test_mirror_count_is_zero_or_order(figures, refined):
    for name in ("fig02_harborth", "fig04_57v", "fig05_v1", "fig16_v1", "fig20_4_6"):
        group = detect_symmetries(figures(name).graph, refined(name))
        assert group.mirror_count in (0, group.rotation_order)


def test_detection_invariant_under_isometry(figures, refined):
    fig = figures("fig08_4_6")
    emb = refined("fig08_4_6")
    base = detect_symmetries(fig.graph, emb)
    iso = Isometry.rotation(0.83, (5.0, -2.0))
    moved = detect_symmetries(fig.graph, apply_isometry(iso, emb))
    assert (moved.rotation_order, moved.mirror_count) == (base.rotation_order, base.mirror_count)
