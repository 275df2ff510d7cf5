from __future__ import annotations

import math

import numpy as np
import pytest

from matchsticks.flex import (
    FlexOptions,
    FlexState,
    Monitor,
    NoFlexError,
    StallError,
    flex_basis,
    flex_step,
    monitor_value,
    steer_to_event,
    trace_to_csv,
)
from matchsticks.geometry import Embedding
from matchsticks.refine import RefineOptions, refine


def square_state(unit_square):
    g, emb = unit_square
    return g, FlexState.at(emb)


def test_flex_step_rhombus_family(unit_square):
    g, st = square_state(unit_square)
    B = flex_basis(g, st.embedding)
    assert B.shape == (1, 8)
    st2 = flex_step(g, st, B[0], 0.01)
    lengths = st2.embedding.edge_lengths(g)
    assert np.max(np.abs(lengths - 1.0)) < 1e-12
    # still a rhombus: diagonals are d = 2 sin(t/2) and 2 cos(t/2)
    d1 = st2.embedding.pair_distance(0, 2)
    d2 = st2.embedding.pair_distance(1, 3)
    assert abs(d1 * d1 + d2 * d2 - 4.0) < 1e-10  # parallelogram law for rhombi


def test_flex_step_zero_is_identity(unit_square):
    g, st = square_state(unit_square)
    B = flex_basis(g, st.embedding)
    assert flex_step(g, st, B[0], 0.0) is st


def test_flex_step_rigid_raises(unit_triangle):
    g, emb = unit_triangle
    with pytest.raises(NoFlexError):
        flex_step(g, FlexState.at(emb), np.ones(6) / math.sqrt(6.0), 0.01)


def test_flex_step_requires_tangent(unit_square):
    g, st = square_state(unit_square)
    bogus = np.zeros(8)
    bogus[0] = 1.0  # pure translation of one vertex: not a flex
    with pytest.raises(ValueError):
        flex_step(g, st, bogus, 0.01)


def test_flex_step_reversibility(unit_square):
    g, st = square_state(unit_square)
    B = flex_basis(g, st.embedding)
    for h in (1e-3, 1e-4):
        s1 = flex_step(g, st, B[0], h)
        B1 = flex_basis(g, s1.embedding)
        d1 = B1[0] if float(B1[0] @ B[0]) > 0 else -B1[0]
        s2 = flex_step(g, s1, d1, -h)
        assert np.max(np.abs(s2.embedding.coords - st.embedding.coords)) <= 1e-8


def test_flex_step_reversibility_fig9(figures, refined):
    g = figures("fig09_v1").graph
    st = FlexState.at(refined("fig09_v1"))
    B = flex_basis(g, st.embedding)
    h = 1e-3
    s1 = flex_step(g, st, B[0], h)
    B1 = flex_basis(g, s1.embedding)
    d1 = B1[0] if float(B1[0] @ B[0]) > 0 else -B1[0]
    s2 = flex_step(g, s1, d1, -h)
    assert np.max(np.abs(s2.embedding.coords - st.embedding.coords)) <= 1e-8


def test_steer_square_to_sqrt3_matches_rhombus_oracle(unit_square):
    g, st = square_state(unit_square)
    target = math.sqrt(3.0)
    event, trace = steer_to_event(g, st, Monitor(0, 2, target))
    d = event.embedding.pair_distance(0, 2)
    assert abs(d - target) <= 1e-9
    # closed form: diagonal 2 sin(t/2) = sqrt(3) at the 120/60-degree rhombus,
    # so the other diagonal is 2 cos(t/2) = 1
    assert abs(event.embedding.pair_distance(1, 3) - 1.0) <= 1e-8
    assert np.max(np.abs(event.embedding.edge_lengths(g) - 1.0)) <= 1e-10
    assert len(trace) >= 2
    # constraints hold after every accepted step, not only at the event
    assert all(t.max_residual <= 1e-10 for t in trace)


def test_steer_event_independent_of_step_init(unit_square):
    g, st = square_state(unit_square)
    target = math.sqrt(3.0)
    e1, _ = steer_to_event(g, st, Monitor(0, 2, target), FlexOptions(step_init=1e-2))
    e2, _ = steer_to_event(g, st, Monitor(0, 2, target), FlexOptions(step_init=1e-3))
    assert np.max(np.abs(e1.embedding.coords - e2.embedding.coords)) <= 1e-8


def test_steer_fig5_event_independent_of_step_init(figures, refined):
    g = figures("fig05_v1").graph
    st = FlexState.at(refined("fig05_v1"))
    mon = Monitor(0, 53, 2.0)
    e1, _ = steer_to_event(g, st, mon, FlexOptions(step_init=1e-2))
    e2, _ = steer_to_event(g, st, mon, FlexOptions(step_init=3e-3))
    assert np.max(np.abs(e1.embedding.coords - e2.embedding.coords)) <= 1e-8


def test_steer_already_at_target(unit_square):
    g, st = square_state(unit_square)
    d0 = st.embedding.pair_distance(0, 2)
    event, trace = steer_to_event(g, st, Monitor(0, 2, d0))
    assert event is st
    assert len(trace) == 1


def test_steer_monotone_monitor(unit_square):
    g, st = square_state(unit_square)
    _, trace = steer_to_event(g, st, Monitor(0, 2, math.sqrt(3.0)))
    values = [t.monitor for t in trace]
    flips = sum(1 for a, b, c in zip(values, values[1:], values[2:])
                if (b - a) * (c - b) < 0)
    assert flips <= 3


def test_steer_stall_on_fixed_monitor(unit_square):
    g, st = square_state(unit_square)
    # distance between edge endpoints is pinned at 1 by the constraint
    with pytest.raises(StallError):
        steer_to_event(g, st, Monitor(0, 1, 1.5))


def test_steer_rigid_raises(unit_triangle):
    g, emb = unit_triangle
    with pytest.raises(NoFlexError):
        steer_to_event(g, FlexState.at(emb), Monitor(0, 1, 1.5))


def test_monitor_basics():
    emb = Embedding([[0, 0], [2, 0]])
    mon = Monitor(0, 1, 2.0)
    assert monitor_value(emb, mon) == 2.0
    with pytest.raises(ValueError):
        Monitor(1, 1, 2.0)


def test_fig5v2_markers_raw_distance(figures):
    fig = figures("fig05_v2")
    a, b = fig.names["a"], fig.names["b"]
    assert abs(fig.embedding.pair_distance(a, b) - 2.0) < 2e-3


def test_fig5v2_augmented_refine_hits_two(figures):
    fig = figures("fig05_v2")
    a, b = fig.names["a"], fig.names["b"]
    emb, report = refine(fig.graph, fig.embedding,
                         RefineOptions(pair_targets=((a, b, 2.0),)))
    assert report.converged
    assert abs(emb.pair_distance(a, b) - 2.0) <= 1e-12


def test_steer_fig5_v1_to_distance_two(figures, refined):
    """The marked-pair analog in the untransformed drawing reaches 2, and
    the event state is the order-6 transformed configuration."""
    from matchsticks.symmetry import detect_symmetries
    from matchsticks.verify import verify_matchstick

    g = figures("fig05_v1").graph
    emb = refined("fig05_v1")
    # vertex 0 ends a straight two-edge house bottom; 53 is the adjacent
    # house's vertex one unit edge past the other end (starts at sqrt(5))
    mon = Monitor(0, 53, 2.0)
    assert abs(monitor_value(emb, mon) - math.sqrt(5.0)) < 1e-6
    event, trace = steer_to_event(g, FlexState.at(emb), mon)
    assert abs(event.embedding.pair_distance(0, 53) - 2.0) <= 1e-9
    assert np.max(np.abs(event.embedding.edge_lengths(g) - 1.0)) <= 1e-10
    assert all(t.max_residual <= 1e-10 for t in trace)
    assert verify_matchstick(g, event.embedding, 4, 4, eps=1e-9).overall
    assert detect_symmetries(g, event.embedding).rotation_order == 6


def test_crossing_status_recorded(unit_square):
    g, st = square_state(unit_square)
    target = math.sqrt(3.0)
    # default: checked only at the event
    _, trace = steer_to_event(g, st, Monitor(0, 2, target))
    assert trace[-1].crossing_ok is True
    assert all(t.crossing_ok is None for t in trace[1:-1])
    # every step when asked; recorded, never enforced
    _, trace2 = steer_to_event(g, st, Monitor(0, 2, target),
                               FlexOptions(crossing_check_every=1))
    assert all(t.crossing_ok is True for t in trace2)


def test_trace_csv(unit_square):
    g, st = square_state(unit_square)
    _, trace = steer_to_event(g, st, Monitor(0, 2, math.sqrt(3.0)))
    csv = trace_to_csv(trace)
    lines = csv.strip().splitlines()
    assert lines[0] == "step,arclength,monitor,max_residual"
    assert len(lines) == len(trace) + 1
    first = lines[1].split(",")
    assert int(first[0]) == 0
    assert float(first[2]) == pytest.approx(math.sqrt(2.0))
