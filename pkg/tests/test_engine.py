"""FSYNC execution: views, collisions, runs, trace serialization."""

import pytest

from trigather import engine
from trigather.config import gathered_hexagon, translate
from trigather.engine import (
    CollisionKind,
    CollisionReport,
    OutcomeKind,
    View,
    observe,
    run,
    step,
    trace_from_lines,
    trace_to_lines,
)
from trigather.gather2 import decide_move
from trigather.grid import Direction
from trigather.range1 import RuleTable, table_to_decision

E, NE, NW, W, SW, SE = (
    Direction.E, Direction.NE, Direction.NW, Direction.W, Direction.SW, Direction.SE,
)

SE_LINE = frozenset((k, -k) for k in range(7))


def all_stay(view):
    return None


def table(moves):
    return table_to_decision(RuleTable.from_moves(moves))


def test_view_validation():
    with pytest.raises(ValueError):
        View(3, frozenset())
    with pytest.raises(ValueError):
        View(1, frozenset({(4, 0)}))  # a range-2 label in a range-1 view
    v = View(1, frozenset({(2, 0)}))
    assert v.is_robot((2, 0)) and v.is_empty((-2, 0))


def test_observe_single_neighbor():
    v = observe(frozenset({(0, 0), (1, 0)}), (0, 0), 1)
    assert v.occupied == {(2, 0)}


def test_observe_requires_membership():
    with pytest.raises(ValueError):
        observe(frozenset({(0, 0)}), (5, 5), 1)


def test_observe_gathered_center():
    hexa = gathered_hexagon()
    v = observe(hexa, (0, 0), 2)
    assert v.occupied == {(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)}


def test_observe_two_ring_layout():
    cfg = frozenset({(0, 0), (1, 0), (0, -1), (0, 1), (2, 0), (1, 1)})
    near = observe(cfg, (0, 0), 1)
    assert near.occupied == {(2, 0), (-1, -1), (1, 1)}
    far = observe(cfg, (0, 0), 2)
    assert far.occupied == {(2, 0), (-1, -1), (1, 1), (4, 0), (3, 1)}


def test_step_swap_collision():
    cfg = frozenset({(0, 0), (1, 0)})
    out = step(cfg, table({frozenset({E}): E, frozenset({W}): W}), 1)
    assert isinstance(out, CollisionReport)
    assert out.kind == CollisionKind.SWAP
    assert {c for c, _ in out.participants} == cfg


def test_step_move_onto_stationary():
    cfg = frozenset({(0, 0), (1, 0)})
    out = step(cfg, table({frozenset({E}): E}), 1)
    assert isinstance(out, CollisionReport)
    assert out.kind == CollisionKind.MOVE_ONTO_STATIONARY


def test_step_same_target():
    cfg = frozenset({(0, 0), (1, -1), (1, -2)})
    out = step(cfg, table({frozenset({SE}): SW, frozenset({NE}): NW}), 1)
    assert isinstance(out, CollisionReport)
    assert out.kind == CollisionKind.SAME_TARGET
    assert {c for c, _ in out.participants} == {(0, 0), (1, -2)}


def test_step_vacate_and_enter_is_legal():
    cfg = frozenset({(0, 0), (1, 0)})
    out = step(cfg, table({frozenset({E}): E, frozenset({W}): E}), 1)
    assert out == frozenset({(1, 0), (2, 0)})


def test_step_all_stay_is_identity():
    assert step(SE_LINE, all_stay, 1) == SE_LINE


def test_run_gathered_hexagon_zero_steps():
    tr = run(gathered_hexagon(), decide_move, 2)
    assert tr.outcome.kind == OutcomeKind.GATHERED
    assert tr.steps == ()


def test_run_all_stay_line_is_livelock_1():
    tr = run(SE_LINE, all_stay, 1)
    assert tr.outcome.kind == OutcomeKind.LIVELOCK
    assert tr.outcome.cycle_length == 1
    assert tr.steps == ()


def test_run_se_line_gathers_in_17_steps():
    # regression value frozen from the first verified run
    tr = run(SE_LINE, decide_move, 2)
    assert tr.outcome.kind == OutcomeKind.GATHERED
    assert len(tr.steps) == 17
    assert tr.min_connected


def test_gathered_outcome_implies_quiescent_gathered_final():
    from trigather.config import is_gathered

    tr = run(SE_LINE, decide_move, 2)
    assert is_gathered(tr.final)
    assert step(tr.final, decide_move, 2) == tr.final


def test_run_rejects_disconnected_start():
    with pytest.raises(ValueError):
        run(frozenset({(0, 0), (3, 3)}), all_stay, 1)


def test_run_step_limit():
    # cap the budget below the known 17-step gathering time
    tr = run(SE_LINE, decide_move, 2, max_steps=5)
    assert tr.outcome.kind == OutcomeKind.STEP_LIMIT
    assert len(tr.steps) == 5


def test_run_detects_translation_livelock():
    # the whole pair shifts northeast each step: canonical form repeats at once
    shift = table({frozenset({E}): NE, frozenset({W}): NE})
    tr = run(frozenset({(0, 0), (1, 0)}), shift, 1, max_steps=25)
    assert tr.outcome.kind == OutcomeKind.LIVELOCK
    assert tr.outcome.cycle_length == 1
    assert len(tr.steps) == 1


def test_run_determinism():
    a = run(SE_LINE, decide_move, 2)
    b = run(SE_LINE, decide_move, 2)
    assert a == b


def test_run_translation_equivariance():
    offset = (11, -4)
    a = run(SE_LINE, decide_move, 2)
    b = run(translate(SE_LINE, offset), decide_move, 2)
    assert a.outcome == b.outcome
    assert len(a.steps) == len(b.steps)
    for sa, sb in zip(a.steps, b.steps):
        assert translate(sa.robots, offset) == sb.robots
        assert sa.decisions == sb.decisions
        assert sa.connected == sb.connected


def test_run_disconnection_is_terminal():
    # lone mover walks away from its partner: disconnected after one step
    leave = table({frozenset({W}): E})
    tr = run(frozenset({(0, 0), (1, 0)}), leave, 1)
    assert tr.outcome.kind == OutcomeKind.DISCONNECTED
    assert not tr.steps[-1].connected
    assert not tr.min_connected


def test_livelock_cycle_resimulates():
    tr = run(SE_LINE, all_stay, 1)
    length = tr.outcome.cycle_length
    state = tr.final
    for _ in range(length):
        state = step(state, all_stay, 1)
    assert state == tr.final


def test_trace_lines_round_trip():
    tr = run(SE_LINE, decide_move, 2)
    lines = trace_to_lines(tr, "gather2-v1")
    back, algorithm = trace_from_lines(lines)
    assert algorithm == "gather2-v1"
    assert back == tr
    assert trace_to_lines(back, algorithm) == lines


def test_trace_lines_round_trip_collision():
    cfg = frozenset({(0, 0), (1, -1), (1, -2)})
    f = table({frozenset({SE}): SW, frozenset({NE}): NW})
    tr = run(cfg, f, 1)
    assert tr.outcome.kind == OutcomeKind.COLLISION
    lines = trace_to_lines(tr, "range1:test")
    back, _ = trace_from_lines(lines)
    assert back == tr
