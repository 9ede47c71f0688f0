"""Fully synchronous Look-Compute-Move execution.

Every cycle, each robot observes the occupancy of the nodes within its
visibility range (a :class:`View`, in label space), a pure decision
function maps the view to a move or a stay, and all moves are applied
simultaneously.  Three simultaneous-move events are collisions and
terminate the run with a report instead of a successor state:

- ``SWAP``: two robots traverse one edge in opposite directions,
- ``MOVE_ONTO_STATIONARY``: a mover's target is held by a robot that stays,
- ``SAME_TARGET``: two or more movers end on one node.

A robot entering a node that its occupant is simultaneously vacating is
legal.  Runs are deterministic, so a revisit of an earlier configuration
(up to translation) proves an infinite loop and is reported as a livelock;
an all-stay cycle that is not gathered is a livelock of length 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable

from .config import Configuration, canonicalize, is_connected, is_gathered
from .grid import (
    Direction,
    Label,
    LABEL_OFFSET,
    RANGE1_LABELS,
    RANGE2_LABELS,
    TriCoord,
    neighbor,
)

# A decision: a Direction, or None for "stay at the current node".
Move = Direction | None

_VIEW_DOMAIN: dict[int, frozenset] = {
    1: frozenset(RANGE1_LABELS),
    2: frozenset(RANGE1_LABELS + RANGE2_LABELS),
}

DEFAULT_MAX_STEPS = 500


@dataclass(frozen=True, slots=True)
class View:
    """Occupancy of the labels within a robot's visibility range.

    ``occupied`` holds exactly the labels (never (0, 0), the robot itself)
    that carry a robot.  Robots are transparent: occupancy of a label is
    independent of other labels on the same axis.
    """

    visibility: int
    occupied: frozenset

    def __post_init__(self) -> None:
        domain = _VIEW_DOMAIN.get(self.visibility)
        if domain is None:
            raise ValueError(f"visibility range must be 1 or 2, got {self.visibility}")
        if not self.occupied <= domain:
            bad = sorted(self.occupied - domain)
            raise ValueError(f"labels {bad} are outside visibility range {self.visibility}")

    def is_robot(self, label: Label) -> bool:
        return label in self.occupied

    def is_empty(self, label: Label) -> bool:
        return label not in self.occupied


DecisionFunction = Callable[[View], Move]


class CollisionKind:
    SWAP = "swap"
    MOVE_ONTO_STATIONARY = "move-onto-stationary"
    SAME_TARGET = "same-target"


@dataclass(frozen=True, slots=True)
class CollisionReport:
    """The robots (coordinate, move) involved in a forbidden event."""

    kind: str
    participants: tuple[tuple[TriCoord, Move], ...]


class OutcomeKind:
    GATHERED = "gathered"
    COLLISION = "collision"
    DISCONNECTED = "disconnected"
    LIVELOCK = "livelock"
    STEP_LIMIT = "step-limit"


@dataclass(frozen=True, slots=True)
class Outcome:
    kind: str
    collision: CollisionReport | None = None
    cycle_length: int | None = None

    def token(self) -> str:
        """Compact machine-parsable form, e.g. ``livelock:1``."""
        if self.kind == OutcomeKind.COLLISION:
            return f"collision:{self.collision.kind}"
        if self.kind == OutcomeKind.LIVELOCK:
            return f"livelock:{self.cycle_length}"
        return self.kind


@dataclass(frozen=True, slots=True)
class TraceStep:
    decisions: tuple[Move, ...]  # aligned with sorted() of the pre-step robots
    robots: Configuration  # configuration after the step
    connected: bool


@dataclass(frozen=True, slots=True)
class Trace:
    initial: Configuration
    visibility: int
    steps: tuple[TraceStep, ...]
    outcome: Outcome

    @property
    def final(self) -> Configuration:
        return self.steps[-1].robots if self.steps else self.initial

    @property
    def min_connected(self) -> bool:
        """True iff connectivity held after every recorded step."""
        return all(s.connected for s in self.steps)


def observe(cfg: Configuration, robot: TriCoord, visibility: int) -> View:
    """The view of ``robot`` in ``cfg``: occupied labels within range."""
    if robot not in cfg:
        raise ValueError(f"robot {robot!r} is not part of the configuration")
    if visibility not in _VIEW_DOMAIN:
        raise ValueError(f"visibility range must be 1 or 2, got {visibility}")
    ra, rb = robot
    labels = RANGE1_LABELS if visibility == 1 else RANGE1_LABELS + RANGE2_LABELS
    occupied = frozenset(
        lbl for lbl in labels if (ra + LABEL_OFFSET[lbl][0], rb + LABEL_OFFSET[lbl][1]) in cfg
    )
    return View(visibility, occupied)


def compute_decisions(
    cfg: Configuration, decide: DecisionFunction, visibility: int
) -> dict[TriCoord, Move]:
    """All robots' simultaneous Look+Compute results for one cycle."""
    return {r: decide(observe(cfg, r, visibility)) for r in cfg}


def apply_decisions(
    cfg: Configuration, decisions: dict[TriCoord, Move]
) -> Configuration | CollisionReport:
    """Execute one synchronous Move phase.

    Collision modes are checked before any state change, in the order
    swap, move-onto-stationary, same-target, scanning robots in canonical
    (sorted) order so the first report is deterministic.
    """
    order = sorted(cfg)
    targets = {r: (neighbor(r, m) if m is not None else r) for r, m in decisions.items()}
    movers = [r for r in order if decisions[r] is not None]

    for r in movers:
        t = targets[r]
        if t in cfg and decisions[t] is not None and targets[t] == r:
            return CollisionReport(
                CollisionKind.SWAP, ((r, decisions[r]), (t, decisions[t]))
            )
    for r in movers:
        t = targets[r]
        if t in cfg and decisions[t] is None:
            return CollisionReport(
                CollisionKind.MOVE_ONTO_STATIONARY, ((r, decisions[r]), (t, None))
            )
    shared: dict[TriCoord, list[TriCoord]] = {}
    for r in movers:
        shared.setdefault(targets[r], []).append(r)
    for r in movers:
        group = shared[targets[r]]
        if len(group) >= 2:
            return CollisionReport(
                CollisionKind.SAME_TARGET, tuple((g, decisions[g]) for g in group)
            )

    nxt = frozenset(targets.values())
    assert len(nxt) == len(cfg), "collision check must preserve robot count"
    return nxt


def step(
    cfg: Configuration, decide: DecisionFunction, visibility: int
) -> Configuration | CollisionReport:
    """One full Look-Compute-Move cycle for every robot at once."""
    return apply_decisions(cfg, compute_decisions(cfg, decide, visibility))


def run(
    cfg: Configuration,
    decide: DecisionFunction,
    visibility: int,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Trace:
    """Iterate cycles until gathering, failure, livelock, or the step cap.

    Termination:
    - gathered: every robot stays and the configuration is gathered
      (quiescence; all-stay steps are never recorded),
    - livelock: every robot stays but the configuration is not gathered
      (length 1), or the canonical form of the configuration repeats,
    - collision / disconnected: on first occurrence,
    - step-limit: ``max_steps`` recorded steps without any of the above.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    initial = frozenset(cfg)
    if not is_connected(initial):
        raise ValueError("initial configuration must be connected")

    steps: list[TraceStep] = []
    seen = {canonicalize(initial): 0}
    current = initial
    outcome: Outcome | None = None
    while outcome is None:
        decisions = compute_decisions(current, decide, visibility)
        ordered = tuple(decisions[r] for r in sorted(current))
        if all(m is None for m in ordered):
            if is_gathered(current):
                outcome = Outcome(OutcomeKind.GATHERED)
            else:
                outcome = Outcome(OutcomeKind.LIVELOCK, cycle_length=1)
            break
        result = apply_decisions(current, decisions)
        if isinstance(result, CollisionReport):
            outcome = Outcome(OutcomeKind.COLLISION, collision=result)
            break
        connected = is_connected(result)
        steps.append(TraceStep(ordered, result, connected))
        if not connected:
            outcome = Outcome(OutcomeKind.DISCONNECTED)
            break
        key = canonicalize(result)
        if key in seen:
            outcome = Outcome(OutcomeKind.LIVELOCK, cycle_length=len(steps) - seen[key])
            break
        seen[key] = len(steps)
        current = result
        if len(steps) >= max_steps:
            outcome = Outcome(OutcomeKind.STEP_LIMIT)
    return Trace(initial, visibility, tuple(steps), outcome)


# --- trace line format (see docs/formats.md) ---


def _coords(cfg: Configuration) -> list[list[int]]:
    return [list(r) for r in sorted(cfg)]


def _move_name(m: Move) -> str:
    return "stay" if m is None else m.name


def _move_from_name(name: str) -> Move:
    if name == "stay":
        return None
    return Direction[name]


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def trace_to_lines(trace: Trace, algorithm: str) -> list[str]:
    """Serialize a trace as line-delimited JSON records."""
    lines = [
        _dump(
            {
                "type": "header",
                "robots": _coords(trace.initial),
                "range": trace.visibility,
                "algorithm": algorithm,
            }
        )
    ]
    for i, s in enumerate(trace.steps, start=1):
        lines.append(
            _dump(
                {
                    "type": "step",
                    "index": i,
                    "decisions": [_move_name(m) for m in s.decisions],
                    "robots": _coords(s.robots),
                    "connected": s.connected,
                }
            )
        )
    trailer: dict = {
        "type": "trailer",
        "outcome": trace.outcome.kind,
        "steps": len(trace.steps),
    }
    if trace.outcome.collision is not None:
        trailer["collision"] = {
            "kind": trace.outcome.collision.kind,
            "participants": [
                [list(coord), _move_name(move)]
                for coord, move in trace.outcome.collision.participants
            ],
        }
    if trace.outcome.cycle_length is not None:
        trailer["cycle_length"] = trace.outcome.cycle_length
    lines.append(_dump(trailer))
    return lines


def trace_from_lines(lines: Iterable[str]) -> tuple[Trace, str]:
    """Parse the line format back into a trace and its algorithm id."""
    records = [json.loads(line) for line in lines if line.strip()]
    if not records or records[0].get("type") != "header":
        raise ValueError("trace must start with a header record")
    if records[-1].get("type") != "trailer":
        raise ValueError("trace must end with a trailer record")
    header, trailer = records[0], records[-1]
    initial = frozenset(tuple(r) for r in header["robots"])
    steps = []
    for rec in records[1:-1]:
        if rec.get("type") != "step":
            raise ValueError(f"unexpected record type {rec.get('type')!r}")
        steps.append(
            TraceStep(
                tuple(_move_from_name(m) for m in rec["decisions"]),
                frozenset(tuple(r) for r in rec["robots"]),
                rec["connected"],
            )
        )
    collision = None
    if "collision" in trailer:
        collision = CollisionReport(
            trailer["collision"]["kind"],
            tuple(
                (tuple(coord), _move_from_name(move))
                for coord, move in trailer["collision"]["participants"]
            ),
        )
    outcome = Outcome(
        trailer["outcome"],
        collision=collision,
        cycle_length=trailer.get("cycle_length"),
    )
    trace = Trace(initial, header["range"], tuple(steps), outcome)
    if len(trace.steps) != trailer["steps"]:
        raise ValueError("trailer step count disagrees with recorded steps")
    return trace, header["algorithm"]
