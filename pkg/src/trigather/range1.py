"""Arbitrary visibility-range-1 algorithms as rule tables, plus failure replay.

A deterministic oblivious range-1 algorithm is nothing more than a total
map from the 64 occupancy patterns of the six neighbor labels to an
action (stay or one of the six directions).  This module represents such
maps as :class:`RuleTable` values, runs them through the engine to detect
the failure modes any such algorithm can exhibit (collision,
disconnection, livelock), and offers a bounded search over completions of
a partial table.  It deliberately proves nothing: it is falsification
infrastructure for hand-picked tables and configurations.

Structural constraints available for pruning (all derivable from
collision/disconnection avoidance in the line configurations shipped in
``BUILTIN_CONFIGS``):

- a robot seeing exactly one opposite pair of neighbors must stay,
- a robot seeing exactly one neighbor may only stay or move to one of the
  two directions flanking that neighbor,
- a robot seeing exactly one 120-degree pair may only stay or move to the
  single direction between them.

The all-empty view is always constrained to stay: a robot with no visible
neighbor has no information to move on without risking disconnection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .config import Configuration, is_connected, make_configuration
from .engine import (
    DEFAULT_MAX_STEPS,
    DecisionFunction,
    Move,
    Outcome,
    OutcomeKind,
    Trace,
    View,
    run,
)
from .grid import DIRECTIONS, Direction, RANGE1_LABELS, opposite

# Action order used for serialization and for search enumeration.
ACTIONS: tuple[Move, ...] = (None,) + DIRECTIONS

TABLE_SIZE = 64


def mask_of(dirs: Iterable[Direction]) -> int:
    """Bitmask of a neighbor set; bit i is DIRECTIONS[i] (E..SE = 0..5)."""
    mask = 0
    for d in dirs:
        mask |= 1 << DIRECTIONS.index(d)
    return mask


def dirs_of_mask(mask: int) -> frozenset:
    if not 0 <= mask < TABLE_SIZE:
        raise ValueError(f"view bitmask out of range: {mask}")
    return frozenset(d for i, d in enumerate(DIRECTIONS) if mask & (1 << i))


@dataclass(frozen=True, slots=True)
class RuleTable:
    """A total view -> action map over the 64 range-1 occupancy patterns."""

    actions: tuple[Move, ...]

    def __post_init__(self) -> None:
        if len(self.actions) != TABLE_SIZE:
            raise ValueError(f"rule table needs {TABLE_SIZE} actions, got {len(self.actions)}")
        if self.actions[0] is not None:
            raise ValueError("the all-empty view must map to stay")

    @classmethod
    def all_stay(cls) -> "RuleTable":
        return cls((None,) * TABLE_SIZE)

    @classmethod
    def from_moves(cls, moves: Mapping[frozenset, Move]) -> "RuleTable":
        """Build from {neighbor-direction-set: action}; unmentioned views stay."""
        actions: list[Move] = [None] * TABLE_SIZE
        for dirs, move in moves.items():
            actions[mask_of(dirs)] = move
        return cls(tuple(actions))

    def action(self, dirs: Iterable[Direction]) -> Move:
        return self.actions[mask_of(dirs)]


def table_to_decision(table: RuleTable) -> DecisionFunction:
    """Wrap a table as a decision function reading only the six neighbor labels."""
    neighbor_bits = tuple((lbl, 1 << i) for i, lbl in enumerate(RANGE1_LABELS))
    actions = table.actions

    def decide(view: View) -> Move:
        mask = 0
        for lbl, bit in neighbor_bits:
            if lbl in view.occupied:
                mask |= bit
        return actions[mask]

    return decide


# --- structural constraints ---

_OPPOSITE_PAIR_MASKS = tuple(
    sorted(mask_of((d, opposite(d))) for d in (Direction.E, Direction.NE, Direction.NW))
)

# Flanking directions of a single visible neighbor: the two moves that
# keep that neighbor adjacent.
SINGLE_NEIGHBOR_FLANKS: dict[Direction, tuple[Direction, Direction]] = {
    Direction.E: (Direction.NE, Direction.SE),
    Direction.SE: (Direction.E, Direction.SW),
    Direction.SW: (Direction.SE, Direction.W),
    Direction.W: (Direction.SW, Direction.NW),
    Direction.NW: (Direction.W, Direction.NE),
    Direction.NE: (Direction.NW, Direction.E),
}

# The single move between a 120-degree pair that keeps both adjacent.
PAIR_BISECTOR: dict[frozenset, Direction] = {
    frozenset({Direction.E, Direction.SW}): Direction.SE,
    frozenset({Direction.SE, Direction.W}): Direction.SW,
    frozenset({Direction.SW, Direction.NW}): Direction.W,
    frozenset({Direction.W, Direction.NE}): Direction.NW,
    frozenset({Direction.NW, Direction.E}): Direction.NE,
    frozenset({Direction.NE, Direction.SE}): Direction.E,
}


def constrained_actions(mask: int) -> tuple[Move, ...]:
    """Actions a view may take under the structural constraints.

    Views not covered by any constraint may take any of the 7 actions.
    """
    dirs = dirs_of_mask(mask)
    if not dirs:
        return (None,)
    if mask in _OPPOSITE_PAIR_MASKS:
        return (None,)
    if len(dirs) == 1:
        (d,) = dirs
        return (None,) + SINGLE_NEIGHBOR_FLANKS[d]
    bisector = PAIR_BISECTOR.get(dirs)
    if bisector is not None:
        return (None, bisector)
    return ACTIONS


def satisfies_constraints(table: RuleTable) -> bool:
    return all(table.actions[m] in constrained_actions(m) for m in range(TABLE_SIZE))


# --- replay ---


@dataclass(frozen=True, slots=True)
class Verdict:
    """Outcome of one table on one configuration, with the witnessing trace."""

    outcome: Outcome
    trace: Trace


def check_table(
    table: RuleTable, cfg: Configuration, max_steps: int = DEFAULT_MAX_STEPS
) -> Verdict:
    """Run a rule table on one connected configuration at range 1."""
    if not is_connected(cfg):
        raise ValueError("configuration must be connected")
    trace = run(cfg, table_to_decision(table), 1, max_steps)
    return Verdict(trace.outcome, trace)


# --- bounded completion search ---


@dataclass(frozen=True, slots=True)
class CompletionResult:
    table: RuleTable
    failed_on: int | None  # index into the config tuple, None = survived all
    outcome: Outcome | None

    @property
    def refuted(self) -> bool:
        return self.failed_on is not None


@dataclass(frozen=True, slots=True)
class SearchReport:
    results: tuple[CompletionResult, ...]
    exhausted: bool  # False when the budget ran out before all completions

    @property
    def survivors(self) -> tuple[CompletionResult, ...]:
        return tuple(r for r in self.results if not r.refuted)


def search_tables(
    constraints: Mapping[int, Move],
    configs: Iterable[Configuration],
    max_steps: int = DEFAULT_MAX_STEPS,
    budget: int = 1000,
) -> SearchReport:
    """Explore completions of a partial table against a configuration set.

    Pinned entries (``constraints``, keyed by view bitmask) are kept as
    given; every free view ranges over its constrained action set.
    Completions are enumerated depth-first in a fixed lexicographic order
    (ascending bitmask, stay before the directions) so reports are
    reproducible.  Each completion is run against the configurations in
    order and cut off at its first failure.  A completion surviving every
    configuration is reported as not refuted by this set — nothing more.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    config_list = tuple(configs)
    for idx, cfg in enumerate(config_list):
        if not is_connected(cfg):
            raise ValueError(f"configuration #{idx} must be connected")
    pinned = dict(constraints)
    for mask in pinned:
        if not 0 <= mask < TABLE_SIZE:
            raise ValueError(f"constraint bitmask out of range: {mask}")
    if pinned.get(0, None) is not None:
        raise ValueError("the all-empty view must map to stay")

    free = [m for m in range(TABLE_SIZE) if m not in pinned]
    choices = {m: constrained_actions(m) for m in free}
    results: list[CompletionResult] = []
    exhausted = True

    def evaluate(actions: list[Move]) -> CompletionResult:
        table = RuleTable(tuple(actions))
        for idx, cfg in enumerate(config_list):
            verdict = check_table(table, cfg, max_steps)
            if verdict.outcome.kind != OutcomeKind.GATHERED:
                return CompletionResult(table, idx, verdict.outcome)
        return CompletionResult(table, None, None)

    def dfs(pos: int, actions: list[Move]) -> bool:
        """Returns False when the budget is exhausted."""
        nonlocal exhausted
        if len(results) >= budget:
            exhausted = False
            return False
        if pos == len(free):
            results.append(evaluate(actions))
            return True
        mask = free[pos]
        for action in choices[mask]:
            actions[mask] = action
            if not dfs(pos + 1, actions):
                return False
        return True

    base = [None] * TABLE_SIZE
    for mask, action in pinned.items():
        base[mask] = action
    dfs(0, base)
    return SearchReport(tuple(results), exhausted)


# --- built-in configuration library ---


@dataclass(frozen=True, slots=True)
class LibraryConfig:
    name: str
    robots: Configuration
    provenance: str


BUILTIN_CONFIGS: dict[str, LibraryConfig] = {
    c.name: c
    for c in (
        LibraryConfig(
            "fig5a-diagonal",
            make_configuration([(k, -k) for k in range(7)]),
            "text-anchored: the 7-robot SE/NW diagonal line; each interior robot"
            " sees exactly the neighbors SE and NW, the endpoints see one of them.",
        ),
        LibraryConfig(
            "fig5b-diagonal",
            make_configuration([(0, k) for k in range(7)]),
            "text-anchored: the 7-robot NE/SW diagonal line; each interior robot"
            " sees exactly the neighbors NE and SW, the endpoints see one of them.",
        ),
        LibraryConfig(
            "prop1a-geometry",
            make_configuration([(0, 0), (1, -1), (1, -2)]),
            "derived geometry: minimal witness that a lone-SE-neighbor robot moving SW"
            " and a lone-NE-neighbor robot moving NW share one target node.",
        ),
        LibraryConfig(
            "prop1b-geometry",
            make_configuration([(0, 0), (1, -1), (1, -2)]),
            "derived geometry: same witness set as prop1a; here the middle robot sees"
            " NW and SW, and moving it W collides with the lone-SE-neighbor robot moving SW.",
        ),
        LibraryConfig(
            "prop1c-geometry",
            make_configuration([(0, 0), (1, -1), (1, -2), (0, -2)]),
            "derived geometry: minimal witness that a lone-E-neighbor robot moving NE"
            " and a lone-SE-neighbor robot moving SW share one target node.",
        ),
        LibraryConfig(
            "prop1d-geometry",
            make_configuration([(0, 0), (1, 0), (-1, 1), (0, 2), (1, 1)]),
            "derived geometry: minimal witness that a robot seeing NW and E moving NE"
            " and a lone-SE-neighbor robot moving SW share one target node.",
        ),
    )
}


# --- rule-table text format (see docs/formats.md) ---


def table_to_text(table: RuleTable) -> str:
    """64 lines of '<bitmask> <action>', masks ascending, in binary.

    The six binary digits are, from rightmost to leftmost, the neighbor
    labels E, NE, NW, W, SW, SE; actions are direction names or 'stay'.
    """
    lines = []
    for mask, move in enumerate(table.actions):
        name = "stay" if move is None else move.name
        lines.append(f"{mask:06b} {name}")
    return "\n".join(lines) + "\n"


def table_from_text(text: str) -> RuleTable:
    """Parse the text format; strict: all 64 masks, ascending, no repeats."""
    actions: list[Move] = []
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if len(lines) != TABLE_SIZE:
        raise ValueError(f"rule table needs {TABLE_SIZE} lines, got {len(lines)}")
    for expected, line in enumerate(lines):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad rule line {line!r}: expected '<bitmask> <action>'")
        raw_mask, raw_action = parts
        if len(raw_mask) != 6 or any(ch not in "01" for ch in raw_mask):
            raise ValueError(f"bad bitmask {raw_mask!r}: expected six binary digits")
        mask = int(raw_mask, 2)
        if mask != expected:
            raise ValueError(f"rule lines must cover masks in ascending order; got {raw_mask!r}")
        if raw_action == "stay":
            actions.append(None)
        else:
            try:
                actions.append(Direction[raw_action])
            except KeyError:
                raise ValueError(f"unknown action {raw_action!r}") from None
    return RuleTable(tuple(actions))
