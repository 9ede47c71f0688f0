"""The visibility-range-2 gathering rule as a pure decision function.

Each robot labels the nodes it can see (self is (0, 0)) and determines a
*base node*: the robot-node label with the strictly largest x-element,
robots included, self counted with x-element 0.  A tie leaves the base
undetermined, with two exceptions handled by the rule chain itself: the
empty node (4, 0) acts as base when (3, 1) and (3, -1) are both robot
nodes, and an empty (2, 0) acts as base when (1, 1) and (1, -1) are the
only robot nodes with positive x-element.  Robots then funnel eastward
around the base under guards that rule out collisions and disconnection.

The decision function is layered, and every layer is data that
``dump_guards`` renders for auditing (the CLI surfaces it as
``dump-guards``):

1. ``GUARD_TABLE`` transcribes the movement rules from their 33-line
   reference pseudocode listing; the ``line`` tags index into that
   listing (every statement line counted, blanks included).
   Transcription normalizations are listed in ``NORMALIZATION_NOTES``.

2. The printed listing is demonstrably lossy (it even carries a struck
   rule), so two reconstruction layers restore the behavior the listing
   is elsewhere careful about.  A *connectivity screen* suppresses a
   chain move that would split the group of robots the mover can see;
   exhaustive replay shows the printed guards already imply this screen
   everywhere except two under-guarded lines (19 and 29), whose firings
   it filters.

3. ``COMPLETION_RULES`` supply moves for the exact views the screened
   chain leaves quiescent although gathering is not reached.  They were
   synthesized mechanically, one view at a time, against exhaustive
   replay of all 3652 connected 7-robot configurations, and pruned to a
   minimal set; see the transcription notes for the derivation.

``decide_move`` (algorithm id ``gather2-v1``) applies all three layers
and gathers every connected 7-robot configuration.  ``decide_verbatim``
(``gather2-verbatim``) is the unscreened, uncompleted chain, kept so the
lossiness of the printed listing stays reproducible.  The chain is
ordered: the first branch whose condition holds is entered, the first
rule inside it whose guard holds fires, and anything else means stay;
quiescence is the default, which is what makes a gathered configuration
a fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .engine import Move, View
from .grid import Direction, Label, RANGE1_LABELS, RANGE2_LABELS, distance, label_of

ALGORITHM_ID = "gather2-v1"
ALGORITHM_ID_VERBATIM = "gather2-verbatim"

_LABEL_DOMAIN = frozenset(RANGE1_LABELS + RANGE2_LABELS)


@dataclass(frozen=True, slots=True)
class GuardClause:
    """One conjunction: these labels occupied, those labels empty."""

    robots: frozenset
    empties: frozenset

    def holds(self, occupied: frozenset) -> bool:
        return self.robots <= occupied and self.empties.isdisjoint(occupied)


@dataclass(frozen=True, slots=True)
class MoveRule:
    """One pseudocode action line: move ``move`` if any clause holds."""

    line: int
    move: Direction
    clauses: tuple[GuardClause, ...]

    def holds(self, occupied: frozenset) -> bool:
        return any(c.holds(occupied) for c in self.clauses)


@dataclass(frozen=True, slots=True)
class Branch:
    """One branch of the dispatch chain, keyed on the base node."""

    lines: str
    title: str
    bases: frozenset
    when: tuple[GuardClause, ...]
    rules: tuple[MoveRule, ...]
    match_no_base: bool = False

    def selects(self, base: Label | None, occupied: frozenset) -> bool:
        if base is not None and base in self.bases:
            return True
        if base is None and self.match_no_base:
            return True
        return any(c.holds(occupied) for c in self.when)


def _clause(robots: Iterable[Label] = (), empties: Iterable[Label] = ()) -> GuardClause:
    robots = frozenset(robots)
    empties = frozenset(empties)
    stray = (robots | empties) - _LABEL_DOMAIN
    if stray:
        raise ValueError(f"guard mentions labels outside the range-2 domain: {sorted(stray)}")
    if robots & empties:
        raise ValueError(f"guard requires labels both occupied and empty: {sorted(robots & empties)}")
    return GuardClause(robots, empties)


# The exception guards of the base determination, shared by base_label()
# and the corresponding branch conditions of the chain.
_BASE_40_EXCEPTION = _clause(robots=[(3, 1), (3, -1)], empties=[(4, 0)])
_BASE_20_EXCEPTION = _clause(
    robots=[(1, 1), (1, -1)],
    empties=[(2, 0), (2, 2), (2, -2), (3, 1), (3, -1), (4, 0)],
)

GUARD_TABLE: tuple[Branch, ...] = (
    Branch(
        lines="1-3",
        title="empty base column (2,0) flanked by the (1,1)/(1,-1) pair",
        bases=frozenset(),
        when=(_BASE_20_EXCEPTION,),
        rules=(
            MoveRule(
                3,
                Direction.E,
                (
                    _clause(empties=[(-2, 0)]),
                    _clause(robots=[(-2, 0), (-1, 1)]),
                    _clause(robots=[(-2, 0), (-1, -1)]),
                ),
            ),
        ),
    ),
    Branch(
        lines="5-9",
        title="base (4,0)",
        bases=frozenset({(4, 0)}),
        when=(_BASE_40_EXCEPTION,),
        rules=(
            MoveRule(
                7,
                Direction.E,
                (
                    _clause(empties=[(2, 0), (-1, 1), (-2, 0), (-1, -1)]),
                    _clause(robots=[(1, -1)], empties=[(2, 0), (-2, 0), (-1, 1)]),
                    _clause(robots=[(1, 1)], empties=[(2, 0), (-2, 0), (-1, -1)]),
                    _clause(robots=[(1, -1), (-1, -1), (-2, 0)], empties=[(2, 0), (-1, 1)]),
                    _clause(robots=[(-2, 0), (-1, 1), (1, 1)], empties=[(2, 0), (-1, -1)]),
                ),
            ),
            MoveRule(
                8,
                Direction.NE,
                (
                    _clause(robots=[(2, 0)], empties=[(1, 1), (-2, 0), (-1, 1), (-1, -1), (2, 2)]),
                    _clause(
                        robots=[(2, 0), (2, 2), (3, 1), (3, -1), (-2, -2)],
                        empties=[(1, 1), (-2, 0), (-1, 1)],
                    ),
                ),
            ),
            MoveRule(
                9,
                Direction.SE,
                (
                    _clause(
                        robots=[(2, 0), (1, 1)],
                        empties=[(1, -1), (-1, -1), (-2, 0), (-1, 1), (2, -2)],
                    ),
                    _clause(
                        robots=[(2, 0), (1, 1), (2, 2)],
                        empties=[(1, -1), (-1, -1), (-2, 0), (-1, 1), (2, -2)],
                    ),
                ),
            ),
        ),
    ),
    Branch(
        lines="11-15",
        title="base (3,-1)",
        bases=frozenset({(3, -1)}),
        when=(),
        rules=(
            MoveRule(
                13,
                Direction.SE,
                (
                    _clause(empties=[(1, -1), (-1, -1), (0, -2), (-2, 0), (-1, 1)]),
                    _clause(robots=[(-1, 1), (1, 1)], empties=[(1, -1), (-1, -1), (0, -2), (0, 2)]),
                ),
            ),
            MoveRule(
                14,
                Direction.E,
                (
                    _clause(robots=[(1, -1)], empties=[(2, 0), (-1, 1), (-2, 0)]),
                    _clause(robots=[(1, -1), (-2, 0), (-1, -1)], empties=[(2, 0), (-1, 1)]),
                ),
            ),
            MoveRule(
                15,
                Direction.SW,
                (
                    _clause(robots=[(1, -1), (2, 0), (1, 1)], empties=[(-1, -1), (-2, 0), (-2, -2)]),
                ),
            ),
        ),
    ),
    Branch(
        lines="17-19",
        title="base (2,-2)",
        bases=frozenset({(2, -2)}),
        when=(),
        rules=(
            MoveRule(
                19,
                Direction.SW,
                (_clause(empties=[(-1, -1), (-2, 0), (-3, -1), (-1, 1)]),),
            ),
        ),
    ),
    Branch(
        lines="21-25",
        title="base (3,1)",
        bases=frozenset({(3, 1)}),
        when=(),
        rules=(
            MoveRule(
                23,
                Direction.NE,
                (
                    _clause(empties=[(1, 1), (-1, 1), (-2, 0), (-1, -1)]),
                    _clause(robots=[(1, -1), (-1, -1)], empties=[(1, 1), (0, -2), (-1, 1)]),
                ),
            ),
            MoveRule(
                24,
                Direction.E,
                (
                    _clause(robots=[(1, 1)], empties=[(2, 0), (-2, 0), (-1, -1)]),
                    _clause(robots=[(1, 1), (-2, 0), (-1, 1)], empties=[(2, 0), (-1, -1)]),
                ),
            ),
            MoveRule(
                25,
                Direction.NW,
                (
                    _clause(robots=[(1, 1), (2, 0), (1, -1)], empties=[(-1, 1), (-2, 0), (-2, 2)]),
                ),
            ),
        ),
    ),
    Branch(
        lines="27-29",
        title="base (2,2)",
        bases=frozenset({(2, 2)}),
        when=(),
        rules=(
            MoveRule(
                29,
                Direction.NW,
                (_clause(empties=[(-1, 1), (-3, 1), (-2, 0), (-1, -1)]),),
            ),
        ),
    ),
    Branch(
        lines="31-33",
        title="base adjacent to self, or undetermined: stay",
        bases=frozenset({(0, 0), (2, 0), (1, -1), (1, 1)}),
        when=(),
        rules=(),
        match_no_base=True,
    ),
)

NORMALIZATION_NOTES: tuple[str, ...] = (
    "line 2: article typo in the branch comment; comment content only, no guard change.",
    "line 8: the action phrase calls its target a robot node although the guard requires"
    " label (1,1) empty; read as the adjacent node (1,1), direction NE.",
    "line 9: subject/verb number typo; a missing comma inside the empty-label list is read"
    " as a separator; the trailing robot-node alternative on (1,1)/(2,2) is kept as printed"
    " although this rule already requires (1,1) occupied.",
    "line 15: plural typo in the empty-label phrase; guard content unchanged.",
    "line 23: plural typo in the empty-label phrase; guard content unchanged.",
    "line 25: the printed guard requires label (1,-1) both occupied and empty; the empty"
    " occurrence is read as (-1,1), this rule's move target, mirroring line 15 whose guard"
    " requires its own target (-1,-1) empty. a stray comma in the empty-label list is dropped.",
    "after line 29: the listing carries a struck-out rule (move SE under a (2,0)-occupied"
    " guard); it is excluded here, as in the listing, but it is direct evidence that rules"
    " were cut from the printed chain.",
)


def _plain_base(occupied: frozenset) -> Label | None:
    """The unique robot-node label of largest x-element, or None on a tie.

    Self always counts as a robot node with x-element 0, so the result is
    never a label with negative x-element.
    """
    best_x = 0
    best: Label = (0, 0)
    tied = False
    for lbl in occupied:
        x = lbl[0]
        if x > best_x:
            best_x, best, tied = x, lbl, False
        elif x == best_x:
            tied = True
    return None if tied else best


def _require_range2(view: View) -> None:
    if view.visibility != 2:
        raise ValueError("the gathering rule needs visibility range 2")


def base_label(view: View) -> Label | None:
    """The base node's label for this view, or None when undetermined."""
    _require_range2(view)
    occ = view.occupied
    if _BASE_40_EXCEPTION.holds(occ):
        return (4, 0)
    if _BASE_20_EXCEPTION.holds(occ):
        return (2, 0)
    return _plain_base(occ)


# --- layer 2: connectivity screen ---

# Adjacency between the 19 labels of the closed range-2 window (self at
# (0,0) included), used to test whether a move splits the visible group.
_WINDOW: tuple[Label, ...] = ((0, 0),) + RANGE1_LABELS + RANGE2_LABELS
_OFFSET = {lbl: ((lbl[0] - lbl[1]) // 2, lbl[1]) for lbl in _WINDOW}
_LABEL_ADJ: dict[Label, frozenset] = {
    a: frozenset(b for b in _WINDOW if b != a and distance(_OFFSET[a], _OFFSET[b]) == 1)
    for a in _WINDOW
}
_MOVE_LABEL: dict[Direction, Label] = {d: label_of((0, 0), d.value) for d in Direction}


def _window_components(nodes: frozenset) -> dict[Label, int]:
    comp: dict[Label, int] = {}
    idx = 0
    todo = set(nodes)
    while todo:
        seed = todo.pop()
        stack = [seed]
        comp[seed] = idx
        while stack:
            x = stack.pop()
            for y in _LABEL_ADJ[x]:
                if y in todo:
                    todo.discard(y)
                    comp[y] = idx
                    stack.append(y)
        idx += 1
    return comp


def preserves_visible_connectivity(occupied: frozenset, move: Direction) -> bool:
    """False when stepping in ``move`` would split the robots the mover sees.

    Evaluated inside the mover's window: any pair of visible robots (the
    mover included) that is connected through occupied window nodes before
    the move must remain so after it.  Links through nodes outside the
    window are invisible to the mover, so losing a visible link is treated
    as a disconnection risk.
    """
    target = _MOVE_LABEL[move]
    before = occupied | {(0, 0)}
    after = occupied | {target}
    pre = _window_components(before)
    post = _window_components(after)
    members = sorted(before)
    for i, u in enumerate(members):
        pu = post[target if u == (0, 0) else u]
        for v in members[i + 1 :]:
            if pre[u] == pre[v] and pu != post[target if v == (0, 0) else v]:
                return False
    return True


# --- layer 3: completion rules for views the screened chain leaves quiescent ---

# Exact views (occupied labels; all other window labels empty) mapped to
# the move that unsticks them.  Synthesized against exhaustive replay of
# all 3652 connected 7-robot configurations and pruned to a minimal set;
# every entry passed the same screen and the full replay stays free of
# collisions and disconnections.
COMPLETION_RULES: tuple[tuple[frozenset, Direction], ...] = (
    (frozenset({(-2, -2), (0, -2), (1, -1), (1, 1), (2, -2)}), Direction.E),
    (frozenset({(-2, 2), (0, 2), (1, -1), (1, 1), (2, 2)}), Direction.E),
    (frozenset({(-1, -1), (0, -2), (0, 2), (1, -1), (1, 1), (2, 2)}), Direction.E),
    (frozenset({(-1, -1), (0, -2), (1, -1), (1, 1), (2, 2)}), Direction.E),
    (frozenset({(-1, -1), (0, -2), (1, -1), (1, 1), (2, 2), (3, 1)}), Direction.E),
    (frozenset({(-1, -1), (0, -2), (1, -1), (1, 1), (3, 1)}), Direction.E),
    (frozenset({(-1, -1), (0, 2), (1, -1), (1, 1), (2, 2)}), Direction.E),
    (frozenset({(-1, -1), (0, 2), (1, -1), (1, 1), (2, 2), (3, 1)}), Direction.E),
    (frozenset({(-1, -1), (1, -1), (1, 1), (2, 2)}), Direction.E),
    (frozenset({(-1, -1), (1, -1), (1, 1), (2, 2), (3, 1)}), Direction.E),
    (frozenset({(-1, -1), (1, -1), (1, 1), (3, 1)}), Direction.E),
    (frozenset({(-1, 1), (0, -2), (0, 2), (1, -1), (1, 1), (2, -2)}), Direction.E),
    (frozenset({(-1, 1), (0, -2), (1, -1), (1, 1), (2, -2)}), Direction.E),
    (frozenset({(-1, 1), (0, -2), (1, -1), (1, 1), (2, -2), (3, -1)}), Direction.E),
    (frozenset({(-1, 1), (0, 2), (1, -1), (1, 1), (2, -2)}), Direction.E),
    (frozenset({(-1, 1), (0, 2), (1, -1), (1, 1), (2, -2), (3, -1)}), Direction.E),
    (frozenset({(-1, 1), (0, 2), (1, -1), (1, 1), (3, -1)}), Direction.E),
    (frozenset({(-1, 1), (1, -1), (1, 1), (2, -2)}), Direction.E),
    (frozenset({(-1, 1), (1, -1), (1, 1), (2, -2), (2, 0)}), Direction.SW),
    (frozenset({(-1, 1), (1, -1), (1, 1), (2, -2), (3, -1)}), Direction.E),
    (frozenset({(-1, 1), (1, -1), (1, 1), (3, -1)}), Direction.E),
    (frozenset({(0, -2), (0, 2), (1, -1), (1, 1), (2, -2)}), Direction.E),
    (frozenset({(0, -2), (0, 2), (1, -1), (1, 1), (2, -2), (2, 2)}), Direction.E),
    (frozenset({(0, -2), (1, -1), (1, 1), (2, -2), (2, 2)}), Direction.E),
    (frozenset({(0, 2), (1, -1), (1, 1), (2, -2)}), Direction.E),
    (frozenset({(0, 2), (1, -1), (1, 1), (2, -2), (2, 2)}), Direction.E),
    (frozenset({(0, 2), (1, 1)}), Direction.NW),
    (frozenset({(0, 2), (2, -2), (2, 0), (2, 2), (3, -1), (3, 1)}), Direction.NE),
    (frozenset({(0, 2), (2, 0), (2, 2), (3, -1), (3, 1)}), Direction.NE),
    (frozenset({(0, 2), (2, 0), (2, 2), (3, -1), (3, 1), (4, 0)}), Direction.SE),
    (frozenset({(0, 2), (2, 0), (2, 2), (3, 1), (4, 0)}), Direction.NE),
    (frozenset({(1, -1), (1, 1), (2, -2)}), Direction.E),
    (frozenset({(1, -1), (1, 1), (2, -2), (2, 2)}), Direction.E),
    (frozenset({(1, -1), (1, 1), (2, 0), (3, -1), (3, 1)}), Direction.NW),
    (frozenset({(1, -1), (1, 1), (2, 2)}), Direction.E),
    (frozenset({(1, -1), (2, -2), (2, 0), (3, -1)}), Direction.SW),
    (frozenset({(1, -1), (2, 0), (2, 2), (3, -1), (3, 1)}), Direction.NE),
    (frozenset({(1, 1), (2, -2), (2, 0), (3, -1), (3, 1)}), Direction.SE),
    (frozenset({(1, 1), (2, 0), (2, 2), (3, 1)}), Direction.NW),
    (frozenset({(2, -2), (2, 0), (2, 2), (3, -1), (3, 1)}), Direction.NE),
    (frozenset({(2, 0), (2, 2), (3, -1), (3, 1)}), Direction.NE),
    (frozenset({(2, 0), (2, 2), (3, -1), (4, 0)}), Direction.NE),
    (frozenset({(2, 0), (2, 2), (3, 1), (4, 0)}), Direction.SE),
    (frozenset({(2, 0), (2, 2), (4, 0)}), Direction.NE),
)

_COMPLETION = dict(COMPLETION_RULES)


def selected_branch(occupied: frozenset) -> Branch:
    """The branch the dispatch chain enters for this occupancy."""
    base = _plain_base(occupied)
    for branch in GUARD_TABLE:
        if branch.selects(base, occupied):
            return branch
    raise AssertionError("dispatch chain is total; no branch selected")


def matching_rules(occupied: frozenset) -> tuple[Branch, tuple[MoveRule, ...]]:
    """The selected branch and every one of its rules whose guard holds.

    The chain only ever fires the first match; this reports all matches
    so the guard-exclusivity audit can document overlaps.
    """
    branch = selected_branch(occupied)
    return branch, tuple(rule for rule in branch.rules if rule.holds(occupied))


def _chain_move(occupied: frozenset, screened: bool) -> Move:
    branch = selected_branch(occupied)
    for rule in branch.rules:
        if rule.holds(occupied):
            if not screened:
                return rule.move
            if preserves_visible_connectivity(occupied, rule.move):
                return rule.move
    return None


def _decide(occupied: frozenset) -> Move:
    move = _chain_move(occupied, screened=True)
    if move is not None:
        return move
    return _COMPLETION.get(occupied)


def _decide_verbatim(occupied: frozenset) -> Move:
    return _chain_move(occupied, screened=False)


# Views repeat heavily across a verification sweep; memoizing the pure
# occupancy -> move maps is the engine's main speedup.
_decide_cached = lru_cache(maxsize=None)(_decide)
_decide_verbatim_cached = lru_cache(maxsize=None)(_decide_verbatim)


def decide_move(view: View) -> Move:
    """The move (or None to stay) the gathering rule picks for a view."""
    _require_range2(view)
    return _decide_cached(view.occupied)


def decide_verbatim(view: View) -> Move:
    """The unscreened, uncompleted chain exactly as printed.

    Kept for reproducing how far the printed listing alone gets; it
    strands or stalls roughly half of the connected 7-robot
    configurations.
    """
    _require_range2(view)
    return _decide_verbatim_cached(view.occupied)


# --- auditable dump of the compiled table ---


def _fmt_labels(labels: frozenset) -> str:
    return "{" + ",".join(f"({x},{y})" for x, y in sorted(labels)) + "}"


def _fmt_clause(clause: GuardClause) -> str:
    return f"robots {_fmt_labels(clause.robots)} empty {_fmt_labels(clause.empties)}"


def dump_guards() -> str:
    """Human-readable listing of the compiled decision layers.

    Byte-stable across runs; the transcription-notes document embeds this
    text verbatim and a checksum test pins it.
    """
    out = [
        f"guard table {ALGORITHM_ID}",
        "",
        "line numbers refer to the 33-line reference pseudocode listing of the",
        "movement rules (every statement line counted, blanks included).",
        "",
        "dispatch: self counts as a robot node with x-element 0; the base is the",
        "unique robot-node label of largest x-element, undetermined on a tie.",
        "the first branch whose condition holds is entered; inside it the first",
        "rule whose guard holds fires; in every other case the robot stays.",
        "",
        "layer 1: transcribed rule chain",
        "",
    ]
    for branch in GUARD_TABLE:
        out.append(f"branch lines {branch.lines}: {branch.title}")
        conds = [f"base is {_fmt_labels(branch.bases)[1:-1] or 'none'}"] if branch.bases else []
        if branch.match_no_base:
            conds.append("base undetermined")
        conds.extend(_fmt_clause(c) for c in branch.when)
        out.append("  enter when: " + "; or ".join(conds))
        if not branch.rules:
            out.append("  action: stay")
        for rule in branch.rules:
            out.append(f"  rule line {rule.line} -> move {rule.move.name}, when any of:")
            for clause in rule.clauses:
                out.append(f"    {_fmt_clause(clause)}")
        out.append("")
    out += [
        "layer 2: connectivity screen (reconstruction)",
        "  a chain move fires only if it does not split the visible robots:",
        "  every pair of robots in the mover's window (mover included) that is",
        "  connected through occupied window nodes before the move must remain",
        "  connected after it.  exhaustive replay shows the screen only ever",
        "  filters rule lines 19 and 29, whose printed guards omit it.",
        "",
        "layer 3: completion rules (reconstruction)",
        "  exact views (occupied labels listed; all other window labels empty)",
        "  that the screened chain leaves quiescent short of gathering, with the",
        "  move that unsticks them; synthesized and minimized against exhaustive",
        "  replay of all 3652 connected 7-robot configurations.",
    ]
    for occupied, move in COMPLETION_RULES:
        out.append(f"  view {_fmt_labels(occupied)} -> move {move.name}")
    out.append("")
    out.append("normalization notes (transcription of the printed listing):")
    for note in NORMALIZATION_NOTES:
        out.append(f"  {note}")
    out.append("")
    return "\n".join(out)
