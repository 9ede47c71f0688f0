"""Independent brute-force oracles used by the test suite.

The shape-count oracle enumerates n-subsets directly (no canonical
growth): every connected n-shape, translated so its lexicographically
smallest cell sits at the origin, consists of the origin plus n-1 cells
that are lex-greater than the origin and within lattice distance n-1 of
it (a connected induced subgraph on n vertices has diameter at most
n-1).  Counting connected subsets of that anchored half-disc therefore
counts connected shapes up to translation.

For small n an even blunter oracle is kept alongside: enumerate every
n-subset of a full disc and deduplicate by canonical form.
"""

from itertools import combinations

from trigather.config import canonicalize, is_connected
from trigather.grid import distance


def disc(radius, center=(0, 0)):
    ca, cb = center
    return [
        (ca + da, cb + db)
        for da in range(-radius, radius + 1)
        for db in range(-radius, radius + 1)
        if distance((0, 0), (da, db)) <= radius
    ]


def count_connected_anchored(n):
    """Connected n-shapes up to translation, by anchored subset enumeration."""
    if n == 1:
        return 1
    pool = [c for c in disc(n - 1) if c > (0, 0)]
    shapes = set()
    for rest in combinations(pool, n - 1):
        cells = frozenset((( 0, 0),) + rest)
        if is_connected(cells):
            shapes.add(canonicalize(cells))
    return len(shapes)


def count_connected_full_disc(n, radius=None):
    """Connected n-subsets of a radius-n disc, deduplicated by canonical form.

    Only tractable for small n; quadratic in the binomial coefficient.
    """
    radius = n if radius is None else radius
    shapes = set()
    for cells in combinations(disc(radius), n):
        cells = frozenset(cells)
        if is_connected(cells):
            shapes.add(canonicalize(cells))
    return len(shapes)
