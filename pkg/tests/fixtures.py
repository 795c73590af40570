"""Shared test data: the small n-fold templates and printed bases used across the suite."""

from nfoldopt.graver import Bimatrix

# two-row identity over an all-ones row: 2-fold basis is +-(1,-1,-1,1)
PAIR = Bimatrix.of(((1, 0), (0, 1)), ((1, 1),))

PAIR_2FOLD = (
    (1, 0, 1, 0),
    (0, 1, 0, 1),
    (1, 1, 0, 0),
    (0, 0, 1, 1),
)

PAIR_4FOLD = (
    (1, 0, 1, 0, 1, 0, 1, 0),
    (0, 1, 0, 1, 0, 1, 0, 1),
    (1, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 1, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 1),
)

_half = [
    (1, -1, -1, 1, 0, 0, 0, 0),
    (1, -1, 0, 0, -1, 1, 0, 0),
    (1, -1, 0, 0, 0, 0, -1, 1),
    (0, 0, 1, -1, -1, 1, 0, 0),
    (0, 0, 1, -1, 0, 0, -1, 1),
    (0, 0, 0, 0, 1, -1, -1, 1),
]
PAIR_4FOLD_GRAVER = sorted(_half + [tuple(-a for a in g) for g in _half])

# one top row summing three columns, brick row (1, 2, 0)
TRIPLE = Bimatrix.of(((1, 1, 1),), ((1, 2, 0),))

# two brick rows, one top row
DOUBLE = Bimatrix.of(((1, 0, 1),), ((1, 1, 0), (0, 1, 1)))

# no top rows at all
FREE = Bimatrix.of((), ((1, -1, 1),))

TEMPLATES = {"pair": PAIR, "triple": TRIPLE, "double": DOUBLE}
