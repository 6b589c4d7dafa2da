"""Catalog of hard-coded quivers with their known mutation sequences."""

from __future__ import annotations

from dataclasses import dataclass

from quiverkit.quiver import Quiver, QuiverError

# 10-vertex triangular quiver: rows (1), (2,3), (4,5,6), (7,8,9,10) with
# every unit triangle an oriented 3-cycle (horizontals point left,
# up-diagonals up-right, down-diagonals down-right).
_TRIANGULAR_ARROWS = [
    (2, 1), (1, 3), (3, 2),
    (4, 2), (2, 5), (5, 3), (3, 6),
    (5, 4), (7, 4), (4, 8), (6, 5), (8, 5), (5, 9), (9, 6), (6, 10),
    (8, 7), (9, 8), (10, 9),
]
# 20-step maximal green sequence: sweep the rows bottom-up, dropping the
# last remaining vertex of every row after each full sweep.
_TRIANGULAR_SEQUENCE = (7, 8, 9, 10, 4, 5, 6, 2, 3, 1, 7, 8, 9, 4, 5, 2, 7, 8, 4, 7)

# two further members of the same (size 5739) mutation class
_MUTANT_1_ARROWS = [
    (10, 1), (9, 2), (3, 4), (4, 6), (9, 4), (5, 7), (10, 5), (6, 7), (7, 8), (8, 9),
]
_MUTANT_2_ARROWS = [
    (10, 1), (2, 3), (10, 2), (3, 5), (4, 6), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
]

# 9-vertex triangle-product quiver; the weight-2 entries are double arrows
_TRIANGLE_PRODUCT_ARROWS = [
    (1, 2, 1), (1, 4, 2), (5, 1, 2),
    (2, 3, 1), (2, 5, 2), (6, 2, 2), (3, 6, 2),
    (4, 5, 1), (4, 7, 1), (8, 4, 1),
    (5, 6, 1), (5, 8, 1), (9, 5, 1), (6, 9, 1),
    (7, 8, 1), (8, 9, 1),
]
_TRIANGLE_PRODUCT_SEQUENCE = (3, 6, 9, 2, 5, 8, 1, 4, 7, 3, 6, 9, 2, 5, 8, 3, 6, 9)


@dataclass(frozen=True)
class Fixture:
    name: str
    quiver: Quiver
    sequences: tuple[tuple[int, ...], ...]
    description: str


def _build() -> dict[str, Fixture]:
    entries = [
        Fixture(
            "a2",
            Quiver.from_arrows(2, [(1, 2, 1)]),
            ((1, 2), (2, 1, 2)),
            "single arrow 1->2; both of its maximal green sequences",
        ),
        Fixture(
            "markov",
            Quiver.from_arrows(3, [(1, 2, 2), (2, 3, 2), (3, 1, 2)]),
            (),
            "double-arrow 3-cycle; admits no reddening sequence",
        ),
        Fixture(
            "bfz-a4-triangular",
            Quiver.from_arrows(10, [(s, t, 1) for s, t in _TRIANGULAR_ARROWS]),
            (_TRIANGULAR_SEQUENCE,),
            "10-vertex triangular quiver with a 20-step maximal green sequence",
        ),
        Fixture(
            "bfz-a4-mutant-1",
            Quiver.from_arrows(10, [(s, t, 1) for s, t in _MUTANT_1_ARROWS]),
            (),
            "mutation-equivalent form of bfz-a4-triangular",
        ),
        Fixture(
            "bfz-a4-mutant-2",
            Quiver.from_arrows(10, [(s, t, 1) for s, t in _MUTANT_2_ARROWS]),
            (),
            "second mutation-equivalent form of bfz-a4-triangular",
        ),
        Fixture(
            "triangle-product-a3",
            Quiver.from_arrows(9, _TRIANGLE_PRODUCT_ARROWS),
            (_TRIANGLE_PRODUCT_SEQUENCE,),
            "9-vertex triangle product with double arrows and an 18-step "
            "maximal green sequence",
        ),
    ]
    return {fx.name: fx for fx in entries}


_CATALOG = _build()


def fixture(name: str) -> Fixture:
    """Look up a named quiver; raises with the list of known names."""
    try:
        return _CATALOG[name]
    except KeyError:
        known = ", ".join(sorted(_CATALOG))
        raise QuiverError(f"unknown fixture {name!r}; known fixtures: {known}") from None


def fixture_names() -> list[str]:
    return sorted(_CATALOG)
