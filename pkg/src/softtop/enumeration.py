"""Labeled enumeration of topologies on a small finite set.

A topology on a finite set is fixed by the minimal open neighbourhood
``U_p`` of each point, and the admissible families ``(U_p)`` are exactly
the preorders (``q ∈ U_p`` read as ``q ≤ p``).  We enumerate preorders by
backtracking, choosing ``U_p`` point by point and pruning on the
consistency rule ``q ∈ U_p ⇒ U_q ⊆ U_p``.  Every partial consistent
assignment extends (``U_p = {p}`` always fits), so the search never
dead-ends.
"""

from __future__ import annotations

from typing import Iterator


def preorders(n: int) -> Iterator[tuple[int, ...]]:
    """Yield every preorder on ``range(n)`` as its tuple of minimal
    neighbourhood bitmasks, each exactly once."""
    if n == 0:
        yield ()
        return
    chosen: list[int] = [0] * n

    def consistent(p: int, up: int) -> bool:
        for q in range(p):
            uq = chosen[q]
            if up >> q & 1 and uq & ~up:
                return False
            if uq >> p & 1 and up & ~uq:
                return False
        return True

    def rec(p: int) -> Iterator[tuple[int, ...]]:
        if p == n:
            yield tuple(chosen)
            return
        others = [q for q in range(n) if q != p]
        for sub in range(1 << (n - 1)):
            up = 1 << p
            for k, q in enumerate(others):
                if sub >> k & 1:
                    up |= 1 << q
            if consistent(p, up):
                chosen[p] = up
                yield from rec(p + 1)

    yield from rec(0)


def open_sets(minimal: tuple[int, ...]) -> tuple[int, ...]:
    """All open sets (down-closed subsets) of the topology with the given
    minimal neighbourhoods, in increasing order."""
    n = len(minimal)
    out = []
    for s in range(1 << n):
        if all(not (s >> p & 1) or minimal[p] & ~s == 0 for p in range(n)):
            out.append(s)
    return tuple(out)


def topologies(n: int) -> Iterator[tuple[int, ...]]:
    """Every topology on ``range(n)`` as a sorted tuple of open-set bitmasks."""
    for minimal in preorders(n):
        yield open_sets(minimal)


# Known numbers of labeled topologies on n points (OEIS A000798).
LABELED_TOPOLOGY_COUNTS = (1, 1, 4, 29, 355, 6942, 209527)
