"""Decision procedures for the soft separation axioms.

Every procedure works on the per-open point masks cached on a
:class:`~softtop.topology.SoftSpace`:

* ``member_masks[k]``  -- points totally inside open ``k``;
* ``outside_masks[k]`` -- points totally inside the complement of open ``k``.

``x ∉ G`` (some row misses ``x``) and ``x ∈ G^c`` (every row misses ``x``)
differ, and that difference is what separates each axiom from its ``k``
variant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .exceptions import ConsistencyError
from .soft_core import point_soft_set
from .topology import SoftSpace

__all__ = [
    "Axiom",
    "AxiomProfile",
    "IMPLICATIONS",
    "check_axiom",
    "separate_pairs",
    "classify",
    "is_point_class_closed",
    "t1k_by_point_closure",
]


class Axiom(str, enum.Enum):
    T0 = "T0"
    T0U = "T0U"
    T1 = "T1"
    T2 = "T2"
    Regular = "Regular"
    T3 = "T3"
    T0k = "T0k"
    T1k = "T1k"
    KRegular = "KRegular"
    T3k = "T3k"
    TotallySeparated = "TotallySeparated"
    KTotallySeparated = "KTotallySeparated"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: "str | Axiom") -> "Axiom":
        if isinstance(name, Axiom):
            return name
        key = name.strip()
        for ax in cls:
            if ax.value.lower() == key.lower():
                return ax
        alias = _ALIASES.get(key.lower())
        if alias is None:
            raise ValueError(f"unknown axiom {name!r}")
        return alias


_ALIASES = {
    "ts": Axiom.TotallySeparated,
    "tsk": Axiom.KTotallySeparated,
    "kts": Axiom.KTotallySeparated,
    "kregular": Axiom.KRegular,
    "regular": Axiom.Regular,
}


# Implications that hold between the axioms, as (antecedent, consequent).
# Definitional ones first, then the substantive ones.
IMPLICATIONS: tuple[tuple[Axiom, Axiom], ...] = (
    (Axiom.T1, Axiom.T0),
    (Axiom.T1k, Axiom.T0k),
    (Axiom.T3, Axiom.T1),
    (Axiom.T3, Axiom.Regular),
    (Axiom.T3k, Axiom.T1k),
    (Axiom.T3k, Axiom.KRegular),
    (Axiom.Regular, Axiom.KRegular),
    (Axiom.T0, Axiom.T0U),
    (Axiom.T0k, Axiom.T0),
    (Axiom.T1k, Axiom.T1),
    (Axiom.T2, Axiom.T1k),
    (Axiom.T3, Axiom.T3k),
    (Axiom.T3k, Axiom.T2),
    (Axiom.KTotallySeparated, Axiom.TotallySeparated),
    (Axiom.KTotallySeparated, Axiom.T2),
    (Axiom.KTotallySeparated, Axiom.T3k),
    (Axiom.TotallySeparated, Axiom.T0),
)


Pairs = list[tuple[int, int]]


def distinct_pairs(n: int) -> Pairs:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _reach(sp: SoftSpace, opens: Iterable[int], k_variant: bool) -> list[int]:
    """For each point ``x``: the points ``y`` that some listed open containing
    ``x`` excludes (``y ∉ G``, or ``y ∈ G^c`` when ``k_variant``)."""
    n = sp.universe.n_points
    full = (1 << n) - 1
    reach = [0] * n
    for k in opens:
        mem = sp.member_masks[k]
        if not mem:
            continue
        excluded = sp.outside_masks[k] if k_variant else full & ~mem
        for i in range(n):
            if mem >> i & 1:
                reach[i] |= excluded
    return reach


def _one_way(reach: list[int], pairs: Pairs) -> bool:
    """Every pair is separated in at least one direction."""
    return all(reach[i] >> j & 1 or reach[j] >> i & 1 for i, j in pairs)


def _both_ways(reach: list[int], pairs: Pairs) -> bool:
    return all(reach[i] >> j & 1 and reach[j] >> i & 1 for i, j in pairs)


def _clopen_indices(sp: SoftSpace) -> list[int]:
    closed = sp.closed_set
    return [k for k, c in enumerate(sp.codes) if c in closed]


def _t0u(sp: SoftSpace) -> bool:
    cols = sp.universe.column_masks
    cls = sp.class_index
    n = sp.universe.n_points
    for i in range(n):
        for j in range(i + 1, n):
            if cls[i] != cls[j]:
                continue
            for c in sp.codes:
                if (c & cols[i]) >> i != (c & cols[j]) >> j:
                    return False
    return True


def _t2(sp: SoftSpace, pairs: Pairs) -> bool:
    # Any open totally containing x contains the least such open.
    least = [sp.least_open_superset(c) for c in sp.universe.column_masks]
    return all(least[i] & least[j] == 0 for i, j in pairs)


def _regular(sp: SoftSpace, k_variant: bool) -> bool:
    # G is disjoint from some open H ⊇ C iff it is disjoint from the least
    # open superset of C; the largest such G is the interior of the rest.
    full = sp.universe.full_mask
    every_point = (1 << sp.universe.n_points) - 1
    for c in sp.closed_codes:
        room = sp.interior_bits(full ^ sp.least_open_superset(c))
        inside = sp._members_of(room)
        if k_variant:
            trigger = sp._members_of(full ^ c)
        else:
            trigger = every_point & ~sp._members_of(c)
        if trigger & ~inside:
            return False
    return True


def check_axiom(sp: SoftSpace, ax: Axiom | str) -> bool:
    """Decide one separation axiom on a finite soft space."""
    ax = Axiom.parse(ax)
    if ax is Axiom.T0:
        return len(set(sp.signatures)) == sp.universe.n_points
    if ax is Axiom.T0U:
        return _t0u(sp)
    if ax is Axiom.Regular:
        return _regular(sp, False)
    if ax is Axiom.KRegular:
        return _regular(sp, True)
    if ax is Axiom.T3:
        return _regular(sp, False) and check_axiom(sp, Axiom.T1)
    if ax is Axiom.T3k:
        return _regular(sp, True) and check_axiom(sp, Axiom.T1k)
    return separate_pairs(sp, ax, distinct_pairs(sp.universe.n_points))


def separate_pairs(sp: SoftSpace, ax: Axiom, pairs: Pairs) -> bool:
    """Pairwise part of the point-separating axioms, over the given pairs."""
    every = range(len(sp.codes))
    if ax is Axiom.T0:
        sig = sp.signatures
        return all(sig[i] != sig[j] for i, j in pairs)
    if ax is Axiom.T1:
        return _both_ways(_reach(sp, every, False), pairs)
    if ax is Axiom.T2:
        return _t2(sp, pairs)
    if ax is Axiom.T0k:
        return _one_way(_reach(sp, every, True), pairs)
    if ax is Axiom.T1k:
        return _both_ways(_reach(sp, every, True), pairs)
    if ax is Axiom.TotallySeparated:
        return _one_way(_reach(sp, _clopen_indices(sp), False), pairs)
    if ax is Axiom.KTotallySeparated:
        return _one_way(_reach(sp, _clopen_indices(sp), True), pairs)
    raise ValueError(f"{ax} is not a pairwise separation axiom")


def is_point_class_closed(sp: SoftSpace, x: str) -> bool:
    """Whether the soft point ``(F_x, A)`` is soft closed."""
    return point_soft_set(x, sp.universe).bits in sp.closed_set


def t1k_by_point_closure(sp: SoftSpace) -> bool:
    """T1k decided through closedness of every soft point."""
    return all(is_point_class_closed(sp, x) for x in sp.universe.points)


@dataclass(frozen=True)
class AxiomProfile:
    """Truth values of all twelve axioms for one space."""

    space: str
    values: Mapping[Axiom, bool] = field(default_factory=dict)

    def __getitem__(self, ax: Axiom | str) -> bool:
        return self.values[Axiom.parse(ax)]

    def holds(self) -> list[Axiom]:
        return [ax for ax in Axiom if self.values[ax]]

    def as_dict(self) -> dict[str, bool]:
        return {ax.value: self.values[ax] for ax in Axiom}

    def violations(self) -> list[tuple[Axiom, Axiom]]:
        return [
            (a, b) for a, b in IMPLICATIONS if self.values[a] and not self.values[b]
        ]


def classify(sp: SoftSpace) -> AxiomProfile:
    """Decide every axiom and cross-check the implication table."""
    profile = AxiomProfile(sp.name, {ax: check_axiom(sp, ax) for ax in Axiom})
    bad = profile.violations()
    if bad:
        raise ConsistencyError(
            f"profile of {sp!r} violates implications {[(str(a), str(b)) for a, b in bad]}"
        )
    if profile[Axiom.T1k] != t1k_by_point_closure(sp):
        raise ConsistencyError(f"T1k decisions disagree on {sp!r}")
    return profile
