"""Soft topologies and soft topological spaces over a finite universe."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .exceptions import IncompatibleUniverseError, TopologyAxiomError
from .soft_core import SoftSet, Universe, _restrict_bits

__all__ = [
    "ValidationReport",
    "SoftTopology",
    "SoftSpace",
    "validate_topology",
    "generate_topology",
    "subspace",
    "is_open",
    "is_closed",
    "is_clopen",
    "neighborhoods",
    "closure",
    "interior",
    "approx",
    "approx_classes",
    "is_locally_closed",
    "locally_closed_sets",
    "ClosurePointReport",
    "closure_point_test",
]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_topology`.

    On failure ``axiom`` is one of ``"null"``, ``"absolute"``,
    ``"intersection"``, ``"union"`` and ``witness`` holds the pair whose
    intersection or union escapes the family.
    """

    ok: bool
    axiom: str | None = None
    witness: tuple[SoftSet, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def message(self, names: dict[int, str] | None = None) -> str:
        if self.ok:
            return "ok"
        if self.axiom in ("null", "absolute"):
            sym = "0_A" if self.axiom == "null" else "1_A"
            return f"family does not contain {sym}"
        names = names or {}
        a, b = (names.get(w.bits, repr(w)) for w in self.witness)
        op = "⊓" if self.axiom == "intersection" else "⊔"
        return f"{a} {op} {b} is not in the family"


def _check_members(u: Universe, family: Iterable[SoftSet]) -> list[SoftSet]:
    members = list(family)
    for s in members:
        if s.universe != u:
            raise IncompatibleUniverseError("family member is not over the given universe")
    return members


def validate_topology(u: Universe, family: Iterable[SoftSet]) -> ValidationReport:
    """Check the soft topology axioms; finite closure suffices."""
    members = _check_members(u, family)
    codes = {s.bits for s in members}
    if 0 not in codes:
        return ValidationReport(False, "null")
    if u.full_mask not in codes:
        return ValidationReport(False, "absolute")
    for i, s in enumerate(members):
        for t in members[i + 1:]:
            if s.bits & t.bits not in codes:
                return ValidationReport(False, "intersection", (s, t))
            if s.bits | t.bits not in codes:
                return ValidationReport(False, "union", (s, t))
    return ValidationReport(True)


def _close_codes(u: Universe, codes: Iterable[int]) -> frozenset[int]:
    family = set(codes) | {0, u.full_mask}
    frontier = list(family)
    while frontier:
        new = []
        snapshot = list(family)
        for s in frontier:
            for t in snapshot:
                for c in (s & t, s | t):
                    if c not in family:
                        family.add(c)
                        new.append(c)
        frontier = new
    return frozenset(family)


@dataclass(frozen=True)
class SoftTopology:
    """A validated family of open soft sets, stored as sorted bit codes."""

    universe: Universe
    codes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "codes", tuple(sorted(set(self.codes))))

    @cached_property
    def code_set(self) -> frozenset[int]:
        return frozenset(self.codes)

    @property
    def opens(self) -> list[SoftSet]:
        return [SoftSet(self.universe, c) for c in self.codes]

    def __len__(self) -> int:
        return len(self.codes)

    def __contains__(self, s: SoftSet) -> bool:
        return s.universe == self.universe and s.bits in self.code_set


def generate_topology(u: Universe, family: Iterable[SoftSet]) -> SoftTopology:
    """Smallest soft topology containing ``family``."""
    members = _check_members(u, family)
    return SoftTopology(u, tuple(_close_codes(u, (s.bits for s in members))))


@dataclass(frozen=True)
class SoftSpace:
    """A soft topological space ``(X, T, A)``.

    Construct with :meth:`from_family`, which validates (or, with
    ``generate=True``, closes) the family of opens.  ``name`` is an
    identifier for reports and is ignored by equality.
    """

    universe: Universe
    topology: SoftTopology
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.topology.universe != self.universe:
            raise IncompatibleUniverseError("topology is not over the space's universe")

    @classmethod
    def from_family(
        cls,
        universe: Universe,
        family: Iterable[SoftSet],
        *,
        generate: bool = False,
        name: str = "",
    ) -> "SoftSpace":
        members = list(family)
        if generate:
            return cls(universe, generate_topology(universe, members), name)
        report = validate_topology(universe, members)
        if not report:
            raise TopologyAxiomError(report.message(), report.axiom, report.witness)
        return cls(universe, SoftTopology(universe, tuple(s.bits for s in members)), name)

    @classmethod
    def from_codes(cls, universe: Universe, codes: Iterable[int], name: str = "") -> "SoftSpace":
        """Trusted constructor for already-closed code families."""
        return cls(universe, SoftTopology(universe, tuple(codes)), name)

    @property
    def opens(self) -> list[SoftSet]:
        return self.topology.opens

    @property
    def codes(self) -> tuple[int, ...]:
        return self.topology.codes

    @property
    def open_set(self) -> frozenset[int]:
        return self.topology.code_set

    @cached_property
    def closed_set(self) -> frozenset[int]:
        full = self.universe.full_mask
        return frozenset(full ^ c for c in self.topology.codes)

    @cached_property
    def closed_codes(self) -> tuple[int, ...]:
        return tuple(sorted(self.closed_set))

    @cached_property
    def clopen_codes(self) -> tuple[int, ...]:
        return tuple(c for c in self.topology.codes if c in self.closed_set)

    @cached_property
    def locally_closed_set(self) -> frozenset[int]:
        return frozenset(g & c for g in self.topology.codes for c in self.closed_codes)

    @cached_property
    def cell_neighborhoods(self) -> tuple[int, ...]:
        """Per cell: the least open containing it.  A soft set's least open
        superset is the union of these over its cells."""
        out = [self.universe.full_mask] * self.universe.n_cells
        for c in self.topology.codes:
            rest = c
            while rest:
                low = rest & -rest
                cell = low.bit_length() - 1
                out[cell] &= c
                rest ^= low
        return tuple(out)

    def least_open_superset(self, bits: int) -> int:
        nbhd = self.cell_neighborhoods
        out = 0
        while bits:
            low = bits & -bits
            out |= nbhd[low.bit_length() - 1]
            bits ^= low
        return out

    def interior_bits(self, bits: int) -> int:
        nbhd = self.cell_neighborhoods
        out = 0
        rest = bits
        while rest:
            low = rest & -rest
            u = nbhd[low.bit_length() - 1]
            if u & ~bits == 0:
                out |= u
            rest ^= low
        return out

    @cached_property
    def member_masks(self) -> tuple[int, ...]:
        """Per open (in ``codes`` order): points totally inside it."""
        return tuple(self._members_of(c) for c in self.topology.codes)

    @cached_property
    def outside_masks(self) -> tuple[int, ...]:
        """Per open: points totally inside its complement."""
        full = self.universe.full_mask
        return tuple(self._members_of(full ^ c) for c in self.topology.codes)

    def _members_of(self, bits: int) -> int:
        out = 0
        for i, col in enumerate(self.universe.column_masks):
            if bits & col == col:
                out |= 1 << i
        return out

    @cached_property
    def signatures(self) -> tuple[int, ...]:
        """Per point: the set of opens (as a bitmask over ``codes``) that
        totally contain it.  Equal signatures is the ≈ relation."""
        sig = [0] * self.universe.n_points
        for k, mem in enumerate(self.member_masks):
            for i in range(self.universe.n_points):
                if mem >> i & 1:
                    sig[i] |= 1 << k
        return tuple(sig)

    @cached_property
    def class_index(self) -> tuple[int, ...]:
        """Per point: index of its ≈-class; classes numbered by least member."""
        seen: dict[int, int] = {}
        out = []
        for s in self.signatures:
            out.append(seen.setdefault(s, len(seen)))
        return tuple(out)

    @property
    def n_classes(self) -> int:
        return max(self.class_index) + 1

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return (
            f"SoftSpace{label}({self.universe.n_points} points, "
            f"{self.universe.n_params} parameters, {len(self.topology)} opens)"
        )


def _same(sp: SoftSpace, s: SoftSet) -> None:
    if s.universe != sp.universe:
        raise IncompatibleUniverseError("soft set is not over the space's universe")


def subspace(sp: SoftSpace, points: Iterable[str]) -> SoftSpace:
    """Soft relative topology on ``points``."""
    u = sp.universe
    wanted = set(points)
    if not wanted:
        raise ValueError("subspace needs a nonempty set of points")
    for p in wanted:
        u.point_index(p)
    idx = [i for i, p in enumerate(u.points) if p in wanted]
    sub = Universe(tuple(u.points[i] for i in idx), u.parameters)
    codes = {_restrict_bits(c, u, idx) for c in sp.codes}
    return SoftSpace.from_codes(sub, codes, name=f"{sp.name}|{','.join(sub.points)}" if sp.name else "")


def is_open(sp: SoftSpace, s: SoftSet) -> bool:
    _same(sp, s)
    return s.bits in sp.open_set


def is_closed(sp: SoftSpace, s: SoftSet) -> bool:
    _same(sp, s)
    return s.bits in sp.closed_set


def is_clopen(sp: SoftSpace, s: SoftSet) -> bool:
    return is_open(sp, s) and is_closed(sp, s)


def neighborhoods(sp: SoftSpace, x: str) -> list[SoftSet]:
    """Open soft sets totally containing ``x``.

    This is the open base of the neighbourhood filter; every soft set above
    one of these is a neighbourhood too.
    """
    i = sp.universe.point_index(x)
    return [
        SoftSet(sp.universe, c)
        for c, mem in zip(sp.codes, sp.member_masks)
        if mem >> i & 1
    ]


def closure(sp: SoftSpace, s: SoftSet) -> SoftSet:
    """Soft intersection of all closed supersets of ``s``."""
    _same(sp, s)
    full = sp.universe.full_mask
    return SoftSet(sp.universe, full ^ sp.interior_bits(full ^ s.bits))


def interior(sp: SoftSpace, s: SoftSet) -> SoftSet:
    """Soft union of all open subsets of ``s``."""
    _same(sp, s)
    return SoftSet(sp.universe, sp.interior_bits(s.bits))


@dataclass(frozen=True)
class ClosurePointReport:
    """Relation between closure membership and meeting every neighbourhood.

    ``forward`` says that ``x`` in the closure of ``s`` always implies that
    ``s`` meets every open neighbourhood of ``x``; ``converse`` says the
    reverse implication held too.  Failures carry one ``(s, x)`` witness.
    """

    forward: bool
    converse: bool
    forward_witness: tuple[SoftSet, str] | None = None
    converse_witness: tuple[SoftSet, str] | None = None


def closure_point_test(sp: SoftSpace) -> ClosurePointReport:
    """Compare ``x ∈ closure(s)`` with "``s`` meets every open neighbourhood
    of ``x``" for every soft set ``s`` and point ``x``.

    Exhaustive over all ``2**cells`` soft sets, so meant for small spaces.
    """
    u = sp.universe
    full = u.full_mask
    cols = u.column_masks
    nbhd = [[c for c, mem in zip(sp.codes, sp.member_masks) if mem >> i & 1] for i in range(u.n_points)]
    fwd_wit = conv_wit = None
    for bits in range(full + 1):
        hull = full ^ sp.interior_bits(full ^ bits)
        for i, x in enumerate(u.points):
            inside = hull & cols[i] == cols[i]
            meets = all(bits & g for g in nbhd[i])
            if inside and not meets and fwd_wit is None:
                fwd_wit = (SoftSet(u, bits), x)
            if meets and not inside and conv_wit is None:
                conv_wit = (SoftSet(u, bits), x)
        if fwd_wit is not None and conv_wit is not None:
            break
    return ClosurePointReport(fwd_wit is None, conv_wit is None, fwd_wit, conv_wit)


def approx(sp: SoftSpace, x: str, y: str) -> bool:
    """``x ≈ y``: the two points lie totally in exactly the same opens."""
    u = sp.universe
    return sp.signatures[u.point_index(x)] == sp.signatures[u.point_index(y)]


def approx_classes(sp: SoftSpace) -> list[list[str]]:
    """The ≈-classes, each in canonical order, ordered by least member."""
    classes: list[list[str]] = [[] for _ in range(sp.n_classes)]
    for p, k in zip(sp.universe.points, sp.class_index):
        classes[k].append(p)
    return classes


def locally_closed_sets(sp: SoftSpace) -> list[SoftSet]:
    return [SoftSet(sp.universe, c) for c in sorted(sp.locally_closed_set)]


def is_locally_closed(sp: SoftSpace, s: SoftSet) -> bool:
    """Whether ``s`` is the soft intersection of an open and a closed set."""
    _same(sp, s)
    return s.bits in sp.locally_closed_set


def family_names(named: Sequence[tuple[str, SoftSet]]) -> dict[int, str]:
    return {s.bits: name for name, s in named}
