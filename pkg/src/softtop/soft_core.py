"""Soft sets over a finite universe and soft mappings between universes.

A soft set ``(F, A)`` over ``X`` assigns a subset ``F(a)`` of ``X`` to every
parameter ``a``.  Internally a soft set is a single Python integer: row ``a``
occupies bits ``a*|X| .. a*|X| + |X| - 1`` and bit ``i`` of a row stands for
the ``i``-th point in the universe's canonical order.  All algebra is then
plain integer bit arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .exceptions import IncompatibleUniverseError, UnknownLabelError

__all__ = [
    "Universe",
    "SoftSet",
    "SoftMapping",
    "null_soft_set",
    "absolute_soft_set",
    "complement",
    "union",
    "intersection",
    "difference",
    "is_subset",
    "equals",
    "is_disjoint",
    "member",
    "member_at",
    "point_soft_set",
    "restrict",
    "image",
    "preimage",
    "compose",
    "identity_mapping",
    "all_soft_sets",
]

# Bit-level lookup tables are built only below this many points per row.
_TABLE_LIMIT = 12
_MEMO_LIMIT = 4096


def _ones(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class Universe:
    """The ground set ``X`` together with the parameter set ``A``.

    Both are ordered; the order is the canonical serialization order and
    fixes the bit layout of every soft set over this universe.
    """

    points: tuple[str, ...]
    parameters: tuple[str, ...]

    def __post_init__(self) -> None:
        points = tuple(self.points)
        parameters = tuple(self.parameters)
        if not points:
            raise ValueError("a universe needs at least one point")
        if not parameters:
            raise ValueError("a universe needs at least one parameter")
        if len(set(points)) != len(points):
            raise ValueError(f"duplicate point labels in {points!r}")
        if len(set(parameters)) != len(parameters):
            raise ValueError(f"duplicate parameter labels in {parameters!r}")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "parameters", parameters)

    @classmethod
    def of_shape(cls, n_points: int, n_params: int) -> "Universe":
        """Universe with generated labels ``p0..`` and ``a0..``."""
        return cls(
            tuple(f"p{i}" for i in range(n_points)),
            tuple(f"a{j}" for j in range(n_params)),
        )

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_params(self) -> int:
        return len(self.parameters)

    @property
    def n_cells(self) -> int:
        return len(self.points) * len(self.parameters)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.points), len(self.parameters)

    @cached_property
    def _point_index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def _param_index(self) -> dict[str, int]:
        return {a: j for j, a in enumerate(self.parameters)}

    def point_index(self, label: str) -> int:
        try:
            return self._point_index[label]
        except KeyError:
            raise UnknownLabelError(f"unknown point {label!r}") from None

    def param_index(self, label: str) -> int:
        try:
            return self._param_index[label]
        except KeyError:
            raise UnknownLabelError(f"unknown parameter {label!r}") from None

    @cached_property
    def row_mask(self) -> int:
        """Bitmask of a full row (all points)."""
        return _ones(len(self.points))

    @cached_property
    def full_mask(self) -> int:
        return _ones(self.n_cells)

    @cached_property
    def column_masks(self) -> tuple[int, ...]:
        """For each point, the bits of that point across every row."""
        n = len(self.points)
        out = []
        for i in range(n):
            mask = 0
            for a in range(len(self.parameters)):
                mask |= 1 << (a * n + i)
            out.append(mask)
        return tuple(out)

    def rows_of(self, bits: int) -> tuple[int, ...]:
        n = len(self.points)
        mask = self.row_mask
        return tuple((bits >> (a * n)) & mask for a in range(len(self.parameters)))

    def from_rows_bits(self, rows: Sequence[int]) -> int:
        n = len(self.points)
        bits = 0
        for a, row in enumerate(rows):
            bits |= row << (a * n)
        return bits

    def points_of(self, row: int) -> frozenset[str]:
        return frozenset(p for i, p in enumerate(self.points) if row >> i & 1)

    def point_mask(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            mask |= 1 << self.point_index(label)
        return mask


@dataclass(frozen=True)
class SoftSet:
    """A soft set over ``universe`` encoded by the integer ``bits``.

    Build from labels with :meth:`from_rows`; the operators ``|``, ``&``,
    ``-``, ``~`` and ``<=`` are soft union, intersection, difference,
    complement and soft inclusion.
    """

    universe: Universe
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.universe.n_cells:
            raise ValueError(f"bits {self.bits:#x} out of range for universe")

    @classmethod
    def from_rows(
        cls,
        universe: Universe,
        rows: Mapping[str, Iterable[str]] | Sequence[Iterable[str]],
    ) -> "SoftSet":
        """Build from a parameter -> points mapping, or a list of rows in
        parameter order.  Parameters missing from a mapping get empty rows."""
        if isinstance(rows, Mapping):
            masks = [0] * universe.n_params
            for param, pts in rows.items():
                masks[universe.param_index(param)] = universe.point_mask(pts)
        else:
            rows = list(rows)
            if len(rows) != universe.n_params:
                raise ValueError(
                    f"expected {universe.n_params} rows, got {len(rows)}"
                )
            masks = [universe.point_mask(r) for r in rows]
        return cls(universe, universe.from_rows_bits(masks))

    @property
    def row_bits(self) -> tuple[int, ...]:
        return self.universe.rows_of(self.bits)

    def row(self, param: str) -> frozenset[str]:
        a = self.universe.param_index(param)
        return self.universe.points_of(self.row_bits[a])

    def as_dict(self) -> dict[str, list[str]]:
        """Parameter label -> point labels, both in canonical order."""
        u = self.universe
        return {
            u.parameters[a]: [p for i, p in enumerate(u.points) if row >> i & 1]
            for a, row in enumerate(self.row_bits)
        }

    @property
    def is_null(self) -> bool:
        return self.bits == 0

    @property
    def is_absolute(self) -> bool:
        return self.bits == self.universe.full_mask

    def _check(self, other: "SoftSet") -> None:
        if other.universe is not self.universe and other.universe != self.universe:
            raise IncompatibleUniverseError(
                "soft sets live over different universes"
            )

    def __or__(self, other: "SoftSet") -> "SoftSet":
        self._check(other)
        return SoftSet(self.universe, self.bits | other.bits)

    def __and__(self, other: "SoftSet") -> "SoftSet":
        self._check(other)
        return SoftSet(self.universe, self.bits & other.bits)

    def __sub__(self, other: "SoftSet") -> "SoftSet":
        self._check(other)
        return SoftSet(self.universe, self.bits & ~other.bits)

    def __invert__(self) -> "SoftSet":
        return SoftSet(self.universe, self.universe.full_mask & ~self.bits)

    def __le__(self, other: "SoftSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: "SoftSet") -> bool:
        return other <= self

    def __repr__(self) -> str:
        body = ", ".join(
            "{" + ",".join(sorted(self.universe.points_of(r), key=self.universe.point_index)) + "}"
            for r in self.row_bits
        )
        return f"SoftSet<{body}>"


def null_soft_set(universe: Universe) -> SoftSet:
    """``0_A``: every row empty."""
    return SoftSet(universe, 0)


def absolute_soft_set(universe: Universe) -> SoftSet:
    """``1_A``: every row is the whole ground set."""
    return SoftSet(universe, universe.full_mask)


def complement(s: SoftSet) -> SoftSet:
    return ~s


def union(s: SoftSet, t: SoftSet) -> SoftSet:
    return s | t


def intersection(s: SoftSet, t: SoftSet) -> SoftSet:
    return s & t


def difference(s: SoftSet, t: SoftSet) -> SoftSet:
    return s - t


def is_subset(s: SoftSet, t: SoftSet) -> bool:
    return s <= t


def equals(s: SoftSet, t: SoftSet) -> bool:
    s._check(t)
    return s.bits == t.bits


def is_disjoint(s: SoftSet, t: SoftSet) -> bool:
    s._check(t)
    return s.bits & t.bits == 0


def member(x: str, s: SoftSet) -> bool:
    """Total membership: ``x`` lies in ``F(a)`` for every parameter ``a``.

    Note that ``member(x, ~s)`` is stronger than ``not member(x, s)``.
    """
    col = s.universe.column_masks[s.universe.point_index(x)]
    return s.bits & col == col


def member_at(x: str, a: str, s: SoftSet) -> bool:
    u = s.universe
    return bool(s.bits >> (u.param_index(a) * u.n_points + u.point_index(x)) & 1)


def point_soft_set(x: str, universe: Universe) -> SoftSet:
    """``(F_x, A)``: every row equals ``{x}``."""
    return SoftSet(universe, universe.column_masks[universe.point_index(x)])


def restrict(s: SoftSet, subset: Iterable[str]) -> SoftSet:
    """Rowwise intersection with ``subset``, re-anchored over the sub-universe
    whose points are ``subset`` (kept in the parent's order)."""
    u = s.universe
    wanted = set(subset)
    for p in wanted:
        u.point_index(p)
    if not wanted:
        raise ValueError("restriction to an empty set of points")
    idx = [i for i, p in enumerate(u.points) if p in wanted]
    sub = Universe(tuple(u.points[i] for i in idx), u.parameters)
    return SoftSet(sub, _restrict_bits(s.bits, u, idx))


def _restrict_bits(bits: int, u: Universe, idx: Sequence[int]) -> int:
    n, m = u.n_points, len(idx)
    out = 0
    for a in range(u.n_params):
        row = bits >> (a * n)
        for k, i in enumerate(idx):
            if row >> i & 1:
                out |= 1 << (a * m + k)
    return out


def all_soft_sets(universe: Universe) -> Iterator[SoftSet]:
    """Every soft set over ``universe`` in increasing bit order."""
    for bits in range(1 << universe.n_cells):
        yield SoftSet(universe, bits)


@dataclass(frozen=True)
class SoftMapping:
    """A soft mapping ``(f, e)`` from ``SS(source)`` to ``SS(target)``.

    ``point_map[i]`` is the target point index of source point ``i`` and
    ``param_map[a]`` the target parameter index of source parameter ``a``.
    """

    source: Universe
    target: Universe
    point_map: tuple[int, ...]
    param_map: tuple[int, ...]
    _tables: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "point_map", tuple(self.point_map))
        object.__setattr__(self, "param_map", tuple(self.param_map))
        if len(self.point_map) != self.source.n_points:
            raise ValueError("point map is not total on the source points")
        if len(self.param_map) != self.source.n_params:
            raise ValueError("parameter map is not total on the source parameters")
        if any(not 0 <= j < self.target.n_points for j in self.point_map):
            raise ValueError("point map leaves the target points")
        if any(not 0 <= b < self.target.n_params for b in self.param_map):
            raise ValueError("parameter map leaves the target parameters")

    @classmethod
    def from_labels(
        cls,
        source: Universe,
        target: Universe,
        point_map: Mapping[str, str],
        param_map: Mapping[str, str],
    ) -> "SoftMapping":
        missing = [p for p in source.points if p not in point_map]
        missing += [a for a in source.parameters if a not in param_map]
        if missing:
            raise ValueError(f"mapping is not total; missing {missing!r}")
        for p in point_map:
            source.point_index(p)
        for a in param_map:
            source.param_index(a)
        return cls(
            source,
            target,
            tuple(target.point_index(point_map[p]) for p in source.points),
            tuple(target.param_index(param_map[a]) for a in source.parameters),
        )

    def point_label_map(self) -> dict[str, str]:
        return {p: self.target.points[j] for p, j in zip(self.source.points, self.point_map)}

    def param_label_map(self) -> dict[str, str]:
        return {a: self.target.parameters[b] for a, b in zip(self.source.parameters, self.param_map)}

    @property
    def is_injective(self) -> bool:
        return (
            len(set(self.point_map)) == len(self.point_map)
            and len(set(self.param_map)) == len(self.param_map)
        )

    @property
    def is_surjective(self) -> bool:
        return (
            len(set(self.point_map)) == self.target.n_points
            and len(set(self.param_map)) == self.target.n_params
        )

    @property
    def points_injective(self) -> bool:
        return len(set(self.point_map)) == len(self.point_map)

    @property
    def params_injective(self) -> bool:
        return len(set(self.param_map)) == len(self.param_map)

    @property
    def params_surjective(self) -> bool:
        return len(set(self.param_map)) == self.target.n_params

    # Row-level transfer tables: forward image of a source row and inverse
    # image of a target row, indexed by the row's bit pattern.
    def _forward(self, row: int) -> int:
        tab = self._tables.get("fwd")
        if tab is None and self.source.n_points <= _TABLE_LIMIT:
            tab = [self._forward_raw(r) for r in range(1 << self.source.n_points)]
            self._tables["fwd"] = tab
        return tab[row] if tab is not None else self._forward_raw(row)

    def _forward_raw(self, row: int) -> int:
        out = 0
        for i, j in enumerate(self.point_map):
            if row >> i & 1:
                out |= 1 << j
        return out

    def _backward(self, row: int) -> int:
        tab = self._tables.get("bwd")
        if tab is None and self.target.n_points <= _TABLE_LIMIT:
            tab = [self._backward_raw(r) for r in range(1 << self.target.n_points)]
            self._tables["bwd"] = tab
        return tab[row] if tab is not None else self._backward_raw(row)

    def _backward_raw(self, row: int) -> int:
        out = 0
        for i, j in enumerate(self.point_map):
            if row >> j & 1:
                out |= 1 << i
        return out

    # Whole-set results are memoized per mapping; on small universes the
    # same mapping is applied to the same few soft sets many times.
    def image_bits(self, bits: int) -> int:
        memo = self._tables.setdefault("img", {})
        out = memo.get(bits)
        if out is None:
            out = self._image_raw(bits)
            if len(memo) < _MEMO_LIMIT:
                memo[bits] = out
        return out

    def preimage_bits(self, bits: int) -> int:
        memo = self._tables.setdefault("pre", {})
        out = memo.get(bits)
        if out is None:
            out = self._preimage_raw(bits)
            if len(memo) < _MEMO_LIMIT:
                memo[bits] = out
        return out

    def _image_raw(self, bits: int) -> int:
        n1, n2 = self.source.n_points, self.target.n_points
        mask = self.source.row_mask
        out = 0
        for a, b in enumerate(self.param_map):
            row = (bits >> (a * n1)) & mask
            if row:
                out |= self._forward(row) << (b * n2)
        return out

    def _preimage_raw(self, bits: int) -> int:
        n1, n2 = self.source.n_points, self.target.n_points
        mask = self.target.row_mask
        out = 0
        for a, b in enumerate(self.param_map):
            row = (bits >> (b * n2)) & mask
            if row:
                out |= self._backward(row) << (a * n1)
        return out


def identity_mapping(universe: Universe) -> SoftMapping:
    return SoftMapping(
        universe, universe, tuple(range(universe.n_points)), tuple(range(universe.n_params))
    )


def image(m: SoftMapping, s: SoftSet) -> SoftSet:
    """Row ``b`` of the image is the union of ``f(F(a))`` over ``a`` with
    ``e(a) = b``, and empty when no parameter maps to ``b``."""
    if s.universe != m.source:
        raise IncompatibleUniverseError("soft set is not over the mapping's source")
    return SoftSet(m.target, m.image_bits(s.bits))


def preimage(m: SoftMapping, t: SoftSet) -> SoftSet:
    """Row ``a`` of the preimage is ``f^{-1}(G(e(a)))``."""
    if t.universe != m.target:
        raise IncompatibleUniverseError("soft set is not over the mapping's target")
    return SoftSet(m.source, m.preimage_bits(t.bits))


def compose(m2: SoftMapping, m1: SoftMapping) -> SoftMapping:
    """``m2 ∘ m1``: apply ``m1`` first."""
    if m1.target != m2.source:
        raise IncompatibleUniverseError("mappings are not composable")
    return SoftMapping(
        m1.source,
        m2.target,
        tuple(m2.point_map[j] for j in m1.point_map),
        tuple(m2.param_map[b] for b in m1.param_map),
    )
