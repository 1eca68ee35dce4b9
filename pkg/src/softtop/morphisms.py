"""Properties of soft mappings between soft topological spaces."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .exceptions import IncompatibleUniverseError, NotContinuousError
from .soft_core import SoftMapping, SoftSet, compose
from .topology import SoftSpace

__all__ = [
    "MapProperty",
    "PropertyResult",
    "MapReport",
    "TwoOfThreeReport",
    "check_map",
    "map_report",
    "is_continuous",
    "is_initial",
    "is_quasihomomorphism",
    "inverse_mapping",
    "two_of_three",
]


class MapProperty(str, enum.Enum):
    Continuous = "Continuous"
    Open = "Open"
    Closed = "Closed"
    Initial = "Initial"
    InitialViaClosure = "InitialViaClosure"
    Quasihomomorphism = "Quasihomomorphism"
    Injective = "Injective"
    Surjective = "Surjective"
    Homeomorphism = "Homeomorphism"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: "str | MapProperty") -> "MapProperty":
        if isinstance(name, MapProperty):
            return name
        for p in cls:
            if p.value.lower() == name.strip().lower():
                return p
        raise ValueError(f"unknown map property {name!r}")


@dataclass(frozen=True)
class PropertyResult:
    """A decision plus, on failure, the soft sets that witness it."""

    holds: bool
    witness: tuple[SoftSet, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds


_OK = PropertyResult(True)


def _check_universes(m: SoftMapping, dom: SoftSpace, cod: SoftSpace) -> None:
    if m.source != dom.universe or m.target != cod.universe:
        raise IncompatibleUniverseError("mapping does not run between the given spaces")


def is_continuous(m: SoftMapping, dom: SoftSpace, cod: SoftSpace) -> bool:
    opens = dom.open_set
    return all(m.preimage_bits(g) in opens for g in cod.codes)


def _pulled_back(m: SoftMapping, cod: SoftSpace) -> set[int]:
    return {m.preimage_bits(g) for g in cod.codes}


def is_initial(m: SoftMapping, dom: SoftSpace, cod: SoftSpace) -> bool:
    """Continuous and every open of ``dom`` is a preimage of an open of ``cod``;
    that is, the pulled-back family is exactly the domain topology."""
    return _pulled_back(m, cod) == dom.open_set


def _meets_locally_closed(m: SoftMapping, dom: SoftSpace, cod: SoftSpace) -> int | None:
    """First nonnull locally closed set of ``cod`` missed by the image of
    ``1_A``, or ``None``."""
    img = m.image_bits(dom.universe.full_mask)
    for lc in sorted(cod.locally_closed_set):
        if lc and not lc & img:
            return lc
    return None


def is_quasihomomorphism(m: SoftMapping, dom: SoftSpace, cod: SoftSpace) -> bool:
    return is_initial(m, dom, cod) and _meets_locally_closed(m, dom, cod) is None


def inverse_mapping(m: SoftMapping) -> SoftMapping:
    if not (m.is_injective and m.is_surjective):
        raise ValueError("only bijective soft mappings have an inverse")
    points = [0] * m.target.n_points
    params = [0] * m.target.n_params
    for i, j in enumerate(m.point_map):
        points[j] = i
    for a, b in enumerate(m.param_map):
        params[b] = a
    return SoftMapping(m.target, m.source, tuple(points), tuple(params))


def _continuity(m: SoftMapping, dom: SoftSpace, cod: SoftSpace) -> PropertyResult:
    for g in cod.codes:
        if m.preimage_bits(g) not in dom.open_set:
            return PropertyResult(
                False, (SoftSet(cod.universe, g),), "preimage of this open is not open"
            )
    return _OK


def check_map(
    m: SoftMapping, dom: SoftSpace, cod: SoftSpace, p: MapProperty | str
) -> PropertyResult:
    """Decide one property of ``m`` viewed as a map ``dom -> cod``."""
    _check_universes(m, dom, cod)
    p = MapProperty.parse(p)
    if p is MapProperty.Continuous:
        return _continuity(m, dom, cod)
    if p is MapProperty.Open:
        for f in dom.codes:
            if m.image_bits(f) not in cod.open_set:
                return PropertyResult(False, (SoftSet(dom.universe, f),), "image of this open is not open")
        return _OK
    if p is MapProperty.Closed:
        for f in dom.closed_codes:
            if m.image_bits(f) not in cod.closed_set:
                return PropertyResult(False, (SoftSet(dom.universe, f),), "image of this closed set is not closed")
        return _OK
    if p is MapProperty.Injective:
        return PropertyResult(m.is_injective, reason="" if m.is_injective else "point or parameter map not injective")
    if p is MapProperty.Surjective:
        return PropertyResult(m.is_surjective, reason="" if m.is_surjective else "point or parameter map not surjective")
    if p is MapProperty.Homeomorphism:
        for q in (MapProperty.Continuous, MapProperty.Injective, MapProperty.Surjective):
            res = check_map(m, dom, cod, q)
            if not res:
                return PropertyResult(False, res.witness, f"not {q.value.lower()}")
        res = _continuity(inverse_mapping(m), cod, dom)
        if not res:
            return PropertyResult(False, res.witness, "inverse is not continuous")
        return _OK

    # Initial, InitialViaClosure and Quasihomomorphism presuppose continuity.
    cont = _continuity(m, dom, cod)
    if not cont:
        return PropertyResult(False, cont.witness, "not continuous: " + cont.reason)
    if p is MapProperty.Initial:
        pulled = _pulled_back(m, cod)
        for f in dom.codes:
            if f not in pulled:
                return PropertyResult(False, (SoftSet(dom.universe, f),), "open set is not a preimage of an open set")
        return _OK
    if p is MapProperty.InitialViaClosure:
        full = cod.universe.full_mask
        for f in dom.closed_codes:
            hull = full ^ cod.interior_bits(full ^ m.image_bits(f))
            if m.preimage_bits(hull) != f:
                return PropertyResult(
                    False,
                    (SoftSet(dom.universe, f),),
                    "closed set differs from the preimage of the closure of its image",
                )
        return _OK
    if p is MapProperty.Quasihomomorphism:
        res = check_map(m, dom, cod, MapProperty.Initial)
        if not res:
            return PropertyResult(False, res.witness, "not initial: " + res.reason)
        missed = _meets_locally_closed(m, dom, cod)
        if missed is not None:
            return PropertyResult(
                False,
                (SoftSet(cod.universe, missed),),
                "image of 1_A misses this nonnull locally closed set",
            )
        return _OK
    raise ValueError(f"unknown property {p!r}")


@dataclass(frozen=True)
class MapReport:
    """Every :class:`MapProperty` decided for one mapping."""

    mapping: str
    values: dict[MapProperty, bool]
    witnesses: dict[MapProperty, PropertyResult] = field(default_factory=dict)

    def __getitem__(self, p: MapProperty | str) -> bool:
        return self.values[MapProperty.parse(p)]

    def as_dict(self) -> dict[str, bool]:
        return {p.value: v for p, v in self.values.items()}


def map_report(
    m: SoftMapping,
    dom: SoftSpace,
    cod: SoftSpace,
    props: list[MapProperty] | None = None,
    name: str = "",
) -> MapReport:
    props = list(MapProperty) if props is None else [MapProperty.parse(p) for p in props]
    values, witnesses = {}, {}
    for p in props:
        res = check_map(m, dom, cod, p)
        values[p] = res.holds
        if not res:
            witnesses[p] = res
    return MapReport(name, values, witnesses)


@dataclass(frozen=True)
class TwoOfThreeReport:
    first: bool
    second: bool
    composite: bool

    @property
    def consistent(self) -> bool:
        """False exactly when two of the three are quasihomomorphisms and the
        third is not."""
        return (self.first + self.second + self.composite) != 2


def two_of_three(
    m1: SoftMapping,
    m2: SoftMapping,
    x: SoftSpace,
    y: SoftSpace,
    z: SoftSpace,
) -> TwoOfThreeReport:
    """Quasihomomorphism status of ``m1: x -> y``, ``m2: y -> z`` and their
    composite."""
    _check_universes(m1, x, y)
    _check_universes(m2, y, z)
    if not is_continuous(m1, x, y) or not is_continuous(m2, y, z):
        raise NotContinuousError("both mappings must be soft continuous")
    return TwoOfThreeReport(
        is_quasihomomorphism(m1, x, y),
        is_quasihomomorphism(m2, y, z),
        is_quasihomomorphism(compose(m2, m1), x, z),
    )
