"""The soft T0 reflection of a soft T0U space and the T(0,α) axioms.

Points identified by ≈ are collapsed to classes; the quotient carries every
soft set whose preimage under the canonical surjection ``g0X`` is open.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

from .exceptions import (
    ConsistencyError,
    NotContinuousError,
    NotT0Error,
    NotT0UError,
    SoftTopologyError,
)
from .morphisms import check_map, is_continuous, MapProperty
from .separation import Axiom, check_axiom, separate_pairs
from .soft_core import SoftMapping, SoftSet, Universe, compose
from .topology import SoftSpace

__all__ = [
    "Alpha",
    "Reflection",
    "compute_reflection",
    "induced_map",
    "factor_through_reflection",
    "point_class_soft_set",
    "check_t0_alpha",
    "check_t0_alpha_direct",
    "t0_1k_routes",
]

logger = logging.getLogger(__name__)


class Alpha(str, enum.Enum):
    ZeroK = "0k"
    One = "1"
    OneK = "1k"
    Two = "2"
    ThreeK = "3k"
    Three = "3"
    TS = "TS"
    TSK = "TSk"

    def __str__(self) -> str:
        return f"T(0,{self.value})"

    @property
    def axiom(self) -> Axiom:
        return _ALPHA_AXIOM[self]

    @classmethod
    def parse(cls, name: "str | Alpha") -> "Alpha":
        if isinstance(name, Alpha):
            return name
        key = name.strip()
        for prefix in ("T(0,", "T0,", "T0_"):
            if key.upper().startswith(prefix.upper()):
                key = key[len(prefix):].rstrip(")")
        for a in cls:
            if key.lower() in (a.value.lower(), a.name.lower()):
                return a
        raise ValueError(f"unknown alpha {name!r}")


_ALPHA_AXIOM = {
    Alpha.ZeroK: Axiom.T0k,
    Alpha.One: Axiom.T1,
    Alpha.OneK: Axiom.T1k,
    Alpha.Two: Axiom.T2,
    Alpha.ThreeK: Axiom.T3k,
    Alpha.Three: Axiom.T3,
    Alpha.TS: Axiom.TotallySeparated,
    Alpha.TSK: Axiom.KTotallySeparated,
}


@dataclass(frozen=True)
class Reflection:
    """The quotient of ``source`` by ≈ together with ``g0X``.

    ``classes[k]`` lists the points of class ``k`` in canonical order; its
    first point is the representative and names the class ``[p]``.
    ``verified`` is False only for reflections forced on non-T0U spaces.
    """

    source: SoftSpace
    classes: tuple[tuple[str, ...], ...]
    quotient: SoftSpace
    surjection: SoftMapping
    verified: bool = True

    def class_of(self, x: str) -> str:
        i = self.source.universe.point_index(x)
        return self.quotient.universe.points[self.surjection.point_map[i]]

    def members(self, label: str) -> tuple[str, ...]:
        return self.classes[self.quotient.universe.point_index(label)]


def compute_reflection(sp: SoftSpace, force: bool = False) -> Reflection:
    """Build the soft T0 reflection of ``sp``.

    Raises :class:`NotT0UError` unless ``sp`` is soft T0U; with ``force``
    the quotient is still built but none of the T0U guarantees are checked.
    """
    t0u = check_axiom(sp, Axiom.T0U)
    if not t0u and not force:
        raise NotT0UError(f"{sp!r} is not soft T0U; pass force=True to build anyway")
    u = sp.universe
    cls = sp.class_index
    classes: list[list[str]] = [[] for _ in range(max(cls) + 1)]
    for p, k in zip(u.points, cls):
        classes[k].append(p)
    qu = Universe(tuple(f"[{c[0]}]" for c in classes), u.parameters)
    g = SoftMapping(u, qu, cls, tuple(range(u.n_params)))

    # S is open in the quotient iff its preimage G is open; then S is the
    # image of G and G is fixed by preimage∘image.
    codes = set()
    for c in sp.codes:
        img = g.image_bits(c)
        if g.preimage_bits(img) == c:
            codes.add(img)
    quotient = SoftSpace.from_codes(qu, codes, name=f"{sp.name}/≈" if sp.name else "")

    if t0u:
        image_route = {g.image_bits(c) for c in sp.codes}
        if image_route != codes:
            raise ConsistencyError("preimage and image constructions of the quotient differ")
        if not check_axiom(quotient, Axiom.T0):
            raise ConsistencyError("quotient of a T0U space is not soft T0")
    return Reflection(sp, tuple(tuple(c) for c in classes), quotient, g, t0u)


def _class_map(r_src: Reflection, point_map, target_classes) -> tuple[int, ...]:
    """Send each class to the image class of its members; all members must
    agree."""
    out = []
    src_cls = r_src.surjection.point_map
    for k in range(r_src.quotient.universe.n_points):
        images = {target_classes[point_map[i]] for i, c in enumerate(src_cls) if c == k}
        if len(images) != 1:
            raise SoftTopologyError(
                f"mapping does not respect ≈: class {r_src.quotient.universe.points[k]} "
                "has members with inequivalent images"
            )
        out.append(images.pop())
    return tuple(out)


def induced_map(r_src: Reflection, r_tgt: Reflection, m: SoftMapping) -> SoftMapping:
    """``(T0(f), e)``: the map of quotients with ``T0(f)([x]) = [f(x)]``."""
    if not is_continuous(m, r_src.source, r_tgt.source):
        raise NotContinuousError("induced map needs a soft continuous mapping")
    pm = _class_map(r_src, m.point_map, r_tgt.surjection.point_map)
    t0m = SoftMapping(r_src.quotient.universe, r_tgt.quotient.universe, pm, m.param_map)
    if compose(r_tgt.surjection, m) != compose(t0m, r_src.surjection):
        raise ConsistencyError("induced map does not commute with the surjections")
    if not is_continuous(t0m, r_src.quotient, r_tgt.quotient):
        raise ConsistencyError("induced map is not soft continuous")
    return t0m


def factor_through_reflection(r: Reflection, m: SoftMapping, target: SoftSpace) -> SoftMapping:
    """The unique ``(f', e)`` with ``(f', e) ∘ g0X = m`` for ``m`` continuous
    into a soft T0 space."""
    if not check_axiom(target, Axiom.T0):
        raise NotT0Error("factorization target must be soft T0")
    if not is_continuous(m, r.source, target):
        raise NotContinuousError("mapping to factor is not soft continuous")
    pm = _class_map(r, m.point_map, tuple(range(target.universe.n_points)))
    fm = SoftMapping(r.quotient.universe, target.universe, pm, m.param_map)
    if compose(fm, r.surjection) != m:
        raise ConsistencyError("factorization does not reproduce the mapping")
    if not is_continuous(fm, r.quotient, target):
        raise ConsistencyError("factorization is not soft continuous")
    # The factor is determined on every class because r_X is onto.
    if not check_map(fm, r.quotient, target, MapProperty.Open):
        logger.info("factorization of %r through its reflection is not soft open", r.source)
    return fm


def point_class_soft_set(r: Reflection, x: str) -> SoftSet:
    """Soft set over the source with every row equal to the class of ``x``."""
    u = r.source.universe
    k = r.surjection.point_map[u.point_index(x)]
    row = 0
    for i, c in enumerate(r.surjection.point_map):
        if c == k:
            row |= 1 << i
    return SoftSet(u, u.from_rows_bits([row] * u.n_params))


def _require_t0u(sp: SoftSpace) -> None:
    if not check_axiom(sp, Axiom.T0U):
        raise NotT0UError(f"{sp!r} is not soft T0U")


def check_t0_alpha(sp: SoftSpace, alpha: Alpha | str) -> bool:
    """Whether the reflection of ``sp`` satisfies the axiom named by ``alpha``."""
    alpha = Alpha.parse(alpha)
    _require_t0u(sp)
    return check_axiom(compute_reflection(sp).quotient, alpha.axiom)


def _inequivalent_pairs(sp: SoftSpace) -> list[tuple[int, int]]:
    cls = sp.class_index
    n = len(cls)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if cls[i] != cls[j]]


def check_t0_alpha_direct(sp: SoftSpace, alpha: Alpha | str) -> bool:
    """Decide ``T(0,α)`` on ``sp`` itself, separating only points that lie in
    different ≈-classes."""
    alpha = Alpha.parse(alpha)
    _require_t0u(sp)
    pairs = _inequivalent_pairs(sp)
    if alpha is Alpha.ThreeK:
        return separate_pairs(sp, Axiom.T1k, pairs) and check_axiom(sp, Axiom.KRegular)
    if alpha is Alpha.Three:
        return separate_pairs(sp, Axiom.T1, pairs) and check_axiom(sp, Axiom.Regular)
    return separate_pairs(sp, alpha.axiom, pairs)


def t0_1k_routes(sp: SoftSpace) -> tuple[bool, bool, bool]:
    """``T(0,1k)`` three ways: through the quotient, by pairwise separation,
    and by closedness of every class soft set."""
    r = compute_reflection(sp)
    by_classes = all(
        point_class_soft_set(r, x).bits in sp.closed_set for x in sp.universe.points
    )
    return (
        check_axiom(r.quotient, Axiom.T1k),
        check_t0_alpha_direct(sp, Alpha.OneK),
        by_classes,
    )
