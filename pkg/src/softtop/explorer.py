"""Exhaustive and sampled enumeration of soft spaces, implication mining and
counterexample search.

Soft topologies on ``(X, A)`` are exactly the topologies on the flat cell
set ``X × A`` (soft union, intersection and complement act cell by cell), so
exhaustive enumeration reuses :mod:`softtop.enumeration` on ``|X|·|A|``
points.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .enumeration import topologies
from .reflection import Alpha, check_t0_alpha
from .separation import Axiom, check_axiom
from .soft_core import SoftMapping, SoftSet, Universe
from .topology import SoftSpace, generate_topology

__all__ = [
    "DEFAULT_MAX_CELLS",
    "HARD_MAX_CELLS",
    "EnumerationSpec",
    "ImplicationReport",
    "Predicate",
    "parse_predicate",
    "parse_implication",
    "enumerate_spaces",
    "corpus",
    "all_mappings",
    "mine_implication",
    "find_counterexample",
    "MapCensus",
    "map_census",
]

DEFAULT_MAX_CELLS = 4
# Seven cells would mean 9.7 million topologies; not supported.
HARD_MAX_CELLS = 6
MAX_CELLS_ENV = "SOFTTOP_MAX_CELLS"


def configured_max_cells() -> int:
    raw = os.environ.get(MAX_CELLS_ENV)
    if raw is None:
        return DEFAULT_MAX_CELLS
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{MAX_CELLS_ENV} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class EnumerationSpec:
    """What to enumerate: all spaces of one shape, or ``count`` random ones.

    ``max_cells`` overrides the exhaustive size bound (default 4, or the
    ``SOFTTOP_MAX_CELLS`` environment variable); 6 cells takes minutes.
    """

    point_count: int
    param_count: int
    mode: str = "exhaustive"
    count: int = 0
    seed: int | None = None
    max_cells: int | None = None

    def __post_init__(self) -> None:
        if self.point_count < 1 or self.param_count < 1:
            raise ValueError("point_count and param_count must be positive")
        if self.mode == "exhaustive":
            bound = self.max_cells if self.max_cells is not None else configured_max_cells()
            cells = self.point_count * self.param_count
            if cells > min(bound, HARD_MAX_CELLS):
                raise ValueError(
                    f"exhaustive enumeration of {self.point_count}x{self.param_count} "
                    f"({cells} cells) exceeds the bound of {min(bound, HARD_MAX_CELLS)}"
                )
        elif self.mode == "sampled":
            if self.seed is None:
                raise ValueError("sampled enumeration needs a seed")
            if self.count < 1:
                raise ValueError("sampled enumeration needs a positive count")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def sampled(cls, points: int, params: int, count: int, seed: int) -> "EnumerationSpec":
        return cls(points, params, "sampled", count, seed)

    @property
    def universe(self) -> Universe:
        return Universe.of_shape(self.point_count, self.param_count)


def enumerate_spaces(spec: EnumerationSpec) -> Iterator[SoftSpace]:
    """Every soft topology of the requested shape exactly once (exhaustive), or
    closures of seeded random families (sampled)."""
    u = spec.universe
    shape = f"{spec.point_count}x{spec.param_count}"
    if spec.mode == "exhaustive":
        for k, codes in enumerate(topologies(u.n_cells)):
            yield SoftSpace.from_codes(u, codes, name=f"{shape}#{k}")
        return
    rng = random.Random(spec.seed)
    cells = u.n_cells
    for k in range(spec.count):
        size = rng.randint(1, 2 * cells)
        family = [SoftSet(u, rng.getrandbits(cells)) for _ in range(size)]
        yield SoftSpace(u, generate_topology(u, family), name=f"{shape}~{spec.seed}#{k}")


def corpus(max_cells: int = DEFAULT_MAX_CELLS) -> Iterator[SoftSpace]:
    """All soft spaces of every shape with at most ``max_cells`` cells."""
    for cells in range(1, max_cells + 1):
        for n in range(1, cells + 1):
            if cells % n == 0:
                yield from enumerate_spaces(
                    EnumerationSpec(n, cells // n, max_cells=max_cells)
                )


def all_mappings(source: Universe, target: Universe) -> Iterator[SoftMapping]:
    """Every soft mapping between two universes."""
    for pm in product(range(target.n_points), repeat=source.n_points):
        for em in product(range(target.n_params), repeat=source.n_params):
            yield SoftMapping(source, target, pm, em)


@dataclass(frozen=True)
class Predicate:
    """An axiom or a T(0,α) property; α-predicates apply to T0U spaces only."""

    name: str
    axiom: Axiom | None = None
    alpha: Alpha | None = None

    def applies(self, sp: SoftSpace) -> bool:
        return self.alpha is None or check_axiom(sp, Axiom.T0U)

    def __call__(self, sp: SoftSpace) -> bool:
        if self.axiom is not None:
            return check_axiom(sp, self.axiom)
        return check_t0_alpha(sp, self.alpha)

    def __str__(self) -> str:
        return self.name


def parse_predicate(name: str | Axiom | Alpha | Predicate) -> Predicate:
    if isinstance(name, Predicate):
        return name
    if isinstance(name, Axiom):
        return Predicate(name.value, axiom=name)
    if isinstance(name, Alpha):
        return Predicate(str(name), alpha=name)
    try:
        ax = Axiom.parse(name)
        return Predicate(ax.value, axiom=ax)
    except ValueError:
        pass
    try:
        alpha = Alpha.parse(name)
    except ValueError:
        raise ValueError(f"unknown predicate {name!r}") from None
    return Predicate(str(alpha), alpha=alpha)


def _conjunction(items) -> tuple[Predicate, ...]:
    if isinstance(items, (str, Axiom, Alpha, Predicate)):
        items = [items]
    out: list[Predicate] = []
    for item in items:
        if isinstance(item, str) and not isinstance(item, (Axiom, Alpha)):
            out.extend(parse_predicate(p.strip()) for p in item.split("&") if p.strip())
        else:
            out.append(parse_predicate(item))
    if not out:
        raise ValueError("empty predicate")
    return tuple(out)


def parse_implication(text: str) -> tuple[tuple[Predicate, ...], Predicate]:
    """Parse ``"ANTE=>CONS"``; the antecedent may join predicates with ``&``."""
    if "=>" not in text:
        raise ValueError(f"implication must look like ANTE=>CONS, got {text!r}")
    ante, cons = text.split("=>", 1)
    return _conjunction(ante), parse_predicate(cons.strip())


@dataclass(frozen=True)
class ImplicationReport:
    antecedent: tuple[Predicate, ...]
    consequent: Predicate
    status: str
    witness: SoftSpace | None
    spaces_checked: int
    skipped: int = 0

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def describe(self) -> str:
        ante = " & ".join(map(str, self.antecedent))
        head = f"{ante} => {self.consequent}: {self.status}"
        tail = f" ({self.spaces_checked} spaces checked"
        tail += f", {self.skipped} non-T0U skipped)" if self.skipped else ")"
        return head + tail


def _verdict(ante: Sequence[Predicate], cons: Predicate, sp: SoftSpace) -> str:
    """``"skip"``, ``"ok"`` or ``"refuted"`` for one space."""
    preds = list(ante) + [cons]
    if not all(p.applies(sp) for p in preds):
        return "skip"
    if all(p(sp) for p in ante) and not cons(sp):
        return "refuted"
    return "ok"


def _scan(
    spaces: Iterable[SoftSpace],
    verdict: Callable[[SoftSpace], str],
    n_jobs: int,
) -> tuple[str, SoftSpace | None, int, int]:
    checked = skipped = 0
    if n_jobs <= 1:
        results = ((sp, verdict(sp)) for sp in spaces)
    else:
        pool = ThreadPoolExecutor(max_workers=n_jobs)
        # map() keeps input order, so the first witness is enumeration-first.
        results = _ordered(spaces, pool, verdict)
    try:
        for sp, v in results:
            if v == "skip":
                skipped += 1
                continue
            checked += 1
            if v == "refuted":
                return "refuted", sp, checked, skipped
    finally:
        if n_jobs > 1:
            pool.shutdown(cancel_futures=True)
    return "holds", None, checked, skipped


def _ordered(spaces, pool, verdict, chunk: int = 512):
    buf: list[SoftSpace] = []
    for sp in spaces:
        buf.append(sp)
        if len(buf) == chunk:
            yield from zip(buf, pool.map(verdict, buf))
            buf = []
    if buf:
        yield from zip(buf, pool.map(verdict, buf))


def mine_implication(
    spec: EnumerationSpec,
    antecedent,
    consequent,
    n_jobs: int = 1,
) -> ImplicationReport:
    """Check ``antecedent ⟹ consequent`` on every enumerated space and stop
    at the first refuting witness."""
    ante = _conjunction(antecedent)
    cons = parse_predicate(consequent)
    status, witness, checked, skipped = _scan(
        enumerate_spaces(spec), lambda sp: _verdict(ante, cons, sp), n_jobs
    )
    return ImplicationReport(ante, cons, status, witness, checked, skipped)


def find_counterexample(
    spec: EnumerationSpec, antecedent, consequent, n_jobs: int = 1
) -> SoftSpace | None:
    """First space (in enumeration order) where the implication fails."""
    return mine_implication(spec, antecedent, consequent, n_jobs).witness


@dataclass
class MapCensus:
    """Continuity and quasihomomorphism status of every soft mapping between
    every ordered pair of the given spaces.

    ``mappings[(U, V)]`` lists :func:`all_mappings` between two universes;
    ``continuous[(i, j)]`` holds the indices into that list of the continuous
    maps from ``spaces[i]`` to ``spaces[j]``; ``quasihomomorphisms`` holds
    ``(i, j, k)`` triples.
    """

    spaces: list[SoftSpace]
    mappings: dict[tuple[Universe, Universe], list[SoftMapping]]
    continuous: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    quasihomomorphisms: set[tuple[int, int, int]] = field(default_factory=set)
    _index: dict = field(default_factory=dict, repr=False)

    def mapping(self, i: int, j: int, k: int) -> SoftMapping:
        return self.mappings[(self.spaces[i].universe, self.spaces[j].universe)][k]

    def index_of(self, m: SoftMapping) -> int:
        key = (m.source, m.target)
        table = self._index.get(key)
        if table is None:
            table = {(f.point_map, f.param_map): k for k, f in enumerate(self.mappings[key])}
            self._index[key] = table
        return table[(m.point_map, m.param_map)]

    def is_continuous(self, i: int, j: int, k: int) -> bool:
        return k in self._cont_sets().get((i, j), ())

    def _cont_sets(self) -> dict:
        cached = self._index.get("_cont")
        if cached is None:
            cached = {key: frozenset(ks) for key, ks in self.continuous.items()}
            self._index["_cont"] = cached
        return cached

    @property
    def n_continuous(self) -> int:
        return sum(len(ks) for ks in self.continuous.values())


def map_census(spaces: Sequence[SoftSpace]) -> MapCensus:
    """Decide continuity and the quasihomomorphism property for all mappings
    between all pairs of ``spaces``.

    The family pulled back from a codomain along a mapping does not depend
    on the domain's topology, so it is computed once per (codomain, mapping)
    and compared against each domain: continuity is inclusion in the domain
    topology, initiality is equality.
    """
    spaces = list(spaces)
    groups: dict[Universe, list[int]] = {}
    for i, sp in enumerate(spaces):
        groups.setdefault(sp.universe, []).append(i)
    census = MapCensus(spaces, {})
    for u in groups:
        for v in groups:
            census.mappings[(u, v)] = list(all_mappings(u, v))
    for j, cod in enumerate(spaces):
        lc = [c for c in cod.locally_closed_set if c]
        for u, doms in groups.items():
            for k, m in enumerate(census.mappings[(u, cod.universe)]):
                pulled = frozenset(m.preimage_bits(g) for g in cod.codes)
                img = m.image_bits(u.full_mask)
                meets = all(c & img for c in lc)
                for i in doms:
                    opens = spaces[i].open_set
                    if pulled <= opens:
                        census.continuous.setdefault((i, j), []).append(k)
                        if meets and pulled == opens:
                            census.quasihomomorphisms.add((i, j, k))
    return census
