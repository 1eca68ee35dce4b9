import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import example
from softtop.exceptions import TopologyAxiomError, UnknownLabelError
from softtop.soft_core import SoftSet, Universe, absolute_soft_set, all_soft_sets, null_soft_set
from softtop.topology import (
    SoftSpace,
    approx,
    approx_classes,
    closure,
    closure_point_test,
    generate_topology,
    interior,
    is_clopen,
    is_closed,
    is_locally_closed,
    is_open,
    neighborhoods,
    subspace,
    validate_topology,
)

import oracles

U = Universe(("x", "y", "z"), ("a1", "a2"))


def S(a1, a2, u=U):
    return SoftSet.from_rows(u, {"a1": a1, "a2": a2})


def ex3_family():
    return [
        null_soft_set(U),
        absolute_soft_set(U),
        S(["x"], ["x"]),
        S(["x", "y"], ["y"]),
        S(["x"], []),
        S(["x", "y"], ["x", "y"]),
    ]


def ex2_family():
    return [null_soft_set(U), absolute_soft_set(U), S(["x"], ["x"]), S(["x", "y"], ["y", "z"]), S(["x"], [])]


def test_validate_examples():
    assert validate_topology(U, ex3_family()).ok
    assert validate_topology(U, [null_soft_set(U), absolute_soft_set(U)]).ok
    rep = validate_topology(U, ex2_family())
    assert not rep.ok and rep.axiom == "union"
    names = {s.bits: n for n, s in zip(["0_A", "1_A", "B", "C", "D"], ex2_family())}
    assert rep.message(names) == "B ⊔ C is not in the family"


def test_validate_reports_missing_null_and_absolute():
    assert validate_topology(U, [absolute_soft_set(U)]).axiom == "null"
    assert validate_topology(U, [null_soft_set(U)]).axiom == "absolute"


def test_from_family_rejects_invalid_family():
    with pytest.raises(TopologyAxiomError) as info:
        SoftSpace.from_family(U, ex2_family())
    assert info.value.axiom == "union"


def test_generate_examples():
    t = generate_topology(U, ex2_family())
    assert set(t.code_set) == {s.bits for s in ex2_family()} | {S(["x", "y"], ["x", "y", "z"]).bits}
    assert set(generate_topology(U, ex3_family()).code_set) == {s.bits for s in ex3_family()}
    s = S(["y"], ["x", "z"])
    assert set(generate_topology(U, [s]).code_set) == {0, U.full_mask, s.bits}


def _random_families(seed, count, max_cells=6):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 3)
        k = rng.randint(1, max_cells // n)
        u = Universe.of_shape(n, k)
        yield u, [SoftSet(u, rng.getrandbits(u.n_cells)) for _ in range(rng.randint(0, 6))]


def test_generate_is_sound_and_minimal():
    for u, fam in _random_families(7, 300):
        t = generate_topology(u, fam)
        opens = t.opens
        assert validate_topology(u, opens).ok
        given = {s.bits for s in fam}
        assert given <= set(t.code_set)
        for extra in set(t.code_set) - given - {0, u.full_mask}:
            assert not validate_topology(u, [s for s in opens if s.bits != extra]).ok


def test_validate_agrees_with_classical_checker():
    rng = random.Random(11)
    for _ in range(400):
        u = Universe.of_shape(rng.randint(1, 2), rng.randint(1, 2))
        fam = {rng.getrandbits(u.n_cells) for _ in range(rng.randint(0, 6))}
        fam |= {0, u.full_mask} if rng.random() < 0.8 else set()
        sets = [SoftSet(u, b) for b in sorted(fam)]
        o = oracles.OSpace(u.points, u.parameters, frozenset())
        assert validate_topology(u, sets).ok == oracles.is_topology(o, [oracles.from_soft_set(s) for s in sets])


def test_subspace_example():
    sp = SoftSpace.from_family(U, ex3_family())
    sub = subspace(sp, ["x", "y"])
    v = sub.universe
    want = {
        SoftSet.from_rows(v, rows).bits
        for rows in ([[], []], [["x", "y"], ["x", "y"]], [["x"], ["x"]], [["x", "y"], ["y"]], [["x"], []])
    }
    assert set(sub.codes) == want
    same = subspace(sp, ["z", "x", "y"])
    assert same.universe == sp.universe and same.codes == sp.codes
    with pytest.raises(ValueError):
        subspace(sp, [])
    with pytest.raises(UnknownLabelError):
        subspace(sp, ["w"])


def test_open_closed_clopen_examples():
    ex1 = example("example1").space
    g = S(["x", "y"], ["x", "y"])
    assert is_open(ex1, g) and is_closed(ex1, g) and is_clopen(ex1, g)
    ex7 = example("example7").space
    v = ex7.universe
    b = SoftSet.from_rows(v, {"a1": ["x"], "a2": ["x", "y"]})
    assert is_clopen(ex7, b)
    assert is_clopen(ex7, absolute_soft_set(v))


def test_neighbourhood_examples():
    ex1 = example("example1").space
    assert set(neighborhoods(ex1, "z")) == {S(["z"], ["z"]), absolute_soft_set(U)}
    ex4 = example("example4").space
    got = {s.row("a2") for s in neighborhoods(ex4, "z")}
    assert got == {frozenset("z"), frozenset("xz"), frozenset("yz"), frozenset("xyz")}
    assert all(s.row("a1") == frozenset("xyz") for s in neighborhoods(ex4, "z"))


def test_closure_examples():
    ex3 = SoftSpace.from_family(U, ex3_family())
    assert closure(ex3, S(["x"], ["x"])).is_absolute
    assert closure(ex3, null_soft_set(U)).is_null
    assert interior(ex3, absolute_soft_set(U)).is_absolute


def test_closure_and_interior_against_oracle(spaces3):
    for sp in spaces3:
        o = oracles.from_space(sp)
        for s in all_soft_sets(sp.universe):
            c = closure(sp, s)
            assert oracles.from_soft_set(c) == oracles.closure(o, oracles.from_soft_set(s))
            assert interior(sp, s) == ~closure(sp, ~s)


def test_closure_laws(spaces4):
    rng = random.Random(3)
    for sp in rng.sample(spaces4, 150):
        sets = list(all_soft_sets(sp.universe))
        for s in sets:
            c = closure(sp, s)
            assert s <= c and closure(sp, c) == c and is_closed(sp, c)
        for s, t in rng.sample(list(itertools.product(sets, repeat=2)), 40):
            if s <= t:
                assert closure(sp, s) <= closure(sp, t)


def test_approx_examples():
    ex1 = example("example1").space
    assert approx(ex1, "x", "y") and not approx(ex1, "x", "z")
    ex9 = example("example9").space
    assert approx(ex9, "y", "z") and not approx(ex9, "x", "y")
    assert approx(ex9, "x", "x")
    assert approx_classes(ex9) == [["x"], ["y", "z"]]


def test_approx_matches_literal_definition(spaces3):
    for sp in spaces3:
        o = oracles.from_space(sp)
        for x, y in itertools.product(sp.universe.points, repeat=2):
            assert approx(sp, x, y) == oracles.approx(o, x, y)


def test_approx_is_an_equivalence(spaces4):
    for sp in spaces4:
        pts = sp.universe.points
        rel = {(x, y) for x in pts for y in pts if approx(sp, x, y)}
        assert all((x, x) in rel for x in pts)
        assert all((y, x) in rel for x, y in rel)
        assert all((x, z) in rel for x, y in rel for w, z in rel if y == w)


def test_locally_closed_example():
    ex3 = SoftSpace.from_family(U, ex3_family())
    assert is_locally_closed(ex3, S(["y"], ["y"]))
    for g in ex3.opens:
        assert is_locally_closed(ex3, g) and is_locally_closed(ex3, ~g)


def test_locally_closed_against_oracle(spaces3):
    for sp in spaces3:
        o = oracles.from_space(sp)
        want = oracles.locally_closed(o)
        got = {oracles.from_soft_set(SoftSet(sp.universe, c)) for c in sp.locally_closed_set}
        assert got == want


def test_closure_point_direction_holds(spaces4):
    converse_fails = 0
    for sp in spaces4:
        rep = closure_point_test(sp)
        assert rep.forward, rep.forward_witness
        converse_fails += not rep.converse
    assert converse_fails > 0


def test_closure_point_converse_witness():
    u = Universe(("p",), ("a0", "a1"))
    discrete = SoftSpace.from_codes(u, range(4))
    rep = closure_point_test(discrete)
    assert rep.forward and not rep.converse
    s, x = rep.converse_witness
    assert x == "p" and s.as_dict() == {"a0": ["p"], "a1": []}


@given(st.integers(1, 3), st.integers(1, 2), st.lists(st.integers(0, 63), max_size=5))
def test_generated_space_is_a_topology_of_cells(n, k, raw):
    u = Universe.of_shape(n, k)
    fam = [SoftSet(u, b & u.full_mask) for b in raw]
    sp = SoftSpace(u, generate_topology(u, fam))
    o = oracles.from_space(sp)
    assert oracles.is_topology(o, o.opens)
