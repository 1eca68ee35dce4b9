import logging

import pytest

from conftest import example
from softtop.exceptions import NotContinuousError, NotT0Error, NotT0UError, SoftTopologyError
from softtop.explorer import all_mappings, map_census
from softtop.morphisms import MapProperty, check_map
from softtop.reflection import (
    Alpha,
    check_t0_alpha,
    check_t0_alpha_direct,
    compute_reflection,
    factor_through_reflection,
    induced_map,
    point_class_soft_set,
    t0_1k_routes,
)
from softtop.separation import Axiom, check_axiom
from softtop.soft_core import SoftMapping, SoftSet, Universe, compose, identity_mapping, point_soft_set
from softtop.topology import SoftSpace

import oracles


def rows(u, *rs):
    return SoftSet.from_rows(u, list(rs)).bits


def test_example1_reflection_is_example8():
    r = compute_reflection(example("example1").space)
    q = r.quotient.universe
    assert q.points == ("[x]", "[z]")
    assert r.classes == (("x", "y"), ("z",))
    assert set(r.quotient.codes) == {0, q.full_mask, rows(q, ["[x]"], ["[x]"]), rows(q, ["[z]"], ["[z]"])}
    assert set(r.quotient.codes) == set(example("example8").space.codes)
    assert r.class_of("y") == "[x]" and r.members("[z]") == ("z",)
    assert r.verified


def test_example9_reflection():
    r = compute_reflection(example("example9").space)
    q = r.quotient.universe
    assert r.classes == (("x",), ("y", "z"))
    assert set(r.quotient.codes) == {0, q.full_mask, rows(q, ["[x]"], []), rows(q, ["[x]"], ["[x]"])}


def test_t0_space_reflects_to_itself():
    sp = example("example3").space
    r = compute_reflection(sp)
    assert all(len(c) == 1 for c in r.classes)
    relabel = SoftMapping(r.quotient.universe, sp.universe, tuple(range(3)), (0, 1))
    assert {relabel.image_bits(c) for c in r.quotient.codes} == set(sp.codes)


def test_non_t0u_is_refused_unless_forced():
    u = Universe(("x", "y"), ("a1", "a2"))
    # neither point lies totally in the middle open, so x ≈ y, yet only x
    # is in its a1 row
    sp = SoftSpace.from_codes(u, [0, rows(u, ["x"], []), u.full_mask])
    assert not check_axiom(sp, Axiom.T0U)
    with pytest.raises(NotT0UError):
        compute_reflection(sp)
    r = compute_reflection(sp, force=True)
    assert not r.verified


def test_quotient_matches_brute_force(spaces3):
    for sp in spaces3:
        if not check_axiom(sp, Axiom.T0U):
            continue
        r = compute_reflection(sp)
        o = oracles.from_space(sp)
        q, cls = oracles.quotient(o)
        assert [list(c) for c in r.classes] == oracles.classes(o)
        relabel = {f"[{p}]": p for p in q.points}
        got = {
            frozenset((relabel[x], a) for x, a in oracles.from_soft_set(s))
            for s in r.quotient.opens
        }
        assert got == q.opens


def test_point_class_soft_set_examples():
    r1 = compute_reflection(example("example1").space)
    u = r1.source.universe
    assert point_class_soft_set(r1, "x").bits == rows(u, ["x", "y"], ["x", "y"])
    r9 = compute_reflection(example("example9").space)
    assert point_class_soft_set(r9, "y").bits == rows(u, ["y", "z"], ["y", "z"])
    r3 = compute_reflection(example("example3").space)
    assert point_class_soft_set(r3, "x") == point_soft_set("x", u)


# induced maps


def test_induced_identity():
    r = compute_reflection(example("example1").space)
    t0m = induced_map(r, r, identity_mapping(r.source.universe))
    assert t0m == identity_mapping(r.quotient.universe)


def test_induced_map_of_the_surjection_is_an_isomorphism():
    r = compute_reflection(example("example1").space)
    rq = compute_reflection(r.quotient)
    t0m = induced_map(r, rq, r.surjection)
    assert check_map(t0m, r.quotient, rq.quotient, MapProperty.Homeomorphism)


def test_induced_constant_map():
    r9 = compute_reflection(example("example9").space)
    r1 = compute_reflection(example("example1").space)
    u9, u1 = r9.source.universe, r1.source.universe
    m = SoftMapping.from_labels(u9, u1, {p: "z" for p in u9.points}, {"a1": "a1", "a2": "a2"})
    t0m = induced_map(r9, r1, m)
    assert set(t0m.point_label_map().values()) == {"[z]"}
    assert compose(r1.surjection, m) == compose(t0m, r9.surjection)


def test_induced_map_requires_continuity():
    r1 = compute_reflection(example("example1").space)
    r9 = compute_reflection(example("example9").space)
    u1, u9 = r1.source.universe, r9.source.universe
    m = SoftMapping.from_labels(u1, u9, {"x": "x", "y": "y", "z": "z"}, {"a1": "a1", "a2": "a2"})
    with pytest.raises(NotContinuousError):
        induced_map(r1, r9, m)


def _non_surjective_parameter_counterexample():
    x = Universe(("x", "y"), ("a",))
    y = Universe(("p", "q"), ("b1", "b2"))
    src = SoftSpace.from_codes(x, [0, x.full_mask])
    tgt = SoftSpace.from_codes(y, [0, rows(y, ["p", "q"], ["p"]), y.full_mask])
    m = SoftMapping.from_labels(x, y, {"x": "p", "y": "q"}, {"a": "b1"})
    return src, tgt, m


def test_continuity_need_not_preserve_approx_without_onto_parameters():
    src, tgt, m = _non_surjective_parameter_counterexample()
    assert check_map(m, src, tgt, MapProperty.Continuous)
    assert check_axiom(tgt, Axiom.T0)
    r = compute_reflection(src)
    assert r.classes == (("x", "y"),)
    with pytest.raises(SoftTopologyError, match="does not respect"):
        factor_through_reflection(r, m, tgt)
    with pytest.raises(SoftTopologyError, match="does not respect"):
        induced_map(r, compute_reflection(tgt), m)


def test_continuity_preserves_approx_with_onto_parameters(spaces3):
    t0u = [sp for sp in spaces3 if check_axiom(sp, Axiom.T0U)]
    refl = {id(sp): compute_reflection(sp) for sp in t0u}
    for a in t0u:
        for b in t0u:
            for m in all_mappings(a.universe, b.universe):
                if m.params_surjective and check_map(m, a, b, MapProperty.Continuous):
                    induced_map(refl[id(a)], refl[id(b)], m)


# factorization


def test_factor_surjection_through_itself():
    r = compute_reflection(example("example1").space)
    f = factor_through_reflection(r, r.surjection, r.quotient)
    assert f == identity_mapping(r.quotient.universe)


def test_factor_example9_into_two_point_space():
    r = compute_reflection(example("example9").space)
    v = Universe(("p", "q"), ("a1", "a2"))
    target = SoftSpace.from_codes(v, [0, rows(v, ["p"], ["p"]), v.full_mask])
    m = SoftMapping.from_labels(
        r.source.universe, v, {"x": "p", "y": "q", "z": "q"}, {"a1": "a1", "a2": "a2"}
    )
    f = factor_through_reflection(r, m, target)
    assert f.point_label_map() == {"[x]": "p", "[y]": "q"}
    assert compose(f, r.surjection) == m


def test_factor_rejects_bad_inputs():
    r = compute_reflection(example("example9").space)
    with pytest.raises(NotT0Error):
        factor_through_reflection(r, identity_mapping(r.source.universe), r.source)
    v = Universe(("p", "q"), ("a1", "a2"))
    target = SoftSpace.from_codes(v, [0, rows(v, ["q"], ["q"]), v.full_mask])
    m = SoftMapping.from_labels(
        r.source.universe, v, {"x": "p", "y": "q", "z": "q"}, {"a1": "a1", "a2": "a2"}
    )
    with pytest.raises(NotContinuousError):
        factor_through_reflection(r, m, target)


def test_factor_logs_when_not_open(caplog):
    # the quotient open ⟨{[x]}, ∅⟩ maps to ⟨{p}, ∅⟩, which is not open
    r = compute_reflection(example("example9").space)
    v = Universe(("p", "q"), ("a1", "a2"))
    target = SoftSpace.from_codes(v, [0, rows(v, ["p"], ["p"]), v.full_mask])
    m = SoftMapping.from_labels(
        r.source.universe, v, {"x": "p", "y": "q", "z": "q"}, {"a1": "a1", "a2": "a2"}
    )
    with caplog.at_level(logging.INFO, logger="softtop.reflection"):
        factor_through_reflection(r, m, target)
    assert any("not soft open" in rec.message for rec in caplog.records)


# T(0, alpha)


def test_alpha_parse_and_names():
    assert Alpha.parse("T(0,1k)") is Alpha.OneK
    assert Alpha.parse("0k") is Alpha.ZeroK
    assert Alpha.parse("tsk") is Alpha.TSK
    assert str(Alpha.Three) == "T(0,3)"
    with pytest.raises(ValueError):
        Alpha.parse("T(0,4)")


def test_example9_alpha_claims():
    sp = example("example9").space
    assert check_t0_alpha(sp, Alpha.ZeroK)
    assert not check_t0_alpha(sp, Alpha.One)
    assert not check_t0_alpha(sp, Alpha.TS)
    assert check_t0_alpha_direct(sp, Alpha.ZeroK)
    assert not check_t0_alpha_direct(sp, Alpha.One)


def test_example1_every_alpha():
    sp = example("example1").space
    for a in Alpha:
        assert check_t0_alpha(sp, a) and check_t0_alpha_direct(sp, a)


def test_alpha_requires_t0u():
    u = Universe(("x", "y"), ("a1", "a2"))
    sp = SoftSpace.from_codes(u, [0, rows(u, ["x"], []), u.full_mask])
    with pytest.raises(NotT0UError):
        check_t0_alpha(sp, Alpha.One)
    with pytest.raises(NotT0UError):
        check_t0_alpha_direct(sp, Alpha.One)


def test_one_k_three_routes(spaces4):
    assert t0_1k_routes(example("example1").space) == (True, True, True)
    for sp in spaces4:
        if check_axiom(sp, Axiom.T0U):
            a, b, c = t0_1k_routes(sp)
            assert a == b == c, sp


# transfer of T(0, alpha) along quasihomomorphisms


def _t0u_quasihomomorphisms(corpus_spaces):
    spaces = [sp for sp in corpus_spaces if sp.universe.n_points <= 2 and sp.universe.n_params <= 2]
    spaces = [sp for sp in spaces if check_axiom(sp, Axiom.T0U)]
    census = map_census(spaces)
    for i, j, k in sorted(census.quasihomomorphisms):
        yield spaces[i], spaces[j], census.mapping(i, j, k)


def test_onto_quasihomomorphisms_transfer_every_alpha(spaces4):
    refl = {}
    onto = 0
    for a, b, m in _t0u_quasihomomorphisms(spaces4):
        if not m.is_surjective:
            continue
        onto += 1
        for alpha in Alpha:
            assert check_t0_alpha(a, alpha) == check_t0_alpha(b, alpha), (a, b, m, alpha)
        if m.params_injective:
            ra = refl.setdefault(id(a), compute_reflection(a))
            rb = refl.setdefault(id(b), compute_reflection(b))
            t0m = induced_map(ra, rb, m)
            assert check_map(t0m, ra.quotient, rb.quotient, MapProperty.Homeomorphism)
    assert onto > 1000


def test_quasihomomorphism_into_need_not_transfer_alpha():
    x = Universe(("p",), ("a0", "a1"))
    y = Universe(("q0", "q1"), ("a0", "a1"))
    src = SoftSpace.from_codes(x, [0, rows(x, ["p"], []), x.full_mask])
    tgt = SoftSpace.from_codes(y, [0, rows(y, ["q0", "q1"], ["q0"]), y.full_mask])
    m = SoftMapping.from_labels(x, y, {"p": "q1"}, {"a0": "a0", "a1": "a1"})
    assert check_map(m, src, tgt, MapProperty.Quasihomomorphism)
    assert not m.is_surjective
    assert check_axiom(tgt, Axiom.T0)
    assert check_t0_alpha(src, Alpha.Two)
    assert not check_t0_alpha(tgt, Alpha.Two)
