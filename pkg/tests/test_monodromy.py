from __future__ import annotations

import dataclasses
import random

import pytest

from cordalg.cordring import build_cord_algebra, crossing_relations
from cordalg.diagram import ALL, cable, cable_projection, longitude_passes, unknot
from cordalg.errors import InvalidAction, NotABasedLoop, UnknownTag
from cordalg.gf2poly import Generator, Gf2Poly, pair_of
from cordalg.homsep import (
    TargetRing,
    parse_hom,
    pullback,
    ranked_homs,
    verify_hom,
    verify_on,
)
from cordalg.monodromy import (
    apply_action,
    identity,
    image_of,
    make_action,
    monodromy_by_hom,
    monodromy_report,
    monodromy_through_projection,
)
from cordalg.skein import PassWord, concat, lift_cord, loop, reduce

from conftest import FIXTURES

a = Gf2Poly.gen
BLUE1 = {"type": "blue-box", "summand": "L1"}
BLUE2 = {"type": "blue-box", "summand": "L2"}
GRAMAIN = {"type": "gramain"}


def table1(A):
    T = TargetRing("z")
    return verify_hom(A, parse_hom((FIXTURES / "square_knot_table1.json").read_text(), T), T)


def substitute(p: Gf2Poly, images) -> Gf2Poly:
    out = Gf2Poly.zero()
    for m in p.terms:
        t = Gf2Poly.one()
        for v, e in m:
            t = t * images[pair_of(v)] ** e
        out = out + t
    return out


def test_blue_box_resolution(square):
    act = make_action(BLUE1, square)
    ell = tuple(longitude_passes(square, "L1"))
    assert len(ell) == 3
    table = act.resolved.table
    assert set(table) == {1, 2, 3}
    for s, img in table.items():
        assert img == ell[::-1] + (s,) + ell
    assert act.resolved.prefix == act.resolved.suffix == ()


def test_blue_box_fixes_other_summand(square):
    act = make_action(BLUE1, square)
    w = loop(square, [4, 5, 6, 6, 4])
    assert apply_action(act, w) == w


def test_gramain_wraps(square):
    b = square.basepoint
    act = make_action(GRAMAIN, square)
    assert apply_action(act, PassWord(b, (5,), b)) == PassWord(b, (b, 5, b), b)


def test_not_a_based_loop(square):
    with pytest.raises(NotABasedLoop):
        apply_action(make_action(GRAMAIN, square), PassWord(1, (), 2))


@pytest.mark.parametrize("spec", [
    "nonsense",
    {"kind": "gramain"},
    {"type": "spin"},
    {"type": "blue-box"},
    {"type": "compose", "of": "gramain"},
    {"type": "power", "base": GRAMAIN},
    {"type": "power", "base": GRAMAIN, "n": True},
])
def test_invalid_actions(square, spec):
    with pytest.raises(InvalidAction):
        make_action(spec, square)


def test_unknown_summand(square):
    with pytest.raises(UnknownTag):
        make_action({"type": "blue-box", "summand": "L7"}, square)


def test_blue_box_a24(square, square_alg):
    A = square_alg
    report = monodromy_report(square, A, make_action(BLUE1, square))
    assert report.verdict == "nontrivial"
    moved = dict(report.moved)
    assert Generator(2, 4) in moved
    img = moved[Generator(2, 4)]
    closed = a(6, 4) + (a(6, 1) * a(1, 6) + a(6, 6)) * (a(6, 4) + a(6, 1) * a(1, 4))
    assert A.equal(img, closed)
    h = table1(A)
    assert h(A.nf(a(2, 4))) == 0b10  # z
    assert h(img) == 0b11  # z+1


def test_raw_image_evaluates_to_z_plus_one(square, square_alg):
    w = apply_action(make_action(BLUE1, square), lift_cord(square, 2, 4))
    assert table1(square_alg)(reduce(square, w, square_alg.basis)) == 0b11


@pytest.mark.parametrize("name", ["square", "trefoil"])
def test_gramain_trivial(request, name):
    d = request.getfixturevalue(name)
    A = request.getfixturevalue(name + "_alg")
    report = monodromy_report(d, A, make_action(GRAMAIN, d))
    assert report.verdict == "trivial"
    assert len(report.fixed) == len(A.generators)


def test_unknot_trivial():
    d = unknot()
    A = build_cord_algebra(d)
    for spec in (GRAMAIN, BLUE1, {"type": "power", "base": BLUE1, "n": 3}):
        r = monodromy_report(d, A, make_action(spec, d))
        assert r.verdict == "trivial" and r.fixed == () and r.moved == ()


def test_power_zero_is_identity(square):
    act = make_action({"type": "power", "base": GRAMAIN, "n": 0}, square)
    assert act.resolved == identity(square.basepoint)


def _sets(r):
    return set(r.fixed), {g for g, _ in r.moved}


def test_power_and_compose_consistent(square, square_alg):
    A = square_alg
    base = monodromy_report(square, A, make_action(BLUE1, square))
    one = monodromy_report(square, A, make_action({"type": "power", "base": BLUE1, "n": 1}, square))
    ident = {"type": "power", "base": GRAMAIN, "n": 0}
    comp = monodromy_report(square, A, make_action({"type": "compose", "of": [BLUE1, ident]}, square))
    assert _sets(base) == _sets(one) == _sets(comp)


def test_inverse_cancels(square, square_alg):
    spec = {"type": "compose", "of": [
        BLUE1, {"type": "power", "base": BLUE1, "n": -1}]}
    r = monodromy_report(square, square_alg, make_action(spec, square))
    assert r.verdict == "trivial"


def test_blue_boxes_commute_with_gramain(square, square_alg):
    spec = {"type": "compose", "of": [BLUE1, GRAMAIN]}
    r = monodromy_report(square, square_alg, make_action(spec, square))
    base = monodromy_report(square, square_alg, make_action(BLUE1, square))
    assert _sets(r) == _sets(base)


def test_ring_map_property(square, square_alg):
    A, d, b = square_alg, square, square.basepoint
    act = make_action(BLUE1, d)
    rng = random.Random(5)
    gens = list(A.generators)
    for _ in range(25):
        g, h = rng.choice(gens), rng.choice(gens)
        u, v = lift_cord(d, g.i, g.j), lift_cord(d, h.i, h.j)
        lhs = image_of(d, A, act, g) * image_of(d, A, act, h)
        # [u][v] = [u m v] + [u v] over Z2
        prod = [loop(d, list(u.passes) + [b] + list(v.passes)), concat(u, v)]
        rhs = sum((reduce(d, apply_action(act, w), A.basis) for w in prod), Gf2Poly.zero())
        assert A.equal(lhs, rhs)


@pytest.mark.parametrize("spec", [BLUE1, BLUE2, GRAMAIN])
def test_ideal_preservation(square, square_alg, spec):
    A = square_alg
    act = make_action(spec, square)
    images = {g: image_of(square, A, act, g) for g in A.generators}
    for r in A.relations:
        assert A.nf(substitute(r, images)) == 0


@pytest.mark.parametrize("bp", [1, 3, 5, 6])
def test_basepoint_independence(square, square_alg, bp):
    d = dataclasses.replace(square, basepoint=bp)
    assert monodromy_report(d, square_alg, make_action(BLUE1, d)).verdict == "nontrivial"
    assert monodromy_report(d, square_alg, make_action(GRAMAIN, d)).verdict == "trivial"


def test_by_hom_agrees_with_groebner(square, square_alg):
    act = make_action(BLUE1, square)
    exact = monodromy_report(square, square_alg, act)
    r = monodromy_by_hom(square, act, table1(square_alg))
    assert r.method == "hom" and r.verdict == "nontrivial"
    assert {g for g, _ in r.moved} <= {g for g, _ in exact.moved}
    assert r.certificate.recheck(square)
    assert r.to_dict()["method"] == "hom"


def test_by_hom_gramain_undecided(square, square_alg):
    r = monodromy_by_hom(square, make_action(GRAMAIN, square), table1(square_alg))
    assert r.verdict == "undecided" and r.moved == ()


def test_by_hom_needs_verified(square, square_alg):
    h = verify_hom(square_alg, {g: 1 for g in square_alg.generators}, TargetRing("z"))
    assert not h.verified
    with pytest.raises(ValueError):
        monodromy_by_hom(square, make_action(BLUE1, square), h)


def test_through_identity_projection(square):
    act = make_action(BLUE1, square)
    r = monodromy_through_projection(square, square, {x: x for x in square.arcs}, act)
    assert r.verdict == "nontrivial"
    c = r.certificate
    assert (c.value_before, c.value_after) == (0b10, 0b11)


def test_gramain_through_projection_finds_nothing(trefoil):
    act = make_action(GRAMAIN, trefoil)
    assert monodromy_through_projection(
        trefoil, trefoil, {x: x for x in trefoil.arcs}, act) is None


def test_pullbacks_verify_on_trefoil_cable(trefoil, trefoil_alg):
    c = cable(trefoil, 3, 1)
    f = cable_projection(trefoil, 3, 1)
    rels = crossing_relations(c)
    gens = [Generator(i, j) for i in c.arcs for j in c.arcs if i < j]
    homs = ranked_homs(trefoil_alg)
    assert homs
    for _, h in homs:
        assert verify_on(c, rels, pullback(h, f, gens), h.target).verified
    # Gramain images never separate, so no report comes back.
    assert monodromy_through_projection(trefoil, c, f, make_action(GRAMAIN, c)) is None


def test_report_dict(square, square_alg):
    r = monodromy_report(square, square_alg, make_action(GRAMAIN, square)).to_dict()
    assert r["verdict"] == "trivial" and r["method"] == "groebner"
    assert len(r["fixed"]) == 15 and r["moved"] == []


def test_longitude_is_fixed(square, square_alg):
    A = square_alg
    ell = loop(square, longitude_passes(square, ALL))
    for spec in (BLUE1, BLUE2, GRAMAIN):
        w = apply_action(make_action(spec, square), ell)
        assert A.equal(reduce(square, w, A.basis), reduce(square, ell, A.basis))
