import json
import random
from fractions import Fraction

import pytest

from wittclass import gen
from wittclass.realize import genus1_block, genus1_block_with_eigenvalue, realize
from wittclass.sl2 import I, Mat2, witt_cocycle
from wittclass.surface import (
    BoundaryMismatch,
    BoundedSurfaceRep,
    ClosedSurfaceRep,
    ExtElem,
    RelatorError,
    RepFormatError,
    conjugate_rep,
    evaluate_closed,
    evaluate_closed_delta,
    ext_inv,
    ext_mul,
    genus1_relative_formula,
    glue_closed,
    lift,
    load_rep,
    relative_class,
    rep_from_json,
    twist_bounded,
    twist_closed,
    twist_shift,
    vee,
)
from wittclass.witt import WittClass, symbol

ZERO = WittClass()


def test_ext_examples():
    rng = random.Random(10)
    g, h = gen.rand_sl2(rng, 100), gen.rand_sl2(rng, 100)
    p = ExtElem(g, symbol(3))
    assert ext_mul(lift(I), p) == p
    assert ext_mul(p, ext_inv(p)) == ExtElem(I, ZERO)
    assert ext_mul(lift(g), lift(h)) == ExtElem(g @ h, witt_cocycle(g, h))


def test_ext_associative():
    rng = random.Random(11)
    for _ in range(50):
        p, q, r = (ExtElem(gen.rand_sl2(rng, 100), symbol(rng.choice([1, 2, -3]))) for _ in range(3))
        assert (p * q) * r == p * (q * r)


def test_closed_examples():
    rng = random.Random(12)
    for _ in range(20):
        r = ClosedSurfaceRep((gen.rand_commuting_pair(rng),))
        assert evaluate_closed(r) == ZERO == evaluate_closed_delta(r)
    for g in (1, 2, 4):
        r = ClosedSurfaceRep(((I, I),) * g)
        assert evaluate_closed(r) == ZERO == evaluate_closed_delta(r)


def test_relator_enforced():
    a, b = Mat2.of(1, 1, 0, 1), Mat2.of(1, 0, 1, 1)
    with pytest.raises(RelatorError):
        ClosedSurfaceRep(((a, b),))
    with pytest.raises(RelatorError):
        ClosedSurfaceRep(())


def test_realize_roundtrip_evaluations():
    q = WittClass.parse("1,1,-3,-3")
    r = realize(q, 2)
    assert evaluate_closed(r) == q == evaluate_closed_delta(r)


def test_relative_class_examples():
    rng = random.Random(13)
    for _ in range(10):
        x, y = gen.rand_commuting_pair(rng)
        assert relative_class(BoundedSurfaceRep(((x, y),))) == ZERO
    blk = genus1_block(3, -5)
    assert relative_class(blk.rep) == symbol(3) + symbol(-5)
    assert blk.boundary == Mat2.diag(blk.z)


def test_glue_examples():
    rng = random.Random(14)
    b = gen.rand_bounded(rng, 2, 10)
    assert evaluate_closed(glue_closed(b, b)) == ZERO
    # two blocks with the same boundary diag(-36, -1/36)
    b1 = genus1_block_with_eigenvalue(1, 1, -36).rep
    b2 = genus1_block_with_eigenvalue(3, 3, -36).rep
    r = glue_closed(b1, b2)
    assert r.genus == 2
    want = symbol(1) + symbol(1) - symbol(3) - symbol(3)
    assert want != ZERO
    assert evaluate_closed(r) == want
    with pytest.raises(BoundaryMismatch):
        glue_closed(b1, genus1_block_with_eigenvalue(1, 1, -4).rep)


def test_glue_genus_one_pieces():
    rng = random.Random(15)
    b1 = gen.rand_bounded(rng, 1, 10)
    v = gen.centralizer_element(b1.boundary, Fraction(1, 2))
    b2 = twist_bounded(b1, v)
    r = glue_closed(b1, b2)
    assert r.genus == 2
    assert evaluate_closed(r) == relative_class(b1) - relative_class(b2)


def test_twist_bounded_examples():
    rng = random.Random(16)
    b = gen.rand_bounded(rng, 1, 10)
    assert twist_bounded(b, I) == b
    d = BoundedSurfaceRep(((Mat2.diag(2), Mat2.diag(3)),))
    assert relative_class(twist_bounded(d, Mat2.diag(Fraction(5, 7)))) == relative_class(d)
    blk = genus1_block(2, 7).rep
    a = gen.rand_sl2(rng, 20)
    w = blk.boundary
    shift = witt_cocycle(a, w) - witt_cocycle(a @ w @ a.inv(), a)
    assert relative_class(twist_bounded(blk, a)) == relative_class(blk) + shift
    assert twist_shift(blk, a) == shift


def test_twist_closed_examples():
    rng = random.Random(17)
    for _ in range(10):
        r = gen.rand_closed(rng, 2)
        c = evaluate_closed(r)
        b1 = r.pairs[0][1]
        assert twist_closed(r, I) == r
        assert evaluate_closed(twist_closed(r, b1 ** 2)) == c
        v = gen.centralizer_element(b1, Fraction(rng.randint(-5, 5), rng.randint(1, 5)))
        assert evaluate_closed(twist_closed(r, v)) == c
    r = gen.rand_closed(rng, 2)
    with pytest.raises(ValueError):
        twist_closed(r, Mat2.of(1, 1, 0, 1) if r.pairs[0][1].a21 else Mat2.of(1, 0, 1, 1))
    with pytest.raises(ValueError):
        twist_closed(r, I, loop="a1")


def test_vee_examples():
    rng = random.Random(18)
    b = gen.rand_bounded(rng, 1, 10)
    triv = BoundedSurfaceRep(((Mat2.diag(2), Mat2.diag(5)),))
    assert relative_class(vee(b, triv)) == relative_class(b)
    b1, b2 = genus1_block(1, 2).rep, genus1_block(-3, 5).rep
    s = vee(b1, b2)
    assert s.boundary == b1.boundary @ b2.boundary
    assert relative_class(s) == (symbol(1) + symbol(2) + symbol(-3) + symbol(5)
                                 + witt_cocycle(b1.boundary, b2.boundary))


def test_genus1_formula():
    rng = random.Random(19)
    for _ in range(30):
        x, y = gen.rand_sl2(rng, 30), gen.rand_sl2(rng, 30)
        assert relative_class(BoundedSurfaceRep(((x, y),))) == genus1_relative_formula(x, y)


def test_conjugate_examples():
    rng = random.Random(20)
    r = gen.rand_closed(rng, 2)
    assert conjugate_rep(r, I) == r
    d = ClosedSurfaceRep(((Mat2.diag(2), Mat2.diag(3)), (Mat2.diag(5), Mat2.diag(7))))
    assert conjugate_rep(d, Mat2.diag(Fraction(4, 9))) == d
    q = WittClass.parse("-1,-1,-1,-1")
    rr = realize(q, 2)
    assert evaluate_closed(conjugate_rep(rr, gen.rand_sl2(rng, 5))) == q


def test_json_roundtrip(tmp_path):
    rng = random.Random(21)
    r = gen.rand_closed(rng, 2)
    assert rep_from_json(json.loads(json.dumps(r.to_json()))) == r
    b = gen.rand_bounded(rng, 2, 10)
    assert rep_from_json(b.to_json()) == b
    p = tmp_path / "rep.json"
    p.write_text(json.dumps(r.to_json()))
    assert load_rep(p) == r


def test_json_errors(tmp_path):
    rng = random.Random(22)
    data = gen.rand_closed(rng, 2).to_json()
    with pytest.raises(RepFormatError):
        rep_from_json({"pairs": []})
    with pytest.raises(RepFormatError):
        rep_from_json({**data, "genus": 3})
    bad = json.loads(json.dumps(data))
    bad["pairs"][0]["B"], bad["pairs"][1]["B"] = bad["pairs"][1]["B"], bad["pairs"][0]["B"]
    with pytest.raises(RelatorError):
        rep_from_json(bad)
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(RepFormatError):
        load_rep(p)
