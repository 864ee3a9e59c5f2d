"""Weierstrass models, the group law, and denominator clearing."""

from __future__ import annotations

import pytest
from gmpy2 import mpq

from edsheight.algebra import NumberField
from edsheight.curve import Curve, Point, clear_denominators
from edsheight.errors import (
    NonIntegralCoefficients,
    PointNotOnCurve,
    SingularCurve,
    ValidationError,
)

Q = NumberField.rationals()
QI = NumberField([1, 0, 1])

E37 = Curve(Q, 0, 0, 1, -1, 0)  # y^2 + y = x^3 - x, rank 1
P37 = E37.point(0, 0)


# ---- validation ----


def test_curve_validation():
    with pytest.raises(SingularCurve):
        Curve(Q, 0, 0, 0, 0, 0)  # y^2 = x^3
    with pytest.raises(SingularCurve):
        Curve(Q, 0, 0, 0, -3, 2)  # disc = 0
    with pytest.raises(NonIntegralCoefficients):
        Curve(Q, 0, 0, 0, "1/2", 1)
    with pytest.raises(ValidationError):
        Curve("not a field", 0, 0, 0, -1, 0)


def test_invariants_frozen():
    assert E37.disc == 37
    assert E37.c4 == 48
    assert E37.b2 == 0 and E37.b4 == -2 and E37.b6 == 1 and E37.b8 == -1
    e = Curve(Q, 1, -1, 1, -48, 147)
    assert e.disc == -972800 and e.c4 == 2289 and e.c6 == -116937


def test_point_validation():
    with pytest.raises(PointNotOnCurve):
        E37.point(1, 1)
    with pytest.raises(ValidationError):
        Point(x=Q.element(1))  # one coordinate only
    assert E37.contains(Point.infinity())
    assert E37.point(0, 0) == Point(Q.element(0), Q.element(0))


# ---- group law over Q ----


def test_multiples_frozen():
    expect = {
        2: (1, 0),
        3: (-1, -1),
        4: (2, -3),
        5: (mpq(1, 4), mpq(-5, 8)),
        6: (6, 14),
        7: (mpq(-5, 9), mpq(8, 27)),
        9: (mpq(-20, 49), mpq(-435, 343)),
    }
    for n, (x, y) in expect.items():
        r = E37.mul(n, P37)
        assert r.x == x and r.y == y, n


def test_group_law_identities():
    p5 = E37.mul(5, P37)
    p3 = E37.mul(3, P37)
    assert E37.add(p5, p3) == E37.mul(8, P37)
    assert E37.add(p5, E37.negate(p5)) == Point.infinity()
    assert E37.mul(-3, P37) == E37.negate(p3)
    assert E37.mul(0, P37) == Point.infinity()
    assert E37.add(Point.infinity(), p5) == p5
    # doubling formula against repeated addition
    assert E37.double(p5) == E37.add(p5, E37.mul(5, P37))
    assert E37.mul(10, P37) == E37.double(p5)


def test_two_torsion_doubles_to_infinity():
    e = Curve(Q, 0, 0, 0, -1, 0)  # y^2 = x^3 - x, full 2-torsion
    for x in (0, 1, -1):
        t = e.point(x, 0)
        assert e.double(t) == Point.infinity()
        assert e.mul(2, t) == Point.infinity()
        assert e.mul(7, t) == t


# ---- group law over an imaginary quadratic field ----


def test_gaussian_curve_multiples():
    e = Curve(QI, 0, 0, 4, QI.element([0, 6]), 0)
    p = e.point(0, 0)
    d = e.mul(2, p)
    assert d.x == QI.element("-9/4")
    assert d.y == QI.element([-4, "27/8"])
    t = e.mul(3, p)
    assert t.x == QI.element(["256/81", "-16/3"])
    assert t.y == QI.element(["-1180/729", "128/9"])
    assert e.add(d, p) == t
    assert e.contains(e.mul(11, p))


# ---- denominator clearing ----


def test_clear_denominators_integral_point_is_identity():
    c, q, u = clear_denominators(E37, P37)
    assert (c, q, u) == (E37, P37, 1)


def test_clear_denominators_u2():
    c, q, u = clear_denominators(E37, E37.mul(5, P37))
    assert u == 2
    assert q.x == 1 and q.y == -5
    assert (c.a1, c.a2, c.a3, c.a4, c.a6) == (
        Q.element(0), Q.element(0), Q.element(8), Q.element(-16), Q.element(0)
    )
    assert c.contains(q)


def test_clear_denominators_u7():
    c, q, u = clear_denominators(E37, E37.mul(9, P37))
    assert u == 7
    assert q.x == -20 and q.y == -435
    assert c.contains(q)


def test_clear_denominators_rejects_infinity():
    with pytest.raises(ValidationError):
        clear_denominators(E37, Point.infinity())


def test_scaled_model_preserves_structure():
    # u-scaling multiplies the discriminant by u^12
    c, _, u = clear_denominators(E37, E37.mul(5, P37))
    assert c.disc == E37.disc * Q.element(u ** 12)
