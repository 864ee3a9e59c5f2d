"""Number field arithmetic: norms, characteristic polynomials, heights."""

from __future__ import annotations

import math

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from edsheight.algebra import NumberField
from edsheight.errors import (
    DivisionByZero,
    FieldMismatch,
    NotMonic,
    NotSquarefree,
    ValidationError,
    ZeroDegree,
)

QI = NumberField([1, 0, 1])          # Q(i)
SQRT2 = NumberField([-2, 0, 1])      # Q(sqrt 2)
CUBIC = NumberField([-1, -1, 0, 1])  # Q[t]/(t^3 - t - 1)

qcoeff = st.fractions(
    min_value=-6, max_value=6, max_denominator=4
)


# ---- field validation ----


def test_field_validation():
    with pytest.raises(NotMonic):
        NumberField([1, 2])
    with pytest.raises(NotSquarefree):
        NumberField([1, 2, 1])  # (t + 1)^2
    with pytest.raises(ZeroDegree):
        NumberField([5])
    with pytest.raises(ZeroDegree):
        NumberField([])
    with pytest.raises(ValidationError):
        NumberField([0.5, 1])
    # trailing zeros are trimmed before the degree check
    assert NumberField([3, 1, 0, 0]).degree == 1


def test_element_coercion():
    assert QI.element(3).cs == (mpq(3), mpq(0))
    assert QI.element("3/4").cs == (mpq(3, 4), mpq(0))
    assert QI.element([1]).cs == (mpq(1), mpq(0))
    with pytest.raises(ValidationError):
        QI.element([1, 2, 3])
    with pytest.raises(ValidationError):
        QI.element(1.5)
    with pytest.raises(FieldMismatch):
        QI.element(SQRT2.one)
    assert QI.element(5) == 5
    assert QI.gen != SQRT2.gen


def test_rationals_field():
    q = NumberField.rationals()
    assert q.is_rational and q.degree == 1
    assert (q.element("2/3") * q.element(6)).cs == (mpq(4),)
    assert q.element("-7/2").norm() == mpq(-7, 2)


# ---- arithmetic ----


def test_gaussian_arithmetic():
    i = QI.gen
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    assert (1 + i) ** 2 == 2 * i
    assert i ** 4 == QI.one
    assert (3 - 2 * i) - (1 + i) == QI.element([2, -3])
    assert 1 / (1 + i) == QI.element(["1/2", "-1/2"])
    assert (QI.element([2, 3]) / QI.element([2, 3])) == QI.one


def test_inverse_errors():
    with pytest.raises(DivisionByZero):
        QI.zero.inverse()
    with pytest.raises(ValidationError):
        QI.gen ** -1
    # t^2 - 1 is squarefree but reducible: 1 + t is a zero divisor
    ring = NumberField([-1, 0, 1])
    assert ring.element([1, 1]).norm() == 0
    with pytest.raises(DivisionByZero):
        ring.element([1, 1]).inverse()


def test_cubic_generator_relation():
    t = CUBIC.gen
    assert t ** 3 == t + 1
    assert t ** 6 == (t + 1) ** 2
    assert (t ** 2 - t).norm() == CUBIC.element([0, -1, 1]).norm()


# ---- norms and characteristic polynomials ----


def test_known_norms():
    assert QI.element([3, 4]).norm() == 25  # a^2 + b^2
    assert QI.element(["3/4", "1/2"]).norm() == mpq(13, 16)
    assert SQRT2.element([1, 1]).norm() == -1  # fundamental unit
    assert CUBIC.gen.norm() == 1
    assert QI.zero.norm() == 0


def test_charpoly_known():
    assert QI.gen.charpoly() == (mpq(1), mpq(0), mpq(1))
    assert QI.element([1, 1]).charpoly() == (mpq(2), mpq(-2), mpq(1))
    # constant term is (-1)^d N(a)
    a = CUBIC.element([2, -1, 3])
    chi = a.charpoly()
    assert chi[0] == -a.norm()
    assert chi[-1] == 1


def test_cayley_hamilton():
    for a in (QI.element(["1/2", -3]), CUBIC.element([1, "2/3", -1])):
        chi = a.charpoly()
        acc = a.field.zero
        for k, c in enumerate(chi):
            acc = acc + a.field.element(c) * a ** k
        assert acc == a.field.zero


@given(st.lists(qcoeff, min_size=3, max_size=3),
       st.lists(qcoeff, min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_norm_multiplicative(u, v):
    a = CUBIC.element([str(c) for c in u])
    b = CUBIC.element([str(c) for c in v])
    assert (a * b).norm() == a.norm() * b.norm()


@given(st.lists(qcoeff, min_size=2, max_size=2))
@settings(max_examples=40, deadline=None)
def test_inverse_roundtrip(u):
    a = QI.element([str(c) for c in u])
    if not a:
        return
    assert a * a.inverse() == QI.one
    assert a.inverse().norm() == 1 / a.norm()


# ---- embeddings ----


def test_embeddings_sorted_and_consistent():
    embs = QI.embeddings()
    assert [(float(z.real), float(z.imag)) for z, _ in embs] == [
        (0.0, -1.0),
        (0.0, 1.0),
    ]
    a = QI.element([2, 3])
    z = a.embed(1)
    assert abs(complex(z.real, z.imag) - (2 + 3j)) < 1e-30


def test_embedding_product_is_norm():
    a = CUBIC.element([1, -2, 1])
    prod = 1.0 + 0.0j
    for j in range(3):
        z = a.embed(j)
        prod *= complex(float(z.real), float(z.imag))
    assert abs(prod - float(a.norm())) < 1e-10
    assert abs(prod.imag) < 1e-10


# ---- naive Weil height ----


def test_naive_height_rationals():
    q = NumberField.rationals()
    assert q.element(1).naive_height() == 0.0
    assert q.element(-1).naive_height() == 0.0
    assert q.element(0).naive_height() == 0.0
    assert abs(q.element("3/4").naive_height() - math.log(4)) < 1e-15
    assert abs(q.element(10).naive_height() - math.log(10)) < 1e-15


def test_naive_height_known_algebraic():
    golden = NumberField([-1, -1, 1]).gen
    assert abs(golden.naive_height() - math.log((1 + math.sqrt(5)) / 2) / 2) < 1e-14
    one_plus_i = QI.element([1, 1])
    assert abs(one_plus_i.naive_height() - math.log(2) / 2) < 1e-14
    # height is invariant under inversion
    assert abs(
        one_plus_i.inverse().naive_height() - one_plus_i.naive_height()
    ) < 1e-14
    # rational scalars keep their height in any field (multiplicity strip)
    assert abs(QI.element(2).naive_height() - math.log(2)) < 1e-14


def test_naive_height_smallest_known_measure():
    # x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1: the record holder
    # among monic integer polynomials for smallest Mahler measure > 1
    field = NumberField([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    h = field.gen.naive_height(precision_bits=192)
    assert abs(h - 0.016235761200773847) < 1e-12


def test_is_integral():
    assert QI.element([3, -2]).is_integral
    assert not QI.element(["1/2", 1]).is_integral
