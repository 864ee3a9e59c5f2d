"""Canonical height estimation, decomposition, and the doubling cross-check."""

from __future__ import annotations

import pytest

from edsheight.algebra import NumberField
from edsheight.curve import Curve, Point
from edsheight.errors import (
    EqualIndices,
    NotPowerOfTwo,
    PointNotIntegral,
    PrimeDoesNotDivideD,
    TorsionPoint,
    ValidationError,
    ZeroInput,
)
from edsheight.height import (
    METHOD_DPOWER,
    METHOD_GCD,
    METHOD_TATE,
    archimedean_height,
    canonical_height,
    compute_E,
    dpart_extract,
    extrapolate,
    gcd_trim,
    local_decompose,
    tate_height,
)

Q = NumberField.rationals()
QI = NumberField([1, 0, 1])
K2 = NumberField([2, 0, 1])  # Q(sqrt -2)

E37 = Curve(Q, 0, 0, 1, -1, 0)
P37 = E37.point(0, 0)

# the same curve, scaled out of its minimal model (u = 2 twist of y^2+y=x^3-x)
EBIG = Curve(Q, 0, 0, 0, -16, 16)
PBIG = EBIG.point(0, 4)

ES = Curve(K2, 0, -1, 1, 0, 0)
PS = ES.point(K2.element([2, 1]), K2.element([1, 2]))


# ---- integer helpers ----


def test_gcd_trim():
    assert gcd_trim(12, 18) == 2
    assert gcd_trim(7, 5) == 7
    assert gcd_trim(5, 5) == 1
    with pytest.raises(ZeroInput):
        gcd_trim(0, 3)


def test_dpart_extract():
    assert dpart_extract(280, 10) == (7, 40)
    assert dpart_extract(7, 10) == (7, 1)
    assert dpart_extract(1024, 2) == (1, 1024)
    t, r = dpart_extract(2 ** 40 * 3 ** 25 * 49, 6)
    assert (t, r) == (49, 2 ** 40 * 3 ** 25)
    with pytest.raises(ZeroInput):
        dpart_extract(0, 2)


def test_compute_E():
    assert compute_E(E37, P37, 8) == 5
    assert compute_E(E37, P37, 8, fast=True) == 5
    for n in (16, 32):
        assert compute_E(E37, P37, n, fast=True) == compute_E(E37, P37, n)
    assert [compute_E(ES, PS, n) for n in (2, 3, 4)] == [41, 4211, 1223809]
    with pytest.raises(NotPowerOfTwo):
        compute_E(E37, P37, 12, fast=True)
    with pytest.raises(ValidationError):
        compute_E(E37, P37, 0)


# ---- canonical height over Q ----


def test_height_frozen_rank_one():
    expect = {
        32: 0.02391615146550299,
        64: 0.02531090711031422,
        100: 0.025373306610658255,
    }
    for n, v in expect.items():
        est = canonical_height(E37, P37, n=n)
        assert est.total == v, n
        assert est.method == METHOD_GCD
        assert est.n_used == n and est.degree == 1
        assert est.nonarch == 0.0  # disc 37 stays away from these indices


def test_methods_agree_on_minimal_model():
    g = canonical_height(E37, P37, n=64, method=METHOD_GCD)
    d = canonical_height(E37, P37, n=64, method=METHOD_DPOWER)
    assert g.total == d.total
    assert g.arch == d.arch


def test_gcd_total_is_model_invariant():
    # the trimmed numerator cancels the u-scaling between isomorphic
    # integral models, so the totals agree bit for bit at equal n
    small = canonical_height(E37, P37, n=64)
    big = canonical_height(EBIG, PBIG, n=64)
    assert big.total == small.total
    assert big.arch == 0.7182888622843806
    assert abs(big.nonarch - (-0.6929779551740664)) < 1e-15


def test_height_frozen_quadratic_field():
    est = canonical_height(ES, PS, n=64)
    assert est.total == 0.45751641203453636
    assert est.degree == 2


def test_height_validation():
    with pytest.raises(ValidationError):
        canonical_height(E37, P37, n=1)
    with pytest.raises(ValidationError):
        canonical_height(E37, P37, method="newton")
    with pytest.raises(PointNotIntegral):
        canonical_height(E37, E37.mul(5, P37))  # x = 1/4


# ---- torsion handling ----


def test_torsion_reports_zero_exactly():
    est = canonical_height(E37, Point.infinity())
    assert est.torsion and est.total == 0.0 and est.error_order == "exact"
    e = Curve(Q, 0, 0, 0, -1, 0)
    t = e.point(0, 0)
    est = canonical_height(e, t, n=50)
    assert est.torsion and est.total == 0.0
    assert est.arch is None and est.nonarch is None
    with pytest.raises(TorsionPoint):
        archimedean_height(e, t)
    tate = tate_height(e, t, iterations=5)
    assert tate.torsion and tate.total == 0.0


# ---- archimedean float path ----


def test_archimedean_matches_exact_arch():
    a, n_used = archimedean_height(E37, P37, n=64)
    assert n_used == 64
    est = canonical_height(E37, P37, n=64)
    assert abs(a - est.arch) < 1e-13


def test_archimedean_rounds_up_to_power_of_two():
    _, n_used = archimedean_height(E37, P37, n=100)
    assert n_used == 128


def test_archimedean_threads_deterministic():
    solo = archimedean_height(ES, PS, n=64)
    multi = archimedean_height(ES, PS, n=64, threads=2)
    assert solo == multi


# ---- per-prime decomposition ----


def test_local_decompose_frozen():
    got = local_decompose(EBIG, PBIG, 64, [2, 37])
    assert got[37] == 0.0
    assert abs(got[2] - (-0.6929779551740664)) < 1e-15


def test_decomposition_identity():
    est = canonical_height(EBIG, PBIG, n=64, method=METHOD_DPOWER)
    local = local_decompose(EBIG, PBIG, 64, [2, 37])
    assert abs(est.arch + sum(local.values()) - est.total) < 1e-12


def test_local_decompose_validation():
    with pytest.raises(ValidationError):
        local_decompose(EBIG, PBIG, 64, [4])
    with pytest.raises(PrimeDoesNotDivideD):
        local_decompose(EBIG, PBIG, 64, [5])


# ---- the doubling cross-check ----


def test_tate_oracle_frozen():
    est = tate_height(E37, P37, iterations=10)
    assert est.method == METHOD_TATE
    assert est.error_order == "O(4^-k)"
    assert est.arch is None and est.nonarch is None
    assert abs(est.total - 0.025555704077058986) < 1e-15


def test_tate_vs_eds_converge_together():
    eds = canonical_height(E37, P37, n=100).total
    tate = tate_height(E37, P37, iterations=10).total
    assert abs(eds - tate) < 3e-4


def test_tate_validation():
    with pytest.raises(ValidationError):
        tate_height(E37, P37, iterations=-1)


# ---- extrapolation ----


def test_extrapolate_algebra():
    # (b h2 - a h1) / (b - a) with a = n1^2, b = n2^2
    assert extrapolate(1.0, 10, 0.5, 20) == pytest.approx(1.0 / 3.0)
    with pytest.raises(EqualIndices):
        extrapolate(1.0, 7, 2.0, 7)


def test_extrapolate_frozen_pair():
    h1 = canonical_height(ES, PS, n=50, method=METHOD_DPOWER).total
    h2 = canonical_height(ES, PS, n=100, method=METHOD_DPOWER).total
    assert h1 == 0.455923953115116
    assert h2 == 0.45720891677231584
    assert extrapolate(h1, 50, h2, 100) == 0.45763723799138245
