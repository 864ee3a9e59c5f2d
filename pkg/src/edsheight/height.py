"""Canonical heights from the growth of division polynomial norms.

For an integral point Q on an integral model over K (degree d), with
E_n = |N(psi_n(Q))|, the canonical height is recovered as

    gcd-consecutive:  hhat ~ log(E_n / gcd(E_n, E_{n+1})) / (d n^2)
    d-power:          hhat ~ log(E_n with all primes of D removed) / (d n^2)

where D = |N(disc)|.  Both converge with an empirical O(1/n^2) error.
The archimedean part is log(E_n) / (d n^2); the nonarchimedean part is
the difference, and local_decompose splits it over chosen primes of D.
tate_height is an independent cross-check: (1/2) 4^{-k} h(x(2^k Q)).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import mpmath
from gmpy2 import gcd, is_prime, mpz, remove
from mpmath import mp

from .curve import Point
from .eds import EDSBlock, curve_sequence, float_track
from .errors import (
    EqualIndices,
    NotPowerOfTwo,
    PointNotIntegral,
    PrimeDoesNotDivideD,
    TorsionPoint,
    TorsionPoint2,
    ValidationError,
    ZeroInput,
)
from .util import is_power_of_two, log_abs, pow2_exponent_at_least

METHOD_GCD = "gcd-consecutive"
METHOD_DPOWER = "d-power"
METHOD_TATE = "tate-oracle"


@dataclass(frozen=True)
class HeightEstimate:
    """A canonical height approximation and its decomposition.

    arch/nonarch are None for the tate-oracle method, which sees only
    the total.  For the EDS methods total = arch + nonarch holds to
    float rounding.  torsion means the point has finite order and the
    (exact) height is 0.
    """

    total: float
    arch: float | None
    nonarch: float | None
    n_used: int
    degree: int
    method: str
    torsion: bool = False
    per_prime: dict | None = None
    error_order: str = "O(1/n^2) empirical"
    warnings: tuple = ()


def _torsion_estimate(degree, n_used, method):
    return HeightEstimate(
        total=0.0, arch=None, nonarch=None, n_used=n_used, degree=degree,
        method=method, torsion=True, error_order="exact",
    )


def _require_integral_affine(p):
    if p.is_infinity:
        return
    if not (p.x.is_integral and p.y.is_integral):
        raise PointNotIntegral(
            "point has rational denominators; apply clear_denominators first"
        )


def _norm_abs(value):
    """|N(psi_n(Q))| as a Python int; psi values at integral data are integral."""
    nrm = value.norm()
    assert nrm.denominator == 1, "norm of an integral element must be integral"
    return abs(int(nrm.numerator))


def compute_E(curve, p, n, fast=False, seq=None):
    """E_n = |N_{K/Q}(psi_n(Q))| for an integral affine point.

    fast=True uses block doubling and requires n to be a power of two.
    Raises TorsionPoint if psi_n(Q) = 0 (the point has finite order).
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError("index n must be a positive integer")
    _require_integral_affine(p)
    if p.is_infinity:
        raise ValidationError("E_n needs an affine point")
    if fast:
        if not is_power_of_two(n):
            raise NotPowerOfTwo(f"fast path needs a power of two, got {n}")
        N = n.bit_length() - 1
        if n >= 8:
            blk = EDSBlock.from_sequence(seq or curve_sequence(curve, p))
            for _ in range(N - 2):
                blk = blk.step()
            val = blk.value(n)
        else:
            val = (seq or curve_sequence(curve, p)).term(n)
    else:
        val = (seq or curve_sequence(curve, p)).term(n)
    if not val:
        raise TorsionPoint(f"psi_{n}(Q) = 0: point has finite order")
    return _norm_abs(val)


def gcd_trim(en, en1):
    """E_n / gcd(E_n, E_{n+1}), the numerator whose growth is the height."""
    if en < 1 or en1 < 1:
        raise ZeroInput("gcd trim needs positive integers")
    return int(en // gcd(mpz(en), mpz(en1)))


def dpart_extract(e, d_supp):
    """Strip every prime dividing d_supp from e, without factoring.

    Returns (trimmed, removed) with e = trimmed * removed and removed
    supported on primes of d_supp.  gcds only; the inner squaring makes
    the number of big divisions logarithmic in the largest valuation.
    """
    if e < 1 or d_supp < 1:
        raise ZeroInput("dpart_extract needs positive integers")
    t = mpz(e)
    removed = mpz(1)
    g = gcd(t, mpz(d_supp))
    while g > 1:
        while True:
            g2 = gcd(t, g * g)
            if g2 == g:
                break
            g = g2
        t //= g
        removed *= g
        g = gcd(t, g)
    return int(t), int(removed)


def _terms_pair(curve, p, n, seq=None):
    """(psi_n, psi_{n+1}), through one doubled block when n = 2^N >= 8."""
    seq = seq or curve_sequence(curve, p)
    if is_power_of_two(n) and n >= 8:
        blk = EDSBlock.from_sequence(seq)
        for _ in range(n.bit_length() - 3):
            blk = blk.step()
        return blk.value(n), blk.value(n + 1)
    return seq.term(n), seq.term(n + 1)


def canonical_height(curve, p, n=100, method=METHOD_GCD):
    """Canonical height estimate at index n from exact big integers.

    Torsion points (including the point at infinity) give total 0 with
    the torsion flag; psi_2 = 0 is caught before any division.
    """
    if method not in (METHOD_GCD, METHOD_DPOWER):
        raise ValidationError(f"unknown method {method!r}")
    if not isinstance(n, int) or n < 2:
        raise ValidationError("need n >= 2")
    d = curve.field.degree
    if p.is_infinity:
        return _torsion_estimate(d, n, method)
    _require_integral_affine(p)
    try:
        un, un1 = _terms_pair(curve, p, n)
        if not un or not un1:
            raise TorsionPoint("zero division polynomial value")
        en = _norm_abs(un)
        en1 = _norm_abs(un1)
        if en == 0 or en1 == 0:
            raise TorsionPoint("vanishing norm: zero divisor coordinates")
    except TorsionPoint:
        return _torsion_estimate(d, n, method)
    scale = 1.0 / (d * n * n)
    arch = log_abs(en) * scale if en > 1 else 0.0
    if method == METHOD_GCD:
        trimmed = gcd_trim(en, en1)
    else:
        d_supp = _norm_abs(curve.disc)
        trimmed, _removed = dpart_extract(en, d_supp)
    total = log_abs(trimmed) * scale if trimmed > 1 else 0.0
    return HeightEstimate(
        total=total, arch=arch, nonarch=total - arch, n_used=n, degree=d,
        method=method,
    )


def archimedean_height(curve, p, n=256, precision_bits=128, threads=None):
    """Archimedean component by float tracking; no big integers.

    n is rounded up to the next power of two.  Returns (value, n_used).
    Raises TorsionPoint for points where psi_2 vanishes (their sequence
    terminates) and for the point at infinity.
    """
    if p.is_infinity:
        raise TorsionPoint("the point at infinity has height 0")
    _require_integral_affine(p)
    seq = curve_sequence(curve, p)
    if not seq.term(2):
        raise TorsionPoint2("psi_2(Q) = 0: 2-torsion point")
    N = max(2, pow2_exponent_at_least(n))
    n_used = 2**N
    d = curve.field.degree
    jobs = range(d)
    if threads and threads > 1 and d > 1:
        with ThreadPoolExecutor(max_workers=min(threads, d)) as ex:
            logs = list(ex.map(
                lambda j: float_track(curve, p, j, N, precision_bits), jobs
            ))
    else:
        logs = [float_track(curve, p, j, N, precision_bits) for j in jobs]
    with mp.workprec(precision_bits + 64):
        total = mpmath.fsum(logs)
        return float(total / (d * n_used * n_used)), n_used


def local_decompose(curve, p, n, primes):
    """Per-prime nonarchimedean contributions -v_q(E_n) log q / (d n^2).

    Every requested q must be a prime dividing D = |N(disc)|; summing
    over all prime factors of D and adding the archimedean part gives
    the d-power total exactly (up to float rounding).
    """
    _require_integral_affine(p)
    seq = curve_sequence(curve, p)
    un = seq.term(n)
    if not un:
        raise TorsionPoint(f"psi_{n}(Q) = 0: point has finite order")
    en = mpz(_norm_abs(un))
    d_supp = mpz(_norm_abs(curve.disc))
    d = curve.field.degree
    out = {}
    for q in primes:
        q = int(q)
        if q < 2 or not is_prime(q):
            raise ValidationError(f"{q} is not prime")
        if d_supp % q != 0:
            raise PrimeDoesNotDivideD(f"{q} does not divide |N(disc)| = {d_supp}")
        _, v = remove(en, q)
        out[q] = -v * math.log(q) / (d * n * n)
    return out


def tate_height(curve, p, iterations=10, precision_bits=128):
    """Cross-check: hhat = (1/2) lim 4^{-k} h(x(2^k Q)).

    Runs `iterations` doublings; if some doubling lands at infinity the
    point is torsion and the height is exactly 0.
    """
    if not isinstance(iterations, int) or iterations < 0:
        raise ValidationError("iterations must be a nonnegative integer")
    d = curve.field.degree
    if p.is_infinity:
        return _torsion_estimate(d, iterations, METHOD_TATE)
    q = p
    for _ in range(iterations):
        q = curve.double(q)
        if q.is_infinity:
            return _torsion_estimate(d, iterations, METHOD_TATE)
    h = q.x.naive_height(precision_bits)
    total = 0.5 * h / 4**iterations
    return HeightEstimate(
        total=total, arch=None, nonarch=None, n_used=iterations, degree=d,
        method=METHOD_TATE, error_order="O(4^-k)",
    )


def extrapolate(h1, n1, h2, n2):
    """Richardson step for an O(1/n^2) error model."""
    if n1 == n2:
        raise EqualIndices("extrapolation needs two distinct indices")
    a = n1 * n1
    b = n2 * n2
    return (b * h2 - a * h1) / (b - a)
