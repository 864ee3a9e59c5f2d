"""Certified complex roots of squarefree integer polynomials.

Simultaneous (Aberth-Ehrlich) iteration started from Newton-polygon
modulus estimates, followed by an a posteriori certification: each
returned root z comes with a radius r = d*|f(z)/f'(z)| (inflated by the
evaluation error bound) such that the disk around z contains exactly one
root of f.  The disks are checked pairwise disjoint, which upgrades
"at least one root" to "exactly one".

Everything is deterministic: fixed starting angles, fixed escalation
schedule, no randomness.
"""

from __future__ import annotations

import math

import mpmath
from mpmath import mp

from .errors import PrecisionUnreachable
from .polys import degree


def _upper_hull(points):
    """Upper convex hull of (x, y) points sorted by x."""
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _initial_points(coeffs):
    """Newton-polygon modulus estimates with spread starting angles."""
    pts = [(k, c.bit_length()) for k, c in enumerate(coeffs) if c]
    hull = _upper_hull(pts)
    out = []
    for (k1, v1), (k2, v2) in zip(hull, hull[1:]):
        # k2 - k1 roots of modulus ~ 2^((v1 - v2) / (k2 - k1))
        m = k2 - k1
        expo = (v1 - v2) / m
        r = mpmath.mpf(2) ** expo
        for j in range(m):
            theta = 2 * math.pi * (j + 0.5) / m + 0.79 * k1 + 0.5
            out.append(r * mpmath.mpc(math.cos(theta), math.sin(theta)))
    return out


def _horner2(coeffs, z):
    """f(z) and f'(z) in one pass."""
    p = mpmath.mpc(0)
    dp = mpmath.mpc(0)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _abs_horner(abscoeffs, az):
    acc = mpmath.mpf(0)
    for c in reversed(abscoeffs):
        acc = acc * az + c
    return acc


def _certify(coeffs, abscoeffs, d, zs):
    """Radii d*|f/f'| with evaluation noise folded in, or None."""
    eps = mpmath.mpf(2) ** (-mp.prec + 4)
    radii = []
    for z in zs:
        p, dp = _horner2(coeffs, z)
        az = abs(z)
        noise = (2 * d + 2) * eps * _abs_horner(abscoeffs, az)
        dnoise = (2 * d + 2) * eps * _abs_horner(
            [(k + 1) * c for k, c in enumerate(abscoeffs[1:])], az
        )
        denom = abs(dp) - dnoise
        if denom <= 0:
            return None
        radii.append(d * (abs(p) + noise) / denom)
    return radii


def _aberth_once(coeffs, d, zs, max_iter):
    stop = mpmath.mpf(2) ** (-mp.prec + 8)
    for _ in range(max_iter):
        moved = mpmath.mpf(0)
        new = list(zs)
        for i in range(d):
            z = zs[i]
            p, dp = _horner2(coeffs, z)
            if p == 0:
                continue
            if dp == 0:
                new[i] = z + stop * (1 + abs(z))
                moved = mpmath.inf
                continue
            q = p / dp
            s = mpmath.mpc(0)
            for j in range(d):
                if j != i:
                    dz = z - zs[j]
                    if dz == 0:
                        dz = stop * (1 + abs(z))
                    s += 1 / dz
            denom = 1 - q * s
            if denom == 0:
                w = q
            else:
                w = q / denom
            new[i] = z - w
            rel = abs(w) / (1 + abs(z))
            if rel > moved:
                moved = rel
        zs = new
        if moved <= stop:
            break
    return zs


def certified_roots(coeffs, precision_bits=128):
    """All complex roots of a squarefree integer polynomial.

    Returns a list of (root, radius) pairs sorted by (real, imaginary
    part); each disk is certified to contain exactly one root of f and
    radius < 2^(-precision_bits/2).  Raises PrecisionUnreachable if
    certification keeps failing after the internal precision escalation.
    """
    coeffs = [int(c) for c in coeffs]
    d = degree(coeffs)
    if d < 0:
        raise ValueError("zero polynomial has no well-defined roots")
    coeffs = coeffs[: d + 1]
    if d == 0:
        return []
    target = mpmath.mpf(2) ** (-(precision_bits // 2))

    # exact zero roots (at most one for squarefree input)
    nzero = 0
    while not coeffs[nzero]:
        nzero += 1
    if nzero > 1:
        raise ValueError("polynomial is not squarefree (x^2 divides it)")
    red = coeffs[nzero:]
    dred = d - nzero

    size_bits = max(abs(c).bit_length() for c in coeffs) - abs(coeffs[-1]).bit_length()
    wp = precision_bits + max(64, size_bits + 2 * d)
    last = None
    for _ in range(4):
        with mp.workprec(wp):
            abscoeffs = [mpmath.mpf(abs(c)) for c in red]
            if dred == 0:
                zs = []
            elif dred == 1:
                zs = [mpmath.mpc(mpmath.mpf(-red[0]) / red[1])]
            else:
                zs = last if last is not None else _initial_points(red)
                zs = _aberth_once(red, dred, zs, 60 + 12 * dred)
            radii = _certify(red, abscoeffs, dred, zs) if dred else []
            if radii is not None:
                pairs = [(z, r) for z, r in zip(zs, radii)]
                if nzero:
                    pairs.append((mpmath.mpc(0), mpmath.mpf(0)))
                # integer coefficients: a lone near-real root must be real
                cleaned = []
                for z, r in pairs:
                    if z.imag != 0 and abs(z.imag) <= r:
                        z = mpmath.mpc(z.real, 0)
                    cleaned.append((z, r))
                if _disjoint(cleaned):
                    if all(r < target for _, r in cleaned):
                        cleaned.sort(key=lambda zr: (zr[0].real, zr[0].imag))
                        return cleaned
                    last = zs if dred > 1 else None
                else:
                    last = None  # collided iterates: cold restart
            else:
                last = zs if dred > 1 else None
        wp *= 2
    raise PrecisionUnreachable(
        f"could not certify roots to 2^-{precision_bits // 2} "
        f"after escalation (degree {d})"
    )


def _disjoint(pairs):
    n = len(pairs)
    for i in range(n):
        zi, ri = pairs[i]
        for j in range(i + 1, n):
            zj, rj = pairs[j]
            if abs(zi - zj) <= ri + rj:
                return False
    return True
