"""Small numeric helpers used across modules."""

from __future__ import annotations

import mpmath
from mpmath import mp


def log_abs(n):
    """Natural log of |n| as a float; n may be a huge int or an mpq.

    Goes through mpmath so values far beyond float range do not overflow.
    Requires n != 0.
    """
    num = getattr(n, "numerator", n)
    den = getattr(n, "denominator", 1)
    if num == 0:
        raise ValueError("log of zero")
    with mp.workprec(80):
        v = mpmath.log(abs(mpmath.mpf(int(num)))) - (
            mpmath.log(mpmath.mpf(int(den))) if den != 1 else 0
        )
        return float(v)


def is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


def pow2_exponent_at_least(n):
    """Smallest N with 2^N >= n."""
    if n <= 1:
        return 0
    return (n - 1).bit_length()
