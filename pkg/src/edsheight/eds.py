"""Elliptic divisibility sequences attached to curve points.

The sequence of division polynomial values u_n = psi_n(Q) satisfies

    u_{m+n} u_{m-n} = u_{m+1} u_{m-1} u_n^2 - u_{n+1} u_{n-1} u_m^2

and in particular the index-halving forms used everywhere here:

    u_{2k+1} = u_{k+2} u_k^3 - u_{k-1} u_{k+1}^3
    u_{2k}   = u_k (u_{k+2} u_{k-1}^2 - u_{k-2} u_{k+1}^2) / u_2

EDSequence memoizes terms top-down through these (O(log n) distinct
indices per query).  EDSBlock keeps the seven terms around a center c
and doubles the center in one shot, which reaches index 2^N in N-2
steps.  FloatBlock is the same block over complex embeddings with a
shared log-scale ledger so magnitudes stay near 1; every term of weight
w_j = j^2 - 1 is stored multiplied by exp(-w_j * log_scale).
"""

from __future__ import annotations

import mpmath
from mpmath import mp

from .errors import (
    IndexOutOfRange,
    NotPowerOfTwo,
    PointNotOnCurve,
    PrecisionLoss,
    TorsionPoint2,
    ValidationError,
    ZeroScalar,
    ZeroTerm,
)

def _seed_psis(b2, b4, b6, b8, a1, a3, x, y, one):
    """psi_1..psi_4 at an affine point, generic over the coefficient ring."""
    zero = one - one
    psi2 = 2 * y + a1 * x + a3
    x2 = x * x
    x3 = x2 * x
    psi3 = 3 * x2 * x2 + b2 * x3 + 3 * b4 * x2 + 3 * b6 * x + b8
    inner = (
        2 * x3 * x3
        + b2 * x3 * x2
        + 5 * b4 * x2 * x2
        + 10 * b6 * x3
        + 10 * b8 * x2
        + (b2 * b8 - b4 * b6) * x
        + (b4 * b8 - b6 * b6)
    )
    psi4 = psi2 * inner
    return [zero, one, psi2, psi3, psi4]


class EDSequence:
    """Memoized terms u_0, u_1, ... over a number field.

    Seeded either from division polynomial values at a curve point or
    from abstract initial terms u_2, u_3, u_4 (with u_0 = 0, u_1 = 1).
    term(n) may legitimately return zero; only a division by a vanishing
    u_2 raises (TorsionPoint2).
    """

    def __init__(self, field, seed):
        if len(seed) < 5:
            raise ValidationError("need at least u_0..u_4")
        self.field = field
        seed = [field.element(s) for s in seed]
        if seed[0] != field.zero or seed[1] != field.one:
            raise ValidationError("sequences start u_0 = 0, u_1 = 1")
        self._memo = dict(enumerate(seed))
        self._inv_u2 = None

    @classmethod
    def from_initial_terms(cls, field, u2, u3, u4):
        return cls(field, [0, 1, u2, u3, u4])

    @property
    def seed_terms(self):
        return tuple(self._memo[i] for i in range(5))

    def _u2_inverse(self):
        if self._inv_u2 is None:
            u2 = self._memo[2]
            if not u2:
                raise TorsionPoint2("u_2 = 0: even terms beyond the seed undefined")
            self._inv_u2 = u2.inverse()
        return self._inv_u2

    def term(self, n):
        if not isinstance(n, int) or n < 0:
            raise IndexOutOfRange("term index must be a nonnegative integer")
        memo = self._memo
        got = memo.get(n)
        if got is not None:
            return got
        t = self.term
        if n & 1:
            k = n >> 1  # n = 2k+1
            val = t(k + 2) * t(k) ** 3 - t(k - 1) * t(k + 1) ** 3
        else:
            k = n >> 1
            val = (
                t(k)
                * (t(k + 2) * t(k - 1) ** 2 - t(k - 2) * t(k + 1) ** 2)
                * self._u2_inverse()
            )
        memo[n] = val
        return val

    def extend_to(self, n, forbid_zero=False):
        """Terms u_0..u_n as a list, computed in order.

        With forbid_zero, a vanishing term with index > 0 raises
        ZeroTerm naming the index (degenerate seeds in searches).
        """
        out = []
        for i in range(n + 1):
            v = self.term(i)
            if forbid_zero and i > 0 and not v:
                raise ZeroTerm(i)
            out.append(v)
        return out


def curve_sequence(curve, p):
    """The EDS of division polynomial values at an affine curve point."""
    if p.is_infinity:
        raise ValidationError("the point at infinity has no division polynomial values")
    if not curve.contains(p):
        raise PointNotOnCurve("sequence requested at a point not on the curve")
    seed = _seed_psis(
        curve.b2, curve.b4, curve.b6, curve.b8,
        curve.a1, curve.a3, p.x, p.y, curve.field.one,
    )
    return EDSequence(curve.field, seed)


def psi_naive(curve, p, n):
    """psi_n(Q) through the memoized recurrence."""
    return curve_sequence(curve, p).term(n)


# ---- exact doubling blocks ----


def _step_values(T, U, V, W, X, Y, Z, inv_psi2):
    """One doubling of the block center; returns the seven new values."""
    return (
        W * U**3 - T * V**3,
        V * (X * U * U - T * W * W) * inv_psi2,
        X * V**3 - U * W**3,
        W * (Y * V * V - U * X * X) * inv_psi2,
        Y * W**3 - V * X**3,
        X * (Z * W * W - V * Y * Y) * inv_psi2,
        Z * X**3 - W * Y**3,
    )


class EDSBlock:
    """Exact terms psi_{c-3}..psi_{c+3} plus psi_2, with a scale ledger.

    Entries are stored as psi_j * scale^(j^2-1) and psi_2 as
    psi_2 * scale^3, which the recurrence preserves; value() divides the
    ledger back out.  scale is 1 unless rescale() was used.
    """

    __slots__ = ("center", "values", "psi2", "scale", "_inv_psi2")

    def __init__(self, center, values, psi2, scale, _inv_psi2=None):
        self.center = center
        self.values = tuple(values)
        self.psi2 = psi2
        self.scale = scale
        self._inv_psi2 = _inv_psi2

    @classmethod
    def from_sequence(cls, seq):
        """Initial block at center 4 (entries psi_1..psi_7)."""
        vals = [seq.term(i) for i in range(1, 8)]
        return cls(4, vals, seq.term(2), seq.field.one)

    def _psi2_inverse(self):
        if self._inv_psi2 is None:
            if not self.psi2:
                raise TorsionPoint2("psi_2 = 0: block stepping undefined")
            self._inv_psi2 = self.psi2.inverse()
        return self._inv_psi2

    def step(self):
        new = _step_values(*self.values, self._psi2_inverse())
        return EDSBlock(2 * self.center, new, self.psi2, self.scale,
                        self._inv_psi2)

    def rescale(self, scalar):
        """Multiply entry j by scalar^(j^2-1), recorded in the ledger."""
        scalar = self.scale.field.element(scalar)
        if not scalar:
            raise ZeroScalar("rescaling by zero destroys the block")
        c = self.center
        vals = [v * scalar ** ((c - 3 + i) ** 2 - 1) for i, v in enumerate(self.values)]
        return EDSBlock(c, vals, self.psi2 * scalar**3, self.scale * scalar)

    def indices(self):
        return range(self.center - 3, self.center + 4)

    def value(self, m):
        """The true psi_m, ledger divided out."""
        if not (self.center - 3 <= m <= self.center + 3):
            raise IndexOutOfRange(
                f"index {m} outside block window around {self.center}"
            )
        v = self.values[m - self.center + 3]
        if self.scale == self.scale.field.one:
            return v
        return v * (self.scale.inverse() ** (m * m - 1))


def psi_pow2(curve, p, N):
    """Exact psi_{2^N}(Q) by repeated block doubling (N-2 steps)."""
    if not isinstance(N, int) or N < 0:
        raise ValidationError("exponent N must be a nonnegative integer")
    seq = curve_sequence(curve, p)
    if N < 2:
        return seq.term(2**N)
    block = EDSBlock.from_sequence(seq)
    for _ in range(N - 2):
        block = block.step()
    return block.value(2**N)


# ---- floating point blocks along one embedding ----


class FloatBlock:
    """Block of complex approximations with a common log-scale ledger.

    Invariant: log|psi_{c-3+i}| = log|values[i]| + w * log_scale with
    w = (c-3+i)^2 - 1.  After each step the block renormalizes whenever
    the center magnitude leaves [2^-64, 2^64].  rel_err is a running
    first-order bound on the relative error of the entries; step()
    raises PrecisionLoss once it crosses 2^(-precision_bits/4).
    """

    __slots__ = ("center", "values", "psi2", "log_scale", "precision_bits",
                 "rel_err", "_wp")

    def __init__(self, center, values, psi2, log_scale, precision_bits,
                 rel_err, wp):
        self.center = center
        self.values = tuple(values)
        self.psi2 = psi2
        self.log_scale = log_scale
        self.precision_bits = precision_bits
        self.rel_err = rel_err
        self._wp = wp

    @classmethod
    def from_embedded_curve(cls, curve, p, j, precision_bits=128):
        """Initial block at center 4 along the j-th embedding.

        Embeddings are requested at doubled precision so their certified
        radii sit at 2^-precision_bits, which seeds rel_err.
        """
        wp = 2 * precision_bits + 32
        with mp.workprec(wp):
            emb = lambda e: e.embed(j, 2 * precision_bits)
            x, y = emb(p.x), emb(p.y)
            a1, a3 = emb(curve.a1), emb(curve.a3)
            seeds = _seed_psis(
                emb(curve.b2), emb(curve.b4), emb(curve.b6), emb(curve.b8),
                a1, a3, x, y, mpmath.mpc(1),
            )
            psi2 = seeds[2]
            noise = (abs(2 * y) + abs(a1 * x) + abs(a3) + 1) * mpmath.mpf(2) ** (
                -precision_bits + 6
            )
            if abs(psi2) <= noise:
                # exactly-zero psi_2 belongs to the exact layer; here we
                # can only say this precision cannot separate it from 0
                raise PrecisionLoss(
                    "psi_2 indistinguishable from zero at this precision"
                )
            u5 = seeds[4] * psi2**3 - seeds[3] ** 3
            u6 = seeds[3] * (u5 * psi2**2 - seeds[4] ** 2) / psi2
            u7 = u5 * seeds[3] ** 3 - psi2 * seeds[4] ** 3
            vals = [seeds[1], psi2, seeds[3], seeds[4], u5, u6, u7]
            blk = cls(4, vals, psi2, mpmath.mpf(0), precision_bits,
                      mpmath.mpf(2) ** (-precision_bits + 8), wp)
            return blk._renormalized()

    def step(self):
        with mp.workprec(self._wp):
            T, U, V, W, X, Y, Z = self.values
            p2 = self.psi2
            prods = [
                (W * U**3, T * V**3),
                (V * (X * U * U) / p2, V * (T * W * W) / p2),
                (X * V**3, U * W**3),
                (W * (Y * V * V) / p2, W * (U * X * X) / p2),
                (Y * W**3, V * X**3),
                (X * (Z * W * W) / p2, X * (V * Y * Y) / p2),
                (Z * X**3, W * Y**3),
            ]
            vals = []
            amp = mpmath.mpf(1)
            for a, b in prods:
                r = a - b
                vals.append(r)
                mags = abs(a) + abs(b)
                if r != 0 and mags != 0:
                    this = mags / abs(r)
                    if this > amp:
                        amp = this
            rel = amp * (4 * self.rel_err + 12 * mpmath.mpf(2) ** (-self._wp))
            if rel > mpmath.mpf(2) ** (-self.precision_bits // 4):
                raise PrecisionLoss(
                    "error bound exceeded while stepping the float block"
                )
            blk = FloatBlock(2 * self.center, vals, p2, self.log_scale,
                             self.precision_bits, rel, self._wp)
            return blk._renormalized()

    def _renormalized(self):
        with mp.workprec(self._wp):
            mid = abs(self.values[3])
            if mid == 0:
                raise PrecisionLoss("central block entry vanished")
            e = mpmath.log(mid, 2)
            if -64 <= e <= 64:
                return self
            c = self.center
            wc = c * c - 1
            lam_log2 = -e / wc  # entry j multiplied by 2^(lam_log2 * w_j)
            vals = []
            for i, v in enumerate(self.values):
                w = (c - 3 + i) ** 2 - 1
                vals.append(v * mpmath.mpf(2) ** (lam_log2 * w))
            psi2 = self.psi2 * mpmath.mpf(2) ** (lam_log2 * 3)
            log_scale = self.log_scale - lam_log2 * mpmath.log(2)
            return FloatBlock(self.center, vals, psi2, log_scale,
                              self.precision_bits, self.rel_err, self._wp)

    def log_abs(self, m):
        """log|psi_m| for an index in the block window."""
        if not (self.center - 3 <= m <= self.center + 3):
            raise IndexOutOfRange(
                f"index {m} outside block window around {self.center}"
            )
        v = self.values[m - self.center + 3]
        if v == 0:
            raise PrecisionLoss(f"block entry at {m} vanished; log undefined")
        with mp.workprec(self._wp):
            return mpmath.log(abs(v)) + (m * m - 1) * self.log_scale


def float_track(curve, p, j, N, precision_bits=128):
    """log|psi_{2^N}(Q)| along the j-th embedding, floats only.

    Internally escalates the working precision on PrecisionLoss; the
    reported value carries the certified seed accuracy of
    precision_bits.
    """
    if not isinstance(N, int) or N < 0:
        raise ValidationError("exponent N must be a nonnegative integer")
    n = 2**N
    if N < 2:
        return _small_log(curve, p, j, n, precision_bits)
    attempt_bits = precision_bits
    for _ in range(4):
        try:
            blk = FloatBlock.from_embedded_curve(curve, p, j, attempt_bits)
            for _ in range(N - 2):
                blk = blk.step()
            return blk.log_abs(n)
        except PrecisionLoss:
            attempt_bits *= 2
    raise PrecisionLoss(
        f"float tracking failed to hold its error bound up to 2^{N} "
        f"even after escalating precision"
    )


def _small_log(curve, p, j, n, precision_bits):
    seq = curve_sequence(curve, p)
    v = seq.term(n)
    if not v:
        raise TorsionPoint2("psi_2 = 0 at a 2-torsion point")
    with mp.workprec(2 * precision_bits + 32):
        return mpmath.log(abs(v.embed(j, precision_bits)))
