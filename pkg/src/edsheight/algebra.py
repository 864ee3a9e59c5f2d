"""Number field arithmetic in Q[t]/(f) for monic integral squarefree f.

Elements are length-d rational coefficient vectors.  Only squarefreeness
of f is checked (gcd with the derivative); irreducibility testing is out
of scope, so a reducible f yields the product ring and some nonzero
elements are zero divisors (their norm is 0 and inversion fails).

Norms and characteristic polynomials are exact, via subresultants:

    N(a)      = Res(f, A) / lam^d
    charpoly  = Res_t(f(t), lam*X - A(t)) / lam^d

where a = A(t)/lam with A integral.  Embeddings come from the certified
root finder and are sorted by (real, imaginary) part.
"""

from __future__ import annotations

import mpmath
from gmpy2 import lcm, mpq, mpz
from mpmath import mp

from . import polys
from .errors import (
    DivisionByZero,
    FieldMismatch,
    NotMonic,
    NotSquarefree,
    ValidationError,
    ZeroDegree,
)
from .polys import ZP_ONE, ZPoly
from .roots import certified_roots
from .util import log_abs

_MPZ_TYPE = type(mpz(0))


def _to_mpq(x):
    if isinstance(x, (int, str, _MPZ_TYPE)) or type(x).__name__ in ("mpq", "Fraction"):
        return mpq(x)
    raise ValidationError(f"cannot interpret {x!r} as a rational number")


class NumberField:
    """Q[t]/(f) with f monic, integral, squarefree, deg f = d >= 1."""

    __slots__ = ("minpoly", "degree", "_red", "_emb_cache")

    def __init__(self, minpoly):
        cs = []
        for c in minpoly:
            if isinstance(c, (float, complex)):
                raise ValidationError(
                    "minimal polynomial must have integer coefficients"
                )
            try:
                cs.append(mpz(c))
            except (TypeError, ValueError):
                raise ValidationError(
                    "minimal polynomial must have integer coefficients"
                ) from None
        cs = polys.trim(cs)
        d = len(cs) - 1
        if d < 1:
            raise ZeroDegree("minimal polynomial must have degree at least 1")
        if cs[-1] != 1:
            raise NotMonic("minimal polynomial must be monic")
        if d > 1 and polys.resultant(cs, polys.deriv(cs)) == 0:
            raise NotSquarefree("minimal polynomial has a repeated root")
        self.minpoly = tuple(cs)
        self.degree = d
        # t^d = sum(_red[i] * t^i)
        self._red = tuple(-mpq(c) for c in cs[:-1])
        self._emb_cache = {}

    @classmethod
    def rationals(cls):
        return cls([0, 1])

    @property
    def is_rational(self):
        return self.degree == 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField({[int(c) for c in self.minpoly]})"

    def element(self, coeffs):
        """Build an element from a scalar or a coefficient sequence."""
        if isinstance(coeffs, FieldElement):
            if coeffs.field != self:
                raise FieldMismatch("element belongs to a different field")
            return coeffs
        if isinstance(coeffs, (list, tuple)):
            vec = [_to_mpq(c) for c in coeffs]
        else:
            vec = [_to_mpq(coeffs)]
        if len(vec) > self.degree:
            raise ValidationError(
                f"coefficient vector of length {len(vec)} in a degree "
                f"{self.degree} field"
            )
        vec.extend(mpq(0) for _ in range(self.degree - len(vec)))
        return FieldElement(self, tuple(vec))

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    @property
    def gen(self):
        if self.degree == 1:
            return self.element(-self.minpoly[0])
        return self.element([0, 1])

    def embeddings(self, precision_bits=128):
        """Certified roots of f, sorted by (real, imaginary) part.

        Returns a tuple of (root, radius) pairs; the j-th entry defines
        the j-th embedding K -> C.
        """
        got = self._emb_cache.get(precision_bits)
        if got is None:
            got = tuple(certified_roots(list(self.minpoly), precision_bits))
            self._emb_cache[precision_bits] = got
        return got

    def _reduce(self, vec):
        """Reduce a coefficient vector of length <= 2d-1 modulo f."""
        d = self.degree
        vec = list(vec)
        for k in range(len(vec) - 1, d - 1, -1):
            c = vec[k]
            if c:
                base = k - d
                for i, r in enumerate(self._red):
                    vec[base + i] += c * r
        return tuple(vec[:d])


class FieldElement:
    """Element of a NumberField; immutable rational coefficient vector."""

    __slots__ = ("field", "cs")

    def __init__(self, field, cs):
        self.field = field
        self.cs = cs

    # ---- structure ----

    def __bool__(self):
        return any(self.cs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.cs == other.cs
        try:
            q = _to_mpq(other)
        except ValidationError:
            return NotImplemented
        return self.cs[0] == q and not any(self.cs[1:])

    def __hash__(self):
        return hash((self.field.minpoly, self.cs))

    def __repr__(self):
        d = self.field.degree
        if d == 1:
            return f"<{self.cs[0]}>"
        parts = []
        for i, c in enumerate(self.cs):
            if not c:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{i}")
        return "<" + (" + ".join(parts) if parts else "0") + ">"

    @property
    def is_integral(self):
        return all(c.denominator == 1 for c in self.cs)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("elements of different fields")
            return other
        try:
            q = _to_mpq(other)
        except ValidationError:
            return NotImplemented
        vec = [q] + [mpq(0)] * (self.field.degree - 1)
        return FieldElement(self.field, tuple(vec))

    # ---- arithmetic ----

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(
            self.field, tuple(a + b for a, b in zip(self.cs, other.cs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(
            self.field, tuple(a - b for a, b in zip(self.cs, other.cs))
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.cs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (self.cs[0] * other.cs[0],))
        out = [mpq(0)] * (2 * d - 1)
        for i, a in enumerate(self.cs):
            if not a:
                continue
            for j, b in enumerate(other.cs):
                if b:
                    out[i + j] += a * b
        return FieldElement(self.field, self.field._reduce(out))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValidationError("only nonnegative integer powers")
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if not self:
            raise DivisionByZero("inverse of zero")
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (1 / self.cs[0],))
        # xgcd(f, a) over Q[t], tracking only the cofactor of a
        r0 = [mpq(c) for c in self.field.minpoly]
        r1 = list(self.cs)
        t0 = []
        t1 = [mpq(1)]
        while polys.degree(r1) > 0:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, polys.sub(t0, polys.mul(q, t1))
        if not r1:
            raise DivisionByZero("zero divisor has no inverse (reducible modulus)")
        c = r1[0]
        inv = self.field.element([t / c for t in t1])
        return inv

    # ---- invariants ----

    def _integral_form(self):
        """(A, lam) with a = A(t)/lam, A integral, lam a positive integer."""
        lam = mpz(1)
        for c in self.cs:
            lam = lcm(lam, c.denominator)
        a = [mpz((c * lam).numerator) for c in self.cs]
        return polys.trim(a), lam

    def norm(self):
        """Field norm N(a) as an exact rational."""
        d = self.field.degree
        if d == 1:
            return self.cs[0]
        a, lam = self._integral_form()
        if not a:
            return mpq(0)
        res = polys.resultant(list(self.field.minpoly), a)
        return mpq(res, lam**d)

    def charpoly(self):
        """Characteristic polynomial of multiplication by a.

        Monic of degree d; ascending tuple of rationals.  Its constant
        term is (-1)^d * N(a) and its roots are the embedding images
        with multiplicity.
        """
        d = self.field.degree
        if d == 1:
            return (-self.cs[0], mpq(1))
        a, lam = self._integral_form()
        f_lift = [ZPoly((c,)) for c in self.field.minpoly]
        if not a:
            g_lift = [ZPoly((0, lam))]
        else:
            g_lift = [ZPoly((-a[0], lam))] + [ZPoly((-c,)) for c in a[1:]]
        g_lift = _trim_zp(g_lift)
        res = polys.resultant(f_lift, g_lift, one=ZP_ONE)
        scale = lam**d
        out = [mpq(c, scale) for c in res.cs]
        out.extend(mpq(0) for _ in range(d + 1 - len(out)))
        assert out[-1] == 1, "characteristic polynomial must be monic"
        return tuple(out)

    def embed(self, j, precision_bits=128):
        """Image under the j-th complex embedding."""
        root, _ = self.field.embeddings(precision_bits)[j]
        with mp.workprec(precision_bits + 32):
            acc = mpmath.mpc(0)
            for c in reversed(self.cs):
                term = mpmath.mpf(int(c.numerator))
                if c.denominator != 1:
                    term = term / mpmath.mpf(int(c.denominator))
                acc = acc * root + term
            return acc

    def naive_height(self, precision_bits=128):
        """Absolute logarithmic Weil height h(a) as a float.

        h(a) = (1/d) log M(G) for the primitive integral characteristic
        polynomial G; multiplicities in G are stripped with integer gcds
        so only squarefree polynomials reach the root finder.
        """
        d = self.field.degree
        if d == 1:
            c = self.cs[0]
            m = max(abs(c.numerator), c.denominator)
            return 0.0 if m == 1 else log_abs(m)
        if not self:
            return 0.0
        chi = self.charpoly()
        lam = mpz(1)
        for c in chi:
            lam = lcm(lam, c.denominator)
        g = polys.primitive([mpz((c * lam).numerator) for c in chi])
        total = mpmath.mpf(0)
        with mp.workprec(max(96, precision_bits)):
            h = g
            while polys.degree(h) > 0:
                gc = polys.gcd_z(h, polys.deriv(h))
                u = polys.primitive(polys.divexact_poly(h, gc))
                # u: the distinct roots of h, each once; always degree >= 1
                total += mpmath.log(abs(mpmath.mpf(int(u[-1]))))
                for z, _ in certified_roots(u, precision_bits):
                    az = abs(z)
                    if az > 1:
                        total += mpmath.log(az)
                h = gc
            return float(total / d)


def _qdivmod(num, den):
    """Division with remainder in Q[t] on mpq coefficient lists."""
    dn, dd = polys.degree(num), polys.degree(den)
    if dd < 0:
        raise DivisionByZero("polynomial division by zero")
    q = [mpq(0)] * max(dn - dd + 1, 0)
    r = list(num[: dn + 1])
    lc = den[dd]
    for k in range(dn - dd, -1, -1):
        c = r[dd + k] / lc
        if c:
            q[k] = c
            for i in range(dd + 1):
                r[i + k] -= c * den[i]
    return polys.trim(q), polys.trim(r)


def _trim_zp(ps):
    n = len(ps)
    while n > 0 and not ps[n - 1]:
        n -= 1
    return ps[:n]
