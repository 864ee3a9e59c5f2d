"""Dense univariate polynomial helpers.

Polynomials are lists of coefficients in ascending order.  The arithmetic
here is generic over the coefficient ring: anything supporting +, -, *,
small integer **, unary minus, ``//`` (exact division) and truthiness
works.  In practice the ring is gmpy2.mpz or ZPoly (Z[X] as a coefficient
ring, used to take resultants of polynomials whose coefficients are
themselves polynomials).

The resultant uses the subresultant PRS of Cohen, Algorithm 3.3.7, which
keeps intermediate coefficients at subresultant size.  All divisions it
performs are exact in the coefficient ring.
"""

from __future__ import annotations

from gmpy2 import gcd, mpz

from .errors import InexactDivision


def trim(cs):
    """Drop trailing zeros; the zero polynomial becomes []."""
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return cs[:n]


def degree(cs):
    """Degree after trimming; the zero polynomial has degree -1."""
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return n - 1


def add(f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = out[i] + c
    return trim(out)


def sub(f, g):
    out = list(f)
    if len(out) < len(g):
        out.extend([0] * (len(g) - len(out)))
    for i, c in enumerate(g):
        out[i] = out[i] - c
    return trim(out)


def neg(f):
    return [-c for c in f]


def mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def scale(f, c):
    if not c:
        return []
    return [a * c for a in f]


def evaluate(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def divexact_scalar(f, e):
    """Divide every coefficient by the ring element e, exactly."""
    out = []
    for c in f:
        q = c // e
        if q * e != c:
            raise InexactDivision("scalar division left a remainder")
        out.append(q)
    return out


def prem(a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.

    Requires deg a >= deg b >= 0.  The full power of lc(b) is applied even
    when intermediate leading terms vanish, matching the usual definition.
    """
    da, db = degree(a), degree(b)
    lb = b[db]
    r = list(a[: da + 1])
    for k in range(da - db, -1, -1):
        top = r[db + k]
        r = [lb * c for c in r]
        for i in range(db + 1):
            r[i + k] = r[i + k] - top * b[i]
        del r[db + k]
    return trim(r)


def resultant(a, b, one=1):
    """Resultant of a and b over their coefficient ring.

    `one` is the ring's multiplicative identity (1 for integers, the
    constant polynomial for ZPoly coefficients).
    """
    a = trim(list(a))
    b = trim(list(b))
    if not a or not b:
        return one - one
    da, db = degree(a), degree(b)
    if da == 0 and db == 0:
        return one
    s = 1
    if da < db:
        a, b = b, a
        if da & db & 1:
            s = -s
        da, db = db, da
    g = one
    h = one
    while db > 0:
        delta = da - db
        if da & db & 1:
            s = -s
        r = prem(a, b)
        a = b
        da = db
        if not r:
            return one - one
        e = g * h**delta if delta else g
        b = divexact_scalar(r, e)
        db = degree(b)
        g = a[da]
        if delta == 1:
            h = g
        elif delta > 1:
            hd = h ** (delta - 1)
            gn = g**delta
            h = gn // hd
            if h * hd != gn:
                raise InexactDivision("subresultant h update not exact")
    c = b[0]
    if da == 0:
        res = one
    elif da == 1:
        res = c
    else:
        num = c**da
        hd = h ** (da - 1)
        res = num // hd
        if res * hd != num:
            raise InexactDivision("final subresultant division not exact")
    return res if s > 0 else -res


def divexact_poly(num, den):
    """Exact polynomial long division over the integers."""
    num = list(num)
    dd = degree(den)
    if dd < 0:
        raise InexactDivision("division by the zero polynomial")
    dn = degree(num)
    if dn < 0:
        return []
    if dn < dd:
        raise InexactDivision("polynomial division not exact")
    lc = den[dd]
    q = [mpz(0)] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        top = num[dd + k]
        if not top:
            continue
        c, r = divmod(top, lc)
        if r:
            raise InexactDivision("polynomial division not exact")
        q[k] = c
        for i in range(dd + 1):
            num[i + k] -= c * den[i]
    if any(num):
        raise InexactDivision("polynomial division not exact")
    return trim(q)


def content(f):
    """Nonnegative gcd of the coefficients."""
    c = mpz(0)
    for a in f:
        c = gcd(c, a)
        if c == 1:
            break
    return c


def primitive(f):
    """Divide out the content; leading coefficient made positive."""
    f = trim(list(f))
    if not f:
        return []
    c = content(f)
    if f[-1] < 0:
        c = -c
    return [a // c for a in f]


def deriv(f):
    return trim([i * c for i, c in enumerate(f)][1:])


def gcd_z(f, g):
    """Primitive gcd of integer polynomials (primitive PRS)."""
    f = primitive(f)
    g = primitive(g)
    if not f:
        return g
    if not g:
        return f
    if degree(f) < degree(g):
        f, g = g, f
    while g:
        if degree(g) == 0:
            return [mpz(1)]
        r = prem(f, g)
        f, g = g, primitive(r)
    return primitive(f)


# ---- Z[X] as a coefficient ring ----


class ZPoly:
    """Element of Z[X], usable as a coefficient for `resultant`.

    Division is exact division, raising InexactDivision otherwise, which
    is what the subresultant scheme requires.
    """

    __slots__ = ("cs",)

    def __init__(self, cs=()):
        self.cs = tuple(trim([mpz(c) for c in cs]))

    @classmethod
    def _raw(cls, cs):
        p = object.__new__(cls)
        p.cs = tuple(cs)
        return p

    def __bool__(self):
        return bool(self.cs)

    def __eq__(self, other):
        other = ZPoly._coerce(other)
        if other is None:
            return NotImplemented
        return self.cs == other.cs

    def __hash__(self):
        return hash(self.cs)

    def __neg__(self):
        return ZPoly._raw(tuple(-c for c in self.cs))

    @staticmethod
    def _coerce(other):
        if isinstance(other, ZPoly):
            return other
        if isinstance(other, (int, type(mpz(0)))):
            return ZPoly((other,))
        return None

    def __add__(self, other):
        other = ZPoly._coerce(other)
        if other is None:
            return NotImplemented
        return ZPoly._raw(tuple(add(list(self.cs), list(other.cs))))

    __radd__ = __add__

    def __sub__(self, other):
        other = ZPoly._coerce(other)
        if other is None:
            return NotImplemented
        return ZPoly._raw(tuple(sub(list(self.cs), list(other.cs))))

    def __rsub__(self, other):
        other = ZPoly._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = ZPoly._coerce(other)
        if other is None:
            return NotImplemented
        return ZPoly._raw(tuple(mul(list(self.cs), list(other.cs))))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = ZPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __floordiv__(self, other):
        """Exact polynomial division."""
        other = ZPoly._coerce(other)
        if other is None:
            return NotImplemented
        if not self.cs:
            return ZPoly()
        return ZPoly._raw(tuple(divexact_poly(list(self.cs), list(other.cs))))

    def __repr__(self):
        return f"ZPoly({list(self.cs)})"

    def coeffs(self):
        return self.cs

    def degree(self):
        return len(self.cs) - 1


ZP_ONE = ZPoly((1,))
