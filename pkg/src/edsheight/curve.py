"""Elliptic curves y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6.

Models are integral: the a_i must have integer coefficient vectors.
Points may have rational coordinates (the group law produces them);
clear_denominators moves a point back to an integral situation on an
isomorphic model.
"""

from __future__ import annotations

from gmpy2 import gcd, iroot, lcm, mpz

from .algebra import FieldElement, NumberField
from .errors import (
    FieldMismatch,
    NonIntegralCoefficients,
    PointNotOnCurve,
    SingularCurve,
    ValidationError,
)


class Point:
    """Affine point (x, y) or the point at infinity (x = y = None)."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        if (x is None) != (y is None):
            raise ValidationError("affine points need both coordinates")
        self.x = x
        self.y = y

    @classmethod
    def infinity(cls):
        return cls()

    @property
    def is_infinity(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "Point(infinity)"
        return f"Point({self.x}, {self.y})"


class Curve:
    """Integral generalized Weierstrass model over a number field."""

    __slots__ = ("field", "a1", "a2", "a3", "a4", "a6",
                 "b2", "b4", "b6", "b8", "c4", "c6", "disc")

    def __init__(self, field, a1, a2, a3, a4, a6):
        if not isinstance(field, NumberField):
            raise ValidationError("first argument must be a NumberField")
        self.field = field
        self.a1 = field.element(a1)
        self.a2 = field.element(a2)
        self.a3 = field.element(a3)
        self.a4 = field.element(a4)
        self.a6 = field.element(a6)
        for name in ("a1", "a2", "a3", "a4", "a6"):
            if not getattr(self, name).is_integral:
                raise NonIntegralCoefficients(
                    f"{name} is not integral; use an integral model"
                )
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        self.c4 = self.b2 * self.b2 - 24 * self.b4
        self.c6 = -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        self.disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if not self.disc:
            raise SingularCurve("discriminant is zero")

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.field == other.field and all(
            getattr(self, n) == getattr(other, n)
            for n in ("a1", "a2", "a3", "a4", "a6")
        )

    def __hash__(self):
        return hash((self.field, self.a1, self.a2, self.a3, self.a4, self.a6))

    def __repr__(self):
        return (f"Curve(a1={self.a1}, a2={self.a2}, a3={self.a3}, "
                f"a4={self.a4}, a6={self.a6})")

    # ---- points ----

    def point(self, x, y):
        p = Point(self.field.element(x), self.field.element(y))
        if not self.contains(p):
            raise PointNotOnCurve(f"{p} does not satisfy the curve equation")
        return p

    def contains(self, p):
        if p.is_infinity:
            return True
        x, y = p.x, p.y
        if x.field != self.field or y.field != self.field:
            raise FieldMismatch("point coordinates from a different field")
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x ** 3 + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    # ---- group law ----

    def negate(self, p):
        if p.is_infinity:
            return p
        return Point(p.x, -p.y - self.a1 * p.x - self.a3)

    def double(self, p):
        if p.is_infinity:
            return p
        x, y = p.x, p.y
        denom = 2 * y + self.a1 * x + self.a3
        if not denom:
            return Point.infinity()
        lam = (3 * x * x + 2 * self.a2 * x + self.a4 - self.a1 * y) / denom
        return self._chord(x, y, x, lam)

    def add(self, p, q):
        if p.is_infinity:
            return q
        if q.is_infinity:
            return p
        if p.x == q.x:
            if p.y == q.y:
                return self.double(p)
            return Point.infinity()
        lam = (q.y - p.y) / (q.x - p.x)
        return self._chord(p.x, p.y, q.x, lam)

    def _chord(self, x1, y1, x2, lam):
        x3 = lam * lam + self.a1 * lam - self.a2 - x1 - x2
        nu = y1 - lam * x1
        y3 = -(lam + self.a1) * x3 - nu - self.a3
        return Point(x3, y3)

    def mul(self, n, p):
        if not isinstance(n, int):
            raise ValidationError("scalar must be an integer")
        if n < 0:
            return self.mul(-n, self.negate(p))
        acc = Point.infinity()
        step = p
        while n:
            if n & 1:
                acc = self.add(acc, step)
            step = self.double(step)
            n >>= 1
        return acc


# ---- moving a point to an integral situation ----


def _coprime_basis(nums):
    """Pairwise coprime integers > 1 generating all inputs multiplicatively.

    gcd splitting to a fixpoint, with perfect-power reduction so that
    e.g. {p^2, p^3} refines all the way down to {p}.
    """
    items = {mpz(n) for n in nums if n > 1}
    changed = True
    while changed:
        changed = False
        # strip perfect powers
        for c in list(items):
            k = 2
            while k <= c.bit_length():
                r, exact = iroot(c, k)
                if exact:
                    items.discard(c)
                    items.add(mpz(r))
                    changed = True
                    break
                k += 1
        ls = sorted(items)
        done = False
        for i in range(len(ls)):
            for j in range(i + 1, len(ls)):
                g = gcd(ls[i], ls[j])
                if g > 1:
                    items.discard(ls[i])
                    items.discard(ls[j])
                    for part in (ls[i] // g, ls[j] // g, g):
                        if part > 1:
                            items.add(mpz(part))
                    changed = True
                    done = True
                    break
            if done:
                break
    return sorted(items)


def _valuation(n, c):
    v = 0
    while n % c == 0:
        n //= c
        v += 1
    return v


def clear_denominators(curve, p):
    """Scale to an isomorphic model on which the point is integral.

    Returns (curve', p', u): a_i -> u^i a_i and (x, y) -> (u^2 x, u^3 y).
    u is the least positive integer under the refined coprime basis of
    the coordinate denominators; for points whose denominators follow
    the 2k/3k valuation pattern of a Weierstrass equation this is the
    least integer outright.
    """
    if p.is_infinity:
        raise ValidationError("cannot clear denominators of the point at infinity")
    dx = mpz(1)
    dy = mpz(1)
    for c in p.x.cs:
        dx = lcm(dx, c.denominator)
    for c in p.y.cs:
        dy = lcm(dy, c.denominator)
    if dx == 1 and dy == 1:
        return curve, p, 1
    u = mpz(1)
    for c in _coprime_basis([dx, dy]):
        gx = _valuation(dx, c)
        gy = _valuation(dy, c)
        e = max(-(-gx // 2), -(-gy // 3))
        u *= c**e
    u2 = u * u
    scaled = Curve(
        curve.field,
        curve.a1 * u,
        curve.a2 * u2,
        curve.a3 * (u2 * u),
        curve.a4 * (u2 * u2),
        curve.a6 * (u2 * u2 * u2),
    )
    q = scaled.point(p.x * u2, p.y * (u2 * u))
    return scaled, q, int(u)
