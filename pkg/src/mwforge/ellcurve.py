"""Elliptic curves in long Weierstrass form over any field context.

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

Long form is used throughout so that characteristic 2 needs no special
casing.  Points are affine with exact coordinates; the point at infinity
is :data:`INFINITY`.
"""

from __future__ import annotations

from dataclasses import dataclass

from mwforge.fields import FieldCtx, FieldElement, FieldError

__all__ = [
    "CurveError",
    "CurvePoint",
    "INFINITY",
    "CurveInvariants",
    "WeierstrassCurve",
    "invariants",
    "curve_from_c4c6",
    "is_on_curve",
    "add",
    "neg",
    "mul_scalar",
    "order_of_point",
]

DEFAULT_ORDER_BOUND = 24


class CurveError(ValueError):
    """Singular model, off-curve point, or mismatched field."""


@dataclass(frozen=True)
class CurvePoint:
    """Affine point ``(x, y)``, or the point at infinity when ``x is None``."""

    x: FieldElement | None = None
    y: FieldElement | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class CurveInvariants:
    b2: FieldElement
    b4: FieldElement
    b6: FieldElement
    b8: FieldElement
    c4: FieldElement
    c6: FieldElement
    discriminant: FieldElement
    j: FieldElement | None


class WeierstrassCurve:
    """Long Weierstrass model ``[a1, a2, a3, a4, a6]`` over ``ctx``.

    Construction rejects singular models unless ``unchecked=True``.
    """

    def __init__(self, ctx: FieldCtx, a1=0, a2=0, a3=0, a4=0, a6=0, *, unchecked: bool = False):
        self.ctx = ctx
        self.a1, self.a2, self.a3, self.a4, self.a6 = (ctx(a) for a in (a1, a2, a3, a4, a6))
        self._inv = None
        if not unchecked and self.invariants().discriminant.is_zero():
            raise CurveError("singular Weierstrass model (discriminant 0)")

    @property
    def coefficients(self) -> tuple[FieldElement, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __repr__(self):
        return f"WeierstrassCurve({self.ctx!r}, [{', '.join(map(str, self.coefficients))}])"

    def __eq__(self, other):
        return (
            isinstance(other, WeierstrassCurve)
            and other.ctx == self.ctx
            and other.coefficients == self.coefficients
        )

    def __hash__(self):
        return hash((self.ctx, self.coefficients))

    def invariants(self) -> CurveInvariants:
        if self._inv is None:
            self._inv = invariants(self)
        return self._inv

    def point(self, x, y) -> CurvePoint:
        """Affine point, checked to lie on the curve."""
        P = CurvePoint(self.ctx(x), self.ctx(y))
        if not self.contains(P):
            raise CurveError(f"point {P} is not on the curve")
        return P

    def contains(self, P: CurvePoint) -> bool:
        return is_on_curve(self, P)

    def lhs(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return y * y + self.a1 * x * y + self.a3 * y

    def rhs(self, x: FieldElement) -> FieldElement:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def add(self, P, Q, *, check: bool = True):
        return add(self, P, Q, check=check)

    def neg(self, P):
        return neg(self, P)

    def mul(self, n: int, P, *, check: bool = True):
        return mul_scalar(self, n, P, check=check)


def invariants(E: WeierstrassCurve) -> CurveInvariants:
    """The standard b-, c- quantities, discriminant and j-invariant."""
    a1, a2, a3, a4, a6 = E.coefficients
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    j = None if disc.is_zero() else c4**3 / disc
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, j)


def curve_from_c4c6(c4, c6) -> WeierstrassCurve:
    """``y^2 = x^3 - (c4/48) x - c6/864``, whose invariants are exactly ``(c4, c6)``."""
    if not isinstance(c4, FieldElement):
        raise FieldError("c4 must be a FieldElement")
    ctx = c4.ctx
    c6 = ctx(c6)
    if ctx.characteristic in (2, 3):
        raise CurveError("characteristic 2 or 3: no short model from (c4, c6)")
    if (c4**3 - c6 * c6).is_zero():
        raise CurveError("c4^3 = c6^2: singular")
    return WeierstrassCurve(ctx, 0, 0, 0, -c4 / 48, -c6 / 864)


def _check_point(E: WeierstrassCurve, P: CurvePoint) -> None:
    if P.is_infinity:
        return
    if P.x.ctx != E.ctx or P.y.ctx != E.ctx:
        raise CurveError("point coordinates over a different field")
    if E.lhs(P.x, P.y) != E.rhs(P.x):
        raise CurveError(f"point {P} is not on the curve")


def is_on_curve(E: WeierstrassCurve, P: CurvePoint) -> bool:
    if P.is_infinity:
        return True
    if P.x.ctx != E.ctx or P.y.ctx != E.ctx:
        raise CurveError("point coordinates over a different field")
    return E.lhs(P.x, P.y) == E.rhs(P.x)


def neg(E: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y - E.a1 * P.x - E.a3)


def add(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint, *, check: bool = True) -> CurvePoint:
    """Chord-and-tangent addition."""
    if check:
        _check_point(E, P)
        _check_point(E, Q)
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = E.coefficients
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if (y1 + y2 + a1 * x2 + a3).is_zero():
            return INFINITY
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-(x1**3) + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        dx = x2 - x1
        lam = (y2 - y1) / dx
        nu = (y1 * x2 - y2 * x1) / dx
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


def mul_scalar(E: WeierstrassCurve, n: int, P: CurvePoint, *, check: bool = True) -> CurvePoint:
    """``n * P`` by double-and-add; negative ``n`` allowed."""
    if check:
        _check_point(E, P)
    if n < 0:
        return mul_scalar(E, -n, neg(E, P), check=False)
    result = INFINITY
    base = P
    while n:
        if n & 1:
            result = add(E, result, base, check=False)
        n >>= 1
        if n:
            base = add(E, base, base, check=False)
    return result


def order_of_point(E: WeierstrassCurve, P: CurvePoint, bound: int = DEFAULT_ORDER_BOUND) -> int | None:
    """Least ``1 <= n <= bound`` with ``n P = O``, or None if it exceeds ``bound``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    _check_point(E, P)
    R = P
    for n in range(1, bound + 1):
        if R.is_infinity:
            return n
        R = add(E, R, P, check=False)
    return None
