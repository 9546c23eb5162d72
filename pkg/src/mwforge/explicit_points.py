"""The explicit point family on y^2 + xy + t y = x^3 + t x^2 with t = u^d.

For q = p^n and d = q + 1 everything is defined over F_{q^2}(u), which
contains the d-th roots of unity.  The points are ``P_i = P(zeta^i u)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from mwforge.ellcurve import INFINITY, CurvePoint, WeierstrassCurve, order_of_point
from mwforge.fields import (
    FieldElement,
    FiniteField,
    field_ctx_extension,
    function_field,
    is_prime,
    root_of_unity,
)
from mwforge.ratfunc import RatFunc
from mwforge.report import Report

__all__ = [
    "FamilyError",
    "Report",
    "ExplicitFamily",
    "build_family",
    "base_point",
    "verify_on_curve",
    "verify_weierstrass_identity",
    "verify_relations",
    "torsion_report",
    "verify_galois_permutation",
    "MAX_FIELD_SIZE",
]

MAX_FIELD_SIZE = 1 << 20
TORSION_BOUND = 24


class FamilyError(ValueError):
    pass


@dataclass
class ExplicitFamily:
    p: int
    n: int
    q: int
    d: int
    ctx: FiniteField
    K: object
    zeta: FieldElement
    E: WeierstrassCurve
    points: list[CurvePoint]
    Q_tors: CurvePoint

    @property
    def t(self) -> FieldElement:
        return self.K.gen() ** self.d


def base_point(ctx: FiniteField, p: int, n: int) -> tuple[RatFunc, RatFunc]:
    """Coordinates ``(x(u), y(u))`` of the generating point as rational functions."""
    q = p**n
    u = RatFunc.gen(ctx)
    one = RatFunc.one(ctx)
    if p == 2:
        x = u**q * (u**q - u)
        y = u ** (2 * q) * sum((u ** (2**j) for j in range(1, n + 1)), RatFunc.zero(ctx))
        return x, y
    w = one + RatFunc.constant(ctx, ctx.coerce(4)) * u
    two = RatFunc.constant(ctx, ctx.coerce(2))
    x = u**q * (u**q - u) / w**q
    y = u ** (2 * q) * (one + two * u + two * u**q) / (two * w ** ((3 * q - 1) // 2))
    y = y - u ** (2 * q) / (two * w ** (q - 1))
    return x, y


def build_family(p: int, n: int) -> ExplicitFamily:
    if not is_prime(p):
        raise FamilyError(f"p={p} is not prime")
    if n < 1:
        raise FamilyError("n must be at least 1")
    if p ** (2 * n) > MAX_FIELD_SIZE:
        raise FamilyError(f"p^(2n) = {p ** (2 * n)} exceeds {MAX_FIELD_SIZE}")
    q = p**n
    d = q + 1
    ctx = field_ctx_extension(p, 2 * n)
    assert (ctx.order - 1) % d == 0
    zeta = root_of_unity(ctx, d)
    K = function_field(ctx, "u")
    t = K.gen() ** d
    E = WeierstrassCurve(K, 1, t, t, 0, 0)
    x0, y0 = base_point(ctx, p, n)
    points = []
    c = ctx(1)
    for _ in range(d):
        points.append(CurvePoint(K(x0.substitute_scale(c)), K(y0.substitute_scale(c))))
        c = c * zeta
    return ExplicitFamily(p, n, q, d, ctx, K, zeta, E, points, CurvePoint(K(0), K(0)))


def verify_on_curve(fam: ExplicitFamily, points=None) -> Report:
    points = fam.points if points is None else points
    entries = [{"i": i, "ok": fam.E.contains(P)} for i, P in enumerate(points)]
    return Report("on_curve", all(e["ok"] for e in entries), entries)


def verify_weierstrass_identity(fam: ExplicitFamily) -> Report:
    """Both sides at ``P(u)`` equal ``u^{4q}(u^{2q} - 2u^{q+1} + u^2)/(1+4u)^{3q-1}``."""
    if fam.p == 2:
        return Report("weierstrass_identity", True, [], applicable=False)
    ctx, q, K = fam.ctx, fam.q, fam.K
    u = RatFunc.gen(ctx)
    w = RatFunc.one(ctx) + RatFunc.constant(ctx, ctx.coerce(4)) * u
    target = u ** (4 * q) * (u ** (2 * q) - RatFunc.constant(ctx, ctx.coerce(2)) * u ** (q + 1) + u**2)
    target = K(target / w ** (3 * q - 1))
    P = fam.points[0]
    lhs, rhs = fam.E.lhs(P.x, P.y), fam.E.rhs(P.x)
    entries = [
        {"side": "lhs", "ok": lhs == target},
        {"side": "rhs", "ok": rhs == target},
    ]
    return Report("weierstrass_identity", all(e["ok"] for e in entries), entries)


def _point_sum(E, points, signs) -> CurvePoint:
    acc = INFINITY
    for P, s in zip(points, signs):
        acc = E.add(acc, P if s > 0 else E.neg(P), check=False)
    return acc


def verify_relations(fam: ExplicitFamily) -> Report:
    """The plain sum, and for odd p the alternating sum, are torsion of small order."""
    sums = [("sum", [1] * fam.d)]
    if fam.p != 2:
        sums.append(("alternating_sum", [(-1) ** i for i in range(fam.d)]))
    entries = []
    for name, signs in sums:
        S = _point_sum(fam.E, fam.points, signs)
        order = order_of_point(fam.E, S, TORSION_BOUND)
        entries.append({"relation": name, "point": str(S), "order": order, "ok": order is not None})
    return Report("relations", all(e["ok"] for e in entries), entries)


def torsion_report(fam: ExplicitFamily) -> Report:
    E, Q, t = fam.E, fam.Q_tors, fam.t
    K = fam.K
    Q2 = E.mul(2, Q)
    Q3 = E.mul(3, Q)
    Q4 = E.mul(4, Q)
    order = order_of_point(E, Q, TORSION_BOUND)
    entries = [
        {"item": "order", "value": order, "ok": order == 4},
        {"item": "2Q", "value": str(Q2), "ok": Q2 == CurvePoint(-t, K(0))},
        {"item": "3Q", "value": str(Q3), "ok": Q3 == CurvePoint(K(0), -t)},
        {"item": "4Q", "value": str(Q4), "ok": Q4.is_infinity},
    ]
    return Report("torsion", all(e["ok"] for e in entries), entries)


def verify_galois_permutation(fam: ExplicitFamily) -> Report:
    """``u -> zeta u`` sends ``P_i`` to ``P_{i+1 mod d}``."""
    z = fam.zeta
    entries = []
    for i, P in enumerate(fam.points):
        x = P.x.raw.substitute_scale(z)
        y = P.y.raw.substitute_scale(z)
        nxt = fam.points[(i + 1) % fam.d]
        entries.append({"i": i, "ok": x == nxt.x.raw and y == nxt.y.raw})
    return Report("galois_permutation", all(e["ok"] for e in entries), entries)
