"""Height pairing matrices of the explicit family and a doubling-limit oracle.

The closed-form Gram matrix is circulant in ``i - j``.  The oracle is
independent of it: it iterates x-only duplication on exact rational
functions and reads off ``deg x([2^n]P) / 4^n``, which converges to a fixed
multiple of the canonical height.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

from mwforge.ellcurve import CurvePoint, WeierstrassCurve
from mwforge.fields import FunctionField
from mwforge.ratfunc import Poly, poly_gcd
from mwforge.report import frac_str

__all__ = [
    "GramMatrix",
    "LatticeReport",
    "TorsionError",
    "gram_closed_form",
    "lattice_rank",
    "same_span",
    "astar_gram",
    "identify_scaled_astar",
    "canonical_height_estimate",
    "pairing_oracle",
    "oracle_gram",
    "calibrate_kappa",
    "compare_oracle",
    "render_tsv",
    "render_json",
    "decimal6",
]


class TorsionError(ArithmeticError):
    """Doubling reached the point at infinity: the point is torsion."""


@dataclass
class GramMatrix:
    entries: list[list[Fraction]]
    provenance: str = "closed-form"

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def scaled(self, c) -> "GramMatrix":
        return GramMatrix([[c * v for v in row] for row in self.entries], self.provenance)

    def submatrix(self, idx) -> "GramMatrix":
        return GramMatrix([[self.entries[i][j] for j in idx] for i in idx], self.provenance)

    def __eq__(self, other):
        return isinstance(other, GramMatrix) and self.entries == other.entries


@dataclass
class LatticeReport:
    rank: int
    kernel: list[tuple[int, ...]]
    astar: bool | None = None
    deviations: list[list[Fraction]] | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kernel:
            assert self.rank + len(self.kernel) == len(self.kernel[0])


# ---------------------------------------------------------------------------
# closed form


def _power_of(p: int, m: int) -> int | None:
    n = 0
    while m > 1 and m % p == 0:
        m //= p
        n += 1
    return n if m == 1 and n >= 1 else None


def gram_closed_form(p: int, d: int) -> GramMatrix:
    """Pairings ``<P_i, P_j>`` for ``d = p^n + 1``, indexed by ``i - j mod d``."""
    if d < 3 or _power_of(p, d - 1) is None:
        raise ValueError(f"d={d} is not of the form {p}^n + 1")
    if p == 2:
        diag, off = Fraction((d - 1) ** 2, d), Fraction(1 - d, d)

        def entry(k):
            return diag if k == 0 else off

    else:
        diag, even = Fraction((d - 1) * (d - 2), d), Fraction(2 * (1 - d), d)

        def entry(k):
            if k == 0:
                return diag
            return even if k % 2 == 0 else Fraction(0)

    return GramMatrix([[entry((i - j) % d) for j in range(d)] for i in range(d)])


# ---------------------------------------------------------------------------
# exact linear algebra


def _integer_rows(G: GramMatrix) -> list[list[int]]:
    den = 1
    for row in G.entries:
        for v in row:
            den = math.lcm(den, Fraction(v).denominator)
    return [[int(Fraction(v) * den) for v in row] for row in G.entries]


def _primitive(v) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(v)
    v = [x // g for x in v]
    first = next(x for x in v if x)
    if first < 0:
        v = [-x for x in v]
    return tuple(v)


def lattice_rank(G: GramMatrix) -> LatticeReport:
    """Rank and an integral kernel basis by fraction-free Gauss-Jordan elimination."""
    if not G.is_symmetric():
        raise ValueError("Gram matrix must be symmetric")
    rows = _integer_rows(G)
    n = G.dim
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(n):
            if i != r and rows[i][col]:
                a, b = pr[col], rows[i][col]
                rows[i] = list(_primitive([a * x - b * y for x, y in zip(rows[i], pr)]))
        pivots.append(col)
        r += 1
        if r == n:
            break
    rank = len(pivots)
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        L = 1
        for k, pc in enumerate(pivots):
            L = math.lcm(L, abs(rows[k][pc]))
        v = [0] * n
        v[f] = L
        for k, pc in enumerate(pivots):
            v[pc] = -rows[k][f] * L // rows[k][pc]
        kernel.append(_primitive(v))
    return LatticeReport(rank=rank, kernel=kernel)


def _rank_of_rows(vectors) -> int:
    if not vectors:
        return 0
    n = len(vectors[0])
    m = [list(v) for v in vectors]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][col]:
                a, b = m[r][col], m[i][col]
                m[i] = [a * x - b * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def same_span(basis, vectors) -> bool:
    """True when the two integer vector families span the same rational subspace."""
    basis, vectors = list(basis), list(vectors)
    rb, rv = _rank_of_rows(basis), _rank_of_rows(vectors)
    return rb == rv == _rank_of_rows(basis + vectors)


def astar_gram(m: int) -> GramMatrix:
    """Gram matrix of ``A_m^*`` on ``m`` of its ``m + 1`` minimal-class vectors."""
    if m < 1:
        raise ValueError("m must be positive")
    diag, off = Fraction(m, m + 1), Fraction(-1, m + 1)
    return GramMatrix([[diag if i == j else off for j in range(m)] for i in range(m)], "A*")


def determinant(G: GramMatrix) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(v) for v in row] for row in G.entries]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def identify_scaled_astar(G: GramMatrix, p: int, d: int) -> bool:
    """Whether ``G`` is ``(d-1) A_{d-1}^*`` (p = 2) or two orthogonal ``(d-1) A_{d/2-1}^*`` (p odd)."""
    if G.dim != d:
        raise ValueError(f"dimension mismatch: Gram is {G.dim}x{G.dim}, d={d}")
    scale = d - 1
    if p == 2:
        return G.submatrix(range(1, d)) == astar_gram(d - 1).scaled(scale)
    if d % 2:
        return False
    half = d // 2
    evens, odds = list(range(0, d, 2)), list(range(1, d, 2))
    if any(G[i, j] != 0 for i in evens for j in odds):
        return False
    target = astar_gram(half - 1).scaled(scale)
    return G.submatrix(evens[1:]) == target and G.submatrix(odds[1:]) == target


# ---------------------------------------------------------------------------
# doubling-limit oracle


def _b_invariants_integral(E: WeierstrassCurve):
    """``(delta, beta2, beta4, beta6, beta8)`` with ``b_i = beta_i / delta`` as polynomials."""
    inv = E.invariants()
    bs = [inv.b2.raw, inv.b4.raw, inv.b6.raw, inv.b8.raw]
    delta = Poly.one(bs[0].ctx)
    for b in bs:
        delta = delta * b.den.exact_div(poly_gcd(delta, b.den))
    return delta, [b.num * delta.exact_div(b.den) for b in bs]


def _double_x(A: Poly, B: Poly, delta: Poly, betas, two, four):
    """Reduced ``x(2R) = N / D`` from reduced ``x(R) = A / B``; ``D == 0`` means ``2R = O``.

    ``N = (delta A^2 - b4 B^2) A^2 - (2 b6 A B + b8 B^2) B^2`` and ``D = B X`` with
    ``X = (4 delta A + b2 B) A^2 + (2 b4 A + b6 B) B^2``.  Since ``N = delta A^4 mod B``,
    a common factor of N and B must divide delta, so only ``gcd(N, X)`` is needed
    when delta is constant.
    """
    b2, b4, b6, b8 = betas
    A2, B2 = A * A, B * B
    AB = A * B
    N = (delta * A2 - b4 * B2) * A2 - ((b6 * AB).scale(two) + b8 * B2) * B2
    X = ((delta * A).scale(four) + b2 * B) * A2 + ((b4 * A).scale(two) + b6 * B) * B2
    if X.is_zero() or B.is_zero():
        raise TorsionError("doubling reached the point at infinity")
    g = poly_gcd(N, X)
    if not g.is_one():
        N, X = N.exact_div(g), X.exact_div(g)
    if delta.degree > 0:
        h = poly_gcd(N, B)
        if not h.is_one():
            N, B = N.exact_div(h), B.exact_div(h)
    D = B * X
    lc = D.lc()
    if not D.ctx.eq(lc, D.ctx.one):
        inv = D.ctx.inv(lc)
        N, D = N.scale(inv), D.scale(inv)
    return N, D


def canonical_height_estimate(E: WeierstrassCurve, P: CurvePoint, iters: int = 4) -> list[Fraction]:
    """``[deg x([2^n] P) / 4^n for n = 0..iters]`` over a rational function field."""
    if not isinstance(E.ctx, FunctionField):
        raise ValueError("height oracle needs a curve over a rational function field")
    if iters < 0:
        raise ValueError("iters must be non-negative")
    if P.is_infinity:
        raise TorsionError("point at infinity")
    ctx = E.ctx.base
    delta, betas = _b_invariants_integral(E)
    two, four = ctx.coerce(2), ctx.coerce(4)
    x = P.x.raw
    A, B = x.num, x.den
    out = [Fraction(max(A.degree, B.degree, 0))]
    for n in range(1, iters + 1):
        A, B = _double_x(A, B, delta, betas, two, four)
        out.append(Fraction(max(A.degree, B.degree, 0), 4**n))
    return out


def _height_or_zero(E, P, iters) -> Fraction:
    if P.is_infinity:
        return Fraction(0)
    try:
        return canonical_height_estimate(E, P, iters)[-1]
    except TorsionError:
        return Fraction(0)


def pairing_oracle(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint, iters: int = 4) -> Fraction:
    """``(L(P+Q) - L(P) - L(Q)) / 2`` with all estimates at the same depth."""
    S = E.add(P, Q, check=False)
    return (_height_or_zero(E, S, iters) - _height_or_zero(E, P, iters) - _height_or_zero(E, Q, iters)) / 2


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MWFORGE_THREADS", "1")))
    except ValueError:
        return 1


def oracle_gram(E: WeierstrassCurve, points, iters: int = 4, threads: int | None = None) -> GramMatrix:
    """Matrix of ``pairing_oracle`` values; entries are computed independently."""
    d = len(points)
    threads = _threads() if threads is None else threads
    pairs = [(i, j) for i in range(d) for j in range(i, d)]

    def single(i):
        return _height_or_zero(E, points[i], iters)

    def summed(ij):
        i, j = ij
        return _height_or_zero(E, E.add(points[i], points[j], check=False), iters)

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            diag = list(ex.map(single, range(d)))
            sums = list(ex.map(summed, pairs))
    else:
        diag = [single(i) for i in range(d)]
        sums = [summed(ij) for ij in pairs]
    M = [[Fraction(0)] * d for _ in range(d)]
    for (i, j), s in zip(pairs, sums):
        M[i][j] = M[j][i] = (s - diag[i] - diag[j]) / 2
    return GramMatrix(M, "oracle")


def calibrate_kappa(closed: GramMatrix, oracle: GramMatrix) -> Fraction:
    """``closed(0,0) / oracle(0,0)``."""
    if oracle[0, 0] == 0:
        raise ZeroDivisionError("oracle diagonal is zero")
    return closed[0, 0] / oracle[0, 0]


def compare_oracle(closed: GramMatrix, oracle: GramMatrix, kappa: Fraction, tol=Fraction(1, 10)) -> dict:
    """Deviations ``kappa * oracle - closed`` and the integer-rounding check on ``d * entries``."""
    d = closed.dim
    dev = [[kappa * oracle[i, j] - closed[i, j] for j in range(d)] for i in range(d)]
    max_dev = max(abs(v) for row in dev for v in row)
    rounded_ok = all(
        round(kappa * d * oracle[i, j]) == d * closed[i, j] for i in range(d) for j in range(d)
    )
    return {
        "deviations": dev,
        "max_deviation": max_dev,
        "within_tol": max_dev <= tol,
        "rounding_exact": rounded_ok,
    }


# ---------------------------------------------------------------------------
# rendering


def decimal6(x) -> str:
    """Six decimal places, ties to even."""
    x = Fraction(x)
    q = Decimal(x.numerator) / Decimal(x.denominator)
    return str(q.quantize(Decimal("0.000001"), rounding=ROUND_HALF_EVEN))


def render_tsv(G: GramMatrix) -> str:
    return "\n".join("\t".join(frac_str(v) for v in row) for row in G.entries) + "\n"


def render_json(G: GramMatrix) -> dict:
    return {
        "provenance": G.provenance,
        "dim": G.dim,
        "entries": [[{"num": Fraction(v).numerator, "den": Fraction(v).denominator} for v in row] for row in G.entries],
    }
