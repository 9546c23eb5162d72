"""Numerical invariants of Berger's construction and the rank formula.

The input is the multiplicity data of two rational functions ``f`` on a
curve C and ``g`` on a curve D: zero orders ``a``, pole orders ``ap`` of f,
and ``b``, ``bp`` for g.  Everything here is integer combinatorics; the
only geometric input is ``c1_base``, the sum over places ``v != 0, inf`` of
``(number of fiber components - 1)`` for the surface at level 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import reduce
from pathlib import Path

from mwforge.fields import divisors, euler_phi, is_prime, order_mod

__all__ = [
    "BergerDataError",
    "BergerData",
    "InvariantReport",
    "PRESETS",
    "preset",
    "gamma",
    "delta",
    "genus_X",
    "e_d",
    "e_df",
    "e_dg",
    "c1",
    "c2",
    "kummer_genus",
    "trace_dim",
    "rank_formula",
    "orbit_rank_bound",
    "newpart_dims",
    "hom_rank_preset",
    "invariant_report",
]


class BergerDataError(ValueError):
    """Multiplicity data violating a standing hypothesis; ``clause`` names it."""

    def __init__(self, clause: str, message: str):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


def _gcd(*xs: int) -> int:
    return reduce(math.gcd, xs, 0)


@dataclass(frozen=True)
class BergerData:
    gC: int
    gD: int
    a: tuple[int, ...]
    ap: tuple[int, ...]
    b: tuple[int, ...]
    bp: tuple[int, ...]
    p: int = 0
    c1_base: int = 0

    def __post_init__(self):
        for name in ("a", "ap", "b", "bp"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))

    @property
    def m(self) -> int:
        return sum(self.a)

    @property
    def n(self) -> int:
        return sum(self.b)

    @property
    def f_mults(self) -> tuple[int, ...]:
        return self.a + self.ap

    @property
    def g_mults(self) -> tuple[int, ...]:
        return self.b + self.bp

    @property
    def rational_bases(self) -> bool:
        return self.gC == 0 and self.gD == 0

    def validate(self) -> "BergerData":
        """Check divisor-degree balance and the multiplicity hypothesis; return self."""
        if self.gC < 0 or self.gD < 0:
            raise BergerDataError("genus", "genera must be non-negative")
        if self.c1_base < 0:
            raise BergerDataError("c1_base", "must be non-negative")
        for name in ("a", "ap", "b", "bp"):
            vals = getattr(self, name)
            if not vals:
                raise BergerDataError(name, "a non-constant function needs zeros and poles")
            if any(v < 1 for v in vals):
                raise BergerDataError(name, "multiplicities must be positive")
        if sum(self.a) != sum(self.ap):
            raise BergerDataError("degree(f)", f"sum(a)={sum(self.a)} != sum(ap)={sum(self.ap)}")
        if sum(self.b) != sum(self.bp):
            raise BergerDataError("degree(g)", f"sum(b)={sum(self.b)} != sum(bp)={sum(self.bp)}")
        if self.p != 0 and not is_prime(self.p):
            raise BergerDataError("characteristic", f"{self.p} is neither 0 nor prime")
        g = _gcd(*self.f_mults, *self.g_mults)
        if g != 1:
            raise BergerDataError("gcd(all multiplicities) = 1", f"gcd is {g}")
        if self.p:
            for ai in self.a:
                for bj in self.b:
                    if math.gcd(ai, bj) % self.p == 0:
                        raise BergerDataError(
                            "char does not divide gcd(a_i, b_j)",
                            f"p={self.p} divides gcd({ai}, {bj})",
                        )
            for ai in self.ap:
                for bj in self.bp:
                    if math.gcd(ai, bj) % self.p == 0:
                        raise BergerDataError(
                            "char does not divide gcd(a'_i, b'_j)",
                            f"p={self.p} divides gcd({ai}, {bj})",
                        )
        return self

    # JSON --------------------------------------------------------------------
    def to_json(self) -> dict:
        d = asdict(self)
        return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}

    @classmethod
    def from_json(cls, obj: dict) -> "BergerData":
        required = {"gC", "gD", "a", "ap", "b", "bp"}
        missing = required - obj.keys()
        if missing:
            raise BergerDataError("schema", f"missing keys {sorted(missing)}")
        unknown = obj.keys() - required - {"p", "c1_base"}
        if unknown:
            raise BergerDataError("schema", f"unknown keys {sorted(unknown)}")
        try:
            return cls(
                gC=int(obj["gC"]),
                gD=int(obj["gD"]),
                a=tuple(obj["a"]),
                ap=tuple(obj["ap"]),
                b=tuple(obj["b"]),
                bp=tuple(obj["bp"]),
                p=int(obj.get("p", 0)),
                c1_base=int(obj.get("c1_base", 0)),
            )
        except (TypeError, ValueError) as exc:
            raise BergerDataError("schema", str(exc)) from exc

    @classmethod
    def load(cls, path: str | Path) -> "BergerData":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


# f = x(x-1), g = y^2/(1-y) on P^1 x P^1
EXAMPLE1 = BergerData(gC=0, gD=0, a=(1, 1), ap=(2,), b=(2,), bp=(1, 1), p=0, c1_base=0)
# f = x(x-1)(x-a), g = y(y-1)(y-a); one I2 fiber at t=1 gives c1_base = 1
EXAMPLE2 = BergerData(gC=0, gD=0, a=(1, 1, 1), ap=(3,), b=(1, 1, 1), bp=(3,), p=0, c1_base=1)
# f = x^2, g a quadratic with distinct zeros and poles; c1_base is not used there
X_SQUARED = BergerData(gC=0, gD=0, a=(2,), ap=(2,), b=(1, 1), bp=(1, 1), p=0, c1_base=0)

PRESETS = {"example1": EXAMPLE1, "example2": EXAMPLE2, "x-squared": X_SQUARED}


def preset(name: str, p: int | None = None) -> BergerData:
    try:
        data = PRESETS[name]
    except KeyError:
        raise BergerDataError("preset", f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    if p is not None:
        data = BergerData(**{**asdict(data), "p": p})
    return data


# ---------------------------------------------------------------------------
# blow-up counts and genus


def gamma(a: int, b: int) -> int:
    """Steps from ``(a, b)`` to ``(gcd, 0)``, subtracting the smaller from the larger."""
    if a < 1 or b < 1:
        raise ValueError("gamma needs positive arguments")
    steps = 0
    while a and b:
        if a < b:
            a, b = b, a
        steps += a // b
        a %= b
    return steps


def delta(a: int, b: int) -> int:
    """Genus drop ``(ab - a - b + gcd(a, b)) / 2`` at a base point."""
    num = a * b - a - b + math.gcd(a, b)
    assert num % 2 == 0
    return num // 2


def genus_X(data: BergerData) -> int:
    data.validate()
    m, n = data.m, data.n
    g = m * data.gD + n * data.gC + (m - 1) * (n - 1)
    g -= sum(delta(ai, bj) for ai in data.a for bj in data.b)
    g -= sum(delta(ai, bj) for ai in data.ap for bj in data.bp)
    return g


# ---------------------------------------------------------------------------
# Kummer covers


def e_d(d: int, mults) -> int:
    """``gcd(d, *mults)``; for f on P^1 over an algebraically closed field and e | d, f is an e-th power iff e divides it."""
    if d < 1:
        raise ValueError("d must be positive")
    return _gcd(d, *mults)


def e_df(d: int, data: BergerData) -> int:
    if data.gC != 0:
        raise ValueError("e_{d,f} implemented only for C = P^1")
    return e_d(d, data.f_mults)


def e_dg(d: int, data: BergerData) -> int:
    if data.gD != 0:
        raise ValueError("e_{d,g} implemented only for D = P^1")
    return e_d(d, data.g_mults)


def kummer_genus(d: int, base_genus: int, branch_mults) -> int:
    """Genus of the irreducible cover ``z^d = f`` by Riemann-Hurwitz.

    ``branch_mults`` are the orders of all zeros and poles of f.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return base_genus
    if _gcd(d, *branch_mults) != 1:
        raise ValueError(f"cover z^{d} = f is reducible; divide out e-th powers first")
    twice = d * (2 * base_genus - 2) + sum(d - math.gcd(mp, d) for mp in branch_mults)
    if twice % 2:
        raise ValueError("invalid branch data: 2g - 2 is odd")
    g = twice // 2 + 1
    if g < 0:
        raise ValueError("invalid branch data: negative genus")
    return g


def trace_dim(d: int, data: BergerData) -> int:
    """Dimension of the K/k-trace at level d; note the crossed exponents."""
    if not data.rational_bases:
        raise ValueError("trace dimension implemented only for P^1 bases")
    ef, eg = e_df(d, data), e_dg(d, data)
    dim_c = kummer_genus(eg, data.gC, [m // ef for m in data.f_mults])
    dim_d = kummer_genus(ef, data.gD, [m // eg for m in data.g_mults])
    return dim_c + dim_d


# ---------------------------------------------------------------------------
# correction terms and the rank formula


def c1(d: int, data: BergerData) -> int:
    return d * data.c1_base


def c2(d: int, data: BergerData) -> int:
    ef, eg = e_df(d, data) if data.gC == 0 else 1, e_dg(d, data) if data.gD == 0 else 1
    total = 0
    for zeros_f, zeros_g in ((data.a, data.b), (data.ap, data.bp)):
        total += sum(math.gcd(math.gcd(ai, bj), d) for ai in zeros_f for bj in zeros_g)
        total -= sum(math.gcd(ai, eg) for ai in zeros_f)
        total -= sum(math.gcd(bj, ef) for bj in zeros_g)
        total += 1
    return total


def rank_formula(d: int, hom_rank: int, data: BergerData) -> int:
    if hom_rank < 0:
        raise ValueError("hom_rank must be non-negative")
    return hom_rank - c1(d, data) + c2(d, data)


def orbit_rank_bound(p: int, n: int) -> tuple[Fraction, Fraction]:
    """``(sum_{e | d, e > 2} phi(e) / o_e(q), (q - 1) / 2n)`` for ``q = p^n``, ``d = q + 1``."""
    if not is_prime(p) or n < 1:
        raise ValueError("need p prime and n >= 1")
    q = p**n
    d = q + 1
    total = sum((Fraction(euler_phi(e), order_mod(q, e)) for e in divisors(d) if e > 2), Fraction(0))
    lower = Fraction(q - 1, 2 * n)
    assert total >= lower, (p, n, total, lower)
    return total, lower


def newpart_dims(d: int, flavor: str) -> dict[int, int]:
    """Dimensions of the new parts of the Jacobian of the cover, per divisor of d."""
    if d < 1:
        raise ValueError("d must be positive")
    out = {}
    for e in divisors(d):
        if flavor == "example1":
            out[e] = 0 if e <= 2 else euler_phi(e) // 2
        elif flavor == "example2":
            out[e] = 0 if e == 1 else (1 if e in (2, 3) else euler_phi(e))
        else:
            raise ValueError(f"unknown flavor {flavor!r}")
    return out


def hom_rank_preset(name: str, d: int, p: int = 0, n: int | None = None) -> int:
    """Values of the rank of the mu_d-equivariant Hom lattice stated for the examples.

    ``mu-d``: q = p^n, d = q + 1, mu_d in k: q for p = 2, q - 1 for p odd.
    ``char0``: 0.  ``generic``: d - 1.  ``cm``: phi(d) + d - 1.
    """
    if name == "mu-d":
        if n is None:
            raise ValueError("mu-d preset needs n")
        q = p**n
        if d != q + 1:
            raise ValueError("mu-d preset needs d = p^n + 1")
        return q if p == 2 else q - 1
    if name == "char0":
        return 0
    if name == "generic":
        return d - 1
    if name == "cm":
        return euler_phi(d) + d - 1
    raise ValueError(f"unknown hom_rank preset {name!r}")


@dataclass(frozen=True)
class InvariantReport:
    d: int
    e_df: int
    e_dg: int
    r: tuple[int, ...]
    rp: tuple[int, ...]
    s: tuple[int, ...]
    sp: tuple[int, ...]
    t: tuple[tuple[int, ...], ...]
    tp: tuple[tuple[int, ...], ...]
    k_d: int
    kp_d: int
    l_d: int
    lp_d: int
    c1: int
    c2: int
    genus: int
    trace_dim: int | None
    rank: int | None = None
    hom_rank: int | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("extra")
        out.update(self.extra)
        return out


def invariant_report(d: int, data: BergerData, hom_rank: int | None = None) -> InvariantReport:
    data.validate()
    if d < 1:
        raise ValueError("d must be positive")
    ef = e_df(d, data) if data.gC == 0 else None
    eg = e_dg(d, data) if data.gD == 0 else None
    r = tuple(math.gcd(ai, d) for ai in data.a)
    rp = tuple(math.gcd(ai, d) for ai in data.ap)
    s = tuple(math.gcd(bj, d) for bj in data.b)
    sp = tuple(math.gcd(bj, d) for bj in data.bp)
    t = tuple(tuple(_gcd(ai, bj, d) for bj in data.b) for ai in data.a)
    tp = tuple(tuple(_gcd(ai, bj, d) for bj in data.bp) for ai in data.ap)
    return InvariantReport(
        d=d,
        e_df=ef,
        e_dg=eg,
        r=r,
        rp=rp,
        s=s,
        sp=sp,
        t=t,
        tp=tp,
        k_d=sum(r),
        kp_d=sum(rp),
        l_d=sum(s),
        lp_d=sum(sp),
        c1=c1(d, data),
        c2=c2(d, data),
        genus=genus_X(data),
        trace_dim=trace_dim(d, data) if data.rational_bases else None,
        rank=None if hom_rank is None else rank_formula(d, hom_rank, data),
        hom_rank=hom_rank,
    )
