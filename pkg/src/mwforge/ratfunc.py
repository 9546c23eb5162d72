"""Univariate polynomials and reduced rational functions over a field context.

:class:`Poly` stores raw coefficient values (see :mod:`mwforge.fields`) in a
dense tuple, lowest degree first.  All heavy lifting goes through the
context's polynomial kernel, which is compiled for finite fields when the
extension is available.

:class:`RatFunc` is always kept in canonical form: coprime numerator and
denominator, denominator monic.  Two rational functions are equal exactly
when their components are equal.
"""

from __future__ import annotations

import re
from fractions import Fraction

from mwforge.fields import FieldCtx, FieldElement, FiniteField, RationalField

__all__ = [
    "NEG_INF",
    "Poly",
    "RatFunc",
    "poly_gcd",
    "naive_height",
    "substitute_scale",
    "parse_poly",
    "parse_ratfunc",
]

#: Degree of the zero polynomial.  Compares below every integer and absorbs addition.
NEG_INF = float("-inf")


def _raw(ctx: FieldCtx, c):
    if isinstance(c, FieldElement):
        if c.ctx != ctx:
            raise ValueError(f"coefficient from {c.ctx!r}, expected {ctx!r}")
        return c.raw
    if isinstance(c, (int, Fraction)):
        return ctx.coerce(c)
    return c


def _unwrap(ctx: FieldCtx, c):
    """Raw coefficient: FieldElements are unwrapped, other values are taken as raw."""
    if isinstance(c, FieldElement):
        if c.ctx != ctx:
            raise ValueError(f"coefficient from {c.ctx!r}, expected {ctx!r}")
        return c.raw
    if isinstance(ctx, FiniteField):
        if ctx.m == 1:
            return c % ctx.p
        if not 0 <= c < ctx.order:
            raise ValueError(f"raw value {c} out of range for {ctx!r}")
        return c
    if isinstance(ctx, RationalField):
        return Fraction(c)
    return ctx.coerce(c)


class Poly:
    """Dense univariate polynomial with coefficients in ``ctx``."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: FieldCtx, coeffs=(), *, normalize: bool = True):
        self.ctx = ctx
        if normalize:
            cs = [_unwrap(ctx, c) for c in coeffs]
            while cs and ctx.is_zero(cs[-1]):
                cs.pop()
            self.coeffs = tuple(cs)
        else:
            self.coeffs = tuple(coeffs)
        self._hash = None

    @classmethod
    def _from_kernel(cls, ctx, coeffs) -> "Poly":
        return cls(ctx, coeffs, normalize=False)

    @classmethod
    def zero(cls, ctx) -> "Poly":
        return cls(ctx, (), normalize=False)

    @classmethod
    def one(cls, ctx) -> "Poly":
        return cls(ctx, (ctx.one,), normalize=False)

    @classmethod
    def gen(cls, ctx) -> "Poly":
        return cls(ctx, (ctx.zero, ctx.one), normalize=False)

    @classmethod
    def constant(cls, ctx, c) -> "Poly":
        return cls(ctx, (c,))

    @classmethod
    def monomial(cls, ctx, n: int, c=None) -> "Poly":
        c = ctx.one if c is None else _raw(ctx, c)
        return cls(ctx, [ctx.zero] * n + [c])

    # basic properties ----------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.ctx.eq(self.coeffs[0], self.ctx.one)

    def lc(self):
        if not self.coeffs:
            return self.ctx.zero
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.ctx.element(self.coeffs[i])
        return self.ctx.element(self.ctx.zero)

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("polynomials over different fields")
            return other
        return Poly.constant(self.ctx, _raw(self.ctx, other))

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        return Poly._from_kernel(self.ctx, self.ctx.kernel.add(list(self.coeffs), list(other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Poly._from_kernel(self.ctx, self.ctx.kernel.sub(list(self.coeffs), list(other.coeffs)))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return Poly._from_kernel(self.ctx, self.ctx.kernel.neg(list(self.coeffs)))

    def __mul__(self, other):
        if isinstance(other, (Poly,)):
            other = self._check(other)
            return Poly._from_kernel(
                self.ctx, self.ctx.kernel.mul(list(self.coeffs), list(other.coeffs))
            )
        return self.scale(_raw(self.ctx, other))

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        return Poly._from_kernel(self.ctx, self.ctx.kernel.scale(list(self.coeffs), c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._check(other)
        q, r = self.ctx.kernel.divmod(list(self.coeffs), list(other.coeffs))
        return Poly._from_kernel(self.ctx, q), Poly._from_kernel(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        return Poly._from_kernel(self.ctx, self.ctx.kernel.monic(list(self.coeffs)))

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.ctx != self.ctx or len(other.coeffs) != len(self.coeffs):
                return False
            eq = self.ctx.eq
            return all(eq(a, b) for a, b in zip(self.coeffs, other.coeffs))
        try:
            return self == self._check(other)
        except (ValueError, TypeError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.coeffs))
        return self._hash

    # evaluation and substitution -------------------------------------------
    def eval_raw(self, c):
        ctx = self.ctx
        acc = ctx.zero
        for a in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, c), a)
        return acc

    def __call__(self, c):
        return self.ctx.element(self.eval_raw(_raw(self.ctx, c)))

    def scale_var(self, c) -> "Poly":
        """``p(c * u)``."""
        return self._scale_var_raw(_raw(self.ctx, c))

    def _scale_var_raw(self, c) -> "Poly":
        ctx = self.ctx
        out = []
        power = ctx.one
        for a in self.coeffs:
            out.append(ctx.mul(a, power))
            power = ctx.mul(power, c)
        return Poly(ctx, out)

    def compose_power(self, n: int) -> "Poly":
        """``p(u^n)``."""
        ctx = self.ctx
        out = [ctx.zero] * (n * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, a in enumerate(self.coeffs):
            out[i * n] = a
        return Poly(ctx, out, normalize=False)

    # rendering -------------------------------------------------------------
    def format(self, var: str = "u") -> str:
        return _format_terms(self.ctx, self.coeffs, var)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.ctx!r}, {self.format()!r})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; ``gcd(0, 0) = 0``."""
    if a.ctx != b.ctx:
        raise ValueError("polynomials over different fields")
    return Poly._from_kernel(a.ctx, a.ctx.kernel.gcd(list(a.coeffs), list(b.coeffs)))


class RatFunc:
    """Reduced ratio ``num / den`` of polynomials; ``den`` is monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduced: bool = False):
        ctx = num.ctx
        if den is None:
            den = Poly.one(ctx)
        if den.ctx != ctx:
            raise ValueError("numerator and denominator over different fields")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            if num.is_zero():
                den = Poly.one(ctx)
            elif not den.is_one():
                g = poly_gcd(num, den)
                if not g.is_one():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lc = den.lc()
                if not ctx.eq(lc, ctx.one):
                    inv = ctx.inv(lc)
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    @classmethod
    def zero(cls, ctx) -> "RatFunc":
        return cls(Poly.zero(ctx), Poly.one(ctx), reduced=True)

    @classmethod
    def one(cls, ctx) -> "RatFunc":
        return cls(Poly.one(ctx), Poly.one(ctx), reduced=True)

    @classmethod
    def gen(cls, ctx) -> "RatFunc":
        return cls(Poly.gen(ctx), Poly.one(ctx), reduced=True)

    @classmethod
    def constant(cls, ctx, c) -> "RatFunc":
        return cls(Poly.constant(ctx, _raw(ctx, c)), Poly.one(ctx), reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def _check(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            return RatFunc(self.num._check(other), reduced=True)
        return RatFunc.constant(self.ctx, _raw(self.ctx, other))

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_one() and d.is_one():
            return RatFunc(a + c, b, reduced=True)
        g = poly_gcd(b, d)
        if g.is_one():
            return RatFunc(a * d + c * b, b * d, reduced=True)
        bg, dg = b.exact_div(g), d.exact_div(g)
        t = a * dg + c * bg
        g2 = poly_gcd(t, g)
        if not g2.is_one():
            t = t.exact_div(g2)
            g = g.exact_div(g2)
        return RatFunc(t, bg * dg * g, reduced=True) if not t.is_zero() else RatFunc.zero(self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return RatFunc.zero(self.ctx)
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if not g1.is_one():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_one():
            c, b = c.exact_div(g2), b.exact_div(g2)
        return RatFunc(a * c, b * d, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        lc = den.lc()
        ctx = self.ctx
        if not ctx.eq(lc, ctx.one):
            inv = ctx.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc(num, den, reduced=True)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        # coprime powers stay coprime
        num, den = self.num**n, self.den**n
        return RatFunc(num, den, reduced=True)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        try:
            return self == self._check(other)
        except (ValueError, TypeError, ArithmeticError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # evaluation, substitution, height --------------------------------------
    def eval_raw(self, c):
        ctx = self.ctx
        d = self.den.eval_raw(c)
        if ctx.is_zero(d):
            raise ZeroDivisionError("evaluation at a pole")
        return ctx.div(self.num.eval_raw(c), d)

    def __call__(self, c):
        return self.ctx.element(self.eval_raw(_raw(self.ctx, c)))

    def substitute_scale(self, c) -> "RatFunc":
        """``r(c * u)`` for nonzero ``c``."""
        ctx = self.ctx
        c = _raw(ctx, c)
        if ctx.is_zero(c):
            raise ValueError("scaling by zero")
        num, den = self.num._scale_var_raw(c), self.den._scale_var_raw(c)
        inv = ctx.inv(den.lc())
        return RatFunc(num.scale(inv), den.scale(inv), reduced=True)

    def compose_power(self, n: int) -> "RatFunc":
        """``r(u^n)``."""
        return RatFunc(self.num.compose_power(n), self.den.compose_power(n), reduced=True)

    def naive_height(self) -> int:
        if self.num.is_zero():
            return 0
        return max(self.num.degree, self.den.degree)

    # rendering -------------------------------------------------------------
    def format(self, var: str = "u") -> str:
        if self.den.is_one():
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RatFunc({self.format()!r})"


def naive_height(r: RatFunc) -> int:
    """``max(deg num, deg den)``; the height of zero is 0."""
    return r.naive_height()


def substitute_scale(r: RatFunc, c) -> RatFunc:
    return r.substitute_scale(c)


# ---------------------------------------------------------------------------
# text format: "u^3 + 2*u + 1", coefficients as ints, "a/b" over QQ,
# "(z + 1)" over extension fields, "(...)" over function fields


def _coef_str(ctx: FieldCtx, c) -> tuple[str, bool]:
    """Rendered coefficient and whether it is negative (rationals only)."""
    if isinstance(ctx, RationalField):
        return str(abs(c)), c < 0
    s = ctx.format(c)
    if not isinstance(ctx, FiniteField) and (" " in s or "/" in s):
        s = f"({s})"
    return s, False


def _format_terms(ctx: FieldCtx, coeffs, var: str) -> str:
    pieces = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if ctx.is_zero(c):
            continue
        s, negative = _coef_str(ctx, c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            term = s
        elif s == "1":
            term = mono
        else:
            term = f"{s}*{mono}"
        pieces.append((negative, term))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for negative, term in pieces[1:]:
        out += (" - " if negative else " + ") + term
    return out


def _split_top(text: str) -> list[tuple[int, str]]:
    """Split at top-level + and - signs into (sign, term) pairs."""
    terms, depth, start, sign = [], 0, 0, 1
    text = text.strip()
    i = 0
    if text.startswith("-"):
        sign, start, i = -1, 1, 1
    elif text.startswith("+"):
        start, i = 1, 1
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and text[i - 1] not in "^*/":
            terms.append((sign, text[start:i].strip()))
            sign = 1 if ch == "+" else -1
            start = i + 1
        i += 1
    terms.append((sign, text[start:].strip()))
    return terms


_TERM = re.compile(r"^(?:(?P<coef>\(.*\)|\d+(?:/\d+)?)\s*\*?\s*)?(?P<mono>[A-Za-z_]\w*(?:\s*\^\s*\d+)?)?$")


def _parse_coef(ctx: FieldCtx, text: str):
    if text.startswith("("):
        inner = text[1:-1]
        if isinstance(ctx, FiniteField) and ctx.m > 1:
            digits = parse_poly(inner, _prime_sub(ctx), "z")
            return ctx.from_digits(list(digits.coeffs))
        from mwforge.fields import FunctionField

        if isinstance(ctx, FunctionField):
            return parse_ratfunc(inner, ctx.base, ctx.var)
        return _parse_coef(ctx, inner)
    if isinstance(ctx, RationalField):
        return Fraction(text)
    if "/" in text:
        num, den = text.split("/")
        return ctx.div(ctx.coerce(int(num)), ctx.coerce(int(den)))
    return ctx.coerce(int(text))


def _prime_sub(ctx: FiniteField) -> FiniteField:
    from mwforge.fields import prime_field

    return prime_field(ctx.p)


def parse_poly(text: str, ctx: FieldCtx, var: str = "u") -> Poly:
    """Parse the rendering grammar of :meth:`Poly.format`."""
    text = text.strip()
    if text in ("", "0"):
        return Poly.zero(ctx)
    acc: dict[int, object] = {}
    for sign, term in _split_top(text):
        if not term:
            raise ValueError(f"empty term in {text!r}")
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"cannot parse term {term!r}")
        coef_text, mono = m.group("coef"), m.group("mono")
        if mono is not None:
            name, _, exp = mono.partition("^")
            if name.strip() != var:
                raise ValueError(f"unexpected variable {name!r} (expected {var!r})")
        deg = 0
        if mono is not None:
            deg = int(exp) if exp else 1
        c = ctx.one if coef_text is None else _parse_coef(ctx, coef_text)
        if sign < 0:
            c = ctx.neg(c)
        acc[deg] = ctx.add(acc.get(deg, ctx.zero), c)
    top = max(acc)
    return Poly(ctx, [acc.get(i, ctx.zero) for i in range(top + 1)])


def parse_ratfunc(text: str, ctx: FieldCtx, var: str = "u") -> RatFunc:
    """Parse ``"(num)/(den)"`` or a bare polynomial."""
    text = text.strip()
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0 and text[i + 1 : i + 2] == "(" and text[:1] == "(":
            num = parse_poly(text[1 : i - 1], ctx, var)
            den = parse_poly(text[i + 2 : -1], ctx, var)
            return RatFunc(num, den)
    return RatFunc(parse_poly(text, ctx, var))
