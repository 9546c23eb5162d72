"""Exact coefficient fields: prime fields, extension fields, the rationals,
and rational-function fields over any of these.

Every field is a :class:`FieldCtx`.  Contexts operate on *raw* values
(``int`` encodings for finite fields, :class:`fractions.Fraction` for the
rationals, :class:`~mwforge.ratfunc.RatFunc` for function fields) so that
polynomial kernels can run without wrapper overhead.  User-facing code
works with :class:`FieldElement`, which wraps a raw value together with
its context and overloads the arithmetic operators.

Extension field elements are encoded as integers whose base-``p`` digits
are the coefficients of the residue polynomial, lowest degree first::

    c_0 + c_1 z + ... + c_{m-1} z^{m-1}   <->   c_0 + c_1 p + ... + c_{m-1} p^{m-1}
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator

__all__ = [
    "FieldError",
    "FieldCtx",
    "FiniteField",
    "RationalField",
    "FunctionField",
    "FieldElement",
    "QQ",
    "prime_field",
    "field_ctx_extension",
    "function_field",
    "root_of_unity",
    "multiplicative_order",
    "is_prime",
    "factorize",
    "divisors",
    "euler_phi",
    "order_mod",
]

# Exp/log/Zech tables are built for extension fields up to this order.
TABLE_LIMIT = 1 << 20


class FieldError(ArithmeticError):
    """Raised for invalid field construction or illegal field operations."""


# ---------------------------------------------------------------------------
# integer helpers (trial division; all sizes here are desk scale)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1024)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as ``((prime, exponent), ...)``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of ``n``."""
    divs = [1]
    for prime, e in factorize(n):
        divs = [d * prime**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for prime, _ in factorize(n):
        result = result // prime * (prime - 1)
    return result


def order_mod(a: int, e: int) -> int:
    """Multiplicative order of ``a`` in ``(Z/eZ)^x``."""
    if e < 1:
        raise ValueError("modulus must be positive")
    if e == 1:
        return 1
    if math.gcd(a, e) != 1:
        raise ValueError(f"{a} is not a unit modulo {e}")
    n = euler_phi(e)
    for prime, _ in factorize(n):
        while n % prime == 0 and pow(a, n // prime, e) == 1:
            n //= prime
    return n


# ---------------------------------------------------------------------------
# contexts


class FieldCtx:
    """Abstract field.  Subclasses implement the raw-value operations."""

    kind: str = "abstract"
    characteristic: int = 0

    # raw-value interface -------------------------------------------------
    zero: object
    one: object

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def eq(self, a, b) -> bool:
        return a == b

    def pow(self, a, n: int):
        if n < 0:
            a = self.inv(a)
            n = -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def coerce(self, value):
        """Convert ints (and compatible values) into a raw value of this field."""
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def is_finite(self) -> bool:
        return False

    @cached_property
    def kernel(self):
        from mwforge.kernels import GenericKernel

        return GenericKernel(self)

    # element interface ---------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.ctx is not self:
                if value.ctx == self:
                    return FieldElement(self, value.raw)
                return FieldElement(self, self.coerce(value))
            return value
        return FieldElement(self, self.coerce(value))

    def element(self, raw) -> "FieldElement":
        return FieldElement(self, raw)


class FiniteField(FieldCtx):
    """The field with ``p**m`` elements, ``F_p[z] / (modulus)``."""

    def __init__(self, p: int, m: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError(f"degree {m} must be positive")
        if modulus is None:
            modulus = _smallest_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree m")
        if not _is_irreducible(p, modulus):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.order = p**m
        self.characteristic = p
        self.kind = "prime" if m == 1 else "extension"
        self.zero = 0
        self.one = 1

    def __repr__(self):
        if self.m == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}^{self.m}, modulus={_poly_str(self.modulus, 'z')})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("FiniteField", self.p, self.modulus))

    def is_finite(self) -> bool:
        return True

    # digits <-> encoding -------------------------------------------------
    def digits(self, a: int) -> list[int]:
        """Coefficient vector (length ``m``, lowest degree first)."""
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, digits) -> int:
        if len(digits) > self.m:
            raise FieldError(f"coefficient vector longer than degree {self.m}")
        a = 0
        for c in reversed(list(digits)):
            a = a * self.p + int(c) % self.p
        return a

    def sort_key(self, a: int) -> tuple[int, ...]:
        """Deterministic element order: coefficient vectors compared low degree first."""
        return tuple(self.digits(a))

    def iter_elements(self) -> Iterator[int]:
        """All elements in the deterministic order of :meth:`sort_key`."""
        p, m = self.p, self.m
        for vec in itertools.product(range(p), repeat=m):
            yield self.from_digits(vec)

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.ctx == self:
                return value.raw
            raise FieldError(f"cannot coerce {value!r} into {self!r}")
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, self.coerce(value.denominator))
        if isinstance(value, (list, tuple)):
            return self.from_digits(value)
        raise FieldError(f"cannot coerce {value!r} into {self!r}")

    def format(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        s = _poly_str(self.digits(a), "z")
        return s if a < self.p else f"({s})"

    # tables ----------------------------------------------------------------
    @cached_property
    def primitive_root(self) -> int:
        """Least generator of the multiplicative group in the element order."""
        q1 = self.order - 1
        primes = [prime for prime, _ in factorize(q1)]
        for a in self.iter_elements():
            if a == 0:
                continue
            if all(self._slow_pow(a, q1 // ell) != 1 for ell in primes):
                return a
        raise FieldError("no primitive root found")  # pragma: no cover

    @cached_property
    def tables(self) -> tuple[list[int], list[int], list[int]] | None:
        """``(exp, log, zech)`` for table-driven arithmetic, or None if too large.

        ``exp[k] = g^k``; ``log[exp[k]] = k``; ``zech[k] = log(1 + g^k)`` or -1
        when ``1 + g^k = 0``.
        """
        if self.m == 1 or self.order > TABLE_LIMIT:
            return None
        q1 = self.order - 1
        g = self.primitive_root
        exp = [0] * q1
        log = [-1] * self.order
        x = 1
        for k in range(q1):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, g)
        zech = [-1] * q1
        for k in range(q1):
            s = self._slow_add(1, exp[k])
            zech[k] = log[s] if s else -1
        return exp, log, zech

    @cached_property
    def kernel(self):
        from mwforge import kernels

        if self.m == 1:
            return kernels.prime_kernel(self.p)
        if self.tables is not None:
            exp, log, zech = self.tables
            return kernels.table_kernel(self.p, self.order, exp, log, zech)
        return kernels.GenericKernel(self)

    # arithmetic ----------------------------------------------------------
    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        t = self.tables
        if t is None:
            return self._slow_add(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        exp, log, zech = t
        q1 = self.order - 1
        la = log[a]
        z = zech[(log[b] - la) % q1]
        return 0 if z < 0 else exp[(la + z) % q1]

    def neg(self, a):
        if self.m == 1:
            return -a % self.p
        if self.p == 2 or a == 0:
            return a
        t = self.tables
        if t is None:
            return self.from_digits([-c for c in self.digits(a)])
        exp, log, _ = t
        q1 = self.order - 1
        return exp[(log[a] + q1 // 2) % q1]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        t = self.tables
        if t is None:
            return self._slow_mul(a, b)
        exp, log, _ = t
        return exp[(log[a] + log[b]) % (self.order - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, -1, self.p)
        t = self.tables
        if t is None:
            return self._slow_pow(a, self.order - 2)
        exp, log, _ = t
        return exp[-log[a] % (self.order - 1)]

    def pow(self, a, n: int):
        if self.m == 1:
            if a == 0:
                if n < 0:
                    raise ZeroDivisionError("inverse of zero")
                return 1 if n == 0 else 0
            return pow(a, n % (self.p - 1), self.p)
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if n == 0 else 0
        t = self.tables
        if t is None:
            return self._slow_pow(a, n % (self.order - 1))
        exp, log, _ = t
        q1 = self.order - 1
        return exp[log[a] * n % q1]

    def frobenius(self, a, k: int = 1):
        return self.pow(a, self.p**k)

    # table-free arithmetic on digit vectors ---------------------------------
    def _slow_add(self, a, b):
        if self.p == 2:
            return a ^ b
        da, db = self.digits(a), self.digits(b)
        return self.from_digits([x + y for x, y in zip(da, db)])

    def _slow_mul(self, a, b):
        p, m, mod = self.p, self.m, self.modulus
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(m):
                    prod[k - m + j] -= c * mod[j]
        return self.from_digits([c % p for c in prod[:m]])

    def _slow_pow(self, a, n):
        result, base = 1, a
        while n:
            if n & 1:
                result = self._slow_mul(result, base)
            n >>= 1
            if n:
                base = self._slow_mul(base, base)
        return result


class RationalField(FieldCtx):
    """The rationals, backed by :class:`fractions.Fraction`."""

    kind = "rationals"
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    def pow(self, a, n):
        if n < 0 and not a:
            raise ZeroDivisionError("inverse of zero")
        return a**n

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.ctx == self:
                return value.raw
            raise FieldError(f"cannot coerce {value!r} into QQ")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise FieldError(f"cannot coerce {value!r} into QQ")

    def format(self, a) -> str:
        return str(a)


QQ = RationalField()


class FunctionField(FieldCtx):
    """``base(var)``: reduced rational functions in one variable over ``base``."""

    kind = "function-field"

    def __init__(self, base: FieldCtx, var: str = "u"):
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        from mwforge.ratfunc import RatFunc

        self._RatFunc = RatFunc
        self.zero = RatFunc.zero(base)
        self.one = RatFunc.one(base)

    def __repr__(self):
        return f"FunctionField({self.base!r}, {self.var!r})"

    def __eq__(self, other):
        return (
            isinstance(other, FunctionField)
            and other.var == self.var
            and other.base == self.base
        )

    def __hash__(self):
        return hash(("FunctionField", self.base, self.var))

    def gen(self) -> "FieldElement":
        """The transcendental generator ``var``."""
        return FieldElement(self, self._RatFunc.gen(self.base))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def coerce(self, value):
        RatFunc = self._RatFunc
        if isinstance(value, FieldElement):
            if value.ctx == self:
                return value.raw
            return RatFunc.constant(self.base, self.base.coerce(value))
        if isinstance(value, RatFunc):
            if value.ctx != self.base:
                raise FieldError("rational function over a different field")
            return value
        from mwforge.ratfunc import Poly

        if isinstance(value, Poly):
            return RatFunc(value, Poly.one(self.base))
        return RatFunc.constant(self.base, self.base.coerce(value))

    def format(self, a) -> str:
        return a.format(self.var)


# ---------------------------------------------------------------------------
# element wrapper


class FieldElement:
    """An immutable field element: a raw value tagged with its context."""

    __slots__ = ("ctx", "raw")

    def __init__(self, ctx: FieldCtx, raw):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is self.ctx or other.ctx == self.ctx:
                return other.raw
            raise FieldError(f"context mismatch: {self.ctx!r} vs {other.ctx!r}")
        return self.ctx.coerce(other)

    def _binary(self, other, op, reflected=False):
        # polynomials and rational functions handle mixed arithmetic themselves
        if not isinstance(other, FieldElement) and hasattr(other, "ctx"):
            return NotImplemented
        o = self._other(other)
        return FieldElement(self.ctx, op(o, self.raw) if reflected else op(self.raw, o))

    def __add__(self, other):
        return self._binary(other, self.ctx.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, self.ctx.sub)

    def __rsub__(self, other):
        return self._binary(other, self.ctx.sub, reflected=True)

    def __mul__(self, other):
        return self._binary(other, self.ctx.mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, FieldElement) and hasattr(other, "ctx"):
            return NotImplemented
        o = self._other(other)
        if self.ctx.is_zero(o):
            raise ZeroDivisionError("division by zero")
        return FieldElement(self.ctx, self.ctx.div(self.raw, o))

    def __rtruediv__(self, other):
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        return self._binary(other, self.ctx.div, reflected=True)

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.raw))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx.pow(self.raw, int(n)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.raw))

    def is_zero(self) -> bool:
        return self.ctx.is_zero(self.raw)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return (other.ctx is self.ctx or other.ctx == self.ctx) and self.ctx.eq(
                self.raw, other.raw
            )
        try:
            return self.ctx.eq(self.raw, self.ctx.coerce(other))
        except (FieldError, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.raw))

    def __repr__(self):
        return f"FieldElement({self.ctx!r}, {self})"

    def __str__(self):
        return self.ctx.format(self.raw)


# ---------------------------------------------------------------------------
# constructors


@lru_cache(maxsize=None)
def prime_field(p: int) -> FiniteField:
    return FiniteField(p, 1)


@lru_cache(maxsize=None)
def field_ctx_extension(p: int, m: int) -> FiniteField:
    """``F_{p^m}`` with the lexicographically smallest monic irreducible modulus.

    Coefficients are compared lowest degree first.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError(f"degree {m} must be positive")
    return FiniteField(p, m)


@lru_cache(maxsize=None)
def function_field(base: FieldCtx, var: str = "u") -> FunctionField:
    return FunctionField(base, var)


def multiplicative_order(a: FieldElement) -> int:
    """Least ``n >= 1`` with ``a**n == 1`` in a finite field."""
    ctx = a.ctx
    if not isinstance(ctx, FiniteField):
        raise FieldError("multiplicative order needs a finite field")
    if a.is_zero():
        raise FieldError("zero has no multiplicative order")
    n = ctx.order - 1
    for prime, _ in factorize(n):
        while n % prime == 0 and ctx.pow(a.raw, n // prime) == 1:
            n //= prime
    return n


def root_of_unity(ctx: FiniteField, d: int) -> FieldElement:
    """Primitive ``d``-th root of unity ``g^((q-1)/d)`` for the least primitive root g."""
    if d < 1:
        raise FieldError("d must be positive")
    q1 = ctx.order - 1
    if q1 % d:
        raise FieldError(f"field too small: {d} does not divide {q1}")
    if d == 1:
        return ctx(1)
    return FieldElement(ctx, ctx.pow(ctx.primitive_root, q1 // d))


# ---------------------------------------------------------------------------
# modulus search


def _poly_str(coeffs, var: str) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


def _poly_rem_p(a: list[int], b: tuple[int, ...], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return a[:db]


def _monic_polys(p: int, deg: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of degree ``deg`` in lexicographic order, low degree first."""
    for low in itertools.product(range(p), repeat=deg):
        yield tuple(low) + (1,)


def _is_irreducible(p: int, poly: tuple[int, ...]) -> bool:
    m = len(poly) - 1
    if m <= 0:
        return False
    for deg in range(1, m // 2 + 1):
        for div in _monic_polys(p, deg):
            if not any(_poly_rem_p(list(poly), div, p)):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    for cand in _monic_polys(p, m):
        if _is_irreducible(p, cand):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover
