"""Backend selection for polynomial kernels.

The compiled extension ``mwforge._kernels`` is used when it imports and the
environment variable ``MWFORGE_PURE`` is unset; otherwise the pure-Python
``mwforge._kernels_py`` is used.  Both expose ``PrimeKernel`` and
``TableKernel`` with identical semantics.  :class:`GenericKernel` covers every
other coefficient field (rationals, function fields, huge extension fields).
"""

from __future__ import annotations

import os
from functools import lru_cache

from mwforge import _kernels_py

try:
    if os.environ.get("MWFORGE_PURE"):
        raise ImportError("pure-Python backend forced by MWFORGE_PURE")
    from mwforge import _kernels as _compiled
except ImportError:
    _compiled = None

backend = _compiled if _compiled is not None else _kernels_py
BACKEND = backend.BACKEND

__all__ = ["BACKEND", "GenericKernel", "prime_kernel", "table_kernel", "backend"]


@lru_cache(maxsize=None)
def prime_kernel(p: int, module=None):
    module = module or backend
    if module is not _kernels_py and p >= (1 << 31):
        module = _kernels_py
    return module.PrimeKernel(p)


def table_kernel(p: int, q: int, exp, log, zech, module=None):
    module = module or backend
    return module.TableKernel(p, q, exp, log, zech)


class GenericKernel:
    """Schoolbook polynomial arithmetic driven by a field context's raw ops."""

    def __init__(self, ctx):
        self.ctx = ctx

    def _strip(self, a):
        is_zero = self.ctx.is_zero
        while a and is_zero(a[-1]):
            a.pop()
        return a

    def add(self, a, b):
        add = self.ctx.add
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = add(out[i], y)
        return self._strip(out)

    def neg(self, a):
        neg = self.ctx.neg
        return [neg(x) for x in a]

    def sub(self, a, b):
        ctx = self.ctx
        n = max(len(a), len(b))
        out = list(a) + [ctx.zero] * (n - len(a))
        for i, y in enumerate(b):
            out[i] = ctx.sub(out[i], y)
        return self._strip(out)

    def scale(self, a, c):
        ctx = self.ctx
        if ctx.is_zero(c):
            return []
        return self._strip([ctx.mul(x, c) for x in a])

    def mul(self, a, b):
        if not a or not b:
            return []
        ctx = self.ctx
        add, mul, is_zero = ctx.add, ctx.mul, ctx.is_zero
        out = [ctx.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            for j, y in enumerate(b):
                if not is_zero(y):
                    out[i + j] = add(out[i + j], mul(x, y))
        return self._strip(out)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        db = len(b) - 1
        if len(a) - 1 < db:
            return [], list(a)
        inv = ctx.inv(b[-1])
        r = list(a)
        q = [ctx.zero] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            if not ctx.is_zero(r[k]):
                c = ctx.mul(r[k], inv)
                q[k - db] = c
                off = k - db
                for j in range(db):
                    if not ctx.is_zero(b[j]):
                        r[off + j] = ctx.sub(r[off + j], ctx.mul(c, b[j]))
            r[k] = ctx.zero
        return self._strip(q), self._strip(r[:db])

    def rem(self, a, b):
        return self.divmod(a, b)[1]

    def monic(self, a):
        if not a:
            return []
        return self.scale(a, self.ctx.inv(a[-1]))

    def gcd(self, a, b):
        a, b = list(a), list(b)
        while b:
            a, b = b, self.rem(a, b)
        return self.monic(a)
