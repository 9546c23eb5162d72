"""Pure-Python polynomial kernels over finite fields.

Polynomials are lists of int-encoded coefficients, lowest degree first,
with no trailing zeros (``[]`` is the zero polynomial).  This module and the
compiled ``_kernels`` extension expose the same two classes with the same
methods; :mod:`mwforge.kernels` picks one at import time.
"""

from __future__ import annotations

BACKEND = "python"


def _strip(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


class PrimeKernel:
    """Polynomial arithmetic over ``F_p`` with residues in ``[0, p)``."""

    def __init__(self, p: int):
        self.p = p

    def add(self, a, b):
        p = self.p
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = (out[i] + y) % p
        return _strip(out)

    def sub(self, a, b):
        p = self.p
        n = max(len(a), len(b))
        out = [0] * n
        for i, x in enumerate(a):
            out[i] = x
        for i, y in enumerate(b):
            out[i] = (out[i] - y) % p
        return _strip(out)

    def neg(self, a):
        p = self.p
        return [-x % p for x in a]

    def scale(self, a, c):
        p = self.p
        c %= p
        if not c:
            return []
        return [x * c % p for x in a]

    def mul(self, a, b):
        if not a or not b:
            return []
        p = self.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _strip([c % p for c in out])

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        db = len(b) - 1
        if len(a) - 1 < db:
            return [], list(a)
        inv = pow(b[-1], -1, p)
        r = list(a)
        q = [0] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k] * inv % p
            if c:
                q[k - db] = c
                off = k - db
                for j in range(db):
                    r[off + j] = (r[off + j] - c * b[j]) % p
            r[k] = 0
        return _strip(q), _strip(r[:db])

    def rem(self, a, b):
        return self.divmod(a, b)[1]

    def monic(self, a):
        if not a:
            return []
        inv = pow(a[-1], -1, self.p)
        return self.scale(a, inv)

    def gcd(self, a, b):
        a, b = list(a), list(b)
        while b:
            a, b = b, self.rem(a, b)
        return self.monic(a)


class TableKernel:
    """Polynomial arithmetic over ``F_q`` (``q = p^m``) via exp/log/Zech tables."""

    def __init__(self, p: int, q: int, exp, log, zech):
        self.p = p
        self.q = q
        self.exp = list(exp)
        self.log = list(log)
        self.zech = list(zech)
        self.q1 = q - 1
        self.half = (q - 1) // 2 if p != 2 else 0

    # element helpers -----------------------------------------------------
    def _eadd(self, a, b):
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        log, q1 = self.log, self.q1
        la = log[a]
        z = self.zech[(log[b] - la) % q1]
        return 0 if z < 0 else self.exp[(la + z) % q1]

    def _eneg(self, a):
        if self.p == 2 or not a:
            return a
        return self.exp[(self.log[a] + self.half) % self.q1]

    def _emul(self, a, b):
        if not a or not b:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % self.q1]

    def _einv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[-self.log[a] % self.q1]

    # polynomial ops --------------------------------------------------------
    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        ea = self._eadd
        for i, y in enumerate(b):
            out[i] = ea(out[i], y)
        return _strip(out)

    def neg(self, a):
        en = self._eneg
        return [en(x) for x in a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, a, c):
        if not c:
            return []
        em = self._emul
        return [em(x, c) for x in a]

    def mul(self, a, b):
        if not a or not b:
            return []
        exp, log, q1, ea = self.exp, self.log, self.q1, self._eadd
        out = [0] * (len(a) + len(b) - 1)
        lb = [(j, log[y]) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if x:
                lx = log[x]
                for j, ly in lb:
                    out[i + j] = ea(out[i + j], exp[(lx + ly) % q1])
        return _strip(out)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        db = len(b) - 1
        if len(a) - 1 < db:
            return [], list(a)
        exp, log, q1, ea = self.exp, self.log, self.q1, self._eadd
        inv = self._einv(b[-1])
        nb = [(j, log[self._eneg(y)]) for j, y in enumerate(b[:db]) if y]
        r = list(a)
        q = [0] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            if r[k]:
                c = self._emul(r[k], inv)
                q[k - db] = c
                lc = log[c]
                off = k - db
                for j, ly in nb:
                    r[off + j] = ea(r[off + j], exp[(lc + ly) % q1])
            r[k] = 0
        return _strip(q), _strip(r[:db])

    def rem(self, a, b):
        return self.divmod(a, b)[1]

    def monic(self, a):
        if not a:
            return []
        return self.scale(a, self._einv(a[-1]))

    def gcd(self, a, b):
        a, b = list(a), list(b)
        while b:
            a, b = b, self.rem(a, b)
        return self.monic(a)
