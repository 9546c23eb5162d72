# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels over finite fields.

Same interface and semantics as ``_kernels_py``; coefficient lists are
copied into C buffers, processed, and returned as new lists.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

BACKEND = "cython"

ctypedef long long i64
ctypedef unsigned long long u64


cdef i64* _to_buf(list a, Py_ssize_t n) except NULL:
    cdef i64* buf = <i64*> malloc((n if n > 0 else 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef Py_ssize_t la = len(a)
    for i in range(n):
        buf[i] = a[i] if i < la else 0
    return buf


cdef list _from_buf(i64* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


cdef class PrimeKernel:
    """Polynomial arithmetic over F_p, p < 2**31."""

    cdef readonly i64 p

    def __init__(self, p):
        if p >= (1 << 31):
            raise OverflowError("prime too large for compiled kernel")
        self.p = p

    cdef inline i64 _inv(self, i64 a) except -1:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, int(self.p))

    def add(self, list a, list b):
        cdef Py_ssize_t n = max(len(a), len(b)), i
        cdef i64* x = _to_buf(a, n)
        cdef i64* y = _to_buf(b, n)
        try:
            for i in range(n):
                x[i] = (x[i] + y[i]) % self.p
            return _from_buf(x, n)
        finally:
            free(x)
            free(y)

    def sub(self, list a, list b):
        cdef Py_ssize_t n = max(len(a), len(b)), i
        cdef i64* x = _to_buf(a, n)
        cdef i64* y = _to_buf(b, n)
        try:
            for i in range(n):
                x[i] = (x[i] - y[i] + self.p) % self.p
            return _from_buf(x, n)
        finally:
            free(x)
            free(y)

    def neg(self, list a):
        cdef i64 p = self.p
        return [(p - v) % p for v in a]

    def scale(self, list a, c):
        cdef i64 cc = c % self.p
        if cc == 0:
            return []
        cdef i64 p = self.p
        return [(<i64> v) * cc % p for v in a]

    def mul(self, list a, list b):
        cdef Py_ssize_t na = len(a), nb = len(b), i, j, n
        if na == 0 or nb == 0:
            return []
        n = na + nb - 1
        cdef i64 p = self.p
        cdef i64* x = _to_buf(a, na)
        cdef i64* y = _to_buf(b, nb)
        cdef i64* out = <i64*> malloc(n * sizeof(i64))
        cdef i64 xi
        # accumulate with periodic reduction; products are < 2**62
        try:
            memset(out, 0, n * sizeof(i64))
            for i in range(na):
                xi = x[i]
                if xi:
                    for j in range(nb):
                        out[i + j] = (out[i + j] + xi * y[j]) % p
            return _from_buf(out, n)
        finally:
            free(x)
            free(y)
            free(out)

    def divmod(self, list a, list b):
        cdef Py_ssize_t na = len(a), nb = len(b), k, j, db, off
        if nb == 0:
            raise ZeroDivisionError("polynomial division by zero")
        db = nb - 1
        if na - 1 < db:
            return [], list(a)
        cdef i64 p = self.p
        cdef i64 inv = self._inv(b[nb - 1])
        cdef i64* r = _to_buf(a, na)
        cdef i64* y = _to_buf(b, nb)
        cdef i64* q = <i64*> malloc((na - db) * sizeof(i64))
        cdef i64 c
        try:
            memset(q, 0, (na - db) * sizeof(i64))
            for k in range(na - 1, db - 1, -1):
                c = r[k] * inv % p
                if c:
                    q[k - db] = c
                    off = k - db
                    for j in range(db):
                        r[off + j] = (r[off + j] + (p - c) * y[j]) % p
                r[k] = 0
            return _from_buf(q, na - db), _from_buf(r, db)
        finally:
            free(r)
            free(y)
            free(q)


    def rem(self, list a, list b):
        return self.divmod(a, b)[1]

    def monic(self, list a):
        if not a:
            return []
        return self.scale(a, self._inv(a[len(a) - 1]))

    def gcd(self, list a, list b):
        cdef Py_ssize_t na = len(a), nb = len(b), k, j, off, da, db
        cdef i64 p = self.p
        cdef i64 inv, c
        cdef i64* x
        cdef i64* y
        cdef i64* t
        if nb == 0:
            return self.monic(a)
        if na == 0:
            return self.monic(b)
        x = _to_buf(a, na)
        y = _to_buf(b, nb)
        try:
            # in-place Euclid: x <- x mod y, then swap
            da = na - 1
            db = nb - 1
            while True:
                while db >= 0 and y[db] == 0:
                    db -= 1
                if db < 0:
                    break
                inv = self._inv(y[db])
                if da >= db:
                    for k in range(da, db - 1, -1):
                        c = x[k] * inv % p
                        if c:
                            off = k - db
                            for j in range(db):
                                x[off + j] = (x[off + j] + (p - c) * y[j]) % p
                        x[k] = 0
                    da = db - 1
                t = x
                x = y
                y = t
                k = da
                da = db
                db = k
            return self.monic(_from_buf(x, da + 1))
        finally:
            free(x)
            free(y)


cdef class TableKernel:
    """Polynomial arithmetic over F_q via exp/log/Zech tables."""

    cdef readonly i64 p, q
    cdef i64 q1, half
    cdef i64* _exp
    cdef i64* _log
    cdef i64* _zech
    # Packed accumulation for odd p: each base-p digit of an element sits in
    # its own bit slot of a u64, so sums are plain integer additions and the
    # reduction mod p is deferred for up to ``limit`` additions.
    cdef readonly bint packed
    cdef int m, slot
    cdef u64 mask
    cdef Py_ssize_t limit
    cdef u64* _pexp
    cdef i64 ppow[64]

    def __cinit__(self, p, q, exp, log, zech):
        self._exp = NULL
        self._log = NULL
        self._zech = NULL
        self._pexp = NULL

    def __init__(self, p, q, exp, log, zech):
        cdef Py_ssize_t i
        self.p = p
        self.q = q
        self.q1 = q - 1
        self.half = (q - 1) // 2 if p != 2 else 0
        self._exp = <i64*> malloc(self.q1 * sizeof(i64))
        self._log = <i64*> malloc(q * sizeof(i64))
        self._zech = <i64*> malloc(self.q1 * sizeof(i64))
        if self._exp == NULL or self._log == NULL or self._zech == NULL:
            raise MemoryError()
        for i in range(self.q1):
            self._exp[i] = exp[i]
            self._zech[i] = zech[i]
        for i in range(q):
            self._log[i] = log[i]
        self.m = 0
        v = q
        while v > 1:
            v //= p
            self.m += 1
        self.packed = False
        if p != 2 and self.m <= 16:
            self.slot = 64 // self.m
            self.mask = (<u64> 1 << self.slot) - 1 if self.slot < 64 else <u64> -1
            self.limit = <Py_ssize_t> (((<u64> 1 << (self.slot - 1)) // (p - 1)) - 1)
            if self.limit >= 64:
                self.packed = True
                self.ppow[0] = 1
                for i in range(1, self.m):
                    self.ppow[i] = self.ppow[i - 1] * p
                self._pexp = <u64*> malloc(self.q1 * sizeof(u64))
                if self._pexp == NULL:
                    raise MemoryError()
                for i in range(self.q1):
                    self._pexp[i] = self._pack(self._exp[i])

    def __dealloc__(self):
        free(self._exp)
        free(self._log)
        free(self._zech)
        free(self._pexp)

    cdef inline u64 _pack(self, i64 a) noexcept nogil:
        cdef u64 v = 0
        cdef int i
        for i in range(self.m):
            v |= (<u64> (a % self.p)) << (self.slot * i)
            a //= self.p
        return v

    cdef inline i64 _unpack(self, u64 v) noexcept nogil:
        cdef i64 a = 0
        cdef int i
        for i in range(self.m):
            a += <i64> (((v >> (self.slot * i)) & self.mask) % <u64> self.p) * self.ppow[i]
        return a

    cdef inline void _normalize(self, u64* r, Py_ssize_t n) noexcept nogil:
        cdef Py_ssize_t i
        for i in range(n):
            if r[i]:
                r[i] = self._pack(self._unpack(r[i]))

    cdef u64* _to_packed(self, list a, Py_ssize_t n) except NULL:
        cdef u64* buf = <u64*> malloc((n if n > 0 else 1) * sizeof(u64))
        if buf == NULL:
            raise MemoryError()
        cdef Py_ssize_t i, la = len(a)
        for i in range(n):
            buf[i] = self._pack(a[i]) if i < la else 0
        return buf

    cdef list _from_packed(self, u64* buf, Py_ssize_t n):
        cdef Py_ssize_t i
        cdef list out = [self._unpack(buf[i]) for i in range(n)]
        while out and out[len(out) - 1] == 0:
            out.pop()
        return out

    cdef inline i64 _add(self, i64 a, i64 b) noexcept nogil:
        cdef i64 la, z, k
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        k = self._log[b] - la
        if k < 0:
            k += self.q1
        z = self._zech[k]
        if z < 0:
            return 0
        z += la
        if z >= self.q1:
            z -= self.q1
        return self._exp[z]

    cdef inline i64 _add_log(self, i64 a, i64 lb) noexcept nogil:
        # a + g^lb with lb a valid log
        cdef i64 la, z, k
        if a == 0:
            return self._exp[lb]
        if self.p == 2:
            return a ^ self._exp[lb]
        la = self._log[a]
        k = lb - la
        if k < 0:
            k += self.q1
        z = self._zech[k]
        if z < 0:
            return 0
        z += la
        if z >= self.q1:
            z -= self.q1
        return self._exp[z]

    cdef inline i64 _neg(self, i64 a) noexcept nogil:
        cdef i64 k
        if self.p == 2 or a == 0:
            return a
        k = self._log[a] + self.half
        if k >= self.q1:
            k -= self.q1
        return self._exp[k]

    cdef inline i64 _mul(self, i64 a, i64 b) noexcept nogil:
        cdef i64 k
        if a == 0 or b == 0:
            return 0
        k = self._log[a] + self._log[b]
        if k >= self.q1:
            k -= self.q1
        return self._exp[k]

    cdef inline i64 _inv(self, i64 a) except -1:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.q1 - self._log[a]) % self.q1]

    def add(self, list a, list b):
        cdef Py_ssize_t n = max(len(a), len(b)), i
        cdef i64* x = _to_buf(a, n)
        cdef i64* y = _to_buf(b, n)
        try:
            for i in range(n):
                x[i] = self._add(x[i], y[i])
            return _from_buf(x, n)
        finally:
            free(x)
            free(y)

    def sub(self, list a, list b):
        cdef Py_ssize_t n = max(len(a), len(b)), i
        cdef i64* x = _to_buf(a, n)
        cdef i64* y = _to_buf(b, n)
        try:
            for i in range(n):
                x[i] = self._add(x[i], self._neg(y[i]))
            return _from_buf(x, n)
        finally:
            free(x)
            free(y)

    def neg(self, list a):
        return [self._neg(v) for v in a]

    def scale(self, list a, c):
        if c == 0:
            return []
        cdef i64 cc = c
        return [self._mul(v, cc) for v in a]

    def mul(self, list a, list b):
        cdef Py_ssize_t na = len(a), nb = len(b), i, j, n, m
        if na == 0 or nb == 0:
            return []
        n = na + nb - 1
        if self.packed:
            return self._mul_packed(a, b)
        cdef i64* x = _to_buf(a, na)
        cdef i64* ly = <i64*> malloc(nb * sizeof(i64))
        cdef Py_ssize_t* iy = <Py_ssize_t*> malloc(nb * sizeof(Py_ssize_t))
        cdef i64* out = <i64*> malloc(n * sizeof(i64))
        cdef i64 lx, k, q1 = self.q1, v
        try:
            memset(out, 0, n * sizeof(i64))
            m = 0
            for j in range(nb):
                v = b[j]
                if v:
                    iy[m] = j
                    ly[m] = self._log[v]
                    m += 1
            with nogil:
                for i in range(na):
                    if x[i]:
                        lx = self._log[x[i]]
                        for j in range(m):
                            k = lx + ly[j]
                            if k >= q1:
                                k -= q1
                            out[i + iy[j]] = self._add_log(out[i + iy[j]], k)
            return _from_buf(out, n)
        finally:
            free(x)
            free(ly)
            free(iy)
            free(out)

    def _mul_packed(self, list a, list b):
        cdef Py_ssize_t na = len(a), nb = len(b), i, j, m, rows = 0
        cdef Py_ssize_t n = na + nb - 1
        cdef i64* x = _to_buf(a, na)
        cdef i64* ly = <i64*> malloc(nb * sizeof(i64))
        cdef Py_ssize_t* iy = <Py_ssize_t*> malloc(nb * sizeof(Py_ssize_t))
        cdef u64* out = <u64*> malloc(n * sizeof(u64))
        cdef u64* pexp = self._pexp
        cdef i64 lx, k, q1 = self.q1, v
        try:
            memset(out, 0, n * sizeof(u64))
            m = 0
            for j in range(nb):
                v = b[j]
                if v:
                    iy[m] = j
                    ly[m] = self._log[v]
                    m += 1
            with nogil:
                for i in range(na):
                    if x[i]:
                        lx = self._log[x[i]]
                        for j in range(m):
                            k = lx + ly[j]
                            if k >= q1:
                                k -= q1
                            out[i + iy[j]] += pexp[k]
                        rows += 1
                        if rows >= self.limit:
                            self._normalize(out, n)
                            rows = 0
            return self._from_packed(out, n)
        finally:
            free(x)
            free(ly)
            free(iy)
            free(out)

    cdef void _reduce_packed(self, u64* r, Py_ssize_t da, i64* ly, Py_ssize_t* iy,
                             Py_ssize_t m, Py_ssize_t db, i64 inv, i64* q) noexcept nogil:
        # packed analogue of _reduce; r is normalized on return
        cdef Py_ssize_t k, j, off, steps = 0
        cdef i64 c, lc, t, q1 = self.q1
        cdef u64* pexp = self._pexp
        for k in range(da, db - 1, -1):
            c = self._unpack(r[k]) if r[k] else 0
            if c:
                c = self._mul(c, inv)
                if q != NULL:
                    q[k - db] = c
                lc = self._log[c]
                off = k - db
                for j in range(m):
                    t = lc + ly[j]
                    if t >= q1:
                        t -= q1
                    r[off + iy[j]] += pexp[t]
                steps += 1
                if steps >= self.limit:
                    self._normalize(r, k)
                    steps = 0
            r[k] = 0
        self._normalize(r, db if db <= da + 1 else da + 1)

    cdef void _reduce(self, i64* r, Py_ssize_t da, i64* ly, Py_ssize_t* iy,
                      Py_ssize_t m, Py_ssize_t db, i64 inv, i64* q) noexcept nogil:
        # r <- r mod y where y = (ly, iy) holds logs of the negated low coefficients
        cdef Py_ssize_t k, j, off
        cdef i64 c, lc, t, q1 = self.q1
        for k in range(da, db - 1, -1):
            if r[k]:
                c = self._mul(r[k], inv)
                if q != NULL:
                    q[k - db] = c
                lc = self._log[c]
                off = k - db
                for j in range(m):
                    t = lc + ly[j]
                    if t >= q1:
                        t -= q1
                    r[off + iy[j]] = self._add_log(r[off + iy[j]], t)
            r[k] = 0

    cdef Py_ssize_t _prep(self, i64* y, Py_ssize_t db, i64* ly, Py_ssize_t* iy) noexcept nogil:
        cdef Py_ssize_t j, m = 0
        cdef i64 v
        for j in range(db):
            v = self._neg(y[j])
            if v:
                iy[m] = j
                ly[m] = self._log[v]
                m += 1
        return m

    def divmod(self, list a, list b):
        cdef Py_ssize_t na = len(a), nb = len(b), db, m
        if nb == 0:
            raise ZeroDivisionError("polynomial division by zero")
        db = nb - 1
        if na - 1 < db:
            return [], list(a)
        cdef i64 inv = self._inv(b[db])
        if self.packed:
            return self._divmod_packed(a, b, inv)
        cdef i64* r = _to_buf(a, na)
        cdef i64* y = _to_buf(b, nb)
        cdef i64* ly = <i64*> malloc(nb * sizeof(i64))
        cdef Py_ssize_t* iy = <Py_ssize_t*> malloc(nb * sizeof(Py_ssize_t))
        cdef i64* q = <i64*> malloc((na - db) * sizeof(i64))
        try:
            memset(q, 0, (na - db) * sizeof(i64))
            m = self._prep(y, db, ly, iy)
            self._reduce(r, na - 1, ly, iy, m, db, inv, q)
            return _from_buf(q, na - db), _from_buf(r, db)
        finally:
            free(r)
            free(y)
            free(ly)
            free(iy)
            free(q)

    def _divmod_packed(self, list a, list b, i64 inv):
        cdef Py_ssize_t na = len(a), nb = len(b), db = nb - 1, m
        cdef u64* r = self._to_packed(a, na)
        cdef i64* y = _to_buf(b, nb)
        cdef i64* ly = <i64*> malloc(nb * sizeof(i64))
        cdef Py_ssize_t* iy = <Py_ssize_t*> malloc(nb * sizeof(Py_ssize_t))
        cdef i64* q = <i64*> malloc((na - db) * sizeof(i64))
        try:
            memset(q, 0, (na - db) * sizeof(i64))
            m = self._prep(y, db, ly, iy)
            self._reduce_packed(r, na - 1, ly, iy, m, db, inv, q)
            return _from_buf(q, na - db), self._from_packed(r, db)
        finally:
            free(r)
            free(y)
            free(ly)
            free(iy)
            free(q)

    def rem(self, list a, list b):
        return self.divmod(a, b)[1]

    def monic(self, list a):
        if not a:
            return []
        return self.scale(a, self._inv(a[len(a) - 1]))

    def _gcd_packed(self, list a, list b):
        cdef Py_ssize_t na = len(a), nb = len(b), da, db, m, nmax, k, j
        cdef i64 inv
        cdef u64* x
        cdef u64* y
        cdef u64* t
        cdef i64* ys
        cdef i64* ly
        cdef Py_ssize_t* iy
        nmax = max(na, nb)
        x = self._to_packed(a, na)
        y = self._to_packed(b, nb)
        ys = <i64*> malloc(nmax * sizeof(i64))
        ly = <i64*> malloc(nmax * sizeof(i64))
        iy = <Py_ssize_t*> malloc(nmax * sizeof(Py_ssize_t))
        try:
            da = na - 1
            db = nb - 1
            while True:
                while db >= 0 and y[db] == 0:
                    db -= 1
                if db < 0:
                    break
                with nogil:
                    for j in range(db + 1):
                        ys[j] = self._unpack(y[j])
                    m = self._prep(ys, db, ly, iy)
                inv = self._inv(ys[db])
                with nogil:
                    if da >= db:
                        self._reduce_packed(x, da, ly, iy, m, db, inv, NULL)
                        da = db - 1
                t = x
                x = y
                y = t
                k = da
                da = db
                db = k
            return self.monic(self._from_packed(x, da + 1))
        finally:
            free(x)
            free(y)
            free(ys)
            free(ly)
            free(iy)

    def gcd(self, list a, list b):
        cdef Py_ssize_t na = len(a), nb = len(b), da, db, m, nmax, k
        cdef i64 inv
        cdef i64* x
        cdef i64* y
        cdef i64* t
        cdef i64* ly
        cdef Py_ssize_t* iy
        if nb == 0:
            return self.monic(a)
        if na == 0:
            return self.monic(b)
        if self.packed:
            return self._gcd_packed(a, b)
        nmax = max(na, nb)
        x = _to_buf(a, na)
        y = _to_buf(b, nb)
        ly = <i64*> malloc(nmax * sizeof(i64))
        iy = <Py_ssize_t*> malloc(nmax * sizeof(Py_ssize_t))
        try:
            da = na - 1
            db = nb - 1
            while True:
                while db >= 0 and y[db] == 0:
                    db -= 1
                if db < 0:
                    break
                inv = self._inv(y[db])
                with nogil:
                    m = self._prep(y, db, ly, iy)
                    if da >= db:
                        self._reduce(x, da, ly, iy, m, db, inv, NULL)
                        da = db - 1
                t = x
                x = y
                y = t
                k = da
                da = db
                db = k
            return self.monic(_from_buf(x, da + 1))
        finally:
            free(x)
            free(y)
            free(ly)
            free(iy)
