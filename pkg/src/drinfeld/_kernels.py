"""Dense polynomial kernels over F_q.

Two interchangeable kernels share one interface; a kernel works on an opaque
representation ``rep`` and never sees the :class:`~drinfeld.algebra.Poly`
wrapper.

``ListKernel``
    Pure Python, tuples of encoded field elements.  Schoolbook products with a
    Karatsuba split above ``KARATSUBA_CUTOFF`` coefficients.  Works for every
    field and is the reference implementation.
``FlintKernel``
    ``flint.nmod_poly`` for prime fields.  Used automatically when available.
"""

import os

KARATSUBA_CUTOFF = 32

try:  # pragma: no cover - exercised implicitly
    import flint
except ImportError:  # pragma: no cover
    flint = None


def make_kernel(F, backend="auto"):
    if backend == "auto":
        backend = os.environ.get("DRINFELD_BACKEND", "auto")
    if backend == "auto":
        backend = "flint" if (F.is_prime and flint is not None) else "pure"
    if backend == "flint":
        if not F.is_prime:
            raise ValueError("flint backend only covers prime fields")
        if flint is None:
            raise ValueError("python-flint is not installed")
        return FlintKernel(F)
    if backend == "pure":
        return ListKernel(F)
    raise ValueError(f"unknown backend {backend!r}")


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


class ListKernel:
    name = "pure"

    def __init__(self, F):
        self.F = F
        self.p = F.p
        self.zero = ()
        self.one = (1,)

    def from_list(self, cs):
        F = self.F
        if F.is_prime:
            c = [x % self.p for x in cs]
        else:
            c = list(cs)
        return tuple(_trim(c))

    def to_list(self, r):
        return list(r)

    def key(self, r):
        return r

    def degree(self, r):
        return len(r) - 1

    def lead(self, r):
        return r[-1] if r else 0

    def coeff(self, r, i):
        return r[i] if 0 <= i < len(r) else 0

    def is_zero(self, r):
        return not r

    def eq(self, a, b):
        return a == b

    # -- ring operations --

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        r = list(a)
        if self.F.is_prime:
            p = self.p
            for i, y in enumerate(b):
                r[i] = (r[i] + y) % p
        else:
            t = self.F.add_t
            for i, y in enumerate(b):
                r[i] = t[r[i]][y]
        return tuple(_trim(r))

    def neg(self, a):
        if self.F.is_prime:
            p = self.p
            return tuple((-x) % p for x in a)
        t = self.F.neg_t
        return tuple(t[x] for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, a, c):
        if c == 0:
            return ()
        if self.F.is_prime:
            p = self.p
            return tuple(x * c % p for x in a)
        row = self.F.mul_t[c]
        return tuple(row[x] for x in a)

    def shift(self, a, k):
        """Multiply by theta^k (k >= 0)."""
        if not a:
            return a
        return (0,) * k + a

    def truncate(self, a, k):
        """Reduce modulo theta^k."""
        return tuple(_trim(list(a[:k])))

    def mul(self, a, b):
        if not a or not b:
            return ()
        if min(len(a), len(b)) >= KARATSUBA_CUTOFF:
            return tuple(_trim(self._karatsuba(list(a), list(b))))
        return tuple(_trim(self._school(a, b)))

    def _school(self, a, b):
        r = [0] * (len(a) + len(b) - 1)
        if self.F.is_prime:
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        r[i + j] += x * y
            p = self.p
            return [c % p for c in r]
        add_t, mul_t = self.F.add_t, self.F.mul_t
        for i, x in enumerate(a):
            if x:
                row = mul_t[x]
                for j, y in enumerate(b):
                    if y:
                        r[i + j] = add_t[r[i + j]][row[y]]
        return r

    def _addl(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        r = list(a)
        if self.F.is_prime:
            p = self.p
            for i, y in enumerate(b):
                r[i] = (r[i] + y) % p
        else:
            t = self.F.add_t
            for i, y in enumerate(b):
                r[i] = t[r[i]][y]
        return r

    def _subl(self, a, b):
        return self._addl(a, list(self.neg(tuple(b))))

    def _karatsuba(self, a, b):
        n = max(len(a), len(b))
        if min(len(a), len(b)) < KARATSUBA_CUTOFF:
            return self._school(a, b)
        m = n // 2
        a0, a1 = a[:m], a[m:]
        b0, b1 = b[:m], b[m:]
        z0 = self._karatsuba(a0, b0) if a0 and b0 else []
        z2 = self._karatsuba(a1, b1) if a1 and b1 else []
        s1, s2 = self._addl(a0, a1), self._addl(b0, b1)
        z1 = self._karatsuba(s1, s2) if s1 and s2 else []
        z1 = self._subl(self._subl(z1, z0), z2)
        r = [0] * (len(a) + len(b) - 1)
        for off, part in ((0, z0), (m, z1), (2 * m, z2)):
            if part:
                seg = r[off:off + len(part)]
                seg = self._addl(seg, part)
                r[off:off + len(seg)] = seg
        return r

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        db = len(b) - 1
        if len(a) - 1 < db:
            return (), a
        r = list(a)
        qt = [0] * (len(a) - db)
        inv = F.inv(b[-1])
        if F.is_prime:
            p = self.p
            for k in range(len(a) - 1, db - 1, -1):
                c = r[k] * inv % p
                if c:
                    qt[k - db] = c
                    off = k - db
                    for i, y in enumerate(b):
                        r[off + i] = (r[off + i] - c * y) % p
        else:
            add_t, mul_t, neg_t = F.add_t, F.mul_t, F.neg_t
            for k in range(len(a) - 1, db - 1, -1):
                c = mul_t[r[k]][inv]
                if c:
                    qt[k - db] = c
                    nc = mul_t[neg_t[c]]
                    off = k - db
                    for i, y in enumerate(b):
                        r[off + i] = add_t[r[off + i]][nc[y]]
        return tuple(_trim(qt)), tuple(_trim(r[:db]))

    def monic(self, a):
        if not a or a[-1] == 1:
            return a
        return self.scale(a, self.F.inv(a[-1]))

    def gcd(self, a, b):
        while b:
            a, b = b, self.divmod(a, b)[1]
        return self.monic(a)

    def xgcd(self, a, b):
        """Return (g, s, t) with s*a + t*b = g monic."""
        r0, r1 = a, b
        s0, s1 = self.one, ()
        t0, t1 = (), self.one
        while r1:
            qt, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(qt, s1))
            t0, t1 = t1, self.sub(t0, self.mul(qt, t1))
        if not r0:
            return r0, s0, t0
        c = self.F.inv(r0[-1])
        return self.scale(r0, c), self.scale(s0, c), self.scale(t0, c)

    def evaluate(self, a, x):
        F = self.F
        acc = 0
        for c in reversed(a):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def frob(self, a, i):
        """a(theta)^(q^i), i.e. substitute theta -> theta^(q^i)."""
        if not a or i == 0:
            return a
        step = self.F.q ** i
        r = [0] * ((len(a) - 1) * step + 1)
        for k, c in enumerate(a):
            r[k * step] = c
        return tuple(r)


class FlintKernel:
    name = "flint"

    def __init__(self, F):
        self.F = F
        self.p = F.p
        self.zero = flint.nmod_poly([], F.p)
        self.one = flint.nmod_poly([1], F.p)

    def from_list(self, cs):
        return flint.nmod_poly([x % self.p for x in cs], self.p)

    def to_list(self, r):
        return [int(c) for c in r.coeffs()]

    def key(self, r):
        return tuple(self.to_list(r))

    def degree(self, r):
        return r.degree()

    def lead(self, r):
        return int(r.leading_coefficient()) if not r.is_zero() else 0

    def coeff(self, r, i):
        return int(r[i]) if 0 <= i <= r.degree() else 0

    def is_zero(self, r):
        return r.is_zero()

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def scale(self, a, c):
        return a * c

    def shift(self, a, k):
        return a.left_shift(k)

    def truncate(self, a, k):
        return a.truncate(k)

    def mul(self, a, b):
        return a * b

    def divmod(self, a, b):
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        return divmod(a, b)

    def monic(self, a):
        if a.is_zero():
            return a
        lc = int(a.leading_coefficient())
        return a if lc == 1 else a * pow(lc, self.p - 2, self.p)

    def gcd(self, a, b):
        if a.is_zero() and b.is_zero():
            return a
        return a.gcd(b)

    def xgcd(self, a, b):
        if a.is_zero() and b.is_zero():
            return a, self.one, self.zero
        g, s, t = a.xgcd(b)
        return g, s, t

    def evaluate(self, a, x):
        return int(a(x))

    def frob(self, a, i):
        if i == 0 or a.is_zero():
            return a
        step = self.F.q ** i
        cs = a.coeffs()
        r = [0] * ((len(cs) - 1) * step + 1)
        for k, c in enumerate(cs):
            r[k * step] = int(c)
        return flint.nmod_poly(r, self.p)
