"""Finite fields F_q, q = p^e, with elements encoded as integers 0..q-1.

An element of an extension field is the integer whose base-p digits are its
coordinates in the power basis 1, w, ..., w^(e-1), where w is a root of the
field modulus.  Prime-subfield elements are therefore the integers 0..p-1 in
every field, which lets integer binomial coefficients act as scalars directly.
"""

from functools import lru_cache
from itertools import product


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q):
    """Return (p, e) with q = p^e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q must be a prime power, got {q}")
    p = 2
    while q % p:
        p += 1
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"q must be a prime power, got {q}")
    return p, e


# -- small helpers for polynomials over F_p given as ascending int lists --

def _fp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mod(a, b, p):
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _fp_trim(a)
    return a


def _fp_irreducible(f, p):
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _fp_mod(f, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p, e):
    """Lexicographically smallest monic irreducible of degree e over F_p.

    Candidates are ordered by their coefficient tuples read from the
    constant term upward.
    """
    if e == 1:
        return (0, 1)
    for tail in product(range(p), repeat=e):
        f = list(tail) + [1]
        if _fp_irreducible(f, p):
            return tuple(f)
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")


class FiniteField:
    """The field F_q.  Use :func:`GF` to obtain cached instances."""

    def __init__(self, p, e=1, modulus=None, backend="auto"):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = default_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if e > 1 and not _fp_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus if e > 1 else (0, 1)
        self.is_prime = e == 1
        if not self.is_prime:
            self._build_tables()
        from ._kernels import make_kernel
        self.kernel = make_kernel(self, backend)
        self.backend = self.kernel.name

    def _key(self):
        return (self.p, self.e, self.modulus, self.backend)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.is_prime:
            return f"GF({self.q})"
        return f"GF({self.q}, modulus={list(self.modulus)})"

    # -- element encoding --

    def digits(self, x):
        out = []
        for _ in range(self.e):
            out.append(x % self.p)
            x //= self.p
        return out

    def from_digits(self, ds):
        x = 0
        for d in reversed(ds):
            x = x * self.p + (d % self.p)
        return x

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        mod = self.modulus
        digits = [self.digits(x) for x in range(q)]

        def mulvec(a, b):
            r = [0] * (2 * e - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        r[i + j] += x * y
            for k in range(len(r) - 1, e - 1, -1):
                c = r[k] % p
                if c:
                    for i in range(e + 1):
                        r[k - e + i] -= c * mod[i]
            return [c % p for c in r[:e]]

        self.add_t = [[self.from_digits([(x + y) % p for x, y in zip(digits[a], digits[b])])
                       for b in range(q)] for a in range(q)]
        self.mul_t = [[self.from_digits(mulvec(digits[a], digits[b])) for b in range(q)]
                      for a in range(q)]
        self.neg_t = [self.from_digits([(-x) % p for x in digits[a]]) for a in range(q)]
        self.inv_t = [0] * q
        for a in range(1, q):
            row = self.mul_t[a]
            self.inv_t[a] = row.index(1)

    # -- arithmetic on encoded elements --

    def add(self, x, y):
        if self.is_prime:
            return (x + y) % self.p
        return self.add_t[x][y]

    def sub(self, x, y):
        if self.is_prime:
            return (x - y) % self.p
        return self.add_t[x][self.neg_t[y]]

    def neg(self, x):
        if self.is_prime:
            return (-x) % self.p
        return self.neg_t[x]

    def mul(self, x, y):
        if self.is_prime:
            return x * y % self.p
        return self.mul_t[x][y]

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.is_prime:
            return pow(x, self.p - 2, self.p)
        return self.inv_t[x]

    def pow(self, x, n):
        if n < 0:
            x, n = self.inv(x), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            n >>= 1
        return r

    def from_int(self, n):
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    # -- JSON --

    def elt_to_json(self, x):
        return x if self.is_prime else self.digits(x)

    def elt_from_json(self, obj):
        if isinstance(obj, list):
            if self.is_prime:
                raise ValueError("digit list given for a prime field element")
            if len(obj) > self.e:
                raise ValueError("too many digits for field element")
            return self.from_digits(obj)
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise ValueError(f"bad field element {obj!r}")
        if self.is_prime:
            return obj % self.p
        if not 0 <= obj < self.p:
            raise ValueError("integer extension-field elements must lie in F_p")
        return obj


@lru_cache(maxsize=None)
def GF(q, modulus=None, backend="auto"):
    p, e = prime_power(q)
    return FiniteField(p, e, modulus, backend)
