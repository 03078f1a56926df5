"""Exact arithmetic in A = F_q[theta], K = F_q(theta) and A / P^M.

Elements are immutable.  Every element carries its parent ring, and the
parent supplies ``zero``, ``one`` and coercion via ``ring(x)``, which is what
the series code relies on.
"""

import math
from functools import lru_cache
from itertools import product

from .field import FiniteField


class _Infinity:
    """ord of zero: compares above every integer."""

    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _Infinity):
            raise ValueError("INF - INF")
        return self

    def __neg__(self):
        raise ValueError("-INF is not representable")


INF = _Infinity()


def binom_mod_p(n, j, p):
    """Binomial coefficient C(n, j) reduced mod p.

    Negative ``n`` uses C(-m, j) = (-1)^j C(m + j - 1, j).  Nonnegative ``n``
    goes through Lucas's theorem digit by digit.
    """
    if j < 0:
        return 0
    if n < 0:
        m = -n
        v = binom_mod_p(m + j - 1, j, p)
        return (-v) % p if j % 2 else v
    if j > n:
        return 0
    r = 1
    while n or j:
        nd, jd = n % p, j % p
        if jd > nd:
            return 0
        r = r * math.comb(nd, jd) % p
        n //= p
        j //= p
    return r


# ---------------------------------------------------------------------------
# A = F_q[theta]
# ---------------------------------------------------------------------------

class PolyRing:
    """The ring A = F_q[theta]."""

    def __init__(self, F):
        self.F = F
        self.kernel = F.kernel
        self.q = F.q
        self.p = F.p
        self.zero = Poly._make(self, self.kernel.zero)
        self.one = Poly._make(self, self.kernel.one)
        self.theta = self([0, 1])

    def __repr__(self):
        return f"PolyRing({self.F!r})"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.F == other.F

    def __hash__(self):
        return hash(("A", self.F))

    def __call__(self, x):
        if isinstance(x, Poly):
            if x.ring is not self and x.ring != self:
                raise ValueError("polynomial over a different field")
            return x
        if isinstance(x, int):
            return Poly._make(self, self.kernel.from_list([self.F.from_int(x)]))
        if isinstance(x, (list, tuple)):
            return Poly._make(self, self.kernel.from_list(list(x)))
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def const(self, c):
        """Constant polynomial from an encoded field element."""
        return Poly._make(self, self.kernel.from_list([c]))

    def monomial(self, k, c=1):
        return Poly._make(self, self.kernel.shift(self.kernel.from_list([c]), k))


@lru_cache(maxsize=None)
def poly_ring(F):
    return PolyRing(F)


class Poly:
    """An element of A.  ``coeffs`` lists the coefficient of theta^i at index i."""

    __slots__ = ("ring", "_r")

    @classmethod
    def _make(cls, ring, rep):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._r = rep
        return obj

    def __init__(self, ring, coeffs=()):
        if isinstance(ring, FiniteField):
            ring = poly_ring(ring)
        self.ring = ring
        self._r = ring.kernel.from_list(list(coeffs))

    @property
    def F(self):
        return self.ring.F

    @property
    def coeffs(self):
        return self.ring.kernel.to_list(self._r)

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return self.ring.kernel.degree(self._r)

    @property
    def lead(self):
        return self.ring.kernel.lead(self._r)

    def coeff(self, i):
        return self.ring.kernel.coeff(self._r, i)

    def is_monic(self):
        return self.lead == 1

    def __bool__(self):
        return not self.ring.kernel.is_zero(self._r)

    def is_zero(self):
        return self.ring.kernel.is_zero(self._r)

    def is_one(self):
        return self.degree == 0 and self.lead == 1

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return self.ring(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring.F == other.ring.F and self.ring.kernel.eq(self._r, other._r)

    def __hash__(self):
        return hash(self.ring.kernel.key(self._r))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly._make(self.ring, self.ring.kernel.add(self._r, other._r))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly._make(self.ring, self.ring.kernel.sub(self._r, other._r))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Poly._make(self.ring, self.ring.kernel.neg(self._r))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.ring.F.from_int(other))
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly._make(self.ring, self.ring.kernel.mul(self._r, other._r))

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by an encoded F_q element."""
        return Poly._make(self.ring, self.ring.kernel.scale(self._r, c))

    def shift(self, k):
        return Poly._make(self.ring, self.ring.kernel.shift(self._r, k))

    def truncate(self, k):
        return Poly._make(self.ring, self.ring.kernel.truncate(self._r, k))

    def __divmod__(self, other):
        other = self._coerce(other)
        qt, r = self.ring.kernel.divmod(self._r, other._r)
        return Poly._make(self.ring, qt), Poly._make(self.ring, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        qt, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return qt

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial; use Frac")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        return Frac(self, other)

    def __rtruediv__(self, other):
        return Frac(other, self)

    def monic(self):
        return Poly._make(self.ring, self.ring.kernel.monic(self._r))

    def gcd(self, other):
        return Poly._make(self.ring, self.ring.kernel.gcd(self._r, other._r))

    def xgcd(self, other):
        g, s, t = self.ring.kernel.xgcd(self._r, other._r)
        mk = Poly._make
        return mk(self.ring, g), mk(self.ring, s), mk(self.ring, t)

    def lcm(self, other):
        if not self or not other:
            return self.ring.zero
        return (self * other.exact_div(self.gcd(other))).monic()

    def __call__(self, x):
        """Evaluate at an encoded F_q element."""
        return self.ring.kernel.evaluate(self._r, x)

    def frob(self, i=1):
        """self^(q^i)."""
        return Poly._make(self.ring, self.ring.kernel.frob(self._r, i))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        cs = self.coeffs
        if not cs:
            return "0"
        F = self.ring.F
        terms = []
        for i in range(len(cs) - 1, -1, -1):
            c = cs[i]
            if not c:
                continue
            cstr = str(c) if F.is_prime else str(F.digits(c))
            if i == 0:
                terms.append(cstr)
            else:
                mono = "θ" if i == 1 else f"θ^{i}"
                terms.append(mono if c == 1 else f"{cstr}*{mono}")
        return " + ".join(terms)

    def to_json(self):
        return {"coeffs": [self.ring.F.elt_to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, F, obj):
        ring = poly_ring(F)
        if isinstance(obj, dict):
            obj = obj["coeffs"]
        if isinstance(obj, int) and not isinstance(obj, bool):
            return ring.const(F.elt_from_json(obj))
        cs = [F.elt_from_json(c) for c in obj]
        if cs and cs[-1] == 0:
            raise ValueError("polynomial JSON has trailing zero coefficients")
        return Poly._make(ring, ring.kernel.from_list(cs))


# ---------------------------------------------------------------------------
# K = F_q(theta)
# ---------------------------------------------------------------------------

class FractionField:
    """The field K = F_q(theta)."""

    def __init__(self, A):
        self.A = A
        self.F = A.F
        self.zero = Frac._make(self, A.zero, A.one)
        self.one = Frac._make(self, A.one, A.one)

    def __repr__(self):
        return f"FractionField({self.F!r})"

    def __eq__(self, other):
        return isinstance(other, FractionField) and self.F == other.F

    def __hash__(self):
        return hash(("K", self.F))

    def __call__(self, x, den=None):
        if den is not None:
            return Frac(self.A(x), self.A(den))
        if isinstance(x, Frac):
            return x
        if isinstance(x, (Poly, int, list, tuple)):
            return Frac._make(self, self.A(x), self.A.one)
        raise TypeError(f"cannot coerce {x!r} into {self}")


@lru_cache(maxsize=None)
def fraction_field(F):
    return FractionField(poly_ring(F))


class Frac:
    """Reduced fraction num/den with den monic."""

    __slots__ = ("ring", "num", "den")

    @classmethod
    def _make(cls, ring, num, den):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.num = num
        obj.den = den
        return obj

    def __init__(self, num, den=None):
        if isinstance(num, Frac) or isinstance(den, Frac):
            K = (num if isinstance(num, Frac) else den).ring
            r = K(num) if den is None else K(num) / K(den)
            self.ring, self.num, self.den = r.ring, r.num, r.den
            return
        if isinstance(num, int):
            num = den.ring(num)
        A = num.ring
        if den is None:
            den = A.one
        elif isinstance(den, int):
            den = A(den)
        if not den:
            raise ZeroDivisionError("fraction with zero denominator")
        self.ring = fraction_field(A.F)
        g = num.gcd(den)
        if not g.is_one():
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.lead
        if lc != 1:
            inv = A.F.inv(lc)
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @property
    def F(self):
        return self.ring.F

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_integral(self):
        return self.den.is_one()

    def __eq__(self, other):
        if isinstance(other, (int, Poly)):
            other = self.ring(other)
        if not isinstance(other, Frac):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, Frac):
            return other
        if isinstance(other, (int, Poly)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_one() and d.is_one():
            return Frac._make(self.ring, a + c, b)
        g = b.gcd(d)
        if g.is_one():
            return Frac._make(self.ring, a * d + b * c, b * d)
        s = b.exact_div(g)
        t = d.exact_div(g)
        num = a * t + c * s
        if not num:
            return self.ring.zero
        g2 = num.gcd(g)
        if not g2.is_one():
            num = num.exact_div(g2)
            den = s * d.exact_div(g2)
        else:
            den = s * d
        return Frac._make(self.ring, num, den)

    __radd__ = __add__

    def __neg__(self):
        return Frac._make(self.ring, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            c = self.ring.F.from_int(other)
            if c == 0:
                return self.ring.zero
            return Frac._make(self.ring, self.num.scale(c), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return self.ring.zero
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if not g1.is_one():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_one():
            c, b = c.exact_div(g2), b.exact_div(g2)
        num, den = a * c, b * d
        lc = den.lead
        if lc != 1:
            inv = self.ring.F.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        return Frac._make(self.ring, num, den)

    __rmul__ = __mul__

    def scale(self, c):
        return Frac._make(self.ring, self.num.scale(c), self.den) if c else self.ring.zero

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero in K")
        return Frac(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return Frac._make(self.ring, self.num ** n, self.den ** n)

    def frob(self, i=1):
        return Frac._make(self.ring, self.num.frob(i), self.den.frob(i))

    def __repr__(self):
        return f"Frac({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, F, obj):
        if isinstance(obj, dict) and "num" in obj:
            num = Poly.from_json(F, obj["num"])
            den = Poly.from_json(F, obj["den"])
            f = Frac(num, den)
            if f.num != num or f.den != den:
                raise ValueError("fraction JSON is not in canonical form")
            return f
        return fraction_field(F)(Poly.from_json(F, obj))


# ---------------------------------------------------------------------------
# A / P^M
# ---------------------------------------------------------------------------

class ModPRing:
    """The quotient A / P^M for a monic irreducible P."""

    def __init__(self, prime, M):
        if M < 1:
            raise ValueError("precision M must be >= 1")
        if not is_irreducible(prime):
            raise ValueError(f"{prime} is not monic irreducible")
        self.A = prime.ring
        self.F = prime.ring.F
        self.prime = prime
        self.M = M
        self.modulus = prime ** M
        self.zero = ModP._make(self, self.A.zero)
        self.one = ModP._make(self, self.A.one)

    def __repr__(self):
        return f"ModPRing({self.prime}, M={self.M})"

    def __eq__(self, other):
        return (isinstance(other, ModPRing) and self.prime == other.prime
                and self.M == other.M)

    def __hash__(self):
        return hash(("ModP", self.prime, self.M))

    def __call__(self, x):
        if isinstance(x, ModP):
            if x.ring == self:
                return x
            if x.ring.prime != self.prime or x.ring.M < self.M:
                raise ValueError("cannot lift to a higher precision")
            return ModP._make(self, x.rep % self.modulus)
        if isinstance(x, (int, list, tuple)):
            x = self.A(x)
        if isinstance(x, Poly):
            return ModP._make(self, x % self.modulus)
        if isinstance(x, Frac):
            if x.den.is_one():
                return ModP._make(self, x.num % self.modulus)
            return self(x.num) * self(x.den).inverse()
        raise TypeError(f"cannot coerce {x!r} into {self}")


@lru_cache(maxsize=None)
def modp_ring(prime, M):
    return ModPRing(prime, M)


class ModP:
    """Residue class of a polynomial modulo P^M."""

    __slots__ = ("ring", "rep")

    @classmethod
    def _make(cls, ring, rep):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.rep = rep
        return obj

    def __init__(self, ring, x):
        r = ring(x)
        self.ring, self.rep = r.ring, r.rep

    def __bool__(self):
        return bool(self.rep)

    def is_zero(self):
        return not self.rep

    def __eq__(self, other):
        if isinstance(other, (int, Poly, Frac)):
            other = self.ring(other)
        if not isinstance(other, ModP):
            return NotImplemented
        return self.ring == other.ring and self.rep == other.rep

    def __hash__(self):
        return hash((self.ring, self.rep))

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.ring != self.ring:
                raise ValueError("mixing different quotient rings")
            return other
        if isinstance(other, (int, Poly, Frac)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP._make(self.ring, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        return ModP._make(self.ring, -self.rep)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP._make(self.ring, self.rep - other.rep)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            return ModP._make(self.ring, self.rep * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP._make(self.ring, (self.rep * other.rep) % self.ring.modulus)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self):
        g, s, _ = self.rep.xgcd(self.ring.modulus)
        if not g.is_one():
            raise ZeroDivisionError(f"{self.rep} is not a unit modulo {self.ring.prime}^{self.ring.M}")
        return ModP._make(self.ring, s % self.ring.modulus)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def ord(self):
        """ord_P of the residue; INF for 0 (meaning >= M)."""
        if not self.rep:
            return INF
        return ord_v(self.rep, self.ring.prime)

    def lift(self):
        return self.rep

    def __repr__(self):
        return f"ModP({self.rep} mod ({self.ring.prime})^{self.ring.M})"

    def to_json(self):
        return {"rep": self.rep.to_json(), "prime": self.ring.prime.to_json(), "M": self.ring.M}


# ---------------------------------------------------------------------------
# special constants and helpers
# ---------------------------------------------------------------------------

def monic_enum(F, d):
    """All monic polynomials of degree d in a fixed lexicographic order.

    The order is lexicographic in the coefficient tuple read from theta^(d-1)
    down to the constant term, so over F_2 and d = 2 the list starts
    theta^2, theta^2 + 1, theta^2 + theta.
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    A = poly_ring(F)
    out = []
    for high_first in product(range(F.q), repeat=d):
        out.append(A(list(reversed(high_first)) + [1]))
    return out


def monics_up_to(F, d):
    out = []
    for k in range(d + 1):
        out.extend(monic_enum(F, k))
    return out


@lru_cache(maxsize=None)
def bracket(F, i):
    """[i] = theta^(q^i) - theta."""
    if i <= 0:
        raise ValueError("[i] is defined for i >= 1")
    A = poly_ring(F)
    return A.monomial(F.q ** i) - A.theta


@lru_cache(maxsize=None)
def big_D(F, i):
    """D_i = [i] * D_{i-1}^q, D_0 = 1."""
    if i < 0:
        raise ValueError("D_i needs i >= 0")
    if i == 0:
        return poly_ring(F).one
    return bracket(F, i) * big_D(F, i - 1).frob(1)


@lru_cache(maxsize=None)
def big_L(F, i):
    """L_i = -[i] * L_{i-1}, L_0 = 1."""
    if i < 0:
        raise ValueError("L_i needs i >= 0")
    if i == 0:
        return poly_ring(F).one
    return -(bracket(F, i) * big_L(F, i - 1))


def base_digits(m, b):
    out = []
    while m:
        out.append(m % b)
        m //= b
    return out


@lru_cache(maxsize=None)
def carlitz_factorial(F, m):
    """Pi_m = prod D_i^(m_i) over the base-q digits m_i of m."""
    if m < 0:
        raise ValueError("Carlitz factorial needs m >= 0")
    r = poly_ring(F).one
    for i, mi in enumerate(base_digits(m, F.q)):
        if mi:
            r = r * big_D(F, i) ** mi
    return r


@lru_cache(maxsize=None)
def is_irreducible(P):
    """Monic irreducibility test (Rabin) for P in A."""
    if not P.is_monic() or P.degree < 1:
        return False
    d = P.degree
    A = P.ring
    q = A.q
    theta = A.theta

    def frob_power(k):
        # theta^(q^k) mod P by repeated q-th powering
        x = theta % P
        for _ in range(k):
            x = _powmod(x, q, P)
        return x

    if frob_power(d) != theta % P:
        return False
    for r in _prime_factors(d):
        h = frob_power(d // r) - theta
        if not h.gcd(P).is_one():
            return False
    return True


def _powmod(x, n, m):
    r = x.ring.one
    while n:
        if n & 1:
            r = (r * x) % m
        n >>= 1
        if n:
            x = (x * x) % m
    return r


def _prime_factors(n):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def ord_v(x, prime):
    """Exponent of the monic irreducible ``prime`` in x (Poly or Frac).

    Returns INF for zero.
    """
    if not is_irreducible(prime):
        raise ValueError(f"{prime} is not monic irreducible")
    if isinstance(x, Frac):
        if not x:
            return INF
        return _ord_poly(x.num, prime) - _ord_poly(x.den, prime)
    if not x:
        return INF
    return _ord_poly(x, prime)


def _ord_poly(a, prime):
    n = 0
    while True:
        qt, r = divmod(a, prime)
        if r:
            return n
        a = qt
        n += 1


def ord_inf(x):
    """ord_infinity = -deg (INF for zero)."""
    if isinstance(x, Frac):
        return INF if not x else x.den.degree - x.num.degree
    return INF if not x else -x.degree
