"""Truncated power series, Laurent series and exact polynomials over a ring.

Truncation is tracked explicitly.  A series with ``trunc = N`` knows its
coefficients of x^n exactly for n < N and nothing beyond; every operation
returns the largest window it can certify from its inputs.

Hyperderivatives act by d^j(x^n) = C(n, j) x^(n-j), with C(n, j) reduced mod p
(negative n through C(-m, j) = (-1)^j C(m+j-1, j)).
"""

from .algebra import binom_mod_p, base_digits

PRINCIPAL_PART_CAP = 64


def _p_of(ring):
    return ring.F.p


class USeries:
    """Power series sum c_n x^n known modulo x^trunc."""

    __slots__ = ("ring", "coeffs", "trunc", "var")

    def __init__(self, ring, coeffs, trunc=None, var="u"):
        coeffs = [ring(c) for c in coeffs]
        if trunc is None:
            trunc = len(coeffs)
        if trunc < 0:
            raise ValueError("trunc must be >= 0")
        if len(coeffs) < trunc:
            coeffs.extend([ring.zero] * (trunc - len(coeffs)))
        self.ring = ring
        self.coeffs = coeffs[:trunc]
        self.trunc = trunc
        self.var = var

    @classmethod
    def _make(cls, ring, coeffs, trunc, var="u"):
        obj = cls.__new__(cls)
        obj.ring, obj.coeffs, obj.trunc, obj.var = ring, coeffs, trunc, var
        return obj

    @classmethod
    def zero(cls, ring, trunc, var="u"):
        return cls._make(ring, [ring.zero] * trunc, trunc, var)

    @classmethod
    def one(cls, ring, trunc, var="u"):
        return cls.monomial(ring, 0, trunc, var=var)

    @classmethod
    def monomial(cls, ring, n, trunc, coeff=None, var="u"):
        c = [ring.zero] * trunc
        if n < trunc:
            c[n] = ring.one if coeff is None else ring(coeff)
        return cls._make(ring, c, trunc, var)

    @property
    def N(self):
        return self.trunc

    def __len__(self):
        return self.trunc

    def __getitem__(self, n):
        if not 0 <= n < self.trunc:
            raise IndexError(f"coefficient {n} lies outside the window [0, {self.trunc})")
        return self.coeffs[n]

    def valuation(self):
        """Index of the first nonzero coefficient, or trunc if none is known."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.trunc

    def is_zero(self):
        return all(not c for c in self.coeffs)

    def __repr__(self):
        terms = [f"({c})*{self.var}^{i}" for i, c in enumerate(self.coeffs) if c]
        return "USeries(" + (" + ".join(terms) or "0") + f" + O({self.var}^{self.trunc}))"

    def __eq__(self, other):
        if not isinstance(other, USeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    __hash__ = None

    def agrees(self, other, upto=None):
        """Equality on the common window (optionally capped at ``upto``)."""
        n = min(self.trunc, other.trunc)
        if upto is not None:
            n = min(n, upto)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n))

    def truncate(self, n):
        n = min(n, self.trunc)
        return USeries._make(self.ring, self.coeffs[:n], n, self.var)

    def map(self, fn, ring):
        return USeries._make(ring, [fn(c) for c in self.coeffs], self.trunc, self.var)

    def change_ring(self, ring):
        return self.map(ring, ring)

    # -- arithmetic --

    def _other(self, other):
        if isinstance(other, USeries):
            return other
        if isinstance(other, Laurent):
            return NotImplemented
        c = self.ring(other)
        return USeries.monomial(self.ring, 0, self.trunc, c, self.var) if self.trunc else self

    def __add__(self, other):
        if not isinstance(other, USeries):
            other = self._other(other)
            if other is NotImplemented:
                return NotImplemented
        n = min(self.trunc, other.trunc)
        a, b = self.coeffs, other.coeffs
        return USeries._make(self.ring, [a[i] + b[i] for i in range(n)], n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return USeries._make(self.ring, [-c for c in self.coeffs], self.trunc, self.var)

    def __sub__(self, other):
        if not isinstance(other, USeries):
            other = self._other(other)
            if other is NotImplemented:
                return NotImplemented
        n = min(self.trunc, other.trunc)
        a, b = self.coeffs, other.coeffs
        return USeries._make(self.ring, [a[i] - b[i] for i in range(n)], n, self.var)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.ring(c) if not isinstance(c, int) else c
        return USeries._make(self.ring, [x * c for x in self.coeffs], self.trunc, self.var)

    def __mul__(self, other):
        if not isinstance(other, USeries):
            if isinstance(other, Laurent):
                return NotImplemented
            return self.scale(other)
        va, vb = self.valuation(), other.valuation()
        n = min(self.trunc + vb, other.trunc + va)
        return USeries._make(self.ring, _convolve(self.coeffs, other.coeffs, n, self.ring.zero),
                             n, self.var)

    def __rmul__(self, other):
        return self.scale(other)

    def mul_trunc(self, other, n):
        """Product known modulo x^n (n must not exceed the certified window)."""
        p = self * other
        return p.truncate(n)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = USeries.one(self.ring, self.trunc if n else max(self.trunc, 1), self.var)
        if n == 0:
            return result
        base = self
        first = True
        while n:
            if n & 1:
                result = base if first else result * base
                first = False
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by x^k, k >= 0."""
        if k < 0:
            raise ValueError("use Laurent for negative shifts")
        return USeries._make(self.ring, [self.ring.zero] * k + self.coeffs, self.trunc + k, self.var)

    def inverse(self):
        if not self.trunc:
            raise ValueError("cannot invert a series with empty window")
        c0 = self.coeffs[0]
        inv0 = _unit_inverse(c0)
        n = self.trunc
        a = self.coeffs
        out = [inv0]
        for k in range(1, n):
            s = self.ring.zero
            for i in range(1, k + 1):
                ai = a[i]
                if ai:
                    s = s + ai * out[k - i]
            out.append(-(s * inv0) if s else self.ring.zero)
        return USeries._make(self.ring, out, n, self.var)

    def __truediv__(self, other):
        if isinstance(other, USeries):
            return self * other.inverse()
        return self.scale(_unit_inverse(self.ring(other)))

    def compose(self, inner):
        """self(inner) for inner with zero constant term, by Horner's rule."""
        if not isinstance(inner, USeries):
            raise TypeError("inner argument must be a USeries")
        if inner.trunc and inner.coeffs[0]:
            raise ValueError("composition needs an inner series with zero constant term")
        vg = inner.valuation()
        if vg == 0:
            vg = inner.trunc
        n = min(inner.trunc, self.trunc * vg) if vg else inner.trunc
        g = inner.truncate(n)
        g = USeries._make(g.ring, g.coeffs + [g.ring.zero] * (n - g.trunc), n, g.var)
        acc = USeries.zero(self.ring, n, self.var)
        for c in reversed(self.coeffs):
            acc = (acc * g).truncate(n)
            acc = USeries._make(acc.ring, list(acc.coeffs) + [acc.ring.zero] * (n - acc.trunc), n, acc.var)
            if n:
                acc.coeffs[0] = acc.coeffs[0] + c
        return acc

    def hyperderivative(self, j):
        if j < 0:
            raise ValueError("order must be >= 0")
        if j == 0:
            return self
        p = _p_of(self.ring)
        n = max(self.trunc - j, 0)
        zero = self.ring.zero
        out = []
        for m in range(n):
            b = binom_mod_p(m + j, j, p)
            c = self.coeffs[m + j]
            out.append(c * b if b and c else zero)
        return USeries._make(self.ring, out, n, self.var)

    def to_laurent(self):
        return Laurent(self.ring, 0, list(self.coeffs), self.trunc, self.var)

    def to_json(self):
        return {"var": self.var, "tail": 0, "trunc": self.trunc,
                "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, ring, obj):
        """Inverse of :meth:`to_json`; ``trunc`` defaults to the coefficient count."""
        if obj.get("tail", 0) != 0:
            raise ValueError("a power series must have tail 0")
        coeffs = [coeff_from_json(ring, c) for c in obj["coeffs"]]
        trunc = obj.get("trunc", len(coeffs))
        if len(coeffs) > trunc:
            raise ValueError("more coefficients than the truncation window")
        return cls(ring, coeffs, trunc, obj.get("var", "u"))


def coeff_from_json(ring, obj):
    """Decode a coefficient of A, K or A/P^M from its JSON form."""
    from .algebra import Frac, FractionField, ModPRing, Poly, PolyRing
    if isinstance(ring, FractionField):
        return Frac.from_json(ring.F, obj)
    if isinstance(ring, PolyRing):
        return Poly.from_json(ring.F, obj)
    if isinstance(ring, ModPRing):
        rep = obj["rep"] if isinstance(obj, dict) and "rep" in obj else obj
        return ring(Poly.from_json(ring.F, rep))
    raise TypeError(f"no JSON decoder for coefficients in {ring}")


def _unit_inverse(c):
    if hasattr(c, "inverse"):
        return c.inverse()
    if c == c.ring.one:
        return c
    if c == -c.ring.one:
        return c
    raise ZeroDivisionError(f"{c} is not invertible")


def _convolve(a, b, n, zero):
    out = [zero] * n
    la = len(a)
    nz_b = [(j, y) for j, y in enumerate(b) if y]
    for i in range(min(la, n)):
        x = a[i]
        if not x:
            continue
        for j, y in nz_b:
            k = i + j
            if k >= n:
                break
            out[k] = out[k] + x * y
    return out


class Laurent:
    """Laurent series sum_{n >= tail} c_n x^n known for n < trunc."""

    __slots__ = ("ring", "tail", "coeffs", "trunc", "var")

    def __init__(self, ring, tail, coeffs, trunc=None, var="z"):
        coeffs = [ring(c) for c in coeffs]
        if trunc is None:
            trunc = tail + len(coeffs)
        n = trunc - tail
        if n < 0:
            n = 0
            tail = trunc
        if len(coeffs) < n:
            coeffs.extend([ring.zero] * (n - len(coeffs)))
        coeffs = coeffs[:n]
        # drop known leading zeros so the principal part stays short
        k = 0
        while k < len(coeffs) and not coeffs[k]:
            k += 1
        if k:
            coeffs = coeffs[k:]
            tail += k
        if tail < -PRINCIPAL_PART_CAP:
            raise ValueError(f"principal part longer than {PRINCIPAL_PART_CAP}")
        self.ring, self.tail, self.coeffs, self.trunc, self.var = ring, tail, coeffs, trunc, var

    @classmethod
    def monomial(cls, ring, n, trunc, coeff=None, var="z"):
        if n >= trunc:
            return cls(ring, trunc, [], trunc, var)
        return cls(ring, n, [ring.one if coeff is None else ring(coeff)], trunc, var)

    @classmethod
    def from_poly(cls, poly, trunc, var="z"):
        """Exact polynomial (RPoly) viewed as a Laurent series known below trunc."""
        return cls(poly.ring, 0, list(poly.coeffs), trunc, var)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return self.tail + i
        return self.trunc

    def __getitem__(self, n):
        if n >= self.trunc:
            raise IndexError(f"coefficient {n} lies outside the window (trunc {self.trunc})")
        i = n - self.tail
        return self.coeffs[i] if i >= 0 else self.ring.zero

    def coeff_dict(self):
        return {self.tail + i: c for i, c in enumerate(self.coeffs) if c}

    def __repr__(self):
        terms = [f"({c})*{self.var}^{self.tail + i}" for i, c in enumerate(self.coeffs) if c]
        return "Laurent(" + (" + ".join(terms) or "0") + f" + O({self.var}^{self.trunc}))"

    def agrees(self, other, upto=None):
        n = min(self.trunc, other.trunc)
        if upto is not None:
            n = min(n, upto)
        lo = min(self.tail, other.tail)
        return all(self[k] == other[k] for k in range(lo, n))

    def truncate(self, n):
        n = min(n, self.trunc)
        return Laurent(self.ring, self.tail, self.coeffs[:max(n - self.tail, 0)], n, self.var)

    def __add__(self, other):
        if isinstance(other, USeries):
            other = other.to_laurent()
        if not isinstance(other, Laurent):
            other = Laurent(self.ring, 0, [self.ring(other)], self.trunc, self.var)
        n = min(self.trunc, other.trunc)
        lo = min(self.tail, other.tail)
        coeffs = [self[k] + other[k] for k in range(lo, n)]
        return Laurent(self.ring, lo, coeffs, n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Laurent(self.ring, self.tail, [-c for c in self.coeffs], self.trunc, self.var)

    def __sub__(self, other):
        if isinstance(other, USeries):
            other = other.to_laurent()
        if not isinstance(other, Laurent):
            other = Laurent(self.ring, 0, [self.ring(other)], self.trunc, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.ring(c) if not isinstance(c, int) else c
        return Laurent(self.ring, self.tail, [x * c for x in self.coeffs], self.trunc, self.var)

    def __mul__(self, other):
        if isinstance(other, USeries):
            other = other.to_laurent()
        if not isinstance(other, Laurent):
            return self.scale(other)
        va, vb = self.valuation(), other.valuation()
        n = min(self.trunc + vb, other.trunc + va)
        tail = self.tail + other.tail
        coeffs = _convolve(self.coeffs, other.coeffs, max(n - tail, 0), self.ring.zero)
        return Laurent(self.ring, tail, coeffs, n, self.var)

    def __rmul__(self, other):
        return self.scale(other)

    def inverse(self):
        v = self.valuation()
        if v >= self.trunc:
            raise ZeroDivisionError("Laurent series is zero within its window")
        rel = self.trunc - v
        unit = USeries(self.ring, self.coeffs[v - self.tail:], rel)
        inv = unit.inverse()
        return Laurent(self.ring, -v, inv.coeffs, -v + rel, self.var)

    def __truediv__(self, other):
        if isinstance(other, (Laurent, USeries)):
            other = other if isinstance(other, Laurent) else other.to_laurent()
            return self * other.inverse()
        return self.scale(_unit_inverse(self.ring(other)))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return Laurent(self.ring, 0, [self.ring.one], max(self.trunc - self.valuation(), 1), self.var)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def hyperderivative(self, j):
        if j < 0:
            raise ValueError("order must be >= 0")
        if j == 0:
            return self
        p = _p_of(self.ring)
        zero = self.ring.zero
        coeffs = []
        for i, c in enumerate(self.coeffs):
            n = self.tail + i
            b = binom_mod_p(n, j, p)
            coeffs.append(c * b if (b and c) else zero)
        return Laurent(self.ring, self.tail - j, coeffs, self.trunc - j, self.var)

    def to_useries(self):
        if self.valuation() < 0:
            raise ValueError("Laurent series has a nonzero principal part")
        n = max(self.trunc, 0)
        return USeries(self.ring, [self[k] for k in range(n)], n, self.var)

    def to_json(self):
        return {"var": self.var, "tail": self.tail, "trunc": self.trunc,
                "coeffs": [c.to_json() for c in self.coeffs]}


# ---------------------------------------------------------------------------
# exact polynomials over a ring
# ---------------------------------------------------------------------------

class RPolyRing:
    """R[t] for a coefficient ring R; makes RPoly usable as series coefficients."""

    def __init__(self, base, var="t"):
        self.base = base
        self.F = base.F
        self.var = var
        self.zero = RPoly(base, [], var)
        self.one = RPoly(base, [base.one], var)

    def __eq__(self, other):
        return isinstance(other, RPolyRing) and self.base == other.base and self.var == other.var

    def __hash__(self):
        return hash(("RPoly", self.base, self.var))

    def __call__(self, x):
        if isinstance(x, RPoly):
            return x
        return RPoly(self.base, [self.base(x)], self.var)

    def gen(self):
        return RPoly(self.base, [self.base.zero, self.base.one], self.var)


class RPoly:
    """Polynomial sum c_i t^i over a ring, stored densely without trailing zeros."""

    __slots__ = ("base", "coeffs", "var")

    def __init__(self, base, coeffs, var="t"):
        c = [base(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.base, self.coeffs, self.var = base, c, var

    @property
    def ring(self):
        return RPolyRing(self.base, self.var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, RPoly):
            if not self.coeffs:
                return not other
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        terms = [f"({c})*{self.var}^{i}" for i, c in enumerate(self.coeffs) if c]
        return "RPoly(" + (" + ".join(terms) or "0") + ")"

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.base.zero

    def _lift(self, other):
        if isinstance(other, RPoly):
            return other
        return RPoly(self.base, [self.base(other)], self.var)

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return RPoly(self.base, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return RPoly(self.base, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return RPoly(self.base, [x * c for x in self.coeffs], self.var)

    def __mul__(self, other):
        if not isinstance(other, RPoly):
            if isinstance(other, (USeries, Laurent)):
                return NotImplemented
            return self.scale(other if isinstance(other, int) else self.base(other))
        if not self.coeffs or not other.coeffs:
            return RPoly(self.base, [], self.var)
        n = len(self.coeffs) + len(other.coeffs) - 1
        return RPoly(self.base, _convolve(self.coeffs, other.coeffs, n, self.base.zero), self.var)

    def __rmul__(self, other):
        return self.scale(other if isinstance(other, int) else self.base(other))

    def __pow__(self, n):
        result = RPoly(self.base, [self.base.one], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self):
        if self.degree == 0:
            return RPoly(self.base, [_unit_inverse(self.coeffs[0])], self.var)
        raise ZeroDivisionError("non-constant polynomial is not a unit")

    def shift(self, k):
        """Multiply by t^k; negative k requires divisibility."""
        if k >= 0:
            return RPoly(self.base, [self.base.zero] * k + self.coeffs, self.var)
        if any(self.coeffs[:(-k)]):
            raise ArithmeticError(f"t^{-k} does not divide the polynomial")
        return RPoly(self.base, self.coeffs[-k:], self.var)

    def hyperderivative(self, j):
        p = _p_of(self.base)
        out = []
        for m in range(j, len(self.coeffs)):
            b = binom_mod_p(m, j, p)
            c = self.coeffs[m]
            out.append(c * b if (b and c) else self.base.zero)
        return RPoly(self.base, out, self.var)

    def __call__(self, x):
        """Horner evaluation at x (a ring element or any series)."""
        if not self.coeffs:
            return x * 0 if not isinstance(x, (USeries, Laurent)) else x.scale(0)
        acc = None
        for c in reversed(self.coeffs):
            acc = (x * 0 + c) if acc is None else acc * x + c
        return acc

    def eval_series(self, x):
        """Evaluate at a series using sum c_i x^i with shared powers."""
        if isinstance(x, USeries):
            acc = USeries.zero(x.ring, x.trunc, x.var)
            pw = USeries.one(x.ring, x.trunc, x.var)
        else:
            acc = Laurent(x.ring, 0, [], x.trunc, x.var)
            # 1 is exact; give it enough room that it never limits x * 1
            pw = Laurent(x.ring, 0, [x.ring.one], x.trunc - min(x.valuation(), 0), x.var)
        for i, c in enumerate(self.coeffs):
            if i:
                pw = pw * x
            if c:
                acc = acc + pw.scale(c)
        return acc

    def divmod_linear(self, root):
        """Synthetic division by (t - root); returns (quotient, remainder)."""
        if not self.coeffs:
            return self, self.base.zero
        out = []
        acc = self.base.zero
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop()
        return RPoly(self.base, list(reversed(out)), self.var), rem

    def to_json(self):
        return {"var": self.var, "coeffs": [c.to_json() for c in self.coeffs]}


# ---------------------------------------------------------------------------
# K_infinity = F_q((1/theta)), truncated
# ---------------------------------------------------------------------------

class InfLaurent:
    """Element of F_q((x)), x = 1/theta, known for exponents < prec.

    ``val`` is the exponent of coeffs[0]; coefficients are encoded F_q
    elements.
    """

    __slots__ = ("F", "val", "coeffs", "prec")

    def __init__(self, F, val, coeffs, prec):
        coeffs = list(coeffs)[:max(prec - val, 0)]
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        self.F = F
        self.val = val + k
        self.coeffs = coeffs[k:]
        self.prec = prec
        if self.val > prec:
            self.val = prec

    @classmethod
    def from_poly(cls, a, prec):
        cs = a.coeffs
        if not cs:
            return cls(a.F, prec, [], prec)
        d = len(cs) - 1
        return cls(a.F, -d, list(reversed(cs)), prec)

    @classmethod
    def from_frac(cls, x, prec):
        num, den = x.num, x.den
        if not num:
            return cls(x.F, prec, [], prec)
        # relative precision needed from the denominator
        # polynomials are exact, so any generous precision works for both
        extra = prec + 2 * (num.degree + den.degree) + 2
        D = cls.from_poly(den, extra)
        Nm = cls.from_poly(num, extra)
        return (Nm / D).with_prec(prec)

    def with_prec(self, prec):
        if prec > self.prec:
            raise ValueError(f"cannot raise precision {self.prec} to {prec}")
        return InfLaurent(self.F, self.val, self.coeffs, prec)

    def valuation(self):
        return self.val if self.coeffs else self.prec

    def __getitem__(self, n):
        if n >= self.prec:
            raise IndexError("outside the known window")
        i = n - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __repr__(self):
        terms = [f"{c}*x^{self.val + i}" for i, c in enumerate(self.coeffs) if c]
        return "InfLaurent(" + (" + ".join(terms) or "0") + f" + O(x^{self.prec}))"

    def agrees(self, other, upto=None):
        n = min(self.prec, other.prec)
        if upto is not None:
            n = min(n, upto)
        lo = min(self.val, other.val)
        return all(self[k] == other[k] for k in range(lo, n))

    def __add__(self, other):
        n = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        F = self.F
        return InfLaurent(F, lo, [F.add(self[k], other[k]) for k in range(lo, n)], n)

    def __neg__(self):
        F = self.F
        return InfLaurent(F, self.val, [F.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        F = self.F
        return InfLaurent(F, self.val, [F.mul(x, c) for x in self.coeffs], self.prec)

    def __mul__(self, other):
        F = self.F
        va, vb = self.valuation(), other.valuation()
        n = min(self.prec + vb, other.prec + va)
        val = va + vb
        m = max(n - val, 0)
        out = [0] * m
        a, b = self.coeffs, other.coeffs
        for i, x in enumerate(a[:m]):
            if x:
                for j, y in enumerate(b[:m - i]):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return InfLaurent(F, val, out, n)

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("zero within known window")
        F = self.F
        rel = self.prec - self.val
        a = self.coeffs
        inv0 = F.inv(a[0])
        out = [inv0]
        for k in range(1, rel):
            s = 0
            for i in range(1, min(k, len(a) - 1) + 1):
                if a[i] and out[k - i]:
                    s = F.add(s, F.mul(a[i], out[k - i]))
            out.append(F.neg(F.mul(s, inv0)))
        return InfLaurent(F, -self.val, out, -self.val + rel)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = InfLaurent(self.F, 0, [1], self.prec - self.valuation() if n else 1 << 30)
        if n == 0:
            return result
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result


# ---------------------------------------------------------------------------
# hyperderivatives and rule checks
# ---------------------------------------------------------------------------

def hyperderivative(f, j):
    """j-th hyperderivative of a USeries, Laurent or RPoly."""
    return f.hyperderivative(j)


def hyperderivative_by_digits(f, j):
    """d^j as the composite of d^(b_i p^i) over the base-p digits b_i of j."""
    p = _p_of(f.ring if not isinstance(f, RPoly) else f.base)
    out = f
    for i, b in enumerate(base_digits(j, p)):
        if b:
            out = out.hyperderivative(b * p ** i)
    return out


def _agree(a, b):
    return a.agrees(b)


def check_product_rule(f, g, j):
    """d^j(fg) == sum_k d^k(f) d^(j-k)(g) on the common window."""
    lhs = (f * g).hyperderivative(j)
    rhs = None
    for k in range(j + 1):
        term = f.hyperderivative(k) * g.hyperderivative(j - k)
        rhs = term if rhs is None else rhs + term
    return _agree(lhs, rhs)


def check_composition_rule(f, j, k):
    """d^j d^k f == d^k d^j f == C(j+k, j) d^(j+k) f."""
    p = _p_of(f.ring)
    a = f.hyperderivative(k).hyperderivative(j)
    b = f.hyperderivative(j).hyperderivative(k)
    c = f.hyperderivative(j + k).scale(binom_mod_p(j + k, j, p))
    return _agree(a, b) and _agree(a, c)


def check_pth_power_rule(f, s, j):
    """d^j(f^(p^s)) is (d^l f)^(p^s) when j = l p^s and 0 otherwise."""
    p = _p_of(f.ring)
    ps = p ** s
    lhs = (f ** ps).hyperderivative(j)
    if j % ps == 0:
        rhs = f.hyperderivative(j // ps) ** ps
        return _agree(lhs, rhs)
    return all(not lhs[k] for k in range(_low(lhs), lhs.trunc))


def _low(f):
    return f.tail if isinstance(f, Laurent) else 0
