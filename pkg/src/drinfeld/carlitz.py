"""The Carlitz module, its exponential, the parameter u_a and zeta ratios.

Only the powers of the Carlitz period divisible by q-1 are ever formed; they
are Laurent series in x = 1/theta with F_q coefficients.
"""

import threading
from functools import lru_cache

from .algebra import (Frac, Poly, big_D, carlitz_factorial, fraction_field,
                      monic_enum, poly_ring)
from .series import InfLaurent, RPoly, USeries


class TwistedPoly:
    """sum_i c_i tau^i with tau c = c^q tau; coefficients are Poly or Frac."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F, coeffs):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.F = F
        self.coeffs = c

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        terms = [f"({c})τ^{i}" for i, c in enumerate(self.coeffs) if c]
        return "TwistedPoly(" + (" + ".join(terms) or "0") + ")"

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return TwistedPoly(self.F, out)

    def __neg__(self):
        return TwistedPoly(self.F, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Left multiplication by a scalar c (in A or K)."""
        return TwistedPoly(self.F, [c * x for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, TwistedPoly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return TwistedPoly(self.F, [])
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                term = x * y.frob(i)
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        zero = a[0] - a[0]
        return TwistedPoly(self.F, [zero if c is None else c for c in out])

    def __call__(self, x):
        """Apply to a ring element or series: sum c_i x^(q^i)."""
        q = self.F.q
        acc = None
        pw = x
        for i, c in enumerate(self.coeffs):
            if i:
                pw = frobenius(pw, q)
            if c:
                term = pw * c
                acc = term if acc is None else acc + term
        if acc is None:
            return x * 0
        return acc

    def to_json(self):
        return {"tau_coeffs": [c.to_json() for c in self.coeffs]}


def frobenius(x, q):
    """x^q, using that q-th powering is additive in characteristic p."""
    if isinstance(x, USeries):
        n = x.trunc
        ring = x.ring
        # (f + O(u^n))^q = f^q + O(u^(nq)) since q-th powering is additive
        new_n = n * q
        out = [ring.zero] * new_n
        for m, c in enumerate(x.coeffs):
            if c and m * q < new_n:
                out[m * q] = _elt_frob(c)
        return USeries._make(ring, out, new_n, x.var)
    if isinstance(x, (Poly, Frac)):
        return x.frob(1)
    return x ** q


def _elt_frob(c):
    if hasattr(c, "frob"):
        return c.frob(1)
    return c ** c.ring.F.q


@lru_cache(maxsize=None)
def _c_theta_powers(F, n):
    A = poly_ring(F)
    ct = TwistedPoly(F, [A.theta, A.one])
    out = [TwistedPoly(F, [A.one])]
    for _ in range(n):
        out.append(out[-1] * ct)
    return tuple(out)


def carlitz_action(a):
    """C_a as a twisted polynomial, from C_theta = theta + tau."""
    F = a.ring.F
    if not a:
        return TwistedPoly(F, [])
    pows = _c_theta_powers(F, a.degree)
    acc = TwistedPoly(F, [])
    for k, c in enumerate(a.coeffs):
        if c:
            acc = acc + TwistedPoly(F, [x.scale(c) for x in pows[k].coeffs])
    return acc


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

class LatticeSpec:
    """An F_q-lattice given through the coefficients of its exponential.

    e(z) = sum_j alpha_j z^(q^j).  ``kind`` is "carlitz" (alpha_j = 1/D_j,
    unbounded), "division" (e = C_l / l) or "finite" (explicit list).
    """

    def __init__(self, F, kind, alphas=None, label=None, basis=None):
        self.F = F
        self.K = fraction_field(F)
        self.kind = kind
        self.basis = tuple(basis) if basis is not None else None
        if kind == "carlitz":
            self._alphas = None
            self.dim = None
        else:
            al = [self.K(a) for a in alphas]
            if not al or al[0] != self.K.one:
                raise ValueError("alpha_0 must be 1")
            while len(al) > 1 and not al[-1]:
                al.pop()
            self._alphas = tuple(al)
            self.dim = len(al) - 1
        self.label = label or kind

    @classmethod
    def carlitz(cls, F):
        return _carlitz_spec(F)

    @classmethod
    def division(cls, ell):
        """Lattice of l-torsion of the Carlitz module: e(z) = C_l(z)/l."""
        if not ell or ell.degree < 1:
            raise ValueError("division lattice needs deg l >= 1")
        F = ell.ring.F
        K = fraction_field(F)
        c = carlitz_action(ell).coeffs
        alphas = [K(x) / K(ell) for x in c]
        return cls(F, "division", alphas, label=f"division:{ell}")

    @classmethod
    def finite(cls, F, alphas, label=None):
        return cls(F, "finite", alphas, label=label or "finite")

    @classmethod
    def from_basis(cls, basis):
        """F_q-span of at most two elements of K given by a basis."""
        basis = list(basis)
        if not basis:
            raise ValueError("empty basis")
        F = basis[0].ring.F if hasattr(basis[0], "ring") else None
        K = fraction_field(F)
        basis = [K(b) for b in basis]
        alphas = [K.one]
        q = F.q
        for lam in basis:
            val = _eval_linear(alphas, lam, q)
            if not val:
                raise ValueError("basis elements are F_q-linearly dependent")
            c = val ** (1 - q)
            new = alphas + [K.zero]
            for j in range(1, len(new)):
                new[j] = new[j] - c * alphas[j - 1].frob(1)
            alphas = new
        names = ",".join(str(b) for b in basis)
        return cls(F, "finite", alphas, label=f"basis:[{names}]", basis=basis)

    def alpha(self, j):
        if self.kind == "carlitz":
            return _carlitz_alpha(self.F, j)
        return self._alphas[j] if j < len(self._alphas) else self.K.zero

    def alphas(self, J):
        return [self.alpha(j) for j in range(J + 1)]

    def key(self):
        if self.kind == "carlitz":
            return (self.F, "carlitz")
        return (self.F, self.kind, tuple((a.num, a.den) for a in self._alphas))

    def __eq__(self, other):
        return isinstance(other, LatticeSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LatticeSpec({self.label})"

    def exp_series(self, trunc, var="x"):
        """e_Lambda(x) as a USeries over K known modulo x^trunc."""
        q = self.F.q
        coeffs = [self.K.zero] * trunc
        j, e = 0, 1
        while e < trunc:
            coeffs[e] = self.alpha(j)
            j += 1
            e *= q
        return USeries._make(self.K, coeffs, trunc, var)

    def exp_poly(self, var="z"):
        """e_Lambda as an exact polynomial (finite lattices only)."""
        if self.dim is None:
            raise ValueError("the Carlitz exponential is not a polynomial")
        q = self.F.q
        c = [self.K.zero] * (q ** self.dim + 1)
        for j, a in enumerate(self._alphas):
            c[q ** j] = a
        return RPoly(self.K, c, var)

    def points(self):
        """All lattice points (requires an explicit basis)."""
        if self.basis is None:
            raise ValueError("lattice points need an explicit basis")
        pts = [self.K.zero]
        for b in self.basis:
            pts = [x + b.scale(c) for x in pts for c in self.F.elements()]
        return pts


def _eval_linear(alphas, x, q):
    acc = None
    pw = x
    for j, a in enumerate(alphas):
        if j:
            pw = pw ** q
        term = a * pw
        acc = term if acc is None else acc + term
    return acc


@lru_cache(maxsize=None)
def _carlitz_spec(F):
    return LatticeSpec(F, "carlitz", label="carlitz")


@lru_cache(maxsize=None)
def _carlitz_alpha(F, j):
    K = fraction_field(F)
    return K(poly_ring(F).one) / K(big_D(F, j))


# ---------------------------------------------------------------------------
# exponential, u_a
# ---------------------------------------------------------------------------

def carlitz_exp(F, J, trunc=None):
    """sum_{i <= J} z^(q^i)/D_i; exact modulo z^(q^(J+1)) by default."""
    q = F.q
    if trunc is None:
        trunc = q ** (J + 1)
    if trunc > q ** (J + 1):
        raise ValueError("window exceeds the terms included")
    return LatticeSpec.carlitz(F).exp_series(trunc, var="z")


def reciprocal_poly(a):
    """R_a(u) = u^(q^deg a) C_a(1/u) as an RPoly over A."""
    F = a.ring.F
    A = a.ring
    q = F.q
    d = a.degree
    top = q ** d
    c = [A.zero] * (top + 1)
    for i, x in enumerate(carlitz_action(a).coeffs):
        c[top - q ** i] = x
    return RPoly(A, c, "u")


def u_a_series(a, N):
    """u_a = u^(q^deg a) / R_a(u) over A, exact modulo u^N."""
    if not a or not a.is_monic():
        raise ValueError("u_a needs a monic polynomial")
    return _u_a_cached(a, N)


@lru_cache(maxsize=4096)
def _u_a_cached(a, N):
    A = a.ring
    top = A.F.q ** a.degree
    if top >= N:
        return USeries.zero(A, N)
    R = reciprocal_poly(a)
    n = N - top
    inv = USeries(A, R.coeffs[:n], n).inverse()
    return inv.shift(top)


# ---------------------------------------------------------------------------
# zeta ratios
# ---------------------------------------------------------------------------

_zeta_lock = threading.Lock()
_zeta_cache = {}


def _zeta_w_series(F, m):
    """Coefficients of z/e_C(z) in w = z^(q-1), at least through w^m."""
    with _zeta_lock:
        have = _zeta_cache.get(F)
        if have is not None and len(have) > m:
            return have
        K = fraction_field(F)
        q = F.q
        n = max(m + 1, 2 * len(have) if have else 8)
        # e_C(z)/z = sum_i w^((q^i - 1)/(q - 1)) / D_i
        c = [K.zero] * n
        i, e = 0, 0
        while e < n:
            c[e] = _carlitz_alpha(F, i)
            i += 1
            e = (q ** i - 1) // (q - 1)
        inv = USeries(K, c, n).inverse()
        _zeta_cache[F] = inv.coeffs
        return inv.coeffs


def zeta_ratio(F, k):
    """zeta_C(k)/pi^k in K: the z^k coefficient of z/e_C(z)."""
    q = F.q
    if k < 1 or k % (q - 1):
        raise ValueError(f"zeta_ratio needs k >= 1 divisible by q-1 = {q - 1}")
    m = k // (q - 1)
    return _zeta_w_series(F, m)[m]


def z_over_exp(F, trunc):
    """z/e_C(z) as a USeries in z over K, modulo z^trunc."""
    q = F.q
    K = fraction_field(F)
    w = _zeta_w_series(F, (trunc - 1) // (q - 1) + 1)
    c = [K.zero] * trunc
    for m in range(0, (trunc - 1) // (q - 1) + 1):
        if m * (q - 1) < trunc:
            c[m * (q - 1)] = w[m]
    return USeries._make(K, c, trunc, "z")


# ---------------------------------------------------------------------------
# infinite place
# ---------------------------------------------------------------------------

def pi_power_inf(F, k, prec):
    """pi^k in F_q((1/theta)) modulo x^prec, for (q-1) | k."""
    q = F.q
    if k < 0 or k % (q - 1):
        raise ValueError(f"pi_power_inf needs k divisible by q-1 = {q - 1}")
    m = k // (q - 1)
    if m == 0:
        return InfLaurent(F, 0, [1], prec)
    rel = prec + q * m
    prod = InfLaurent(F, 0, [1], rel)
    i = 1
    while q ** i - 1 < rel:
        e = q ** i - 1
        c = [0] * (e + 1)
        c[0], c[e] = 1, F.neg(1)
        prod = prod * InfLaurent(F, 0, c, rel)
        i += 1
    base = InfLaurent(F, -q, [F.neg(1)], -q + rel) * (prod ** (-(q - 1)))
    return base ** m


def zeta_inf_partial(F, k, D, prec):
    """sum_{a monic, deg a <= D} a^(-k) at infinity.

    The result's window is min(prec, k(D+1)): omitted terms have valuation
    at least k(D+1).
    """
    P = min(prec, k * (D + 1))
    total = InfLaurent(F, 0, [], P)
    for d in range(D + 1):
        if k * d >= P:
            break
        for a in monic_enum(F, d):
            ak = a ** k
            inv = InfLaurent.from_poly(ak, P - 2 * k * d).inverse()
            total = total + inv
    return total


def zeta_ratio_oracle(F, k, D, prec):
    """Compare zeta_ratio(k) at infinity with the partial zeta sum over pi^k.

    Returns (rational expansion, oracle expansion, window, agree).
    """
    q = F.q
    shift = k * q // (q - 1)
    zprec = prec - shift
    if k * (D + 1) < zprec:
        raise ValueError("degree cutoff D too small for the requested precision")
    z = zeta_inf_partial(F, k, D, zprec)
    pk = pi_power_inf(F, k, prec)
    oracle = z / pk
    rat = InfLaurent.from_frac(zeta_ratio(F, k), prec)
    window = min(oracle.prec, rat.prec, prec)
    return rat, oracle, window, rat.agrees(oracle, upto=window)


def hurwitz_defect(series, M=None):
    """First m < M with Pi_m * [x^m] not in A (or in A[u]), else None.

    Coefficients may be Frac or exact RPoly over K.
    """
    F = series.ring.F
    K = fraction_field(F)
    M = series.trunc if M is None else min(M, series.trunc)
    for m in range(M):
        c = series.coeffs[m]
        pi = K(carlitz_factorial(F, m))
        parts = c.coeffs if isinstance(c, RPoly) else [c]
        if not all((K(x) * pi).is_integral() for x in parts):
            return m
    return None
