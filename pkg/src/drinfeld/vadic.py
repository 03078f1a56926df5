"""v-adic weights, a^s, v-adic norms on u-expansions and Goss's v-adic families.

Throughout, ``prime`` is a monic irreducible P in A of degree d, and
precision M means congruences modulo P^M.
"""

from dataclasses import dataclass, field

from .algebra import INF, Frac, Poly, fraction_field, is_irreducible, modp_ring, ord_v, poly_ring
from .carlitz import LatticeSpec, u_a_series
from .forms import FormExpansion, false_eisenstein, goss_sum, power_sums
from .goss import goss_table
from .operators import hecke_V, theta_r
from .series import USeries


def digits_needed(p, M):
    """Smallest j with p^j >= M."""
    j = 0
    while p ** j < M:
        j += 1
    return j


@dataclass(frozen=True)
class WeightS:
    """A weight s = (x, y) in Z/(q^d - 1) x Z_p, with y known modulo p^prec."""

    x: int
    y: int
    d: int
    q: int
    p: int
    prec: int

    def __post_init__(self):
        object.__setattr__(self, "x", self.x % (self.q ** self.d - 1))
        object.__setattr__(self, "y", self.y % self.p ** self.prec)

    @classmethod
    def embed(cls, n, prime, M):
        """The image of the integer n, with enough p-adic digits for precision M."""
        F = prime.ring.F
        return cls(n, n, prime.degree, F.q, F.p, digits_needed(F.p, M))

    def __add__(self, other):
        if (self.d, self.q) != (other.d, other.q):
            raise ValueError("weights for different places")
        prec = min(self.prec, other.prec)
        return WeightS(self.x + other.x, self.y + other.y, self.d, self.q, self.p, prec)

    def __neg__(self):
        return WeightS(-self.x, -self.y, self.d, self.q, self.p, self.prec)

    def agrees(self, other, j):
        """s and s' agree modulo (q^d - 1, p^j)."""
        return self.x == other.x and (self.y - other.y) % self.p ** j == 0

    def to_json(self):
        return {"x": self.x, "y": self.y, "d": self.d, "q": self.q, "p": self.p,
                "prec": self.prec}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["x"], obj["y"], obj["d"], obj["q"], obj["p"], obj["prec"])


def _check_unit(a, prime):
    if not a or not (a % prime):
        raise ValueError(f"{prime} divides {a}")


def teichmuller(a, prime, M):
    """The (q^d - 1)-th root of unity congruent to a modulo P, to precision M.

    Iterates x -> x^(q^d); writing a = w (1 + P b) the iterates are
    w (1 + P^(q^(d i)) b^(q^(d i))), so the loop stops once q^(d i) >= M.
    """
    _check_unit(a, prime)
    R = modp_ring(prime, M)
    Q = prime.ring.F.q ** prime.degree
    x = R(a)
    while True:
        y = x ** Q
        if y == x:
            return x
        x = y


def a_pow_s(a, s, prime, M):
    """a^s = a_1^x a_2^y modulo P^M, with a_1 the Teichmuller lift and a_2 = a / a_1."""
    _check_unit(a, prime)
    F = prime.ring.F
    need = digits_needed(F.p, M)
    if s.prec < need:
        raise ValueError(f"weight precision p^{s.prec} is too small for P^{M}; need {need} digits")
    R = modp_ring(prime, M)
    a1 = teichmuller(a, prime, M)
    a2 = R(a) * a1.inverse()
    out = a1 ** s.x
    y = s.y % F.p ** need
    b = a2
    while y:
        y, dig = divmod(y, F.p)
        if dig:
            out = out * b ** dig
        b = b ** F.p
    return out


# ---------------------------------------------------------------------------
# v-adic series
# ---------------------------------------------------------------------------

class VSeries:
    """P^(-shift) * series, with series a USeries over A/P^M.

    Coefficients are therefore known modulo P^(M - shift).  ``bound`` is an
    optional lower bound for ord_P of every coefficient (including those
    beyond the u-window); it lets :func:`vnorm` certify exactness.
    """

    def __init__(self, series, shift=0, bound=None, meta=None):
        self.series = series
        self.shift = shift
        self.bound = bound
        self.meta = dict(meta or {})

    @property
    def ring(self):
        return self.series.ring

    @property
    def prime(self):
        return self.series.ring.prime

    @property
    def M(self):
        return self.series.ring.M

    @property
    def N(self):
        return self.series.trunc

    @property
    def trunc(self):
        return self.series.trunc

    @property
    def abs_prec(self):
        return self.M - self.shift

    @classmethod
    def from_series(cls, f, prime, M, bound=None):
        """Reduce a series over A or K; the result is known modulo P^M."""
        K = fraction_field(prime.ring.F)
        e = 0
        for c in f.coeffs:
            if c:
                e = max(e, -ord_v(c, prime))
        R = modp_ring(prime, M + e)
        pe = K(prime ** e)
        coeffs = [R(K(c) * pe) if c else R.zero for c in f.coeffs]
        if bound is None and not isinstance(f.ring.zero, Frac):
            bound = 0
        return cls(USeries._make(R, coeffs, f.trunc, f.var), e, bound)

    def _align(self, other):
        """Both operands rewritten over a common ring and shift."""
        e = max(self.shift, other.shift)
        prec = min(self.abs_prec, other.abs_prec)
        R = modp_ring(self.prime, prec + e)
        n = min(self.N, other.N)

        def lift(v):
            mult = self.prime ** (e - v.shift)
            return [R(c.rep * mult) for c in v.series.coeffs[:n]]
        return R, e, n, lift(self), lift(other)

    def _bound_with(self, other):
        if self.bound is None or other.bound is None:
            return None
        return min(self.bound, other.bound)

    def __add__(self, other):
        if other.prime != self.prime:
            raise ValueError("series for different primes")
        R, e, n, a, b = self._align(other)
        return VSeries(USeries._make(R, [x + y for x, y in zip(a, b)], n, self.series.var),
                       e, self._bound_with(other))

    def __neg__(self):
        return VSeries(-self.series, self.shift, self.bound, self.meta)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if other.prime != self.prime:
            raise ValueError("series for different primes")
        M = min(self.M, other.M)
        R = modp_ring(self.prime, M)
        a = self.series.change_ring(R)
        b = other.series.change_ring(R)
        bound = None
        if self.bound is not None and other.bound is not None:
            bound = self.bound + other.bound
        return VSeries(a * b, self.shift + other.shift, bound)

    def scale(self, c):
        """Multiply by a unit or polynomial scalar c (given in A or A/P^M)."""
        return VSeries(self.series.scale(self.ring(c)), self.shift,
                       None if self.bound is None else self.bound + _ord_scalar(c, self.prime))

    def times_prime(self, j=1):
        """P^j * self; exact, only the shift moves."""
        bound = None if self.bound is None else self.bound + j
        return VSeries(self.series, self.shift - j, bound, self.meta)

    def truncate(self, n):
        return VSeries(self.series.truncate(n), self.shift, self.bound, self.meta)

    def coeff_ord(self, n):
        c = self.series.coeffs[n]
        return INF if not c else c.ord() - self.shift

    def agrees(self, other):
        """Congruent on the common u-window and modulo the common precision."""
        d = self - other
        return all(not c for c in d.series.coeffs)

    def to_json(self):
        return {"series": self.series.to_json(), "shift": self.shift,
                "prime": self.prime.to_json(), "M": self.M, "bound": self.bound,
                "meta": self.meta}


def _ord_scalar(c, prime):
    if hasattr(c, "ord"):
        return c.ord()
    return ord_v(c, prime)


def vnorm(f, prime=None, bound=None):
    """ord_v(f) = inf_n ord_v(c_n) over the known window.

    Returns (order, kind).  kind is "exact" when the minimum is attained and a
    global bound shows no later coefficient can go lower, "window" when the
    minimum is only known over the u-window, and "lower" when every known
    coefficient vanishes to the available precision (order is then the
    precision, a lower bound).  The norm itself is q^(-order).
    """
    if isinstance(f, VSeries):
        ords = [f.coeff_ord(n) for n in range(f.N)]
        bound = f.bound if bound is None else bound
        cap = f.abs_prec
    else:
        if prime is None:
            raise ValueError("vnorm of a plain series needs the prime")
        ords = [ord_v(c, prime) if c else INF for c in f.coeffs]
        if bound is None and isinstance(f.ring.zero, Poly):
            bound = 0
        cap = INF
    finite = [o for o in ords if o != INF and o < cap]
    if not finite:
        return cap, "lower"
    m = min(finite)
    if bound is not None and m <= bound:
        return m, "exact"
    return m, "window"


def depth(f, g, prime=None):
    """ord_v(f - g) over the common window (a congruence depth)."""
    if isinstance(f, VSeries) or isinstance(g, VSeries):
        return vnorm(_as_v(f, prime, g) - _as_v(g, prime, f))[0]
    K = fraction_field(prime.ring.F)
    return vnorm(f.change_ring(K) - g.change_ring(K), prime)[0]


def _as_v(f, prime, ref):
    if isinstance(f, VSeries):
        return f
    if isinstance(f, FormExpansion):
        f = f.series
    return VSeries.from_series(f, ref.prime, ref.abs_prec)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def _ceil_log(n, q):
    c = 0
    while q ** c < n:
        c += 1
    return c


def family_conditions(s, n):
    """Goss's hypotheses x = n mod (q-1) and y = 0 mod q^ceil(log_q n).

    Returns True/False, or None when the recorded p-adic precision of y is too
    short to decide the second condition.
    """
    q = s.q
    if (s.x - n) % (q - 1):
        return False
    mod = q ** _ceil_log(n, q)
    if mod == 1:
        return True
    if mod > s.p ** s.prec:
        return None
    return s.y % mod == 0


def _not_divisible(prime):
    return lambda a: not (a % prime)


def goss_family(s, n, N, M, prime):
    """fhat_{s,n} = sum over monic a prime to P of a^s G_n(u_a), modulo (u^N, P^M).

    Goss polynomial coefficients may carry powers of P in their denominators;
    the sum is formed with extra precision and returned as a VSeries with the
    matching shift, so the result is exact to absolute precision M.
    """
    F = prime.ring.F
    K = fraction_field(F)
    row = goss_table(LatticeSpec.carlitz(F)).row(n - 1)
    e = 0
    for b in row:
        if b:
            e = max(e, -ord_v(b, prime))
    Mw = M + e
    R = modp_ring(prime, Mw)
    pe = K(prime ** e)
    brow = [R(b * pe) if b else R.zero for b in row]
    digits = digits_needed(F.p, Mw)
    if s.prec < digits:
        raise ValueError(f"weight precision too small; need {digits} p-adic digits")
    skip = _not_divisible(prime)
    total = [R.zero] * N
    from .forms import monics_for_window
    for d, group in enumerate(monics_for_window(F, N)):
        for a in group:
            if skip(a):
                continue
            w = a_pow_s(a, s, prime, Mw)
            ua = u_a_series(a, N).change_ring(R)
            pw = ua
            acc = [R.zero] * N
            for j, b in enumerate(brow):
                if j:
                    if (j + 1) * F.q ** d >= N:
                        break
                    pw = (pw * ua).truncate(N)
                if b:
                    for i, c in enumerate(pw.coeffs):
                        if c:
                            acc[i] = acc[i] + b * c
            for i, c in enumerate(acc):
                if c:
                    total[i] = total[i] + w * c
    flag = family_conditions(s, n)
    meta = {"weight": {"s": s.to_json(), "n": n}, "type": n % (F.q - 1),
            "conditions": flag, "label": f"fhat(s,{n})"}
    return VSeries(USeries._make(R, total, N), e, -e, meta)


def fhat_integer(F, prime, k, n, N):
    """fhat_{k,n} for an integer exponent k >= 0, exactly over K."""
    return goss_sum(F, n, N, weight=lambda a: a ** k, skip=_not_divisible(prime))


def fhat_11_integral(F, prime, N):
    """fhat_{1,1} = sum over monic a prime to P of a u_a, over A."""
    return power_sums(F, N, 1, weight=lambda a: a, skip=_not_divisible(prime))[1]


def false_e_decomposition(F, prime, N, J):
    """sum_{j < J} P^j V_P^j(fhat_{1,1}) over A, modulo u^N."""
    A = poly_ring(F)
    f = fhat_11_integral(F, prime, N)
    total = USeries.zero(A, N)
    term = f
    for j in range(J):
        if j:
            term = hecke_V(term, prime)
        total = total + term.scale(prime ** j)
    return total


def false_e_decomposition_check(F, prime, N, J):
    """E == sum_{j<J} P^j V_P^j(fhat_{1,1}) exactly through u^(N-1).

    V_P^J(fhat) starts at u^(q^(J d)), so the tail vanishes in the window
    as soon as q^(J d) >= N.
    """
    if not is_irreducible(prime):
        raise ValueError(f"{prime} is not monic irreducible")
    if F.q ** (J * prime.degree) < N:
        raise ValueError(f"J={J} leaves the tail inside the window (need q^(J deg P) >= N)")
    A = poly_ring(F)
    E = false_eisenstein(F, N).integral_series()
    return E == false_e_decomposition(F, prime, N, J).change_ring(A)


# ---------------------------------------------------------------------------
# convergence experiments
# ---------------------------------------------------------------------------

@dataclass
class ConvergenceReport:
    rows: list
    target: str
    schedule: list = None
    schedule_ok: bool = True
    failing_index: int = None
    increasing: bool = True
    meta: dict = field(default_factory=dict)

    @property
    def depths(self):
        return [r["depth"] for r in self.rows]

    def to_json(self):
        return {"target": self.target, "rows": self.rows, "schedule": self.schedule,
                "schedule_ok": self.schedule_ok, "failing_index": self.failing_index,
                "increasing": self.increasing}


def _depth_value(o):
    return "inf" if o == INF else o


def convergence_experiment(target, approximants, schedule=None, label="target"):
    """Congruence depths ord_v(f_i - f) for a sequence of forms over K.

    ``target`` is a VSeries; ``approximants`` is an iterable of (k_i,
    FormExpansion).  A depth equal to the available precision is reported as
    a lower bound.  With a ``schedule`` every depth must be >= the scheduled
    value; the first violation is recorded.
    """
    rows = []
    for i, (k, f) in enumerate(approximants):
        v = VSeries.from_series(f.series, target.prime, target.abs_prec)
        o, kind = vnorm(v - target)
        rows.append({"i": i, "k": k, "depth": _depth_value(o), "kind": kind,
                     "modular": f.modular})
    rep = ConvergenceReport(rows, label, schedule)
    ds = [r["depth"] for r in rows]
    rep.increasing = all(_lt(a, b) for a, b in zip(ds, ds[1:]))
    if schedule is not None:
        for i, (d, want) in enumerate(zip(ds, schedule)):
            if d != "inf" and d < want:
                rep.schedule_ok = False
                rep.failing_index = i
                break
    return rep


def _lt(a, b):
    if b == "inf":
        return a != "inf"
    return a != "inf" and a < b


def petrov_sequence(F, prime, N, count, k_of_i):
    """(k_i, f_{k_i,1}) for i < count."""
    from .forms import petrov_form
    return [(k_of_i(i), petrov_form(F, k_of_i(i), 1, N)) for i in range(count)]


def petrov_to_goss(F, prime, N, M, count=4, variant="goss"):
    """The Petrov approximants f_{k_i,1} and their v-adic limit fhat_{s,1}.

    variant "goss": k_i = 1 + (q-1) p^i, limit exponent s = lim (k_i - 1).
    variant "teich": k_i = 2 + (q^d - 1) p^i, limit exponent s = embed(1).
    """
    q, p = F.q, F.p
    d = prime.degree
    Q = q ** d
    digits = digits_needed(p, M + 4 * N)
    if variant == "goss":
        def k_of_i(i):
            return 1 + (q - 1) * p ** i
        # (q-1) p^i -> x = (q-1) p^i mod (Q-1), y -> 0
        xs = {(q - 1) * p ** i % (Q - 1) for i in range(count, count + Q)}
        if len(xs) != 1:
            raise ValueError("the exponents (q-1) p^i do not converge in S for this place")
        s = WeightS(xs.pop(), 0, d, q, p, digits)
    elif variant == "teich":
        def k_of_i(i):
            return 2 + (Q - 1) * p ** i
        s = WeightS(1, 1, d, q, p, digits)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    target = goss_family(s, 1, N, M, prime)
    return target, petrov_sequence(F, prime, N, count, k_of_i), s


def weight_boost_sequence(f, d, count):
    """(k + i-th boost, f g_d^(q^i)) for i < count; f g_d^(q^i) = f mod P^(q^i) for P | [d]."""
    from .forms import g_form
    F = f.F
    q = F.q
    g = g_form(F, d, f.trunc)
    out = []
    for i in range(count):
        gi = g.series
        for _ in range(i):
            gi = _frob_power(gi, q)
        h = FormExpansion((f.series * gi).truncate(f.trunc), f.weight + (q ** d - 1) * q ** i,
                          f.type, f"{f.label}*g_{d}^{q}^{i}", f.modular)
        out.append((h.weight, h))
    return out


def _frob_power(s, q):
    out = s
    for _ in range(q - 1):
        out = (out * s).truncate(s.trunc)
    return out


def theta_v(f, r):
    """Theta^r on a VSeries, computed coefficientwise in A/P^M.

    beta_{r,j} may have P in the denominator; they are scaled by P^E first
    and the result carries E more units of shift.
    """
    F = f.prime.ring.F
    K = fraction_field(F)
    row = goss_table(LatticeSpec.carlitz(F)).row(r)
    E = 0
    for b in row:
        if b:
            E = max(E, -ord_v(b, f.prime))
    if r == 0:
        return f
    R = f.ring
    pe = K(f.prime ** E)
    scaled = [R(b * pe) if b else R.zero for b in row]
    from .operators import _shift_laurent
    lf = f.series.to_laurent()
    total = USeries.zero(R, f.N, f.series.var)
    for j, b in enumerate(scaled):
        if not b:
            continue
        g = _shift_laurent(_shift_laurent(lf, j - 1).hyperderivative(j), j + 1)
        total = total + g.to_useries().truncate(f.N).scale(b)
    bound = None if f.bound is None else f.bound - E
    return VSeries(total, f.shift + E, bound)


def theta_limit_check(target, approximants, r):
    """Theta^r commutes with reduction and the v-adic limit.

    For each approximant f_i: reducing Theta^r(f_i) equals theta_v of the
    reduction, and ord(Theta^r f_i - Theta^r f) >= ord(f_i - f) - E_r.
    Returns a list of (agree, depth_in, depth_out).
    """
    out = []
    Tt = theta_v(target, r)
    for _, f in approximants:
        v = VSeries.from_series(f.series, target.prime, target.abs_prec)
        Tv = theta_v(v, r)
        direct = VSeries.from_series(theta_r(f.series, r), target.prime, Tv.abs_prec)
        agree = direct.agrees(Tv)
        out.append((agree, vnorm(v - target)[0], vnorm(Tv - Tt)[0]))
    return out
