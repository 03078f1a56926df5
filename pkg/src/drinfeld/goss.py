"""Goss polynomials G_{k,Lambda}(t) and the coefficient table beta_{r,j}.

G_{r+1}(t) = sum_j beta_{r,j} t^(j+1).  Three independent constructions are
provided (recursion, generating series, multinomial closed form) together
with a brute-force lattice-sum oracle and checks of the hyperderivative
identities satisfied by Goss polynomials.
"""

import threading
from functools import lru_cache

from .algebra import binom_mod_p, carlitz_factorial, fraction_field
from .carlitz import LatticeSpec
from .series import Laurent, RPoly, RPolyRing, USeries


class GossTable:
    """Rows beta_{r,0..r} for r = 0, 1, ... for one lattice.

    The cached table returned by :func:`goss_table` grows on demand by the
    recursion and is append-only.  Tables built by other constructions are
    plain snapshots.
    """

    def __init__(self, lattice, rows=None, method="recursion"):
        self.lattice = lattice
        self.K = lattice.K
        self.method = method
        self._lock = threading.Lock()
        self._rows = list(rows) if rows is not None else []

    def __len__(self):
        return len(self._rows)

    def __eq__(self, other):
        if not isinstance(other, GossTable):
            return NotImplemented
        n = min(len(self), len(other))
        return self._rows[:n] == other._rows[:n]

    __hash__ = None

    def __repr__(self):
        return f"GossTable({self.lattice.label}, rows={len(self)}, {self.method})"

    def ensure(self, nrows):
        """Make rows 0..nrows-1 available (recursion method only)."""
        if len(self._rows) >= nrows:
            return self
        if self.method != "recursion":
            raise ValueError(f"a {self.method} snapshot cannot grow")
        with self._lock:
            rows = self._rows
            lat = self.lattice
            q = lat.F.q
            zero = self.K.zero
            while len(rows) < nrows:
                r = len(rows)
                k = r + 1
                # G_k = t (G_{k-1} + sum_i alpha_i G_{k - q^i}); G_0 = 0
                new = [zero] * (r + 1)
                if r == 0:
                    new[0] = self.K.one
                else:
                    prev = rows[r - 1]
                    for j in range(1, r + 1):
                        new[j] = prev[j - 1]
                    i, step = 1, q
                    while k - step >= 1:
                        a = lat.alpha(i)
                        if a:
                            src = rows[k - step - 1]
                            for j, b in enumerate(src):
                                if b:
                                    new[j + 1] = new[j + 1] + a * b
                        i += 1
                        step *= q
                rows.append(new)
        return self

    def row(self, r):
        self.ensure(r + 1)
        return list(self._rows[r])

    def rows(self, nrows=None):
        n = len(self._rows) if nrows is None else nrows
        self.ensure(n)
        return [list(x) for x in self._rows[:n]]

    def beta(self, r, j):
        self.ensure(r + 1)
        row = self._rows[r]
        return row[j] if 0 <= j < len(row) else self.K.zero

    def G(self, k, var="t"):
        """G_k as an RPoly over K; G_0 = 0."""
        if k <= 0:
            return RPoly(self.K, [], var)
        self.ensure(k)
        return RPoly(self.K, [self.K.zero] + self._rows[k - 1], var)

    def to_json(self, nrows=None):
        rows = self.rows(nrows)
        return {"lattice": self.lattice.label, "method": self.method,
                "rows": [[b.to_json() for b in row] for row in rows]}


_tables = {}
_tables_lock = threading.Lock()


def goss_table(lattice):
    """The shared, incrementally grown table for a lattice spec."""
    key = lattice.key()
    with _tables_lock:
        t = _tables.get(key)
        if t is None:
            t = GossTable(lattice)
            _tables[key] = t
        return t


def goss_recursion(lattice, K):
    """Rows 0..K-1 via G_k = t(G_{k-1} + alpha_1 G_{k-q} + ...)."""
    if K < 1:
        raise ValueError("K must be >= 1")
    table = goss_table(lattice).ensure(K)
    return GossTable(lattice, table.rows(K), method="recursion-snapshot")


def goss_genseries(lattice, K):
    """Rows 0..K-1 from tx/(1 - t e(x)): beta_{r,j} = [x^r] e(x)^j."""
    if K < 1:
        raise ValueError("K must be >= 1")
    Kf = lattice.K
    e = lattice.exp_series(K)
    rows = [[Kf.zero] * (r + 1) for r in range(K)]
    pw = USeries.one(Kf, K)
    for j in range(K):
        if j:
            pw = (pw * e).truncate(K)
        for r in range(j, K):
            rows[r][j] = pw.coeffs[r]
    return GossTable(lattice, rows, method="genseries")


def _multinomial_mod_p(parts, p):
    total = 0
    out = 1
    for i in parts:
        total += i
        out = out * binom_mod_p(total, i, p) % p
        if not out:
            return 0
    return out


def _digit_tuples(k, q):
    """All (i_0, ..., i_s) with sum i_r q^r = k, by DFS from the top power."""
    pows = [1]
    while pows[-1] * q <= k:
        pows.append(pows[-1] * q)
    out = []
    tup = [0] * len(pows)

    def dfs(level, rest):
        if level == 0:
            tup[0] = rest
            out.append(tuple(tup))
            return
        for i in range(rest // pows[level], -1, -1):
            tup[level] = i
            dfs(level - 1, rest - i * pows[level])
        tup[level] = 0

    dfs(len(pows) - 1, k)
    return out


def goss_closed(lattice, k):
    """G_{k+1} from the multinomial expansion over q-adic decompositions of k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    Kf = lattice.K
    p = lattice.F.p
    q = lattice.F.q
    row = [Kf.zero] * (k + 1)
    for tup in _digit_tuples(k, q):
        j = sum(tup)
        c = _multinomial_mod_p(tup, p)
        if not c:
            continue
        term = Kf.one
        for r, i in enumerate(tup):
            if i:
                a = lattice.alpha(r)
                if not a:
                    term = Kf.zero
                    break
                term = term * a ** i
        if term:
            row[j] = row[j] + term * c
    return RPoly(Kf, [Kf.zero] + row, "t")


def goss_closed_table(lattice, K):
    rows = [goss_closed(lattice, r).coeffs[1:] for r in range(K)]
    rows = [r + [lattice.K.zero] * (i + 1 - len(r)) for i, r in enumerate(rows)]
    return GossTable(lattice, rows, method="closed")


# ---------------------------------------------------------------------------
# oracles and identities
# ---------------------------------------------------------------------------

def _lattice_from(obj):
    return obj if isinstance(obj, LatticeSpec) else LatticeSpec.from_basis(obj)


def lattice_sum_oracle(lattice, k):
    """Decide S_{k,Lambda}(z) == G_{k,Lambda}(1/e_Lambda(z)) exactly.

    ``lattice`` is a LatticeSpec built from a basis of at most two elements
    of K (or the basis itself).  Both sides are rational functions in z over
    K; equality is decided by cross-multiplying numerators and denominators.
    """
    lat = _lattice_from(lattice)
    if lat.basis is None:
        raise ValueError("lattice-sum oracle needs an explicit basis")
    if len(lat.basis) > 2:
        raise ValueError("lattice dimension > 2 rejected (cost guard)")
    if k < 1:
        raise ValueError("k must be >= 1")
    Kf = lat.K
    pts = lat.points()
    lin = [RPoly(Kf, [-lam, Kf.one], "z") ** k for lam in pts]
    # S = N_S / D_S with D_S = prod (z - lambda)^k
    D_S = RPoly(Kf, [Kf.one], "z")
    for f in lin:
        D_S = D_S * f
    # prefix/suffix products give each prod_{mu != lambda} without division
    n = len(lin)
    pre = [RPoly(Kf, [Kf.one], "z")]
    for f in lin:
        pre.append(pre[-1] * f)
    suf = [RPoly(Kf, [Kf.one], "z")]
    for f in reversed(lin):
        suf.append(suf[-1] * f)
    suf.reverse()
    N_S = RPoly(Kf, [], "z")
    for i in range(n):
        N_S = N_S + pre[i] * suf[i + 1]
    # G_k(1/P) = (sum_j beta_{k-1,j} P^(k-1-j)) / P^k
    P = lat.exp_poly("z")
    row = goss_table(lat).row(k - 1)
    Ppow = [RPoly(Kf, [Kf.one], "z")]
    for _ in range(k):
        Ppow.append(Ppow[-1] * P)
    N_G = RPoly(Kf, [], "z")
    for j, b in enumerate(row):
        if b:
            N_G = N_G + Ppow[k - 1 - j].scale(b)
    D_G = Ppow[k]
    return N_S * D_G == N_G * D_S


def pi_times_goss_integral(F, k):
    """True iff Pi_{k-1} G_k (Carlitz lattice) has coefficients in A."""
    K = fraction_field(F)
    G = goss_table(LatticeSpec.carlitz(F)).G(k)
    pi = K(carlitz_factorial(F, k - 1))
    return all((c * pi).is_integral() for c in G.coeffs)


def measured_denominator(F, k):
    """Monic lcm of the denominators of G_k over the Carlitz lattice."""
    G = goss_table(LatticeSpec.carlitz(F)).G(k)
    A = fraction_field(F).A
    d = A.one
    for c in G.coeffs:
        d = d.lcm(c.den)
    return d


def check_gossdiff_c(lattice, n, r):
    """binom(n+r-1, r) G_{n+r} == sum_j beta_{r,j} t^(j+1) d_t^j(t^(j-1) G_n)."""
    T = goss_table(lattice)
    p = lattice.F.p
    lhs = T.G(n + r).scale(binom_mod_p(n + r - 1, r, p))
    Gn = T.G(n)
    rhs = RPoly(lattice.K, [], "t")
    for j, b in enumerate(T.row(r)):
        if b:
            inner = Gn.shift(j - 1).hyperderivative(j)
            rhs = rhs + inner.shift(j + 1).scale(b)
    return lhs == rhs


def t_laurent(lattice, window):
    """t = 1/e_Lambda(z) as a z-Laurent series over K known below ``window``."""
    e = lattice.exp_series(window + 2, var="z").to_laurent()
    e = Laurent(e.ring, e.tail, e.coeffs, window + 2, "z")
    return e.inverse()


_tpow_cache = {}
_tpow_lock = threading.Lock()


def _t_powers(lattice, window, m):
    """(t^0, ..., t^m) for t = t_laurent(lattice, window), grown on demand."""
    key = (lattice.key(), window)
    with _tpow_lock:
        pows = _tpow_cache.get(key)
        if pows is None:
            Kf = lattice.K
            t = t_laurent(lattice, window)
            pows = [Laurent(Kf, 0, [Kf.one], window + 1, "z"), t]
            _tpow_cache[key] = pows
        while len(pows) <= m:
            pows.append(pows[-1] * pows[1])
        return pows[:m + 1]


def _eval_at_t(poly, tpows):
    acc = None
    for i, c in enumerate(poly.coeffs):
        if c:
            term = tpows[i].scale(c)
            acc = term if acc is None else acc + term
    if acc is None:
        T = tpows[0].trunc
        return Laurent(tpows[0].ring, T, [], T, "z")
    return acc


def check_tndiff(lattice, n, r, window=60):
    """Check identities (a) and (b) for d_z^r(t^n) on a z-Laurent window.

    Returns (a_ok, b_ok).
    """
    T = goss_table(lattice)
    p = lattice.F.p
    tp = _t_powers(lattice, window, n + r + 1)
    tn = tp[n]
    lhs = tn.hyperderivative(r)
    sign = -1 if r % 2 else 1
    a_ok = True
    if n >= 1:
        inner = T.G(r + 1).shift(n - 2).hyperderivative(n - 1)
        rhs_a = (tn * _eval_at_t(inner, tp)).scale(sign)
        a_ok = lhs.agrees(rhs_a)
    rhs_b = None
    for j, b in enumerate(T.row(r)):
        c = binom_mod_p(n + j - 1, j, p)
        if b and c:
            term = tp[n + j].scale(b * c)
            rhs_b = term if rhs_b is None else rhs_b + term
    if rhs_b is None:
        b_ok = all(not lhs[m] for m in range(lhs.tail, lhs.trunc))
    else:
        b_ok = lhs.agrees(rhs_b.scale(sign))
    return a_ok, b_ok


@lru_cache(maxsize=128)
def lattice_sum_laurent(lattice, n, window):
    """S_{n,Lambda}(z) = sum_lambda (z - lambda)^(-n) as a z-Laurent series."""
    Kf = lattice.K
    total = Laurent(Kf, -n, [Kf.one], window, "z")
    for lam in lattice.points():
        if not lam:
            continue
        # (z - lam)^(-n) = (-lam)^(-n) (1 - z/lam)^(-n)
        base = USeries(Kf, [Kf.one, -(Kf.one / lam)], window)
        term = base.inverse() ** n
        c = (-lam) ** (-n)
        total = total + term.to_laurent().scale(c)
    return total


def check_lem1(lattice, n, r, window=40):
    """Identities d_z^r S_n = (-1)^r C(n+r-1, r) G_{n+r}(t) and the duality.

    Returns (a_ok, b_ok).
    """
    p = lattice.F.p
    T = goss_table(lattice)
    Sn = lattice_sum_laurent(lattice, n, window)
    lhs = Sn.hyperderivative(r)
    tp = _t_powers(lattice, window, n + r + 1)
    c = binom_mod_p(n + r - 1, r, p) * (-1 if r % 2 else 1)
    rhs = _eval_at_t(T.G(n + r), tp).scale(c)
    a_ok = lhs.agrees(rhs)
    Sr = lattice_sum_laurent(lattice, r + 1, window)
    dual = Sr.hyperderivative(n - 1).scale(-1 if (n + r - 1) % 2 else 1)
    return a_ok, lhs.agrees(dual)


def check_genfundiff(lattice, n, trunc=20):
    """x/(1 - t e(x))^n == d_t^(n-1)(t^(n-2) G(t, x)) through x^(trunc-1)."""
    Kf = lattice.K
    R = RPolyRing(Kf, "t")
    tgen = R.gen()
    e = lattice.exp_series(trunc)
    denom = USeries(R, [R.one] + [tgen.scale(-c) if c else R.zero
                                  for c in e.coeffs[1:]], trunc, "x")
    lhs = (denom.inverse() ** n).shift(1).truncate(trunc)
    T = goss_table(lattice)
    rhs = [R.zero] * trunc
    for k in range(1, trunc):
        rhs[k] = T.G(k).shift(n - 2).hyperderivative(n - 1)
    return all(lhs.coeffs[k] == rhs[k] for k in range(trunc))
