"""Theta, Serre and Hecke operators on truncated u-expansions."""

from dataclasses import dataclass, field

from .algebra import (Frac, PolyRing, binom_mod_p, carlitz_factorial, fraction_field,
                      is_irreducible, poly_ring)
from .carlitz import LatticeSpec, carlitz_action, u_a_series
from .forms import FormExpansion, false_eisenstein
from .goss import goss_table
from .series import Laurent, RPoly, USeries


@dataclass
class OperatorReport:
    operator: str
    params: dict
    input_label: str
    input_weight: object
    input_type: object
    output: USeries
    window: int
    meta: dict = field(default_factory=dict)

    def to_json(self):
        return {"operator": self.operator, "params": self.params,
                "input": {"label": self.input_label, "weight": self.input_weight,
                          "type": self.input_type},
                "output": self.output.to_json(), "window": self.window}


def _carlitz_rows(F):
    return goss_table(LatticeSpec.carlitz(F))


# ---------------------------------------------------------------------------
# theta operators
# ---------------------------------------------------------------------------

def theta_r(f, r):
    """Theta^r(f) = sum_j beta_{r,j} u^(j+1) d_u^j(u^(j-1) f).

    Works for coefficients in K, A or A/P^M (beta is coerced into the
    coefficient ring).  The output window equals the input window.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return f
    ring = f.ring
    F = ring.F
    N = f.trunc
    row = _carlitz_rows(F).row(r)
    lf = f.to_laurent()
    total = USeries.zero(ring, N, f.var)
    for j, b in enumerate(row):
        if not b:
            continue
        g = _shift_laurent(lf, j - 1).hyperderivative(j)
        g = _shift_laurent(g, j + 1)
        total = total + g.to_useries().truncate(N).scale(ring(b))
    return total


def _shift_laurent(f, k):
    return Laurent(f.ring, f.tail + k, f.coeffs, f.trunc + k, f.var)


def theta_coefficients(f, r):
    """Theta^r via the monomial rule Theta^r(u^n) = sum_j C(n+j-1, j) beta_{r,j} u^(n+j)."""
    ring = f.ring
    F = ring.F
    p = F.p
    N = f.trunc
    row = [ring(b) for b in _carlitz_rows(F).row(r)]
    out = [ring.zero] * N
    for n, c in enumerate(f.coeffs):
        if not c:
            continue
        for j, b in enumerate(row):
            if n + j >= N:
                break
            if b:
                k = binom_mod_p(n + j - 1, j, p)
                if k:
                    out[n + j] = out[n + j] + c * b * k
    return USeries._make(ring, out, N, f.var)


def theta_r_monomial(F, n, r, N=None):
    """Theta^r(u^n) from u^n d_u^(n-1)(u^(n-2) G_{r+1}(u)) and from the beta sum.

    Both formulas are evaluated as exact polynomials; disagreement raises.
    Returns a USeries modulo u^N (default n + r + 1, which holds the whole
    polynomial).
    """
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    K = fraction_field(F)
    p = F.p
    T = _carlitz_rows(F)
    G = T.G(r + 1, "u")
    a = G.shift(n - 2).hyperderivative(n - 1).shift(n)
    coeffs = [K.zero] * (n + r + 1)
    for j, b in enumerate(T.row(r)):
        k = binom_mod_p(n + j - 1, j, p)
        if b and k:
            coeffs[n + j] = coeffs[n + j] + b * k
    b_poly = RPoly(K, coeffs, "u")
    if a != b_poly:
        raise ArithmeticError(f"theta formulas disagree for n={n}, r={r}")
    if N is None:
        N = n + r + 1
    return USeries(K, a.coeffs[:N], N)


def theta_iterate(f, r):
    """(Theta^1)^r = (u^2 d_u)^r, the iterated first theta operator."""
    for _ in range(r):
        f = theta_r(f, 1)
    return f


def pi_theta_integral(f, r):
    """Pi_r Theta^r(f) for integral f, certified to have coefficients in A."""
    F = f.ring.F
    K = fraction_field(F)
    A = poly_ring(F)
    fk = f.change_ring(K)
    out = theta_r(fk, r).scale(K(carlitz_factorial(F, r)))
    coeffs = []
    for n, c in enumerate(out.coeffs):
        if not c.is_integral():
            raise ArithmeticError(f"Pi_{r} Theta^{r} left a denominator at u^{n}")
        coeffs.append(c.num)
    return USeries._make(A, coeffs, out.trunc, out.var)


def serre_D(f, r, E=None):
    """D^r(f) = Theta^r(f) + sum_i (-1)^i C(k+r-1, i) Theta^(r-i)(f) Theta^(i-1)(E)."""
    if not isinstance(f, FormExpansion):
        raise TypeError("serre_D needs a FormExpansion carrying its weight")
    F = f.F
    p = F.p
    q = F.q
    k = f.weight
    N = f.trunc
    if E is None:
        E = false_eisenstein(F, N).series
    elif isinstance(E, FormExpansion):
        E = E.series
    s = theta_r(f.series, r)
    for i in range(1, r + 1):
        c = binom_mod_p(k + r - 1, i, p)
        if not c:
            continue
        if i % 2:
            c = -c
        s = s + (theta_r(f.series, r - i) * theta_r(E, i - 1)).truncate(N).scale(c)
    typ = None if f.type is None else (f.type + r) % (q - 1)
    return FormExpansion(s.truncate(N), k + 2 * r, typ, f"D^{r}({f.label})", f.modular)


# ---------------------------------------------------------------------------
# Hecke operators
# ---------------------------------------------------------------------------

def _check_ell(ell):
    if not ell.is_monic() or not is_irreducible(ell):
        raise ValueError(f"{ell} is not monic irreducible")


def hecke_U_window(F, ell, N):
    """Certified output window of U_l on an input known modulo u^N.

    G_{n,Lambda_l}(l u) has no terms below u^(1 + ceil((n-1)/q^e)), e = deg l,
    so the unknown inputs c_n, n >= N, cannot reach exponents below
    1 + ceil((N-1)/q^e).
    """
    if N <= 1:
        return N
    qe = F.q ** ell.degree
    return 1 + -(-(N - 1) // qe)


def _u_matrix_integral(ell, nmax, out):
    """rows[n][m] = coefficient of u^m in G_{n,Lambda_l}(l u) over A.

    Uses G_{n,Lambda_l}(l u) = l u sum_m u^m [x^(n-1)] C_l(x)^m.
    """
    A = ell.ring
    Cl = carlitz_action(ell)
    q = A.F.q
    # C_l(x) as a sparse polynomial in x
    c = [A.zero] * (q ** ell.degree + 1)
    for i, x in enumerate(Cl.coeffs):
        c[q ** i] = x
    cx = USeries(A, c, nmax)
    rows = [[A.zero] * out for _ in range(nmax + 1)]
    pw = USeries.one(A, nmax)
    for m in range(0, out - 1):
        if m:
            pw = (pw * cx).truncate(nmax)
            if pw.valuation() >= nmax:
                break
        for n in range(1, nmax + 1):
            v = pw.coeffs[n - 1]
            if v:
                rows[n][m + 1] = ell * v
    return rows


def _u_matrix_goss(ell, nmax, out):
    """Same matrix through the Goss table of the division lattice (over K)."""
    K = fraction_field(ell.ring.F)
    T = goss_table(LatticeSpec.division(ell))
    rows = [[K.zero] * out for _ in range(nmax + 1)]
    lk = K(ell)
    for n in range(1, nmax + 1):
        for j, b in enumerate(T.row(n - 1)):
            if b and j + 1 < out:
                rows[n][j + 1] = b * lk ** (j + 1)
    return rows


def hecke_U(f, ell, method="integral"):
    """U_l(sum c_n u^n) = sum_{n >= 1} c_n G_{n,Lambda_l}(l u).

    The constant term is dropped, following the displayed sum from n = 1.
    Output window: :func:`hecke_U_window`.
    """
    _check_ell(ell)
    ring = f.ring
    N = f.trunc
    out = hecke_U_window(ring.F, ell, N)
    if method == "integral":
        M = _u_matrix_integral(ell, N - 1 if N else 0, out)
    elif method == "goss":
        M = _u_matrix_goss(ell, N - 1 if N else 0, out)
    else:
        raise ValueError(f"unknown method {method!r}")
    coeffs = [ring.zero] * out
    for n in range(1, N):
        c = f.coeffs[n]
        if not c:
            continue
        row = M[n]
        for m in range(out):
            if row[m]:
                coeffs[m] = coeffs[m] + c * _coerce(ring, row[m])
    return USeries._make(ring, coeffs, out, f.var)


def _coerce(ring, x):
    if isinstance(x, Frac) and isinstance(ring, PolyRing):
        if not x.is_integral():
            raise ArithmeticError(f"{x} does not lie in A")
        return x.num
    return ring(x)


def hecke_V(f, ell, out=None):
    """V_l(sum c_n u^n) = sum c_n u_l^n.

    Known modulo u^(N q^e) in principle; the default output window is N.
    """
    _check_ell(ell)
    ring = f.ring
    N = f.trunc
    cap = N * ring.F.q ** ell.degree
    out = N if out is None else out
    if out > cap:
        raise ValueError(f"V_l output window is at most {cap}")
    ul = u_a_series(ell, out).change_ring(ring)
    total = USeries.zero(ring, out, f.var)
    pw = USeries.one(ring, out, f.var)
    for n, c in enumerate(f.coeffs):
        if n:
            pw = (pw * ul).truncate(out)
            if pw.valuation() >= out:
                break
        if c:
            total = total + pw.scale(c)
    return total


def hecke_T(f, ell, k):
    """T_l = l^k V_l + U_l at integer weight k."""
    ring = f.ring
    lk = ring(ell) ** k
    u = hecke_U(f, ell)
    v = hecke_V(f, ell, out=u.trunc)
    return v.scale(lk) + u


def hecke_T_s(f, ell, s):
    """T_l = l^s V_l + U_l on a v-adic series; l must differ from the prime."""
    from .vadic import VSeries, a_pow_s
    if not isinstance(f, VSeries):
        raise TypeError("hecke_T_s acts on VSeries")
    if ell == f.prime:
        raise ValueError("l^s is not defined for l equal to the prime")
    ls = a_pow_s(ell, s, f.prime, f.M)
    u = hecke_U(f.series, ell)
    v = hecke_V(f.series, ell, out=u.trunc)
    return VSeries(v.scale(ls) + u, f.shift, meta={"op": "T_s"})


def report(op, f, output, **params):
    label = getattr(f, "label", "series")
    return OperatorReport(op, params, label, getattr(f, "weight", None),
                          getattr(f, "type", None), output, output.trunc)
