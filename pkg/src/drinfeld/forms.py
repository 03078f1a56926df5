"""u-expansions of Eisenstein series, g_d, the false Eisenstein series and
Petrov's forms f_{k,n}.

All A_+-sums run over monic a with q^(deg a) < N.  Since u_a starts at
u^(q^(deg a)), the omitted a cannot touch the window, so every expansion
returned here is exact modulo u^N.
"""

from dataclasses import dataclass, field
from typing import Optional

from .algebra import big_L, fraction_field, monic_enum, poly_ring
from .carlitz import LatticeSpec, u_a_series, zeta_ratio
from .goss import goss_table
from .series import USeries


@dataclass
class FormExpansion:
    series: USeries
    weight: int
    type: Optional[int]
    label: str
    modular: Optional[bool] = None
    meta: dict = field(default_factory=dict)

    @property
    def F(self):
        return self.series.ring.F

    @property
    def trunc(self):
        return self.series.trunc

    def support_ok(self):
        """Nonzero coefficients only at exponents n = type mod (q-1)."""
        if self.type is None:
            return True
        q = self.F.q
        return all(not c or (n - self.type) % (q - 1) == 0
                   for n, c in enumerate(self.series.coeffs))

    def is_integral(self):
        return all(c.is_integral() for c in self.series.coeffs)

    def integral_series(self):
        """The same series over A; raises if a denominator is present."""
        A = poly_ring(self.F)
        out = []
        for c in self.series.coeffs:
            if not c.is_integral():
                raise ValueError(f"{self.label} has a non-integral coefficient {c}")
            out.append(c.num)
        return USeries._make(A, out, self.series.trunc, self.series.var)

    def __mul__(self, other):
        q = self.F.q
        typ = None
        if self.type is not None and other.type is not None:
            typ = (self.type + other.type) % (q - 1)
        mod = None
        if self.modular is not None and other.modular is not None:
            mod = self.modular and other.modular
        return FormExpansion(self.series * other.series, self.weight + other.weight,
                             typ, f"({self.label})*({other.label})", mod)

    def to_json(self):
        return {"series": self.series.to_json(), "weight": self.weight,
                "type": self.type, "label": self.label, "modular": self.modular}


def monics_for_window(F, N):
    """Monic a with q^(deg a) < N, grouped by degree."""
    q = F.q
    out = []
    d = 0
    while q ** d < N:
        out.append(monic_enum(F, d))
        d += 1
    return out


def power_sums(F, N, m_max, weight=None, skip=None):
    """P_m = sum_a w(a) u_a^m over A for m = 1..m_max, modulo u^N.

    ``weight`` maps a monic a to a coefficient (default 1); ``skip`` is a
    predicate excluding some a.  Returns a list indexed by m (index 0 unused).
    """
    A = poly_ring(F)
    sums = [None] + [USeries.zero(A, N) for _ in range(m_max)]
    q = F.q
    for d, group in enumerate(monics_for_window(F, N)):
        top = q ** d
        for a in group:
            if skip is not None and skip(a):
                continue
            w = weight(a) if weight is not None else A.one
            if not w:
                continue
            ua = u_a_series(a, N)
            pw = ua
            for m in range(1, m_max + 1):
                if m > 1:
                    if m * top >= N:
                        break
                    pw = (pw * ua).truncate(N)
                sums[m] = sums[m] + pw.scale(w)
    return sums


def goss_sum(F, k, N, weight=None, skip=None):
    """sum_a w(a) G_k(u_a) over K, modulo u^N."""
    K = fraction_field(F)
    row = goss_table(LatticeSpec.carlitz(F)).row(k - 1)
    P = power_sums(F, N, k, weight, skip)
    total = USeries.zero(K, N)
    for j, b in enumerate(row):
        if b:
            total = total + P[j + 1].change_ring(K).scale(b)
    return total


def eisenstein(F, k, N):
    """E_k = -zeta_C(k)/pi^k - sum_a G_k(u_a)."""
    q = F.q
    if k <= 0 or k % (q - 1):
        raise ValueError(f"Eisenstein weight must be a positive multiple of q-1 = {q - 1}")
    s = -goss_sum(F, k, N)
    if N:
        s.coeffs[0] = s.coeffs[0] - zeta_ratio(F, k)
    return FormExpansion(s, k, 0, f"eisenstein {k}", True)


def g_form(F, d, N):
    """g_d = -L_d E_{q^d - 1}; its coefficients are checked to lie in A."""
    if d < 1:
        raise ValueError("d must be >= 1")
    q = F.q
    E = eisenstein(F, q ** d - 1, N)
    L = fraction_field(F)(big_L(F, d))
    s = E.series.scale(-L)
    f = FormExpansion(s, q ** d - 1, 0, f"g_{d}", True)
    if not f.is_integral():
        raise ArithmeticError(f"g_{d} has a non-integral coefficient")
    return f


def false_eisenstein(F, N):
    """E = sum_a a u_a, weight 2 and type 1 (quasi-modular)."""
    K = fraction_field(F)
    P = power_sums(F, N, 1, weight=lambda a: a)
    return FormExpansion(P[1].change_ring(K), 2, 1 % (F.q - 1), "falseE", False)


def petrov_conditions(F, k, n):
    """Petrov's conditions: k - 2n > 0, k = 2n mod (q-1), n <= p^ord_p(k-n)."""
    q, p = F.q, F.p
    if k - 2 * n <= 0 or (k - 2 * n) % (q - 1):
        return False
    m, e = k - n, 0
    while m % p == 0:
        m //= p
        e += 1
    return n <= p ** e


def petrov_form(F, k, n, N):
    """f_{k,n} = sum_a a^(k-n) G_n(u_a); flagged modular under Petrov's conditions."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    if k < n:
        raise ValueError("petrov_form needs k >= n (a^(k-n) must be a polynomial)")
    s = goss_sum(F, n, N, weight=lambda a: a ** (k - n))
    q = F.q
    return FormExpansion(s, k, n % (q - 1), f"petrov({k},{n})",
                         petrov_conditions(F, k, n))
