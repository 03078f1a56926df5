"""Exact computations with Drinfeld modular forms over F_q[theta]."""

from .field import GF, FiniteField
from .algebra import (
    INF, Frac, ModP, Poly, big_D, big_L, binom_mod_p, bracket, carlitz_factorial,
    fraction_field, is_irreducible, modp_ring, monic_enum, ord_v, poly_ring,
)
from .series import InfLaurent, Laurent, RPoly, USeries, hyperderivative
from .carlitz import (LatticeSpec, TwistedPoly, carlitz_action, carlitz_exp, u_a_series,
                      zeta_ratio)
from .goss import GossTable, goss_closed, goss_genseries, goss_recursion, goss_table
from .forms import (FormExpansion, eisenstein, false_eisenstein, g_form, petrov_form)
from .operators import (hecke_T, hecke_T_s, hecke_U, hecke_V, pi_theta_integral, serre_D,
                        theta_r, theta_r_monomial)
from .vadic import (VSeries, WeightS, a_pow_s, false_e_decomposition_check, goss_family,
                    teichmuller, vnorm)

__version__ = "0.1.0"
