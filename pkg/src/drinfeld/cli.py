"""Command-line front end.

Every subcommand prints one JSON document (or a short text rendering with
``--format text``).  Exit status: 0 success, 1 domain error, 2 a property
suite failed, 64 malformed command line.
"""

import argparse
import json
import os
import sys

from .algebra import Poly, bracket, fraction_field, is_irreducible, poly_ring
from .field import GF

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PROPERTY = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _field(args):
    modulus = json.loads(args.modulus) if args.modulus else None
    return GF(args.q, tuple(modulus) if modulus else None)


def _poly(F, text):
    """A polynomial given as JSON: an int constant or an ascending coefficient list."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}") from exc
    if isinstance(obj, list):
        while obj and obj[-1] == 0:
            obj = obj[:-1]
    return Poly.from_json(F, obj)


def _prime(F, args):
    P = _poly(F, args.prime) if args.prime else poly_ring(F).theta
    if not is_irreducible(P):
        raise ValueError(f"{P} is not monic irreducible")
    return P


def _input_series(F, text, trunc, ring=None):
    """A series from JSON (or @file).  Without a "trunc" key the window is --trunc."""
    from .series import USeries
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    obj = json.loads(text)
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise ValueError("series JSON needs a \"coeffs\" list")
    if "trunc" not in obj:
        obj = dict(obj, trunc=max(trunc, len(obj["coeffs"])))
    return USeries.from_json(ring or fraction_field(F), obj)


def _check_positive(args):
    if getattr(args, "trunc", 1) is not None and args.trunc < 1:
        raise UsageError("--trunc must be >= 1")
    if getattr(args, "padic_prec", 1) is not None and getattr(args, "padic_prec", 1) < 1:
        raise UsageError("--padic-prec must be >= 1")


def _lattice(F, spec):
    from .carlitz import LatticeSpec
    K = fraction_field(F)
    if spec == "carlitz":
        return LatticeSpec.carlitz(F)
    kind, _, rest = spec.partition(":")
    if kind == "division":
        return LatticeSpec.division(_poly(F, rest))
    if kind == "basis":
        return LatticeSpec.from_basis([K(_poly(F, json.dumps(b))) for b in json.loads(rest)])
    if kind == "alphas":
        from .algebra import Frac
        return LatticeSpec.finite(F, [Frac.from_json(F, a) for a in json.loads(rest)])
    raise ValueError(f"unknown lattice {spec!r}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_goss(args):
    from .goss import goss_closed_table, goss_genseries, goss_recursion
    F = _field(args)
    lat = _lattice(F, args.lattice)
    builders = {"recursion": goss_recursion, "genseries": goss_genseries,
                "closed": goss_closed_table}
    methods = list(builders) if args.method == "all" else [args.method]
    tables = [builders[m](lat, args.k) for m in methods]
    if any(t != tables[0] for t in tables[1:]):
        raise ArithmeticError("Goss constructions disagree")
    out = {"lattice": lat.label, "methods": methods, "k": args.k,
           "rows": tables[0].to_json(args.k)["rows"],
           "G": [tables[0].G(k).to_json() for k in range(1, args.k + 1)]}
    return out, EXIT_OK


def cmd_carlitz(args):
    from .carlitz import carlitz_action, carlitz_exp, u_a_series, zeta_ratio
    F = _field(args)
    what = args.what
    if what == "exp":
        e = carlitz_exp(F, args.J, args.trunc)
        return {"exp": e.to_json()}, EXIT_OK
    if what == "action":
        return {"action": carlitz_action(_poly(F, args.a)).to_json()}, EXIT_OK
    if what == "u-a":
        a = _poly(F, args.a)
        return {"a": a.to_json(), "u_a": u_a_series(a, args.trunc).to_json()}, EXIT_OK
    if what == "zeta-ratio":
        if args.k is None or args.k < 1 or args.k % (F.q - 1):
            raise ValueError("zeta ratio needs k a positive multiple of q-1")
        return {"k": args.k, "zeta_ratio": zeta_ratio(F, args.k).to_json()}, EXIT_OK
    raise UsageError(f"unknown carlitz query {what!r}")


def cmd_eis(args):
    from .forms import eisenstein
    return eisenstein(_field(args), args.k, args.trunc).to_json(), EXIT_OK


def cmd_gd(args):
    from .forms import g_form
    F = _field(args)
    g = g_form(F, args.d, args.trunc)
    out = g.to_json()
    if args.reduce_mod:
        kind, _, d = args.reduce_mod.partition(":")
        if kind != "bracket" or not d.isdigit():
            raise UsageError("--reduce-mod expects bracket:<d>")
        b = bracket(F, int(d))
        s = g.integral_series()
        red = s.map(lambda c: c % b, s.ring)
        out = {"label": g.label, "weight": g.weight, "type": g.type,
               "modulus": b.to_json(), "series": red.to_json()}
    return out, EXIT_OK


def cmd_false_e(args):
    from .forms import false_eisenstein
    return false_eisenstein(_field(args), args.trunc).to_json(), EXIT_OK


def cmd_petrov(args):
    from .forms import petrov_form
    return petrov_form(_field(args), args.k, args.n, args.trunc).to_json(), EXIT_OK


def cmd_theta(args):
    from .operators import report, theta_iterate, theta_r
    F = _field(args)
    f = _input_series(F, args.input, args.trunc)
    out = theta_iterate(f, args.r) if args.iterate else theta_r(f, args.r)
    name = "theta-iterate" if args.iterate else "theta"
    return report(name, f, out, r=args.r).to_json(), EXIT_OK


def cmd_serre(args):
    from .forms import FormExpansion
    from .operators import report, serre_D
    F = _field(args)
    f = _input_series(F, args.input, args.trunc)
    form = FormExpansion(f, args.weight, args.type, "input")
    out = serre_D(form, args.r)
    rep = report("serre", form, out.series, r=args.r).to_json()
    rep["output_weight"] = out.weight
    rep["output_type"] = out.type
    return rep, EXIT_OK


def cmd_hecke(args):
    from .operators import hecke_T, hecke_U, hecke_V, report
    F = _field(args)
    ell = _poly(F, args.ell)
    f = _input_series(F, args.input, args.trunc)
    if args.op == "U":
        out = hecke_U(f, ell, method=args.method)
    elif args.op == "V":
        out = hecke_V(f, ell)
    else:
        if args.weight is None:
            raise UsageError("--op T needs --weight")
        out = hecke_T(f, ell, args.weight)
    params = {"ell": ell.to_json()}
    if args.op == "T":
        params["weight"] = args.weight
    return report(args.op, f, out, **params).to_json(), EXIT_OK


def cmd_vadic(args):
    from . import vadic
    F = _field(args)
    P = _prime(F, args)
    M = args.padic_prec
    if args.action == "pow-s":
        a = _poly(F, args.a)
        s = _weight(args, P, M)
        return {"a": a.to_json(), "s": s.to_json(),
                "value": vadic.a_pow_s(a, s, P, M).to_json()}, EXIT_OK
    if args.action == "family":
        s = _weight(args, P, M + 64)
        v = vadic.goss_family(s, args.n, args.trunc, M, P)
        o, kind = vadic.vnorm(v)
        out = v.to_json()
        out["ord"] = _ord_json(o)
        out["ord_kind"] = kind
        return out, EXIT_OK
    if args.action == "e-decomp":
        ok = vadic.false_e_decomposition_check(F, P, args.trunc, args.J)
        return {"N": args.trunc, "J": args.J, "prime": P.to_json(), "ok": ok}, \
            (EXIT_OK if ok else EXIT_PROPERTY)
    if args.action == "converge":
        target, seq, s = vadic.petrov_to_goss(F, P, args.trunc, M, args.count, args.variant)
        sched = json.loads(args.schedule) if args.schedule else None
        rep = vadic.convergence_experiment(target, seq, sched, "fhat(s,1)")
        out = rep.to_json()
        out["s"] = s.to_json()
        ok = rep.schedule_ok and rep.increasing
        return out, (EXIT_OK if ok else EXIT_PROPERTY)
    raise UsageError(f"unknown vadic action {args.action!r}")


def _ord_json(o):
    from .algebra import INF
    return "inf" if o == INF else o


def _weight(args, P, M):
    from .vadic import WeightS, digits_needed
    F = P.ring.F
    if args.s:
        x, y = (int(v) for v in args.s.split(","))
        return WeightS(x, y, P.degree, F.q, F.p, digits_needed(F.p, M))
    if args.n_int is None:
        raise UsageError("give --s x,y or --int n")
    return WeightS.embed(args.n_int, P, M)


def cmd_check(args):
    from .checks import SUITES
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        kw = {}
        if name == "goss":
            if args.q_given:
                kw["qs"] = (args.q,)
            if args.k is not None:
                kw["kmax"] = args.k
        elif name in ("theta", "lattice-sum") and args.q_given:
            kw["qs"] = (args.q,)
        if name in ("goss", "theta", "integrality", "vadic", "hecke"):
            kw["seed"] = args.seed
        results.append(SUITES[name](**kw))
    ok = all(r.ok for r in results)
    return {"ok": ok, "suites": [r.to_json() for r in results]}, \
        (EXIT_OK if ok else EXIT_PROPERTY)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--q", type=int, default=None, help="field size (prime power)")
    common.add_argument("--modulus", default=None,
                        help="JSON coefficient list of the F_q defining polynomial")
    common.add_argument("--trunc", type=int, default=20, help="u-adic window N")
    common.add_argument("--format", choices=["json", "text"],
                        default=os.environ.get("DRINFELD_FORMAT", "json"))
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="drinfeld", description="Exact Drinfeld modular form computations.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("goss", parents=[common], help="Goss polynomials")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--lattice", default="carlitz",
                   help="carlitz | division:<poly> | basis:<JSON list> | alphas:<JSON list>")
    s.add_argument("--method", choices=["recursion", "genseries", "closed", "all"],
                   default="recursion")
    s.set_defaults(func=cmd_goss)

    s = sub.add_parser("carlitz", parents=[common], help="Carlitz module data")
    s.add_argument("what", choices=["exp", "action", "u-a", "zeta-ratio"])
    s.add_argument("--a", default="[0,1]")
    s.add_argument("--k", type=int)
    s.add_argument("--J", type=int, default=3)
    s.set_defaults(func=cmd_carlitz)

    s = sub.add_parser("eis", parents=[common], help="Eisenstein series E_k")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_eis)

    s = sub.add_parser("gd", parents=[common], help="the forms g_d")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--reduce-mod", default=None, help="bracket:<d>")
    s.set_defaults(func=cmd_gd)

    s = sub.add_parser("false-e", parents=[common], help="false Eisenstein series")
    s.set_defaults(func=cmd_false_e)

    s = sub.add_parser("petrov", parents=[common], help="Petrov's forms f_{k,n}")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_petrov)

    s = sub.add_parser("theta", parents=[common], help="theta operators")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--input", required=True, help="series JSON or @file")
    s.add_argument("--iterate", action="store_true", help="apply Theta^1 r times instead")
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("serre", parents=[common], help="Serre operators")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--type", type=int, default=None)
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_serre)

    s = sub.add_parser("hecke", parents=[common], help="Hecke operators")
    s.add_argument("--op", choices=["U", "V", "T"], required=True)
    s.add_argument("--ell", required=True)
    s.add_argument("--weight", type=int, default=None)
    s.add_argument("--method", choices=["integral", "goss"], default="integral")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_hecke)

    s = sub.add_parser("vadic", parents=[common], help="v-adic computations")
    s.add_argument("action", choices=["pow-s", "family", "e-decomp", "converge"])
    s.add_argument("--prime", default=None, help="monic irreducible P (default theta)")
    s.add_argument("--padic-prec", type=int, default=6)
    s.add_argument("--a", default="[1,1]")
    s.add_argument("--s", default=None, help="weight as x,y")
    s.add_argument("--int", dest="n_int", type=int, default=None, help="integer weight")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--J", type=int, default=3)
    s.add_argument("--count", type=int, default=4)
    s.add_argument("--variant", choices=["goss", "teich"], default="goss")
    s.add_argument("--schedule", default=None, help="JSON list of minimum depths")
    s.set_defaults(func=cmd_vadic)

    s = sub.add_parser("check", parents=[common], help="run a property suite")
    s.add_argument("--suite", default="all",
                   choices=["all", "goss", "lattice-sum", "gossdiffs", "theta", "integrality",
                            "eisenstein", "zeta", "vadic", "hecke"])
    s.add_argument("--k", type=int, default=None)
    s.set_defaults(func=cmd_check)
    return p


def _render_text(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.q_given = args.q is not None
        if args.q is None:
            args.q = 3
        _check_positive(args)
        obj, code = args.func(args)
    except UsageError as exc:
        err.write(str(exc) + "\n")
        return EXIT_USAGE
    except (ValueError, ArithmeticError, TypeError, KeyError, json.JSONDecodeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    out.write((_render_text(obj) if args.format == "text" else dumps(obj)) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
