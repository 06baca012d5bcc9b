"""Command line entry point.

Every subcommand prints one report (JSON by default, with a top-level
"schema": 1 and sorted keys) and exits 0 on success, 1 when a check fails
and 2 on a usage error.
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

from .errors import ParseError, RamcftError

SCHEMA = 1


class UsageError(Exception):
    def __init__(self, msg, token=None, pos=None, where=None):
        super().__init__(msg)
        self.msg, self.token, self.pos, self.where = msg, token, pos, where

    def render(self):
        out = f"usage error: {self.msg}"
        if self.token is not None:
            out += f" (token {self.token!r} at position {self.pos}"
            out += f" of {self.where})" if self.where else ")"
        return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    p: int = None
    q: int = None
    prec: int = None
    seed: int = 0
    trials: int = None
    format: str = "json"
    payload: dict = field(default_factory=dict)


def config_from_args(args):
    common = {"command", "p", "q", "prec", "seed", "trials", "format", "func", "_argv", "config"}
    payload = {k: v for k, v in vars(args).items() if k not in common}
    return RunConfig(args.command, args.p, args.q, args.prec, args.seed, args.trials,
                     args.format, payload)


# -- helpers

def _value(args, flag, parse, *extra):
    """Parse the value of --flag, turning parse errors into usage errors."""
    text = getattr(args, flag.lstrip("-").replace("-", "_"))
    try:
        return parse(text, *extra)
    except ParseError as e:
        raise UsageError(e.msg, e.token, e.pos, f"--{flag.lstrip('-')}") from None


def _field(args, need=True):
    from .algebra.ff import GF, is_prime
    from .localfield import _prime_power
    if args.q is not None:
        try:
            p, n = _prime_power(args.q)
        except ParseError:
            raise UsageError("--q must be a prime power", str(args.q), _argpos(args, "--q"), "argv")
    elif args.p is not None:
        if not is_prime(args.p):
            raise UsageError("--p must be prime", str(args.p), _argpos(args, "--p"), "argv")
        p, n = args.p, 1
    elif need:
        raise UsageError("missing --q or --p")
    else:
        return None
    if p > 17 or n > 4:
        raise UsageError("fields are limited to p <= 17, n <= 4", str(p ** n),
                         _argpos(args, "--q" if args.q else "--p"), "argv")
    return GF(p, n)


def _argpos(args, flag):
    argv = getattr(args, "_argv", [])
    return argv.index(flag) + 2 if flag in argv else len(argv)


def _rng(args, label):
    from .sweeps import rng_for
    return rng_for(args.config.seed, label)


# -- witt

def _witt_E(args):
    from .localfield import parse_E
    if args.E:
        return _value(args, "E", parse_E)
    F = _field(args)
    return F


def _char(E):
    return E.p if hasattr(E, "p") else E.F.p


def cmd_witt(args):
    from .localfield import INF
    from .witt import artin_conductor, best_form, in_fil, in_fillog, parse_witt
    E = _witt_E(args)
    p = _char(E)
    prec = args.prec if args.prec is not None else INF
    v = _value(args, "v", parse_witt, E, p, prec)
    out = {"op": args.op}
    if args.op in ("add", "mul", "sub"):
        if args.w is None:
            raise UsageError(f"{args.op} needs --w")
        w = _value(args, "w", parse_witt, E, p, prec)
        if v.s != w.s:
            raise UsageError("Witt lengths differ", args.w, 0, "--w")
        r = v + w if args.op == "add" else v * w if args.op == "mul" else v - w
        out["result"] = str(r)
    elif args.op == "F":
        out["result"] = str(v.frobenius())
    elif args.op == "V":
        out["result"] = str(v.verschiebung())
    elif args.op == "best-form":
        out["result"] = str(best_form(v))
    elif args.op == "conductor":
        out["conductor"] = artin_conductor(v)
    elif args.op == "fil":
        if args.m is None:
            raise UsageError("fil needs --m")
        out["in_fil"] = in_fil(v, args.m)
        out["in_fillog"] = in_fillog(v, args.m)
    return out, True


# -- rsw

def cmd_rsw(args):
    from .localfield import INF, GradedForm
    from .rsw import fsd, refined_artin, surject_preimage
    from .witt import artin_conductor, best_form, parse_witt
    E = _witt_E(args)
    p = _char(E)
    if args.level is not None:
        if args.w is not None:
            raise UsageError("--level and --w are exclusive", "--level", _argpos(args, "--level"))
        try:
            c = E(args.target)
        except (ValueError, TypeError, RamcftError):
            raise UsageError("bad --target", str(args.target), _argpos(args, "--target"), "argv")
        g = GradedForm(args.level, c, E.zero())
        w = surject_preimage(g, E)
        return {"w": str(w), "m": artin_conductor(w), "lead": refined_artin(w).lead()}, True
    if args.w is None:
        raise UsageError("rsw needs --w (or --level with --target)")
    prec = args.prec if args.prec is not None else INF
    w = _value(args, "w", parse_witt, E, p, prec)
    g = refined_artin(w)
    out = {"m": g.m, "lead": g.lead()}
    if args.verbose:
        out["best_form"] = str(best_form(w))
        out["fsd"] = str(fsd(best_form(w)))
    return out, True


# -- rayclass

def _char_arg(args, F):
    from .rayclass import parse_character
    return _value(args, "f", parse_character, F, args.s)


def cmd_conductor(args):
    from .rayclass import global_conductor
    F = _field(args)
    chi = _char_arg(args, F)
    return {"conductor": str(global_conductor(chi))}, True


def _group_dict(G):
    return {"invariant_factors": list(G.invariants), "order": G.order,
            "generators": [{"name": g["name"], "order": g["order"], "cycle": str(g["cycle"]),
                            "function": None if g["function"] is None else str(g["function"])}
                           for g in G.generators]}


def cmd_rayclass(args):
    from .rayclass import closed_form_order, ray_class_group
    from .rayclass.oracle import ray_class_oracle
    from .rayclass.places import parse_modulus
    F = _field(args)
    D = _value(args, "modulus", parse_modulus, F)
    G = ray_class_group(D, F)
    out = _group_dict(G)
    out["closed_form_order"] = closed_form_order(D, F.q)
    ok = G.order == out["closed_form_order"]
    if args.oracle:
        H = ray_class_oracle(D, F, args.deg_bound)
        out["oracle"] = _group_dict(H)
        out["oracle"].update({"deg_bound": H.deg_bound, "converged": H.converged})
        ok = ok and H.invariants == G.invariants
    return out, ok


def cmd_reciprocity(args):
    from .rayclass import factorization_check, find_violation, global_conductor
    from .rayclass.places import parse_modulus
    F = _field(args)
    chi = _char_arg(args, F)
    D = _value(args, "modulus", parse_modulus, F)
    cond = global_conductor(chi)
    out = {"character": str(chi), "modulus": str(D), "conductor": str(cond),
           "bounded": cond <= D}
    if args.search:
        g = find_violation(chi, D, args.max_deg)
        out["violation"] = None if g is None else str(g)
        return out, True
    trials = args.trials if args.trials is not None else 100
    rep = factorization_check(chi, D, trials, _rng(args, "reciprocity"))
    out.update({"passed": rep.passed, "trials": trials, "value": rep.value,
                "counterexample": None if rep.counterexample is None else str(rep.counterexample)})
    return out, rep.passed


def cmd_schmid(args):
    from .rayclass import schmid_local, schmid_terms
    from .rayclass.places import parse_divisor, parse_ratfunc
    F = _field(args)
    a = _value(args, "a", parse_ratfunc, F)
    b = _value(args, "b", parse_ratfunc, F)
    if a.is_zero() or b.is_zero():
        raise UsageError("symbols need nonzero functions")
    if args.place:
        z = _value(args, "place", parse_divisor, F)
        items = list(z.items())
        if len(items) != 1 or items[0][1] != 1:
            raise UsageError("--place names one place", args.place, 0, "--place")
        v = items[0][0]
        return {"place": str(v), "value": schmid_local(a, b, v)}, True
    terms = schmid_terms(a, b)
    total = sum(t for _, t in terms) % F.p
    return {"terms": [{"place": str(v), "value": t} for v, t in terms], "sum": total,
            "passed": total == 0}, total == 0


# -- surfaces

def _k2_field(args):
    from .k2surface.curves import field
    F = _field(args)
    return field(F.p, F.n)


def _rf2(args, flag, F):
    from .k2surface import parse_ratfunc2
    return _value(args, flag, parse_ratfunc2, F)


def cmd_k2(args):
    from .k2surface import (boundary, claim1_table, claim2_table, mu_symbol,
                            mu_transformation_check, nu_shape_check, tame_cycle)
    F = _k2_field(args)
    prec = args.prec if args.prec is not None else 8
    if args.k2 == "gersten":
        a, b = _rf2(args, "a", F), _rf2(args, "b", F)
        if a.is_zero() or b.is_zero():
            raise UsageError("symbols need nonzero functions")
        if args.loose:
            cyc = tame_cycle(a, b)
            return {"cycle": {str(k): v for k, v in sorted(cyc.items())}, "passed": not cyc}, not cyc
        el = boundary(a, b, prec=prec)
        out = el.to_dict()
        out["passed"] = el.cycle_is_zero()
        return out, out["passed"]
    pi, f = _rf2(args, "pi", F), _rf2(args, "f", F)
    if args.k2 == "claim1":
        rep = claim1_table(F, pi, f, _rf2(args, "u1", F), _rf2(args, "u2", F), _rf2(args, "alpha", F))
        return rep.to_dict(), rep.passed
    if args.k2 == "claim2":
        rep = claim2_table(F, pi, f, _rf2(args, "u", F), _rf2(args, "alpha", F), args.e)
        return rep.to_dict(), rep.passed
    alpha, beta = _rf2(args, "alpha", F), _rf2(args, "beta", F)
    out = {"mu": mu_symbol(alpha, beta, pi, f, prec=prec).to_dict()}
    ok = True
    if args.check:
        u, v = _rf2(args, "u", F), _rf2(args, "v", F)
        t = mu_transformation_check(alpha, beta, pi, f, u, v, prec=max(prec, 12))
        n = nu_shape_check(alpha, beta, pi, f, prec=max(prec, 12))
        out["transformation"] = {k: (val if isinstance(val, (bool, int, str)) else str(val))
                                 for k, val in t.items() if k not in ("mu", "mu_rescaled")}
        out["nu"] = n
        ok = t["passed"] and n["passed"]
    return out, ok


# -- selftest

def cmd_selftest(args):
    from .selftest import run_selftest
    trials = args.trials if args.trials is not None else 20
    rep = run_selftest(args.config.seed, trials)
    return rep, rep["passed"]


# -- parser

def _globals():
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--q", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--prec", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--trials", type=int)
    g.add_argument("--format", choices=("text", "json"), default="json")
    return g


def build_parser():
    g = _globals()
    top = _Parser(prog="ramcft", description="Ramification and class field theory with modulus.")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    w = sub.add_parser("witt", parents=[g], help="Witt vector arithmetic and conductors")
    w.add_argument("op", choices=("add", "sub", "mul", "F", "V", "best-form", "conductor", "fil"))
    w.add_argument("--E")
    w.add_argument("--v", required=True)
    w.add_argument("--w")
    w.add_argument("--m", type=int)
    w.set_defaults(func=cmd_witt)

    c = sub.add_parser("conductor", parents=[g], help="global conductor of a character")
    c.add_argument("--f", required=True)
    c.add_argument("--s", type=int, default=1)
    c.set_defaults(func=cmd_conductor)

    r = sub.add_parser("rsw", parents=[g], help="refined Artin conductor")
    r.add_argument("--E")
    r.add_argument("--w")
    r.add_argument("--level", type=int)
    r.add_argument("--target", type=int, default=1)
    r.add_argument("--verbose", action="store_true")
    r.set_defaults(func=cmd_rsw)

    rc = sub.add_parser("rayclass", parents=[g], help="ray class group C(P^1, D)^0")
    rc.add_argument("--modulus", required=True)
    rc.add_argument("--oracle", action="store_true")
    rc.add_argument("--deg-bound", type=int, default=6)
    rc.set_defaults(func=cmd_rayclass)

    rp = sub.add_parser("reciprocity", parents=[g], help="factorization check through C(P^1, D)")
    rp.add_argument("--f", required=True)
    rp.add_argument("--s", type=int, default=1)
    rp.add_argument("--modulus", required=True)
    rp.add_argument("--search", action="store_true", help="search a violating g instead")
    rp.add_argument("--max-deg", type=int, default=4)
    rp.set_defaults(func=cmd_reciprocity)

    sc = sub.add_parser("schmid", parents=[g], help="local symbols Tr Res(a db/b)")
    sc.add_argument("--a", required=True)
    sc.add_argument("--b", required=True)
    sc.add_argument("--place")
    sc.set_defaults(func=cmd_schmid)

    k = sub.add_parser("k2", help="symbols on the projective plane")
    ks = k.add_subparsers(dest="k2", parser_class=_Parser)
    ks.required = True
    kg = ks.add_parser("gersten", parents=[g])
    kg.add_argument("--a", required=True)
    kg.add_argument("--b", required=True)
    kg.add_argument("--loose", action="store_true", help="tame symbols on every curve")
    for name in ("claim1", "claim2", "mu"):
        kp = ks.add_parser(name, parents=[g])
        kp.add_argument("--pi", default="y")
        kp.add_argument("--f", default="x")
        kp.add_argument("--alpha", required=True)
        if name == "claim1":
            kp.add_argument("--u1", required=True)
            kp.add_argument("--u2", required=True)
        elif name == "claim2":
            kp.add_argument("--u", default="1")
            kp.add_argument("--e", type=int, default=2)
        else:
            kp.add_argument("--beta", required=True)
            kp.add_argument("--u", default="1")
            kp.add_argument("--v", default="1")
            kp.add_argument("--check", action="store_true",
                            help="also run the rescaling and nu consistency checks")
    k.set_defaults(func=cmd_k2)

    st = sub.add_parser("selftest", parents=[g], help="seeded invariant suite")
    st.set_defaults(func=cmd_selftest)
    return top


# -- output

def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, separators=(",", ":"))
    lines = []
    _text(report, 0, lines)
    return "\n".join(lines)


def _text(obj, depth, lines):
    pad = "  " * depth
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                _text(v, depth + 1, lines)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                _text(item, depth + 1, lines)
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))


def _scalar(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def _usage_token(msg, argv):
    m = re.search(r"'([^']*)'", msg) or re.search(r": (\S+)$", msg)
    tok = m.group(1) if m else (argv[-1] if argv else "<end>")
    for i, a in enumerate(argv):
        if a == tok or a.startswith(tok + "="):
            return tok, i + 1
    return tok, len(argv) + 1


def run(argv, out=sys.stdout, err=sys.stderr):
    """Run the command line; returns the exit code."""
    argv = list(argv)
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except UsageError as e:
            e.token, e.pos = _usage_token(e.msg, argv)
            e.where = "argv"
            raise
        args._argv = argv
        args.config = config_from_args(args)
        report, ok = args.func(args)
    except UsageError as e:
        print(e.render(), file=err)
        return 2
    except ParseError as e:
        print(UsageError(e.msg, e.token, e.pos).render(), file=err)
        return 2
    except RamcftError as e:
        fmt = getattr(args, "format", "json")
        print(render({"schema": SCHEMA, "error": type(e).__name__, "message": str(e)}, fmt), file=out)
        print(f"error: {type(e).__name__}: {e}", file=err)
        return 2
    report = dict(report)
    report["schema"] = SCHEMA
    print(render(report, args.config.format), file=out)
    return 0 if ok else 1


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
