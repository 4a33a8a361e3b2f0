"""Command-line front end.

Exit status: 0 when every check passes, 1 on a check failure, 2 on usage,
parse or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from gerstkit import __version__
from gerstkit.parsing import ParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

NAMED_COCHAINS = ("I", "omega", "bracket", "m", "E", "delta")


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, trials: int = 50) -> None:
    p.add_argument("--algebroid", default="standard(2)",
                   help="'standard(n)' or a JSON/TOML presentation file (default: standard(2))")
    p.add_argument("--trials", type=int, default=trials, help="random samples per identity")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grade-bound", type=int, default=3)
    p.add_argument("--degree-bound", type=int, default=2)
    p.add_argument("--convention", default="bracket-side", choices=("bracket-side", "divergence-side"),
                   help="sign convention for BV operators built from divergences")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--timing", action="store_true", help="include elapsed time in reports")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gerstkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"gerstkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", default="all", help="comma-separated suite names or 'all'")
    p.add_argument("--n", type=int, default=3, help="largest arity for the square suite")
    p.add_argument("--c", dest="divergence", help="divergence, e.g. 'c(e1)=x2, c(e2)=0'")

    p = sub.add_parser("eval", help="evaluate one operation exactly")
    _common(p)
    p.add_argument("operator", choices=("bracket", "wedge", "delta", "derham", "derham-g",
                                        "d-hochschild", "d-chevalley"))
    p.add_argument("operands", nargs="+")
    p.add_argument("--c", dest="divergence")

    p = sub.add_parser("div-check", help="check a divergence")
    _common(p)
    p.add_argument("--c", dest="divergence", required=True)

    p = sub.add_parser("bv-check", help="check the (quasi-)BV operator of a divergence")
    _common(p)
    p.add_argument("--c", dest="divergence", required=True)

    p = sub.add_parser("torsor", help="difference of two divergences and its closedness")
    _common(p)
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)

    p = sub.add_parser("derham", help="classical de Rham differential of a form")
    _common(p)
    p.add_argument("--form", required=True, help="form file (YAML/JSON) or inline text")

    p = sub.add_parser("derham-g", help="de Rham differential through polyvector multi-derivations")
    _common(p)
    p.add_argument("--op", default="d", choices=("d", "extend", "check"))
    p.add_argument("--form", required=True)
    p.add_argument("--at", nargs="*", default=None, help="polyvector arguments for --op extend")

    p = sub.add_parser("bracket-cocycle", help="the bracket is a Hochschild cocycle")
    _common(p, trials=200)

    p = sub.add_parser("canonical", help="identities of the identity, bracket and product cochains")
    _common(p, trials=100)

    p = sub.add_parser("hochschild", help="graded Hochschild differential of a named cochain")
    _common(p)
    p.add_argument("--op", default="d", choices=("d",))
    p.add_argument("--cochain", required=True, choices=NAMED_COCHAINS)
    p.add_argument("--at", nargs="*", default=None, help="evaluate d_H(cochain) at these polyvectors")
    p.add_argument("--c", dest="divergence")
    return ap


# -- helpers ---------------------------------------------------------------------------------

def _load_alg(args):
    from gerstkit.algebroid import DimensionMismatch, load
    try:
        return load(args.algebroid)
    except FileNotFoundError:
        raise UsageError(f"cannot read algebroid {args.algebroid!r}") from None
    except (KeyError, ValueError, DimensionMismatch, json.JSONDecodeError) as exc:
        raise UsageError(f"bad algebroid {args.algebroid!r}: {exc}") from None


def _divergence(alg, spec):
    from gerstkit.bicomplex import Divergence
    from gerstkit.parsing import parse_divergence_values
    if not spec:
        return Divergence.zero(alg)
    return Divergence(alg, parse_divergence_values(spec, alg))


def _read_form(text: str, alg):
    from gerstkit.bicomplex import ClassicalForm
    from gerstkit.parsing import parse_form_text
    path = Path(text)
    if len(text) < 4096 and path.suffix in (".json", ".yaml", ".yml") and path.exists():
        text = path.read_text(encoding="utf-8")
    arity, values = parse_form_text(text, alg)
    return ClassicalForm(alg, arity, values)


def _pv(text: str, alg):
    from gerstkit.parsing import parse_polyvector
    return parse_polyvector(text, alg)


def _named(name: str, alg, args):
    from gerstkit.bv import delta_from_divergence, euler_derivation
    from gerstkit.cochain import Cochain, Kind, g_signature, graded
    from gerstkit.hochschild import bracket_cochain, identity_cochain
    from gerstkit.schouten import sign
    if name == "I":
        return identity_cochain(alg)
    if name in ("omega", "bracket"):
        return bracket_cochain(alg)
    if name == "m":
        return Cochain(g_signature(2), Kind.G, 0, graded(lambda x, y: (x * y).scale(sign(x.grade)), alg), "m")
    if name == "E":
        return euler_derivation(alg)
    if name == "delta":
        return delta_from_divergence(_divergence(alg, args.divergence), args.convention).as_cochain()
    raise UsageError(f"unknown cochain {name!r}; choose from {', '.join(NAMED_COCHAINS)}")


def _emit_report(rep, args) -> int:
    print(rep.to_json(args.timing) if args.json else rep.to_text(args.timing))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _emit_value(value, args, **extra) -> int:
    from gerstkit.parsing import format_value
    if args.json:
        print(json.dumps({"schema": 1, "value": format_value(value), **extra}, indent=2, sort_keys=True))
    else:
        print(format_value(value))
    return EXIT_OK


def _emit_form(phi, args, **extra) -> int:
    from gerstkit.parsing import format_form
    data = {"schema": 1, "form": format_form(phi.arity, phi.values), **extra}
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        import yaml
        print(yaml.safe_dump(format_form(phi.arity, phi.values), sort_keys=True).rstrip())
        for k, v in extra.items():
            print(f"# {k}: {v}")
    return EXIT_OK


# -- commands -------------------------------------------------------------------------------

def cmd_verify(args) -> int:
    from gerstkit.suites import RunConfig, run_verify
    try:
        cfg = RunConfig(algebroid=args.algebroid, suites=tuple(s.strip() for s in args.suite.split(",")),
                        trials=args.trials, seed=args.seed, grade_bound=args.grade_bound,
                        degree_bound=args.degree_bound, convention=args.convention,
                        divergence=args.divergence, n_max=args.n)
        cfg.selected()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    alg = _load_alg(args)
    return _emit_report(run_verify(cfg, alg), args)


def cmd_eval(args) -> int:
    from gerstkit.schouten import schouten_bracket
    alg = _load_alg(args)
    op, xs = args.operator, args.operands

    def need(k):
        if len(xs) != k:
            raise UsageError(f"{op} takes {k} operand(s), got {len(xs)}")

    if op == "bracket":
        need(2)
        return _emit_value(schouten_bracket(_pv(xs[0], alg), _pv(xs[1], alg)), args)
    if op == "wedge":
        need(2)
        return _emit_value(_pv(xs[0], alg) * _pv(xs[1], alg), args)
    if op == "delta":
        need(1)
        from gerstkit.bv import delta_from_divergence
        delta = delta_from_divergence(_divergence(alg, args.divergence), args.convention)
        return _emit_value(delta(_pv(xs[0], alg)), args, convention=args.convention)
    if op == "derham":
        need(1)
        from gerstkit.bicomplex import classical_derham_d
        return _emit_form(classical_derham_d(_read_form(xs[0], alg)), args)
    if op == "derham-g":
        need(1)
        return _derham_g(_read_form(xs[0], alg), alg, args)
    # d-hochschild / d-chevalley NAME args...
    name, at = xs[0], xs[1:]
    f = _named(name, alg, args)
    if op == "d-hochschild":
        from gerstkit.hochschild import d_hochschild_g
        g = d_hochschild_g(f, alg)
    else:
        from gerstkit.derham import d_chevalley_g
        g = d_chevalley_g(f, alg)
    if len(at) != g.arity:
        raise UsageError(f"{op} of {name} takes {g.arity} argument(s), got {len(at)}")
    return _emit_value(g(*(_pv(a, alg) for a in at)), args)


def _derham_g(phi, alg, args) -> int:
    from gerstkit.bicomplex import classical_derham_d
    from gerstkit.derham import DERHAM_SIGN, d_chevalley_g, extend_classical, restrict_to_classical
    ours = restrict_to_classical(d_chevalley_g(extend_classical(phi).cochain, alg), alg)
    classical = classical_derham_d(phi)
    agree = ours == (classical if DERHAM_SIGN > 0 else -classical)
    _emit_form(ours, args, sign_constant=DERHAM_SIGN, matches_classical=agree)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_div_check(args) -> int:
    from gerstkit.bicomplex import check_divergence
    alg = _load_alg(args)
    return _emit_report(check_divergence(_divergence(alg, args.divergence), args.trials, args.seed), args)


def cmd_bv_check(args) -> int:
    from gerstkit.suites import RunConfig, suite_bv
    alg = _load_alg(args)
    _divergence(alg, args.divergence)  # surface parse errors before running
    cfg = RunConfig(algebroid=args.algebroid, suites=("bv",), trials=args.trials, seed=args.seed,
                    grade_bound=args.grade_bound, degree_bound=args.degree_bound,
                    convention=args.convention, divergence=args.divergence)
    rep = suite_bv(alg, cfg)
    rep.suite = "bv-check"
    return _emit_report(rep, args)


def cmd_torsor(args) -> int:
    from gerstkit.bicomplex import check_divergence, divergence_difference, is_closed_1form
    from gerstkit.parsing import format_form
    from gerstkit.report import Report
    alg = _load_alg(args)
    c1, c2 = _divergence(alg, args.c1), _divergence(alg, args.c2)
    rep = Report("torsor", seed=args.seed)
    for label, c in (("c1", c1), ("c2", c2)):
        r = check_divergence(c, args.trials, args.seed)
        rep.extend(r, prefix=label)
    y = divergence_difference(c1, c2)
    v = is_closed_1form(y, args.trials, args.seed)
    form = format_form(y.arity, y.values)
    rep.record("difference closed", bool(v), v.trials, v.witness,
               f"c1 - c2 = {json.dumps(form['values'], sort_keys=True)}")
    return _emit_report(rep, args)


def cmd_derham(args) -> int:
    from gerstkit.bicomplex import classical_derham_d
    alg = _load_alg(args)
    return _emit_form(classical_derham_d(_read_form(args.form, alg)), args)


def cmd_derham_g(args) -> int:
    from gerstkit.derham import extend_classical, is_big_form
    alg = _load_alg(args)
    phi = _read_form(args.form, alg)
    if args.op == "d":
        return _derham_g(phi, alg, args)
    ext = extend_classical(phi)
    if args.op == "check":
        rep = is_big_form(ext, alg, args.trials, args.seed)
        return _emit_report(rep, args)
    at = args.at or []
    if len(at) != phi.arity:
        raise UsageError(f"extension of a {phi.arity}-form takes {phi.arity} argument(s)")
    return _emit_value(ext(*(_pv(a, alg) for a in at)), args)


def cmd_bracket_cocycle(args) -> int:
    from gerstkit.hochschild import check_bracket_cocycle
    alg = _load_alg(args)
    return _emit_report(check_bracket_cocycle(alg, args.trials, args.seed, args.grade_bound), args)


def cmd_canonical(args) -> int:
    from gerstkit.bv import canonical_cochains
    alg = _load_alg(args)
    return _emit_report(canonical_cochains(alg, args.trials, args.seed)[1], args)


def cmd_hochschild(args) -> int:
    from gerstkit.cochain import Sampler, vanishes
    from gerstkit.hochschild import d_hochschild_g
    from gerstkit.report import Report
    alg = _load_alg(args)
    f = _named(args.cochain, alg, args)
    df = d_hochschild_g(f, alg)
    if args.at is not None:
        if len(args.at) != df.arity:
            raise UsageError(f"d_H({args.cochain}) takes {df.arity} argument(s)")
        return _emit_value(df(*(_pv(a, alg) for a in args.at)), args)
    rep = Report("hochschild", seed=args.seed)
    S = Sampler(trials=args.trials, seed=args.seed, grade_bound=args.grade_bound,
                degree_bound=args.degree_bound, label="cli-hochschild")
    v = vanishes(df, S, alg)
    rep.record(f"dH({args.cochain})=0", bool(v), v.trials, v.witness, v.detail)
    if not v:
        # a nonzero d_H is information, not a failure; the square must still vanish
        rep.checks[-1].status = "skipped"
    vanishes(d_hochschild_g(df, alg), S, alg).into(rep, f"dH^2({args.cochain})=0")
    return _emit_report(rep, args)


COMMANDS = {
    "verify": cmd_verify, "eval": cmd_eval, "div-check": cmd_div_check, "bv-check": cmd_bv_check,
    "torsor": cmd_torsor, "derham": cmd_derham, "derham-g": cmd_derham_g, "bracket-cocycle": cmd_bracket_cocycle,
    "canonical": cmd_canonical, "hochschild": cmd_hochschild,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be >= 1")
    if getattr(args, "grade_bound", 1) < 1 or getattr(args, "degree_bound", 1) < 1:
        parser.error("bounds must be >= 1")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ParseError) as exc:
        print(f"gerstkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
