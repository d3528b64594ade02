"""Command-line front end.

Every subcommand reads one input (a ``.sing`` DSL file, a JSON file with
``{"n", "generators"}`` or ``{"n", "monomials"}``, or inline text via
``-e``) and prints JSON (default) or tab-delimited ``key<TAB>value`` rows.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 capability error,
5 non-stabilization.  Errors are reported as JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .covolume import DEFAULT_MAX_DOUBLINGS, lelong_all, lelong_k
from .errors import SingLabError, ValidationError
from .expr import canonical, to_json, to_text
from .mulideal import generators, generators_to_json
from .oracles import DEFAULT_DEPTHS, covol_lattice, covol_mc, integrability_probe
from .polyhedron import DEFAULT_MAX_DIM
from .rational import parse_rational
from .report import analyze, diagram_for, diagram_json, flatten, load_path, load_source, q
from .thresholds import lambda_lp, lct


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("file", nargs="?", help=".sing or .json input file ('-' for stdin)")
    src.add_argument("-e", "--expr", help="inline DSL expression instead of a file")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="tab-delimited output")
    common.set_defaults(fmt="json")
    common.add_argument("--max-dim", type=_positive_int, default=None,
                        help=f"dimension cap for exact hulls (default {DEFAULT_MAX_DIM}, "
                             "or SINGLAB_MAX_DIM)")
    common.add_argument("--max-doublings", type=int, default=DEFAULT_MAX_DOUBLINGS,
                        help=f"truncation doublings before giving up (default {DEFAULT_MAX_DOUBLINGS})")

    p = argparse.ArgumentParser(prog="singlab", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"singlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("parse", parents=[common], help="canonical expression and AST")
    sub.add_parser("indicator", parents=[common], help="indicator and its Newton diagram")
    s = sub.add_parser("lelong", parents=[common], help="higher Lelong numbers")
    s.add_argument("--k", type=_positive_int, help="single order k (default: all k <= l)")
    sub.add_parser("lct", parents=[common], help="log canonical threshold")
    s = sub.add_parser("mulideal", parents=[common], help="multiplier ideal generators")
    s.add_argument("--scale", type=_rational, default=Fraction(1), help="scale c in J(c u) (default 1)")

    o = sub.add_parser("oracle", help="slow numerical cross-checks")
    osub = o.add_subparsers(dest="kind", required=True)
    s = osub.add_parser("mc", parents=[common], help="Monte-Carlo covolume")
    s.add_argument("--samples", type=_positive_int, default=1_000_000)
    s.add_argument("--seed", type=int, default=0)
    s = osub.add_parser("lattice", parents=[common], help="lattice-count covolume")
    s.add_argument("--m", type=_positive_int, default=64, help="lattice resolution (default 64)")
    s = osub.add_parser("probe", parents=[common], help="numerical integrability probe")
    s.add_argument("--lam", type=float, help="probe exponent (default: factor * lambda)")
    s.add_argument("--factor", type=float, default=1.1,
                   help="multiple of lambda probed when --lam is absent (default 1.1)")
    s.add_argument("--depths", type=float, nargs="+", default=list(DEFAULT_DEPTHS))

    s = sub.add_parser("analyze", parents=[common], help="full report")
    s.add_argument("--max-k", type=_positive_int)
    s.add_argument("--multiplier-scale", type=_rational)
    s.add_argument("--refined", action="store_true", help="add the numerical refined bounds")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--plot-dir", help="write figures into this directory")
    s.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")
    return p


def _load(args):
    if args.expr is not None:
        if args.file is not None:
            raise ValidationError("give either a file or --expr, not both")
        return load_source(args.expr)
    if args.file is None:
        raise ValidationError("no input: pass a file or --expr")
    if args.file == "-":
        return load_source(sys.stdin.read())
    return load_path(args.file)


def cmd_parse(args) -> dict:
    e = _load(args).expr
    c = canonical(e)
    return {"n": c.n, "expression": to_text(c.root), "ast": to_json(c.root), "notes": list(e.notes)}


def cmd_indicator(args) -> dict:
    ind, G = diagram_for(_load(args).expr)
    return {"n": G.n, "indicator": to_text(ind.root), "diagram": diagram_json(G)}


def cmd_lelong(args) -> dict:
    _, G = diagram_for(_load(args).expr)
    if args.k is not None:
        return {"lelong": {str(args.k): q(lelong_k(G, args.k, args.max_doublings))}}
    return {"lelong": {str(k): q(v) for k, v in lelong_all(G, None, args.max_doublings).items()}}


def cmd_lct(args) -> dict:
    _, G = diagram_for(_load(args).expr)
    return {"lct": q(lct(G)), "lambda": q(lambda_lp(G))}


def cmd_mulideal(args) -> dict:
    _, G = diagram_for(_load(args).expr)
    return generators_to_json(generators(G, args.scale), args.scale)


def cmd_oracle(args) -> dict:
    _, G = diagram_for(_load(args).expr)
    if args.kind == "mc":
        return covol_mc(G, samples=args.samples, seed=args.seed).to_json()
    if args.kind == "lattice":
        return {"m": args.m, "covolume": q(covol_lattice(G, args.m))}
    lam = args.lam if args.lam is not None else args.factor * float(lambda_lp(G))
    return integrability_probe(G, lam, args.depths).to_json()


def cmd_analyze(args) -> dict:
    e = _load(args).expr
    out = analyze(
        e,
        max_k=args.max_k,
        multiplier_scale=args.multiplier_scale,
        refined=args.refined,
        seed=args.seed,
        max_doublings=args.max_doublings,
        timing=args.timing,
    )
    if args.plot_dir:
        from .plotting import write_figures

        _, G = diagram_for(e)
        write_figures(G, out, args.plot_dir)
    return out


COMMANDS = {
    "parse": cmd_parse,
    "indicator": cmd_indicator,
    "lelong": cmd_lelong,
    "lct": cmd_lct,
    "mulideal": cmd_mulideal,
    "oracle": cmd_oracle,
    "analyze": cmd_analyze,
}


def render(obj: dict, fmt: str) -> str:
    if fmt == "text":
        return "".join(f"{k}\t{v}\n" for k, v in flatten(obj))
    return json.dumps(obj, indent=2) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get("SINGLAB_MAX_DIM")
    if args.max_dim is not None:
        os.environ["SINGLAB_MAX_DIM"] = str(args.max_dim)
    try:
        out = COMMANDS[args.command](args)
    except SingLabError as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
        sys.stderr.write(json.dumps(err) + "\n")
        return exc.exit_code
    finally:
        # restore so in-process callers do not inherit the cap
        if saved is None:
            os.environ.pop("SINGLAB_MAX_DIM", None)
        else:
            os.environ["SINGLAB_MAX_DIM"] = saved
    sys.stdout.write(render(out, args.fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
