"""Command-line front end: every subcommand prints one JSON report.

Exit codes: 0 success, 1 mathematical error (or a failed check), 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import deriv_spaces as ds
from .homlie_reps import (RepSpec, double_extension, module_of, sl2D_representation,
                          solve_rep_extension)
from .lie_core import NAMED, LieAlgebraError, by_name, load, sl2
from .linalg import fmt_rational, to_rational
from .sl2_homlie import (GenDer5, NoCanonicalForm, ZeroDerivation, canonical_form,
                         check_homlie_jacobi, classify, extend_sl2, invariants)

VALUE_OPTIONS = ("--type", "--d")


class ArgError(ValueError):
    pass


def _matrix_json(M):
    return [[fmt_rational(v) for v in row] for row in M]


def _parse_rationals(text: str, count: int, what: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ArgError(f"{what} needs {count} comma-separated rationals, got {text!r}")
    try:
        return [to_rational(p) for p in parts]
    except (ValueError, TypeError, ZeroDivisionError):
        raise ArgError(f"{what}: cannot parse {text!r} as rationals") from None


def _algebra(spec: str):
    if spec in NAMED:
        return by_name(spec)
    path = Path(spec)
    if path.suffix == ".json":
        if not path.exists():
            raise ArgError(f"no such file: {spec}")
        try:
            return load(path)
        except (LieAlgebraError, KeyError, ValueError) as exc:
            raise ArgError(f"{spec}: {exc}") from None
    raise ArgError(f"unknown algebra {spec!r} (choose from {', '.join(NAMED)} or a .json file)")


def _tuple(args) -> GenDer5:
    return GenDer5.of(*_parse_rationals(args.d, 5, "--d"))


def _weights(text: str):
    try:
        ws = [int(p) for p in text.split(",")]
    except ValueError:
        raise ArgError(f"--module/--m expects integers, got {text!r}") from None
    if any(w < 0 for w in ws):
        raise ArgError("highest weights must be non-negative")
    return ws


class MathError(Exception):
    def __init__(self, results):
        super().__init__("mathematical error")
        self.results = results


def _error(exc) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


# -- subcommands ----------------------------------------------------------------

def cmd_der(args):
    g = _algebra(args.algebra)
    t = _parse_rationals(args.type, 3, "--type")
    space = ds.gen_derivations(g, t)
    return {"algebra": g.name, "algebra_dim": g.dim, "type": [fmt_rational(x) for x in t],
            "dim": space.dim,
            "basis": [_matrix_json(M) for M in space.as_matrices((g.dim, g.dim))]}, "exact"


def cmd_hl(args):
    g = _algebra(args.algebra)
    space = ds.homlie_space(g)
    out = {"algebra": g.name, "algebra_dim": g.dim, "dim": space.dim,
           "basis": [_matrix_json(M) for M in space.as_matrices((g.dim, g.dim))]}
    if g.name == "sl2":
        dec = ds.adH_weight_decomposition(space, g)
        out["weights"] = {str(w): k for w, k in dec.multiplicities().items()}
        traceless, _ = ds.traceless_split(space, g.dim)
        out["traceless_dim"] = traceless.dim
        out["traceless_equals_der_-1_1_1"] = traceless.same_span(
            ds.gen_derivations(sl2(), (-1, 1, 1)))
    return out, "exact"


def cmd_classify(args):
    d = _tuple(args)
    try:
        label = classify(d)
    except ZeroDerivation as exc:
        raise MathError(_error(exc)) from None
    out = label.to_json()
    out["invariants"] = invariants(d).to_json()
    return out, "exact"


def cmd_canon(args):
    d = _tuple(args)
    try:
        res = canonical_form(d)
    except (ZeroDerivation, NoCanonicalForm) as exc:
        err = _error(exc)
        if isinstance(exc, NoCanonicalForm):
            err["label"] = classify(d).to_json()
        raise MathError(err) from None
    return res.to_json(), "approximate" if res.approximate else "exact"


def cmd_rep(args):
    d = _tuple(args)
    sol = solve_rep_extension(module_of(_weights(args.m)), d)
    return sol.to_json(), "exact"


def cmd_extend(args):
    d = _tuple(args)
    h = extend_sl2(d, validate=False)
    report = check_homlie_jacobi(h)
    out = {"d": d.to_json(), "dim": h.dim, "basis": list(h.basis_names),
           "twist": _matrix_json(h.twist), "jacobi": report.to_json()}
    if args.module is not None:
        mod = module_of(_weights(args.module))
        sol = solve_rep_extension(mod, d)
        ext = {"module": list(mod.weights), "solvable": sol.solvable}
        if sol.solvable:
            spec = RepSpec(mod)
            big = double_extension(h, spec, sl2D_representation(h, spec, sol.solution()),
                                   validate=False)
            ext.update(dim=big.dim, rho_D=_matrix_json(sol.solution()),
                       jacobi=check_homlie_jacobi(big).to_json())
        out["double_extension"] = ext
        if not sol.solvable:
            raise MathError(out)
    if not report.ok:
        raise MathError(out)
    return out, "exact"


def cmd_verify(args):
    from .acceptance import run_all

    only = _weights(args.only) if args.only else None
    results = run_all(args.seed, only=set(only) if only else None)
    out = {"criteria": [r.to_json() for r in results],
           "all_passed": all(r.passed for r in results)}
    if not out["all_passed"]:
        raise MathError(out)
    return out, "exact"


COMMANDS = {"der": cmd_der, "hl": cmd_hl, "classify": cmd_classify, "canon": cmd_canon,
            "rep": cmd_rep, "extend": cmd_extend, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    p = argparse.ArgumentParser(prog="homlie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("der", parents=[common], help="generalized derivations Der_(a,b,c)")
    s.add_argument("--algebra", required=True)
    s.add_argument("--type", required=True, help="a,b,c")
    s = sub.add_parser("hl", parents=[common], help="Hom-Lie twist space HL(g)")
    s.add_argument("--algebra", required=True)
    for name, helptext in (("classify", "orbit family of a 5-tuple"),
                           ("canon", "canonical form with step trace")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--d", required=True, help="zeta,eta,sigma,lam,mu")
    s = sub.add_parser("rep", parents=[common], help="solve for rho(D) on V(m)")
    s.add_argument("--m", required=True, help="highest weight, or a comma list for a direct sum")
    s.add_argument("--d", required=True)
    s = sub.add_parser("extend", parents=[common], help="validate sl2[D] (and g + V)")
    s.add_argument("--d", required=True)
    s.add_argument("--module", default=None)
    s = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    s.add_argument("--only", default=None, help="comma list of criterion numbers")
    return p


def _glue_negative_values(argv):
    # let "--type -1,1,1" through: argparse would read -1,1,1 as an option
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(argv))
    report = {"command": args.command,
              "inputs": {k: v for k, v in sorted(vars(args).items()) if k != "command"}}
    code = 0
    try:
        results, mode = COMMANDS[args.command](args)
    except ArgError as exc:
        parser.error(str(exc))  # exits with status 2
    except MathError as exc:
        results, mode, code = exc.results, "exact", 1
    report["mode"] = mode
    if args.command == "verify":
        report["seed"] = args.seed
    report["results"] = results
    stdout.write(json.dumps(report, indent=2) + "\n")
    return code


def main() -> int:
    return run()


if __name__ == "__main__":
    raise SystemExit(main())
