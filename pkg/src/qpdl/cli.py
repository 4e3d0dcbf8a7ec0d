"""Command-line front end.

Exit codes: 0 for valid / PASS / TRUE, 1 for a refuted claim (the
witness is printed), 2 for usage or syntax errors, 3 for formulas
outside the fragment the symbolic evaluator decides.
"""

from __future__ import annotations

import argparse
import sys

from .ast import pretty
from .checker import (
    Environment,
    LocalTrivial,
    check_state,
    check_valid,
    denote_program,
    eval_symbolic,
)
from .errors import CheckError, UnboundVariable
from .frame import Frame, Ray, Subspace, format_state, parse_state
from .parser import ParseError, parse_formula, parse_program
from .protocols import DEFAULT_SEED, TARGETS, run_target


def _load_ray(path: str, n: int) -> Ray:
    with open(path, encoding="ascii") as fh:
        k, ray = parse_state(fh.read())
    if k != n:
        raise ValueError(f"{path} holds a {k}-qubit state, expected n={n}")
    return ray


def _bindings(pairs, n: int, fr: Frame) -> dict:
    """-b name=@file binds a ray's span; -b name=span:@f1,@f2 a joined span."""
    out = {}
    for raw in pairs or ():
        name, eq, rhs = raw.partition("=")
        if not eq or not name.isidentifier():
            raise ValueError(f"bad binding {raw!r}, expected name=@file")
        if rhs.startswith("span:"):
            rays = []
            for part in rhs[len("span:"):].split(","):
                if not part.startswith("@"):
                    raise ValueError(f"bad binding {raw!r}, span needs @files")
                rays.append(_load_ray(part[1:], n))
            out[name] = Subspace.from_rows([r.amps for r in rays], fr.dim)
        elif rhs.startswith("@"):
            out[name] = Subspace.of_ray(_load_ray(rhs[1:], n))
        else:
            raise ValueError(f"bad binding {raw!r}, expected @file or span:")
    return out


def _ray_lines(ray: Ray) -> str:
    return " + ".join(f"({a})e{idx}" for idx, a in enumerate(ray.amps)
                      if not a.is_zero())


def _cmd_parse(args) -> int:
    try:
        node = parse_formula(args.expr)
        kind = "formula"
    except ParseError:
        node = parse_program(args.expr)
        kind = "program"
    print(f"{kind}: {pretty(node)}")
    return 0


def _cmd_valid(args) -> int:
    fr = Frame(args.n)
    env = Environment(fr, _bindings(args.bind, args.n, fr))
    witness = check_valid(env, parse_formula(args.formula))
    if witness is None:
        print("VALID")
        return 0
    print("COUNTEREXAMPLE:")
    sys.stdout.write(format_state(args.n, witness))
    return 1


def _cmd_holds(args) -> int:
    fr = Frame(args.n)
    env = Environment(fr, _bindings(args.bind, args.n, fr))
    ray = _load_ray(args.state, args.n)
    if check_state(env, ray, parse_formula(args.formula)):
        print("TRUE")
        return 0
    print("FALSE")
    return 1


def _cmd_denote(args) -> int:
    fr = Frame(args.n)
    env = Environment(fr, _bindings(args.bind, args.n, fr))
    action = denote_program(env, parse_program(args.program))
    if isinstance(action, LocalTrivial):
        qs = ",".join(str(q) for q in action.qubits)
        print(f"trivial local program on qubits {{{qs}}}")
        return 0
    for k, branch in enumerate(action.branches, start=1):
        print(f"branch {k}:")
        print(branch.matrix)
    if not action.branches:
        print("no branches (nowhere-defined action)")
    return 0


def _cmd_eval(args) -> int:
    fr = Frame(args.n)
    env = Environment(fr, _bindings(args.bind, args.n, fr))
    region = eval_symbolic(env, parse_formula(args.formula))
    if region.is_empty():
        print("EMPTY")
        return 0
    if region.complement().is_empty():
        print("FULL")
        return 0
    for k, term in enumerate(region.terms, start=1):
        print(f"term {k}: span of dimension {term.positive.dim}")
        for i in range(term.positive.basis.rows):
            print(f"  {_ray_lines(Ray(term.positive.basis.row(i)))}")
        for cut in term.negatives:
            print(f"  minus span of dimension {cut.dim}")
            for i in range(cut.basis.rows):
                print(f"    {_ray_lines(Ray(cut.basis.row(i)))}")
    return 0


def _cmd_verify(args) -> int:
    reports = run_target(args.target, seed=args.seed)
    failed = False
    for rep in reports:
        print(rep.render_text())
        failed = failed or not rep.passed
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qpdl",
        description="Exact model checker for a dynamic logic of "
                    "quantum programs.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse an expression and print it back")
    p.add_argument("expr")
    p.set_defaults(run=_cmd_parse)

    def add_frame_flags(cmd, formula=True):
        cmd.add_argument("-n", type=int, required=True, metavar="QUBITS")
        cmd.add_argument("-b", "--bind", action="append", metavar="VAR=@FILE",
                         help="bind a variable to a state file's span, or to "
                              "span:@f1,@f2 for a joined span")

    p = sub.add_parser("valid", help="decide validity over the n-qubit frame")
    add_frame_flags(p)
    p.add_argument("formula")
    p.set_defaults(run=_cmd_valid)

    p = sub.add_parser("holds", help="check a formula at one state")
    add_frame_flags(p)
    p.add_argument("--state", required=True, metavar="FILE")
    p.add_argument("formula")
    p.set_defaults(run=_cmd_holds)

    p = sub.add_parser("denote", help="print a program's branch matrices")
    add_frame_flags(p)
    p.add_argument("program")
    p.set_defaults(run=_cmd_denote)

    p = sub.add_parser("eval", help="print the region a formula denotes")
    add_frame_flags(p)
    p.add_argument("formula")
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("verify", help="run a named verification target")
    p.add_argument("target", choices=sorted(TARGETS) + ["all"])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(run=_cmd_verify)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    except UnboundVariable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CheckError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
